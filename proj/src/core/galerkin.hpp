// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "core/context.hpp"
#include "core/trajectory.hpp"

namespace pidec {

/// One rung of the Galerkin hierarchy: keep the first n_modes discrete sine
/// modes in space and n_slabs piecewise-constant slabs in time.
struct GalerkinLevel {
    int n_modes = 0;
    int n_slabs = 0;
};

/// Throws std::invalid_argument unless 1 <= n_modes <= n_dof,
/// 1 <= n_slabs <= n_steps and n_steps is divisible by n_slabs.
void validate_level(const OperatorContext& ctx, const GalerkinLevel& level);

/// M-orthogonal projection onto the span of the first n_modes generalized
/// eigenvectors of (A, M). Identity when n_modes == n_dof (early return, no
/// rounding). Idempotent.
std::vector<double> project_spatial_modes(const OperatorContext& ctx, int n_modes,
                                          std::span<const double> v);

/// Same projection applied to every level of a trajectory, in place.
void project_spatial_modes(const OperatorContext& ctx, int n_modes, Trajectory& u);

/// Replaces levels 1..N by their slab averages (uniform slabs of
/// n_steps/n_slabs levels each); level 0 is untouched. Identity when
/// n_slabs == n_steps (early return). Idempotent, preserves the
/// time-integrated mean over levels 1..N.
void project_time_slabs(const OperatorContext& ctx, int n_slabs, Trajectory& u);

/// Combined projector onto the level's control subspace: spatial modes then
/// time slabs (the two commute). In place; exact no-op at the full level.
void project_onto_level(const OperatorContext& ctx, const GalerkinLevel& level,
                        Trajectory& u);

}  // namespace pidec
