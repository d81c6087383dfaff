// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "core/grid.hpp"
#include "core/kernel.hpp"
#include "core/trajectory.hpp"

namespace pidec {

/// Distributed control window: per-dof indicator weights in [0,1] multiplying
/// the control coefficients before the load is assembled. Empty weights mean
/// the identity window G = I.
struct ControlWindow {
    std::vector<double> weights;

    bool is_identity() const { return weights.empty(); }
};

/// Everything the solvers and operators need, assembled once and immutable
/// afterwards: grid, matrices, factorizations, kernel, window, problem data
/// and the cached uncontrolled solves.
struct OperatorContext {
    SpatialGrid grid;
    TimeGrid times;
    TridiagMatrix mass;
    TridiagMatrix stiffness;
    TridiagFactor step_solver;  // M + dt*A
    TridiagFactor mass_solver;  // M
    KernelSpec kernel;
    ControlWindow window;

    std::vector<double> y0;      // projected initial state
    std::vector<double> target;  // projected target state

    // cached at construction
    std::vector<double> heat_final;          // S_h(T) y0, no memory, no control
    std::vector<double> uncontrolled_final;  // y(T; u=0, y0), memory on
    std::vector<double> zhat;                // target - heat_final
    std::vector<double> offset;              // uncontrolled_final - heat_final

    int n_dof() const { return grid.n_dof(); }
    int n_steps() const { return times.n_steps; }
};

/// Builds a context from analytic initial/target data. Throws
/// std::invalid_argument on bad sizes, non-positive horizon, or window
/// weights outside [0,1].
OperatorContext make_context(int n_cells, int n_steps, double final_time,
                             KernelSpec kernel,
                             const std::function<double(double)>& initial,
                             const std::function<double(double)>& target,
                             std::vector<double> window_weights = {});

/// Same, but with already-projected coefficient vectors.
OperatorContext make_context_from_coefficients(int n_cells, int n_steps,
                                               double final_time, KernelSpec kernel,
                                               std::vector<double> y0,
                                               std::vector<double> target,
                                               std::vector<double> window_weights = {});

}  // namespace pidec
