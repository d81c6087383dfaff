// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/galerkin.hpp"

#include <stdexcept>

namespace pidec {

void validate_level(const OperatorContext& ctx, const GalerkinLevel& level) {
    if (level.n_modes < 1 || level.n_modes > ctx.n_dof()) {
        throw std::invalid_argument("GalerkinLevel: n_modes out of range");
    }
    if (level.n_slabs < 1 || level.n_slabs > ctx.n_steps()) {
        throw std::invalid_argument("GalerkinLevel: n_slabs out of range");
    }
    if (ctx.n_steps() % level.n_slabs != 0) {
        throw std::invalid_argument("GalerkinLevel: n_steps must be divisible by n_slabs");
    }
}

namespace {

// Mode vectors and their M-images for the first m modes, plus the (shared)
// normalization <v_j, v_j>_M. The sines are eigenvectors of both Toeplitz
// matrices, hence exactly M-orthogonal; precomputing keeps a trajectory
// projection at O(m * n) per level.
struct ModeBasis {
    std::vector<std::vector<double>> modes;
    std::vector<std::vector<double>> m_modes;
    std::vector<double> norms;

    ModeBasis(const OperatorContext& ctx, int m) {
        modes.reserve(m);
        m_modes.reserve(m);
        norms.reserve(m);
        for (int j = 1; j <= m; ++j) {
            modes.push_back(mode_vector(ctx.grid, j));
            m_modes.push_back(ctx.mass.apply(modes.back()));
            double d = 0.0;
            for (int i = 0; i < ctx.n_dof(); ++i) d += modes.back()[i] * m_modes.back()[i];
            norms.push_back(d);
        }
    }

    void project(std::span<const double> in, std::span<double> out) const {
        const int n = static_cast<int>(in.size());
        std::vector<double> coeff(modes.size());
        for (size_t j = 0; j < modes.size(); ++j) {
            double num = 0.0;
            for (int i = 0; i < n; ++i) num += in[i] * m_modes[j][i];
            coeff[j] = num / norms[j];
        }
        for (int i = 0; i < n; ++i) out[i] = 0.0;
        for (size_t j = 0; j < modes.size(); ++j) {
            for (int i = 0; i < n; ++i) out[i] += coeff[j] * modes[j][i];
        }
    }
};

}  // namespace

std::vector<double> project_spatial_modes(const OperatorContext& ctx, int n_modes,
                                          std::span<const double> v) {
    validate_level(ctx, GalerkinLevel{n_modes, ctx.n_steps()});
    if (static_cast<int>(v.size()) != ctx.n_dof()) {
        throw std::invalid_argument("project_spatial_modes: wrong vector dimension");
    }
    std::vector<double> out(v.begin(), v.end());
    if (n_modes == ctx.n_dof()) return out;
    ModeBasis basis(ctx, n_modes);
    basis.project(v, out);
    return out;
}

void project_spatial_modes(const OperatorContext& ctx, int n_modes, Trajectory& u) {
    validate_level(ctx, GalerkinLevel{n_modes, ctx.n_steps()});
    if (u.n_dof() != ctx.n_dof() || u.n_levels() != ctx.times.n_levels()) {
        throw std::invalid_argument("project_spatial_modes: wrong trajectory shape");
    }
    if (n_modes == ctx.n_dof()) return;
    ModeBasis basis(ctx, n_modes);
    std::vector<double> tmp(ctx.n_dof());
    for (int level = 0; level < u.n_levels(); ++level) {
        auto ul = u.level(level);
        basis.project(ul, tmp);
        std::copy(tmp.begin(), tmp.end(), ul.begin());
    }
}

void project_time_slabs(const OperatorContext& ctx, int n_slabs, Trajectory& u) {
    validate_level(ctx, GalerkinLevel{ctx.n_dof(), n_slabs});
    if (u.n_dof() != ctx.n_dof() || u.n_levels() != ctx.times.n_levels()) {
        throw std::invalid_argument("project_time_slabs: wrong trajectory shape");
    }
    const int n_steps = ctx.n_steps();
    if (n_slabs == n_steps) return;

    const int width = n_steps / n_slabs;
    const int n = ctx.n_dof();
    std::vector<double> avg(n);
    for (int s = 0; s < n_slabs; ++s) {
        const int first = s * width + 1;
        std::fill(avg.begin(), avg.end(), 0.0);
        for (int level = first; level < first + width; ++level) {
            const auto ul = u.level(level);
            for (int i = 0; i < n; ++i) avg[i] += ul[i];
        }
        for (int i = 0; i < n; ++i) avg[i] /= width;
        for (int level = first; level < first + width; ++level) {
            auto ul = u.level(level);
            std::copy(avg.begin(), avg.end(), ul.begin());
        }
    }
}

void project_onto_level(const OperatorContext& ctx, const GalerkinLevel& level,
                        Trajectory& u) {
    validate_level(ctx, level);
    project_spatial_modes(ctx, level.n_modes, u);
    project_time_slabs(ctx, level.n_slabs, u);
}

}  // namespace pidec
