// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pidec {

SpatialGrid make_grid(int n_cells) {
    if (n_cells < 2) {
        throw std::invalid_argument("make_grid: n_cells must be at least 2");
    }
    SpatialGrid grid;
    grid.n_cells = n_cells;
    grid.h = 1.0 / n_cells;
    grid.nodes.resize(n_cells - 1);
    for (int i = 1; i < n_cells; ++i) {
        grid.nodes[i - 1] = static_cast<double>(i) / n_cells;
    }
    return grid;
}

void TridiagMatrix::apply(std::span<const double> x, std::span<double> y) const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        double v = diag[i] * x[i];
        if (i > 0) v += off[i - 1] * x[i - 1];
        if (i + 1 < n) v += off[i] * x[i + 1];
        y[i] = v;
    }
}

std::vector<double> TridiagMatrix::apply(std::span<const double> x) const {
    std::vector<double> y(x.size());
    apply(x, y);
    return y;
}

TridiagFactor::TridiagFactor(const TridiagMatrix& a) {
    const int n = a.size();
    d_.resize(n);
    l_.resize(n > 0 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) {
        double di = a.diag[i];
        if (i > 0) di -= l_[i - 1] * l_[i - 1] * d_[i - 1];
        if (!(di > 0.0)) {
            throw std::runtime_error("TridiagFactor: matrix is not positive definite");
        }
        d_[i] = di;
        if (i + 1 < n) l_[i] = a.off[i] / di;
    }
}

void TridiagFactor::solve_inplace(std::span<double> x) const {
    const int n = size();
    for (int i = 1; i < n; ++i) x[i] -= l_[i - 1] * x[i - 1];
    for (int i = 0; i < n; ++i) x[i] /= d_[i];
    for (int i = n - 2; i >= 0; --i) x[i] -= l_[i] * x[i + 1];
}

std::vector<double> TridiagFactor::solve(std::span<const double> rhs) const {
    std::vector<double> x(rhs.begin(), rhs.end());
    solve_inplace(x);
    return x;
}

TridiagMatrix assemble_mass(const SpatialGrid& grid) {
    const int n = grid.n_dof();
    TridiagMatrix m;
    m.diag.assign(n, 2.0 * grid.h / 3.0);
    m.off.assign(n > 0 ? n - 1 : 0, grid.h / 6.0);
    return m;
}

TridiagMatrix assemble_stiffness(const SpatialGrid& grid) {
    const int n = grid.n_dof();
    TridiagMatrix a;
    a.diag.assign(n, 2.0 / grid.h);
    a.off.assign(n > 0 ? n - 1 : 0, -1.0 / grid.h);
    return a;
}

std::vector<double> project_l2(const SpatialGrid& grid,
                               const std::function<double(double)>& f) {
    // 3-point Gauss per cell, exact through degree 5; P1 basis contributions
    // are degree <= 1 so the mass side of the projection is reproduced to
    // rounding for any finite element function.
    static const double gp[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

    const int n = grid.n_dof();
    const double h = grid.h;
    std::vector<double> b(n, 0.0);
    for (int c = 0; c < grid.n_cells; ++c) {
        const double xl = static_cast<double>(c) / grid.n_cells;
        const double xr = static_cast<double>(c + 1) / grid.n_cells;
        const double xm = 0.5 * (xl + xr);
        for (int q = 0; q < 3; ++q) {
            const double xq = xm + 0.5 * h * gp[q];
            const double wq = 0.5 * h * gw[q];
            const double fv = f(xq);
            if (c > 0) b[c - 1] += wq * fv * (xr - xq) / h;
            if (c + 1 < grid.n_cells) b[c] += wq * fv * (xq - xl) / h;
        }
    }
    TridiagFactor mass_solver(assemble_mass(grid));
    mass_solver.solve_inplace(b);
    return b;
}

std::vector<double> mode_vector(const SpatialGrid& grid, int j) {
    if (j < 1 || j > grid.n_dof()) {
        throw std::invalid_argument("mode_vector: mode index out of range");
    }
    std::vector<double> v(grid.n_dof());
    for (int i = 0; i < grid.n_dof(); ++i) {
        v[i] = std::sin(j * std::numbers::pi * grid.nodes[i]);
    }
    return v;
}

double mode_eigenvalue(const SpatialGrid& grid, int j) {
    if (j < 1 || j > grid.n_dof()) {
        throw std::invalid_argument("mode_eigenvalue: mode index out of range");
    }
    const double th = j * std::numbers::pi * grid.h;
    const double c = std::cos(th);
    return 6.0 / (grid.h * grid.h) * (1.0 - c) / (2.0 + c);
}

double mode_coefficient(const SpatialGrid& grid, const TridiagMatrix& mass,
                        int j, std::span<const double> v) {
    const std::vector<double> vj = mode_vector(grid, j);
    const std::vector<double> mvj = mass.apply(vj);
    double num = 0.0;
    double den = 0.0;
    for (int i = 0; i < grid.n_dof(); ++i) {
        num += v[i] * mvj[i];
        den += vj[i] * mvj[i];
    }
    return num / den;
}

}  // namespace pidec
