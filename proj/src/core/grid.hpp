// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace pidec {

/// Uniform partition of (0,1) with homogeneous Dirichlet ends. Unknowns live
/// on the interior nodes x_i = i*h, i = 1..n_cells-1.
struct SpatialGrid {
    int n_cells = 0;
    double h = 0.0;
    std::vector<double> nodes;  // interior nodes only

    int n_dof() const { return n_cells - 1; }
};

/// Builds the grid; throws std::invalid_argument for n_cells < 2.
SpatialGrid make_grid(int n_cells);

/// Symmetric tridiagonal matrix stored as main diagonal plus one band.
struct TridiagMatrix {
    std::vector<double> diag;
    std::vector<double> off;  // off.size() == diag.size() - 1

    int size() const { return static_cast<int>(diag.size()); }
    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;
};

/// LDL^T factorization of an SPD tridiagonal matrix. Construction throws
/// std::runtime_error when a pivot is not strictly positive, so a successful
/// build doubles as the SPD check.
class TridiagFactor {
  public:
    TridiagFactor() = default;
    explicit TridiagFactor(const TridiagMatrix& a);

    void solve_inplace(std::span<double> x) const;
    std::vector<double> solve(std::span<const double> rhs) const;
    int size() const { return static_cast<int>(d_.size()); }

  private:
    std::vector<double> d_;  // pivots
    std::vector<double> l_;  // subdiagonal multipliers
};

/// P1 mass matrix: diag 2h/3, off-diagonal h/6.
TridiagMatrix assemble_mass(const SpatialGrid& grid);

/// P1 stiffness matrix: diag 2/h, off-diagonal -1/h.
TridiagMatrix assemble_stiffness(const SpatialGrid& grid);

/// L2 projection onto the P1 space: solves M c = b with b_i = integral of
/// f*phi_i, computed cell by cell with 3-point Gauss quadrature.
std::vector<double> project_l2(const SpatialGrid& grid,
                               const std::function<double(double)>& f);

/// j-th generalized eigenvector of (stiffness, mass) on the uniform grid,
/// v_j(x_i) = sin(j*pi*x_i). Valid for 1 <= j <= n_dof. The sine vectors are
/// eigenvectors of both Toeplitz matrices, hence exactly M-orthogonal.
std::vector<double> mode_vector(const SpatialGrid& grid, int j);

/// Matching generalized eigenvalue (6/h^2)(1-cos j*pi*h)/(2+cos j*pi*h).
double mode_eigenvalue(const SpatialGrid& grid, int j);

/// Coefficient of v in the direction of mode j: <v, v_j>_M / <v_j, v_j>_M.
double mode_coefficient(const SpatialGrid& grid, const TridiagMatrix& mass,
                        int j, std::span<const double> v);

}  // namespace pidec
