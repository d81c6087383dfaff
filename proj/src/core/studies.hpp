// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace pidec {

struct StudyRow {
    int n_cells = 0;
    int n_steps = 0;
    double error = 0.0;
    double observed_order = 0.0;  // pairwise order vs previous row; NaN on the first
};

struct StudyTable {
    std::vector<StudyRow> rows;
    double fitted_order = 0.0;  // least-squares slope over the whole ladder
};

/// Spatial ladder for the decaying-sine benchmark driven by its closed-form
/// control: for each n_cells the step count scales as
/// n_steps_base * (n_cells / n_cells_first)^2 (k proportional to h^2), so
/// the first-order time error follows the second-order space error. Error
/// is the relative M-norm distance of y(T) from the exact final state.
StudyTable spatial_convergence(std::span<const int> cells_list, int n_steps_base);

/// Temporal ladder at fixed n_cells against the scalar mode oracle: initial
/// data and control are exact discrete mode-1 functions, so the PIDE solve
/// stays modal and the only discrepancy from the oracle (run with the
/// discrete pencil eigenvalue) is the time-stepping error.
StudyTable temporal_convergence(int n_cells, std::span<const int> steps_list,
                                int oracle_steps = 100000);

}  // namespace pidec
