// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

namespace pidec {

/// Scalar modal reduction of the state equation with a separable exponential
/// kernel. On an eigenmode with eigenvalue lambda the equation collapses to
///   alpha' = -lambda*alpha + amplitude*m + u(t),
///   m'     = -mu*m + alpha,            m(0) = 0,
/// where m(t) = int_0^t exp(-mu*(t-s)) alpha(s) ds. Serves as an
/// independent high-accuracy reference for the trajectory of a single mode.
struct ModeProblem {
    double lambda = 0.0;             // modal decay rate
    double mu = 0.0;                 // kernel decay rate
    double memory_amplitude = 0.0;   // 0 switches the memory channel off
    double alpha0 = 0.0;
    std::function<double(double)> control;  // optional, null means zero
};

struct OracleSolution {
    std::vector<double> alpha;   // n_fine + 1 samples on the uniform fine grid
    std::vector<double> memory;  // the auxiliary memory state m
    double dt = 0.0;

    double final_alpha() const { return alpha.back(); }
};

/// Integrates the mode problem with the classical fourth-order Runge-Kutta
/// scheme on n_fine uniform steps. Throws std::invalid_argument for
/// non-positive horizon or step count.
OracleSolution oracle_trajectory(const ModeProblem& p, double final_time, int n_fine);

/// Convenience wrapper returning only alpha(final_time).
double oracle_final(const ModeProblem& p, double final_time, int n_fine);

}  // namespace pidec
