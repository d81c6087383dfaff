// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/oracle.hpp"

#include <array>
#include <stdexcept>

namespace pidec {

OracleSolution oracle_trajectory(const ModeProblem& p, double final_time, int n_fine) {
    if (!(final_time > 0.0)) {
        throw std::invalid_argument("oracle_trajectory: final_time must be positive");
    }
    if (n_fine < 1) {
        throw std::invalid_argument("oracle_trajectory: n_fine must be at least 1");
    }

    OracleSolution sol;
    sol.dt = final_time / n_fine;
    sol.alpha.resize(n_fine + 1);
    sol.memory.resize(n_fine + 1);
    sol.alpha[0] = p.alpha0;
    sol.memory[0] = 0.0;

    const auto u = [&p](double t) { return p.control ? p.control(t) : 0.0; };
    const auto rhs = [&](double t, double a, double m) {
        return std::array<double, 2>{-p.lambda * a + p.memory_amplitude * m + u(t),
                                     -p.mu * m + a};
    };

    const double h = sol.dt;
    for (int n = 0; n < n_fine; ++n) {
        const double t = n * h;
        const double a = sol.alpha[n];
        const double m = sol.memory[n];
        const auto k1 = rhs(t, a, m);
        const auto k2 = rhs(t + 0.5 * h, a + 0.5 * h * k1[0], m + 0.5 * h * k1[1]);
        const auto k3 = rhs(t + 0.5 * h, a + 0.5 * h * k2[0], m + 0.5 * h * k2[1]);
        const auto k4 = rhs(t + h, a + h * k3[0], m + h * k3[1]);
        sol.alpha[n + 1] = a + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        sol.memory[n + 1] = m + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    }
    return sol;
}

double oracle_final(const ModeProblem& p, double final_time, int n_fine) {
    return oracle_trajectory(p, final_time, n_fine).final_alpha();
}

}  // namespace pidec
