// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cassert>
#include <span>
#include <vector>

namespace pidec {

/// Uniform time grid on [0, final_time] with n_steps backward Euler steps.
struct TimeGrid {
    double final_time = 0.0;
    int n_steps = 0;

    double dt() const { return final_time / n_steps; }
    double time(int n) const { return final_time * n / n_steps; }
    int n_levels() const { return n_steps + 1; }
};

/// Dense space-time grid function: one coefficient vector per time level
/// 0..n_steps. Controls and states share this layout; every trajectory-space
/// inner product ignores level 0 by convention.
class Trajectory {
  public:
    Trajectory() = default;
    Trajectory(int n_levels, int n_dof)
        : n_levels_(n_levels), n_dof_(n_dof),
          values_(static_cast<size_t>(n_levels) * n_dof, 0.0) {}

    int n_levels() const { return n_levels_; }
    int n_dof() const { return n_dof_; }

    std::span<double> level(int n) {
        assert(n >= 0 && n < n_levels_);
        return {values_.data() + static_cast<size_t>(n) * n_dof_, static_cast<size_t>(n_dof_)};
    }
    std::span<const double> level(int n) const {
        assert(n >= 0 && n < n_levels_);
        return {values_.data() + static_cast<size_t>(n) * n_dof_, static_cast<size_t>(n_dof_)};
    }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    /// this += a * other (same shape required)
    void add_scaled(double a, const Trajectory& other) {
        assert(other.n_levels_ == n_levels_ && other.n_dof_ == n_dof_);
        for (size_t i = 0; i < values_.size(); ++i) values_[i] += a * other.values_[i];
    }

    void scale(double a) {
        for (double& v : values_) v *= a;
    }

    void fill(double a) {
        for (double& v : values_) v = a;
    }

  private:
    int n_levels_ = 0;
    int n_dof_ = 0;
    std::vector<double> values_;
};

}  // namespace pidec
