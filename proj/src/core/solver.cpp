// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pidec {

namespace {

const TridiagMatrix& memory_operator(const OperatorContext& ctx) {
    return ctx.kernel.form == KernelForm::mass ? ctx.mass : ctx.stiffness;
}

void check_state_size(const OperatorContext& ctx, std::span<const double> y0) {
    if (static_cast<int>(y0.size()) != ctx.n_dof()) {
        throw std::invalid_argument("initial state has wrong dimension");
    }
}

void check_trajectory_shape(const OperatorContext& ctx, const Trajectory& t,
                            const char* what) {
    if (t.n_levels() != ctx.times.n_levels() || t.n_dof() != ctx.n_dof()) {
        throw std::invalid_argument(std::string(what) + " has wrong shape");
    }
}

/// Running evaluation of the left-rectangle Volterra sums
///   S^n = sum_{j=0}^{n-1} kappa(t_n, t_j) * B0 y^j.
/// advance() consumes level n-1 and yields S^n; exponential kernels keep an
/// O(1)-per-step history, other kinds cache B0 y^j and re-weight.
class VolterraSums {
  public:
    explicit VolterraSums(const OperatorContext& ctx)
        : ctx_(ctx), active_(!ctx.kernel.is_none()) {
        if (!active_) return;
        const int n = ctx.n_dof();
        sum_.assign(n, 0.0);
        scratch_.assign(n, 0.0);
        if (ctx.kernel.kind == KernelKind::exponential) {
            decay_ = std::exp(-ctx.kernel.rate * ctx.times.dt());
        }
    }

    bool active() const { return active_; }

    std::span<const double> advance(std::span<const double> y_prev) {
        const int n = ctx_.n_dof();
        const TridiagMatrix& b0 = memory_operator(ctx_);
        ++level_;
        if (ctx_.kernel.kind == KernelKind::exponential) {
            b0.apply(y_prev, scratch_);
            for (int i = 0; i < n; ++i) sum_[i] = decay_ * (sum_[i] + scratch_[i]);
        } else {
            history_.emplace_back(n);
            b0.apply(y_prev, history_.back());
            const double tn = ctx_.times.time(level_);
            for (int i = 0; i < n; ++i) sum_[i] = 0.0;
            for (int j = 0; j < level_; ++j) {
                const double w = ctx_.kernel.kappa(tn, ctx_.times.time(j));
                const std::vector<double>& hj = history_[j];
                for (int i = 0; i < n; ++i) sum_[i] += w * hj[i];
            }
        }
        return sum_;
    }

  private:
    const OperatorContext& ctx_;
    bool active_ = false;
    int level_ = 0;  // last produced sum is for this level
    double decay_ = 0.0;
    std::vector<double> sum_;
    std::vector<double> scratch_;
    std::vector<std::vector<double>> history_;
};

}  // namespace

Trajectory solve_heat(const OperatorContext& ctx, const Trajectory* source,
                      std::span<const double> y0) {
    check_state_size(ctx, y0);
    if (source) check_trajectory_shape(ctx, *source, "source");

    const int n = ctx.n_dof();
    const int n_steps = ctx.n_steps();
    const double k = ctx.times.dt();

    Trajectory y(n_steps + 1, n);
    std::copy(y0.begin(), y0.end(), y.level(0).begin());

    std::vector<double> rhs(n), tmp(n);
    for (int step = 1; step <= n_steps; ++step) {
        ctx.mass.apply(y.level(step - 1), rhs);
        if (source) {
            ctx.mass.apply(source->level(step), tmp);
            for (int i = 0; i < n; ++i) rhs[i] += k * tmp[i];
        }
        auto out = y.level(step);
        std::copy(rhs.begin(), rhs.end(), out.begin());
        ctx.step_solver.solve_inplace(out);
    }
    return y;
}

Trajectory solve_forward(const OperatorContext& ctx, const Trajectory* control,
                         std::span<const double> y0) {
    check_state_size(ctx, y0);
    if (control) check_trajectory_shape(ctx, *control, "control");

    const int n = ctx.n_dof();
    const int n_steps = ctx.n_steps();
    const double k = ctx.times.dt();

    Trajectory y(n_steps + 1, n);
    std::copy(y0.begin(), y0.end(), y.level(0).begin());

    VolterraSums memory(ctx);
    std::vector<double> rhs(n), tmp(n), masked(n);
    for (int step = 1; step <= n_steps; ++step) {
        ctx.mass.apply(y.level(step - 1), rhs);
        if (memory.active()) {
            const std::span<const double> s = memory.advance(y.level(step - 1));
            for (int i = 0; i < n; ++i) rhs[i] += k * k * s[i];
        }
        if (control) {
            const std::span<const double> u = control->level(step);
            if (ctx.window.is_identity()) {
                ctx.mass.apply(u, tmp);
            } else {
                for (int i = 0; i < n; ++i) masked[i] = ctx.window.weights[i] * u[i];
                ctx.mass.apply(masked, tmp);
            }
            for (int i = 0; i < n; ++i) rhs[i] += k * tmp[i];
        }
        auto out = y.level(step);
        std::copy(rhs.begin(), rhs.end(), out.begin());
        ctx.step_solver.solve_inplace(out);
    }
    return y;
}

Trajectory apply_memory(const OperatorContext& ctx, const Trajectory& y) {
    check_trajectory_shape(ctx, y, "state trajectory");

    const int n = ctx.n_dof();
    const int n_steps = ctx.n_steps();
    const double k = ctx.times.dt();

    Trajectory w(n_steps + 1, n);
    if (ctx.kernel.is_none()) return w;

    VolterraSums memory(ctx);
    for (int step = 1; step <= n_steps; ++step) {
        const std::span<const double> s = memory.advance(y.level(step - 1));
        auto out = w.level(step);
        for (int i = 0; i < n; ++i) out[i] = k * s[i];
        ctx.mass_solver.solve_inplace(out);
    }
    return w;
}

}  // namespace pidec
