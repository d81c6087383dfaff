// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#include "core/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "core/solver.hpp"

namespace pidec {

namespace {

const TridiagMatrix& memory_operator(const OperatorContext& ctx) {
    return ctx.kernel.form == KernelForm::mass ? ctx.mass : ctx.stiffness;
}

void check_vector_size(const OperatorContext& ctx, std::span<const double> v,
                       const char* what) {
    if (static_cast<int>(v.size()) != ctx.n_dof()) {
        throw std::invalid_argument(std::string(what) + " has wrong dimension");
    }
}

void check_trajectory_shape(const OperatorContext& ctx, const Trajectory& t,
                            const char* what) {
    if (t.n_levels() != ctx.times.n_levels() || t.n_dof() != ctx.n_dof()) {
        throw std::invalid_argument(std::string(what) + " has wrong shape");
    }
}

}  // namespace

double x_inner(const OperatorContext& ctx, std::span<const double> v,
               std::span<const double> w) {
    check_vector_size(ctx, v, "vector");
    check_vector_size(ctx, w, "vector");
    const int n = ctx.n_dof();
    const std::vector<double>& d = ctx.mass.diag;
    const std::vector<double>& o = ctx.mass.off;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double mw = d[i] * w[i];
        if (i > 0) mw += o[i - 1] * w[i - 1];
        if (i + 1 < n) mw += o[i] * w[i + 1];
        s += v[i] * mw;
    }
    return s;
}

double x_norm(const OperatorContext& ctx, std::span<const double> v) {
    return std::sqrt(x_inner(ctx, v, v));
}

double y_inner(const OperatorContext& ctx, const Trajectory& a, const Trajectory& b) {
    check_trajectory_shape(ctx, a, "trajectory");
    check_trajectory_shape(ctx, b, "trajectory");
    const double k = ctx.times.dt();
    double s = 0.0;
    for (int n = 1; n <= ctx.n_steps(); ++n) {
        s += k * x_inner(ctx, a.level(n), b.level(n));
    }
    return s;
}

double y_norm(const OperatorContext& ctx, const Trajectory& a) {
    return std::sqrt(y_inner(ctx, a, a));
}

void apply_window(const OperatorContext& ctx, std::span<const double> v,
                  std::span<double> out) {
    check_vector_size(ctx, v, "vector");
    const int n = ctx.n_dof();
    if (ctx.window.is_identity()) {
        for (int i = 0; i < n; ++i) out[i] = v[i];
        return;
    }
    for (int i = 0; i < n; ++i) out[i] = ctx.window.weights[i] * v[i];
}

void apply_window_adjoint(const OperatorContext& ctx, std::span<const double> v,
                          std::span<double> out) {
    check_vector_size(ctx, v, "vector");
    const int n = ctx.n_dof();
    if (ctx.window.is_identity()) {
        for (int i = 0; i < n; ++i) out[i] = v[i];
        return;
    }
    std::vector<double> tmp(n);
    ctx.mass.apply(v, tmp);
    for (int i = 0; i < n; ++i) tmp[i] *= ctx.window.weights[i];
    std::copy(tmp.begin(), tmp.end(), out.begin());
    ctx.mass_solver.solve_inplace(out);
}

std::vector<double> apply_L(const OperatorContext& ctx, const Trajectory& v) {
    check_trajectory_shape(ctx, v, "source");
    const std::vector<double> zero(ctx.n_dof(), 0.0);
    const Trajectory y = solve_heat(ctx, &v, zero);
    const auto last = y.level(ctx.n_steps());
    return {last.begin(), last.end()};
}

Trajectory apply_L_adjoint(const OperatorContext& ctx, std::span<const double> z) {
    check_vector_size(ctx, z, "final-state vector");
    const int n = ctx.n_dof();
    const int n_steps = ctx.n_steps();

    Trajectory p(n_steps + 1, n);
    std::vector<double> cur(z.begin(), z.end());
    std::vector<double> tmp(n);
    for (int level = n_steps; level >= 1; --level) {
        ctx.mass.apply(cur, tmp);
        ctx.step_solver.solve_inplace(tmp);
        cur = tmp;
        std::copy(cur.begin(), cur.end(), p.level(level).begin());
    }
    return p;
}

std::vector<double> apply_E(const OperatorContext& ctx, const Trajectory& u) {
    check_trajectory_shape(ctx, u, "control");
    const Trajectory y = solve_forward(ctx, &u, ctx.y0);
    const auto last = y.level(ctx.n_steps());
    std::vector<double> out(ctx.n_dof());
    for (int i = 0; i < ctx.n_dof(); ++i) out[i] = last[i] - ctx.heat_final[i];
    return out;
}

std::vector<double> apply_E_lin(const OperatorContext& ctx, const Trajectory& u) {
    check_trajectory_shape(ctx, u, "control");
    const std::vector<double> zero(ctx.n_dof(), 0.0);
    const Trajectory y = solve_forward(ctx, &u, zero);
    const auto last = y.level(ctx.n_steps());
    return {last.begin(), last.end()};
}

Trajectory apply_E_adjoint(const OperatorContext& ctx, std::span<const double> z) {
    check_vector_size(ctx, z, "final-state vector");
    const int n = ctx.n_dof();
    const int n_steps = ctx.n_steps();
    const double k = ctx.times.dt();
    const bool has_memory = !ctx.kernel.is_none();
    const bool exponential = ctx.kernel.kind == KernelKind::exponential;
    const TridiagMatrix& b0 = memory_operator(ctx);

    Trajectory p(n_steps + 1, n);
    std::vector<double> rhs(n), tmp(n);

    ctx.mass.apply(z, rhs);
    ctx.step_solver.solve_inplace(rhs);
    std::copy(rhs.begin(), rhs.end(), p.level(n_steps).begin());

    // Reverse history for the transposed Volterra coupling
    //   R^n = sum_{l=n+1}^{N} kappa(t_l, t_n) B0 p^l.
    const double decay = exponential ? std::exp(-ctx.kernel.rate * k) : 0.0;
    std::vector<double> rev(has_memory ? n : 0, 0.0);
    std::vector<std::vector<double>> future;  // B0 p^l for l = N down to n+1

    for (int level = n_steps - 1; level >= 1; --level) {
        ctx.mass.apply(p.level(level + 1), rhs);
        if (has_memory) {
            if (exponential) {
                b0.apply(p.level(level + 1), tmp);
                for (int i = 0; i < n; ++i) rev[i] = decay * (rev[i] + tmp[i]);
            } else {
                future.emplace_back(n);
                b0.apply(p.level(level + 1), future.back());
                const double tn = ctx.times.time(level);
                for (int i = 0; i < n; ++i) rev[i] = 0.0;
                for (size_t j = 0; j < future.size(); ++j) {
                    const int l = n_steps - static_cast<int>(j);
                    const double w = ctx.kernel.kappa(ctx.times.time(l), tn);
                    for (int i = 0; i < n; ++i) rev[i] += w * future[j][i];
                }
            }
            for (int i = 0; i < n; ++i) rhs[i] += k * k * rev[i];
        }
        ctx.step_solver.solve_inplace(rhs);
        std::copy(rhs.begin(), rhs.end(), p.level(level).begin());
    }

    if (!ctx.window.is_identity()) {
        for (int level = 1; level <= n_steps; ++level) {
            auto pl = p.level(level);
            apply_window_adjoint(ctx, pl, pl);
        }
    }
    return p;
}

std::vector<double> apply_gramian(const OperatorContext& ctx, std::span<const double> z) {
    check_vector_size(ctx, z, "final-state vector");
    Trajectory q = apply_L_adjoint(ctx, z);
    if (!ctx.window.is_identity()) {
        std::vector<double> tmp(ctx.n_dof());
        for (int level = 1; level <= ctx.n_steps(); ++level) {
            auto ql = q.level(level);
            apply_window_adjoint(ctx, ql, tmp);
            apply_window(ctx, tmp, ql);
        }
    }
    return apply_L(ctx, q);
}

ResolventResult solve_resolvent(const OperatorContext& ctx, double delta,
                                std::span<const double> rhs, double tol,
                                int max_iters) {
    check_vector_size(ctx, rhs, "right-hand side");
    if (!(delta > 0.0)) throw std::invalid_argument("solve_resolvent: delta must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_resolvent: tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("solve_resolvent: max_iters must be at least 1");

    const int n = ctx.n_dof();
    ResolventResult res;
    res.solution.assign(n, 0.0);

    const double rhs_norm = x_norm(ctx, rhs);
    if (rhs_norm == 0.0) {
        res.converged = true;
        return res;
    }

    // CG in the X-inner product on the SPD map v -> delta*v + W v.
    std::vector<double> r(rhs.begin(), rhs.end());
    std::vector<double> p(r), ap(n);
    double rr = x_inner(ctx, r, r);
    for (int it = 0; it < max_iters; ++it) {
        ap = apply_gramian(ctx, p);
        for (int i = 0; i < n; ++i) ap[i] += delta * p[i];
        const double alpha = rr / x_inner(ctx, p, ap);
        for (int i = 0; i < n; ++i) res.solution[i] += alpha * p[i];
        for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        const double rr_next = x_inner(ctx, r, r);
        res.iterations = it + 1;
        if (std::sqrt(rr_next) <= tol * rhs_norm) {
            res.converged = true;
            res.relative_residual = std::sqrt(rr_next) / rhs_norm;
            return res;
        }
        const double beta = rr_next / rr;
        rr = rr_next;
        for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    res.relative_residual = std::sqrt(rr) / rhs_norm;
    return res;
}

}  // namespace pidec
