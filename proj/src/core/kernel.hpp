// Copyright (c) 2026 the pidec developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

namespace pidec {

enum class KernelKind {
    none,         // no memory term
    exponential,  // kappa(t,s) = exp(-rate*(t-s)); O(N) history recurrence
    separable,    // kappa(t,s) = lag(t-s)
    general,      // kappa(t,s) arbitrary
};

/// Spatial part of the memory operator: multiples of the mass or the
/// stiffness bilinear form.
enum class KernelForm {
    mass,
    stiffness,
};

/// Scalar-kernel memory term kappa(t,s)*B0 with B0 in {M, A}.
struct KernelSpec {
    KernelKind kind = KernelKind::none;
    KernelForm form = KernelForm::mass;
    double rate = 0.0;
    std::function<double(double)> lag;
    std::function<double(double, double)> fn;

    static KernelSpec none_kernel() { return {}; }

    static KernelSpec exponential(double rate, KernelForm form = KernelForm::mass) {
        KernelSpec k;
        k.kind = KernelKind::exponential;
        k.form = form;
        k.rate = rate;
        return k;
    }

    static KernelSpec separable(std::function<double(double)> lag,
                                KernelForm form = KernelForm::mass) {
        if (!lag) throw std::invalid_argument("KernelSpec::separable: missing kernel function");
        KernelSpec k;
        k.kind = KernelKind::separable;
        k.form = form;
        k.lag = std::move(lag);
        return k;
    }

    static KernelSpec general(std::function<double(double, double)> fn,
                              KernelForm form = KernelForm::mass) {
        if (!fn) throw std::invalid_argument("KernelSpec::general: missing kernel function");
        KernelSpec k;
        k.kind = KernelKind::general;
        k.form = form;
        k.fn = std::move(fn);
        return k;
    }

    bool is_none() const { return kind == KernelKind::none; }

    double kappa(double t, double s) const {
        switch (kind) {
            case KernelKind::none: return 0.0;
            case KernelKind::exponential: return std::exp(-rate * (t - s));
            case KernelKind::separable: return lag(t - s);
            case KernelKind::general: return fn(t, s);
        }
        return 0.0;
    }
};

}  // namespace pidec
