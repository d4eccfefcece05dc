#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <type_traits>
#include <vector>

#include "mfunc/types.hpp"

namespace mfunc {

struct QuadConfig {
    double abs_tol = 1e-11;
    int max_intervals = 20000;
    // pre-split count for integrands whose oscillation the caller can bound
    int initial_panels = 1;
};

template <class T>
struct QuadOutcome {
    T value{};
    double error = 0.0;
};

namespace detail {

// Gauss(7)/Kronrod(15) pair on [-1,1].
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};
inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class F, class T>
QuadOutcome<T> gk15_panel(F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T fc = f(mid);
    T k15 = kK15Weights[7] * fc;
    T g7 = kG7Weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGK15Nodes[i];
        T pair = f(mid + dx) + f(mid - dx);
        k15 += kK15Weights[i] * pair;
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * pair;
    }
    k15 *= half;
    g7 *= half;
    return {k15, std::abs(k15 - g7)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a,b] to absolute tolerance.
/// Works for real and complex integrands. Bisects the worst interval until
/// the summed error estimate is below tol; throws numerical_error carrying
/// the achieved estimate if the interval budget runs out first.
template <class F, class T = std::invoke_result_t<F&, double>>
QuadOutcome<T> integrate_gk(F&& f, double a, double b, const QuadConfig& cfg = {}) {
    if (a == b) return {T{}, 0.0};
    struct Interval {
        double a, b, error;
        T value;
    };
    std::vector<Interval> heap;
    auto by_error = [](const Interval& p, const Interval& q) { return p.error < q.error; };

    const int panels = std::clamp(cfg.initial_panels, 1, cfg.max_intervals);
    heap.reserve(static_cast<std::size_t>(panels) + 64);
    const double step = (b - a) / panels;
    double err_sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        double lo = a + i * step;
        double hi = (i + 1 == panels) ? b : a + (i + 1) * step;
        auto r = detail::gk15_panel<F, T>(f, lo, hi);
        heap.push_back({lo, hi, r.error, r.value});
        err_sum += r.error;
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    auto resync = [&] {  // undo accumulation drift in the running error sum
        err_sum = 0.0;
        for (const auto& iv : heap) err_sum += iv.error;
    };

    int used = panels;
    int since_resync = 0;
    while (err_sum > cfg.abs_tol) {
        if (++since_resync >= 4096) {
            since_resync = 0;
            resync();
            if (err_sum <= cfg.abs_tol) break;
        }
        if (used + 1 > cfg.max_intervals) {
            resync();
            if (err_sum <= cfg.abs_tol) break;
            throw numerical_error(
                "integrate_gk: interval budget " + std::to_string(cfg.max_intervals) +
                    " exhausted, error estimate " + std::to_string(err_sum) +
                    " > tol " + std::to_string(cfg.abs_tol),
                err_sum);
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        Interval worst = heap.back();
        heap.pop_back();
        err_sum -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at rounding resolution; accept as-is
            heap.push_back({worst.a, worst.b, 0.0, worst.value});
            std::push_heap(heap.begin(), heap.end(), by_error);
            continue;
        }
        auto left = detail::gk15_panel<F, T>(f, worst.a, mid);
        auto right = detail::gk15_panel<F, T>(f, mid, worst.b);
        heap.push_back({worst.a, mid, left.error, left.value});
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back({mid, worst.b, right.error, right.value});
        std::push_heap(heap.begin(), heap.end(), by_error);
        err_sum += left.error + right.error;
        ++used;
    }

    // deterministic accumulation: sum in interval order, not heap order
    std::sort(heap.begin(), heap.end(),
              [](const Interval& p, const Interval& q) { return p.a < q.a; });
    T value{};
    double err = 0.0;
    for (const auto& iv : heap) {
        value += iv.value;
        err += iv.error;
    }
    return {value, err};
}

}  // namespace mfunc
