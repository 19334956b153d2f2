#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.

#include <cstddef>
#include <functional>
#include <span>

namespace dispersion {

struct Integral {
    double value = 0.0;
    double error = 0.0; // sum over panels of max(|K15 - G7|, roundoff floor)
    std::size_t panels = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    std::size_t max_panels = 10000;
    // Every breakpoint segment starts split into this many equal panels.
    std::size_t initial_split = 8;
};

using Integrand = std::function<double(double)>;

// Breakpoints strictly inside (lo, hi) become panel boundaries; others are
// ignored. Never throws on non-convergence: inspect Integral::converged.
Integral integrate(const Integrand& f, double lo, double hi, std::span<const double> breakpoints,
                   const QuadratureOptions& options = {});

// As integrate(), but throws QuadratureError with the best estimate on
// non-convergence. `what` names the quantity in the message.
Integral integrate_or_throw(const Integrand& f, double lo, double hi,
                            std::span<const double> breakpoints, const QuadratureOptions& options,
                            const char* what);

struct PanelEstimate {
    double kronrod = 0.0;
    double gauss = 0.0;
    double kronrod_abs = 0.0; // Kronrod rule applied to |f|
};

// Single 15-point Kronrod / embedded 7-point Gauss evaluation on [a, b].
PanelEstimate gauss_kronrod_15(const Integrand& f, double a, double b);

} // namespace dispersion
