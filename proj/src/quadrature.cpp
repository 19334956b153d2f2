#include "dispersion/quadrature.hpp"

#include "dispersion/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace dispersion {

namespace {

// Kronrod abscissae on [0, 1); odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
};

struct LargerError {
    bool operator()(const Panel& l, const Panel& r) const
    {
        if (l.error != r.error)
            return l.error < r.error;
        return l.a > r.a; // deterministic tie-break
    }
};

Panel evaluate(const Integrand& f, double a, double b)
{
    const auto est = gauss_kronrod_15(f, a, b);
    // roundoff floor: differences below this are not evidence of convergence
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * est.kronrod_abs;
    return {a, b, est.kronrod, std::max(std::abs(est.kronrod - est.gauss), floor)};
}

} // namespace

PanelEstimate gauss_kronrod_15(const Integrand& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = fc * wgk[7];
    double kronrod_abs = std::abs(fc) * wgk[7];
    double gauss = fc * wg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double fl = f(center - dx);
        const double fr = f(center + dx);
        const double sum = fl + fr;
        kronrod += wgk[j] * sum;
        kronrod_abs += wgk[j] * (std::abs(fl) + std::abs(fr));
        if (j % 2 == 1)
            gauss += wg[j / 2] * sum;
    }
    return {kronrod * half, gauss * half, kronrod_abs * std::abs(half)};
}

Integral integrate(const Integrand& f, double lo, double hi, std::span<const double> breakpoints,
                   const QuadratureOptions& options)
{
    if (!(hi > lo))
        throw ValidationError("integration interval must satisfy lo < hi");
    if (!(options.abs_tol > 0.0))
        throw ValidationError("quadrature tolerance must be positive");

    std::vector<double> cuts{lo, hi};
    for (double x : breakpoints)
        if (x > lo && x < hi)
            cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel, std::vector<Panel>, LargerError> queue;
    double total_error = 0.0;
    const std::size_t split = std::max<std::size_t>(1, options.initial_split);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = cuts[s];
        const double b = cuts[s + 1];
        for (std::size_t k = 0; k < split; ++k) {
            const double pa = k == 0 ? a : a + (b - a) * double(k) / double(split);
            const double pb = k + 1 == split ? b : a + (b - a) * double(k + 1) / double(split);
            Panel p = evaluate(f, pa, pb);
            total_error += p.error;
            queue.push(p);
        }
    }

    while (total_error > options.abs_tol && queue.size() < options.max_panels) {
        const Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            break; // panel no longer divisible in double precision
        queue.pop();
        Panel left = evaluate(f, worst.a, mid);
        Panel right = evaluate(f, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Sum in positional order so the result does not depend on refinement history.
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });

    Integral result;
    for (const Panel& p : panels) {
        result.value += p.value;
        result.error += p.error;
    }
    result.panels = panels.size();
    result.converged = result.error <= options.abs_tol;
    return result;
}

Integral integrate_or_throw(const Integrand& f, double lo, double hi,
                            std::span<const double> breakpoints, const QuadratureOptions& options,
                            const char* what)
{
    Integral r = integrate(f, lo, hi, breakpoints, options);
    if (!r.converged) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": quadrature did not reach tolerance " << options.abs_tol << " within "
           << options.max_panels << " panels (best estimate " << r.value << ", error bound "
           << r.error << ")";
        throw QuadratureError(os.str(), r.value, r.error);
    }
    return r;
}

} // namespace dispersion
