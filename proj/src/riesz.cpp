#include "dispersion/riesz.hpp"

#include "dispersion/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace dispersion {

std::vector<Rational> rational_sequence(std::size_t n)
{
    std::vector<Rational> out;
    out.reserve(n);
    if (n == 0)
        return out;
    out.push_back({0, 1});

    // Calkin-Wilf successor: a/b -> b / ((2 floor(a/b) + 1) b - a)
    std::int64_t a = 1, b = 1;
    while (out.size() < n) {
        out.push_back({a, b});
        if (out.size() < n)
            out.push_back({-a, b});
        const std::int64_t next_den = (2 * (a / b) + 1) * b - a;
        a = b;
        b = next_den;
    }
    return out;
}

std::vector<double> rational_enumeration(std::size_t n)
{
    if (n == 0)
        throw ValidationError("rational enumeration needs n >= 1");
    std::vector<double> out;
    out.reserve(n);
    for (const Rational& q : rational_sequence(n))
        out.push_back(q.value());
    return out;
}

void require_valid(const TranslateSystem& sys)
{
    require_valid(sys.kernel);
    require_valid(sys.window);
    if (sys.points.empty())
        throw ValidationError("translate system needs at least one point");

    const double quarter = 0.25 * sys.window.width();
    const double lo = sys.window.lo + quarter;
    const double hi = sys.window.hi - quarter;
    for (double p : sys.points) {
        if (!(p >= lo && p <= hi)) {
            std::ostringstream os;
            os << "translation point " << p << " is outside the middle half [" << lo << ", " << hi
               << "] of the window";
            throw ValidationError(os.str());
        }
    }
    std::vector<double> sorted = sys.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("translation points must be pairwise distinct");
}

double periodic_kernel(const KernelSpec& k, const Window& w, double s)
{
    const double width = w.width();
    const double wrapped = s - width * std::floor((s + 0.5 * width) / width);
    return kernel_eval(k, wrapped);
}

GramReport gram_matrix(const TranslateSystem& sys, double tol)
{
    require_valid(sys);
    const Window& w = sys.window;
    const double half = 0.5 * w.width();
    const Eigen::Index n = Eigen::Index(sys.points.size());

    GramReport report;
    {
        const std::array<double, 1> breaks{0.0};
        report.k_norm_sq =
            integrate_or_throw(
                [&](double s) {
                    const double v = kernel_eval(sys.kernel, s);
                    return v * v;
                },
                -half, half, breaks, {.abs_tol = tol}, "kernel norm")
                .value;
    }

    report.gram.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double pi = sys.points[std::size_t(i)];
            const double pj = sys.points[std::size_t(j)];
            const std::array<double, 6> breaks{pi, pj, pi - half, pi + half, pj - half, pj + half};
            const double v =
                integrate_or_throw(
                    [&](double y) {
                        return periodic_kernel(sys.kernel, w, y - pi) *
                               periodic_kernel(sys.kernel, w, y - pj);
                    },
                    w.lo, w.hi, breaks, {.abs_tol = tol}, "gram entry")
                    .value;
            report.gram(i, j) = v;
            report.gram(j, i) = v;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(report.gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("symmetric eigen-solver failed on the gram matrix");
    report.eigenvalues = solver.eigenvalues();
    report.min_eigenvalue = report.eigenvalues[0];
    report.max_eigenvalue = report.eigenvalues[n - 1];

    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j)
                report.tight_claim_gap = std::max(report.tight_claim_gap, std::abs(report.gram(i, j)));
    return report;
}

FrameBounds frame_bounds_estimate(const GramReport& report)
{
    FrameBounds b;
    b.lower = report.min_eigenvalue;
    b.upper = report.max_eigenvalue;
    b.lower_ratio = b.lower / report.k_norm_sq;
    b.upper_ratio = b.upper / report.k_norm_sq;
    return b;
}

Eigen::VectorXd orthogonality_residual(const PerturbationSpec& f, const KernelSpec& k,
                                       const Window& w, std::span<const double> mu_grid, double tol)
{
    require_valid(f);
    require_valid(k);
    require_valid(w);

    Eigen::VectorXd rho(Eigen::Index(mu_grid.size()));
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
        const double mu = mu_grid[i];
        if (!w.contains(mu)) {
            std::ostringstream os;
            os << "position " << mu << " lies outside the window";
            throw ValidationError(os.str());
        }
        const std::array<double, 2> breaks{mu, 0.0};
        rho[Eigen::Index(i)] =
            integrate_or_throw([&](double y) { return perturbation_eval(f, y) * kernel_eval(k, mu - y); },
                               w.lo, w.hi, breaks, {.abs_tol = tol}, "orthogonality residual")
                .value;
    }
    return rho;
}

} // namespace dispersion
