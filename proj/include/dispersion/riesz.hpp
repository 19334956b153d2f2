#pragma once

// Finite translate systems {K(. - q)} and their Gram matrices. Translates
// live on the window taken as a circle of circumference width(), so the
// L2 norm of a translate is exactly the norm of K on that circle.

#include "dispersion/normalizer.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dispersion {

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return double(num) / double(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

// 0, then each positive rational q in Calkin-Wilf order followed by -q:
// 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, 3/2, -3/2, ...
std::vector<Rational> rational_sequence(std::size_t n);
std::vector<double> rational_enumeration(std::size_t n);

struct TranslateSystem {
    KernelSpec kernel;
    std::vector<double> points;
    Window window;
};

// Points pairwise distinct and inside the middle half of the window.
void require_valid(const TranslateSystem& sys);

// K(s) evaluated at s wrapped into [-width/2, width/2).
double periodic_kernel(const KernelSpec& k, const Window& w, double s);

struct GramReport {
    Eigen::MatrixXd gram;
    Eigen::VectorXd eigenvalues; // ascending
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double k_norm_sq = 0.0;
    double tight_claim_gap = 0.0; // max |gram(i, j)|, i != j
};

GramReport gram_matrix(const TranslateSystem& sys, double tol);

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
    double lower_ratio = 0.0; // lower / ||K||^2
    double upper_ratio = 0.0; // upper / ||K||^2
};

FrameBounds frame_bounds_estimate(const GramReport& report);

// rho(mu) = integral over the window of f(y) K(mu - y) dy. Not periodized,
// so it matches the normalization integrals of model.hpp term by term.
Eigen::VectorXd orthogonality_residual(const PerturbationSpec& f, const KernelSpec& k,
                                       const Window& w, std::span<const double> mu_grid, double tol);

} // namespace dispersion
