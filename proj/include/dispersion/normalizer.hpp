#pragma once

// Kernel K_lambda(y) = exp{-lambda d(y; 0)}, its integral over a truncated
// support window, the constant (trivial) normalizer and perturbed normalizers
// a_tilde + f(y).

#include "dispersion/deviance.hpp"
#include "dispersion/quadrature.hpp"

#include <Eigen/Core>

#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace dispersion {

struct KernelSpec {
    UnitDeviancePair pair;
    double lambda = 1.0; // lambda = 0 is accepted as the K == 1 boundary case
};

void require_valid(const KernelSpec& kernel);

template <std::floating_point Scalar>
Scalar kernel_eval(const KernelSpec& k, Scalar y)
{
    using std::exp;
    return exp(-Scalar(k.lambda) * deviance_at(k.pair, y));
}

template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> kernel_eval(
    const KernelSpec& k, const Eigen::ArrayBase<Derived>& y)
{
    using Scalar = typename Derived::Scalar;
    return y.derived().unaryExpr([&k](Scalar x) { return kernel_eval(k, x); });
}

// Truncated support [lo, hi] with a uniform grid size for discrete work.
struct Window {
    double lo = -20.0;
    double hi = 20.0;
    Eigen::Index n_grid = 4096;

    double width() const { return hi - lo; }
    double center() const { return 0.5 * (lo + hi); }
    double spacing() const { return width() / double(n_grid); }
    bool contains(double y) const { return y >= lo && y <= hi; }

    // n points, both endpoints included.
    Eigen::VectorXd grid(Eigen::Index n) const;
};

void require_valid(const Window& w);

struct ZeroPerturbation {};

// A (cos(omega y) + 1) exp(-y^2 / (2 s^2))
struct CosineGaussian {
    double amplitude = 1.0;
    double omega = 3.0;
    double width = 2.23606797749979; // sqrt(5)
};

// A y exp(-y^2 / (2 s^2)); odd, so outside the symmetric class.
struct OddGaussian {
    double amplitude = 1.0;
    double width = 1.0;
};

// Symmetric function tabulated on y >= 0 (strictly increasing abscissae
// starting at 0), linearly interpolated, mirrored to y < 0, zero beyond the
// last abscissa.
struct TabulatedPerturbation {
    std::vector<double> y;
    std::vector<double> value;
};

using PerturbationSpec =
    std::variant<ZeroPerturbation, CosineGaussian, OddGaussian, TabulatedPerturbation>;

void require_valid(const PerturbationSpec& f);

double perturbation_eval(const PerturbationSpec& f, double y);

bool is_zero(const PerturbationSpec& f);

// Even about zero and real: membership in the symmetric class the
// non-trivial construction draws from.
bool is_symmetric(const PerturbationSpec& f);

struct NormalizerSpec {
    enum class Kind { Trivial, Perturbed };

    Kind kind = Kind::Trivial;
    double a_tilde = 1.0;
    Window window;
    std::optional<PerturbationSpec> perturbation; // set iff kind == Perturbed

    double value(double y) const;
};

// Integral of K(y - mu) over the window, with y = mu as a forced breakpoint.
Integral kernel_mass(const KernelSpec& k, const Window& w, double mu, double tol);

// Integral of K over the window. Throws QuadratureError on non-convergence.
Integral kernel_integral(const KernelSpec& k, const Window& w, double tol);

NormalizerSpec trivial_normalizer(const KernelSpec& k, const Window& w, double tol);

// Checks a_tilde + f(y) > 0 on a 4 x n_grid oversampled window grid and throws
// ValidationError naming the first offending y.
NormalizerSpec perturbed_normalizer(const NormalizerSpec& base, const PerturbationSpec& f);

// r(mu) = integral over the window of norm(y) K(mu - y) dy - 1.
Eigen::VectorXd convolution_residual(const NormalizerSpec& norm, const KernelSpec& k,
                                     std::span<const double> mu_grid, double tol);

struct DeconvolutionReport {
    Eigen::VectorXd y;        // grid lo + i * spacing, i < n_grid
    Eigen::VectorXd solution; // a solving the periodized discrete a * K = 1
    double dc_value = 0.0;    // mean of the solution
    double non_constancy = 0.0;
    double expected_constant = 0.0; // 1 / (spacing * sum K)
    // Kernel transform coefficients below 1e-13 |K_hat(0)| paired with a
    // vanishing right-hand side; those frequencies are set to zero.
    std::size_t suppressed_coefficients = 0;
};

DeconvolutionReport fft_deconvolve_check(const KernelSpec& k, const Window& w);

inline constexpr double default_integral_tol = 1e-10;
inline constexpr double default_residual_tol = 1e-8;

} // namespace dispersion
