#pragma once

// Dispersion model densities p(y; mu, lambda) = a(y; lambda) exp{-lambda d(y; mu)}
// over a truncated support window.

#include "dispersion/deviance.hpp"
#include "dispersion/normalizer.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dispersion {

// Open interval of admissible positions.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x > lo && x < hi; }
};

struct DispersionModel {
    KernelSpec kernel;
    NormalizerSpec normalizer;
    Interval position_domain;

    const Window& window() const { return normalizer.window; }
};

// Defaults the position domain to the middle half of the normalizer window.
DispersionModel make_model(const KernelSpec& kernel, const NormalizerSpec& normalizer,
                           std::optional<Interval> position_domain = std::nullopt);

void require_valid(const DispersionModel& m);

double density_eval(const DispersionModel& m, double y, double mu);

// n-point curve on the widest interval symmetric about mu inside the window;
// abscissae are exact mirror images about mu.
std::pair<Eigen::VectorXd, Eigen::VectorXd> density_curve(const DispersionModel& m, double mu,
                                                          Eigen::Index n);

// Integral of the density over the window minus one.
double normalization_check(const DispersionModel& m, double mu, double tol);

enum class Classification { PDM, NSDMCandidate };

std::string to_string(Classification c);

Classification classify(const DispersionModel& m);

struct DiagnosticsReport {
    std::vector<std::pair<double, double>> normalization_residuals; // (mu, residual)
    Classification classification = Classification::PDM;
    // Deviances of this construction never take the additive exponential
    // dispersion form; this is a static tag, not a fitted test.
    bool edm_excluded = true;
    RegularityReport regularity;
    double truncation_drift = 0.0; // max_mu |a_tilde * mass(mu) - 1|
};

DiagnosticsReport diagnose(const DispersionModel& m, std::span<const double> mu_grid, double tol,
                           double regularity_step = 1e-4);

// Rejection sampling with a uniform proposal on the window. The envelope is
// 1.01 times the largest density on a 4 x n_grid oversampled grid; a draw
// above it throws NumericalError.
std::vector<double> sample(const DispersionModel& m, double mu, std::size_t n, std::uint64_t seed);

} // namespace dispersion
