#pragma once

#include "dispersion/charfn.hpp"

#include <Eigen/Core>

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace dispersion {

// d(y; mu) = {1 - phi(y - mu)} |psi(y - mu)|. phi and psi stay distinct
// members even when they are the same family.
struct UnitDeviancePair {
    CharFnSpec phi;
    CharFnSpec psi;
};

void require_valid(const UnitDeviancePair& pair);

// Deviance as a function of the residual t = y - mu.
template <std::floating_point Scalar>
Scalar deviance_at(const UnitDeviancePair& pair, Scalar t)
{
    using std::abs;
    return one_minus_eval(pair.phi, t) * abs(eval(pair.psi, t));
}

template <std::floating_point Scalar>
Scalar deviance(const UnitDeviancePair& pair, Scalar y, Scalar mu)
{
    return deviance_at(pair, Scalar(y - mu));
}

template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> deviance_at(
    const UnitDeviancePair& pair, const Eigen::ArrayBase<Derived>& t)
{
    using Scalar = typename Derived::Scalar;
    return t.derived().unaryExpr([&pair](Scalar x) { return deviance_at(pair, x); });
}

// Observation and position coordinates; the scan covers every (y, mu) pair.
struct Grid {
    Eigen::VectorXd y;
    Eigen::VectorXd mu;

    // Same n-point uniform grid for y and mu, so the diagonal is included.
    static Grid square(double lo, double hi, Eigen::Index n);
};

struct AxiomViolation {
    std::string axiom;
    double y = 0.0;
    double mu = 0.0;
    double value = 0.0;
};

struct AxiomReport {
    bool passed = true;
    double max_diagonal = 0.0;     // max |d(mu; mu)|
    double min_off_diagonal = 0.0; // min d(y; mu) over y != mu
    std::size_t diagonal_points = 0;
    std::size_t off_diagonal_points = 0;
    std::size_t violation_count = 0;
    std::vector<AxiomViolation> violations; // first few witnesses only
};

inline constexpr double diagonal_tolerance = 1e-14;

using DevianceFunction = std::function<double(double y, double mu)>;

AxiomReport check_unit_deviance(const DevianceFunction& d, const Grid& grid);
AxiomReport check_unit_deviance(const UnitDeviancePair& pair, const Grid& grid);

struct RegularityReport {
    double second_derivative_at_diagonal = 0.0;
    double left_slope = 0.0;
    double right_slope = 0.0;
    bool is_regular = false;
    bool kink_detected = false;
};

// Finite differences in mu at y = mu with step h in (0, 1e-2].
RegularityReport regularity_probe(const UnitDeviancePair& pair, double mu, double h);

} // namespace dispersion
