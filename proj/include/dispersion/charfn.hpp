#pragma once

// Real characteristic functions of symmetric, non-lattice, absolutely
// continuous distributions. These are the building blocks of the unit
// deviances in deviance.hpp.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <string>
#include <type_traits>
#include <variant>

namespace dispersion {

struct Normal {
    double sigma = 1.0;
};

struct Cauchy {
    double gamma = 1.0;
};

struct Laplace {
    double b = 1.0;
};

// exp(-|c t|^alpha), alpha in (0, 2].
struct SymmetricStable {
    double alpha = 2.0;
    double c = 1.0;
};

// Normal inverse Gaussian with zero asymmetry: exp(delta (alpha - sqrt(alpha^2 + t^2))).
struct SymmetricNIG {
    double alpha = 1.0;
    double delta = 1.0;
};

// New families are added as variant alternatives; every visitor below is
// exhaustive, so the compiler points at each place that needs a case.
using CharFnSpec = std::variant<Normal, Cauchy, Laplace, SymmetricStable, SymmetricNIG>;

struct ValidationResult {
    bool ok = true;
    std::string message;

    explicit operator bool() const { return ok; }
};

ValidationResult validate(const CharFnSpec& spec);

// Throws ValidationError carrying the validate() message.
void require_valid(const CharFnSpec& spec);

bool has_finite_second_moment(const CharFnSpec& spec);

std::string family_name(const CharFnSpec& spec);

inline constexpr double max_abs_argument = 1e8;

namespace detail {

template <std::floating_point Scalar>
Scalar capped_abs(Scalar t)
{
    using std::abs;
    return std::min<Scalar>(abs(t), Scalar(max_abs_argument));
}

// Returns the exponent e <= 0 with phi(t) = exp(e) for the exponential families.
template <std::floating_point Scalar>
Scalar log_charfn(const CharFnSpec& spec, Scalar a)
{
    using std::pow;
    using std::sqrt;
    return std::visit(
        [a](const auto& s) -> Scalar {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Normal>) {
                const Scalar u = Scalar(s.sigma) * a;
                return -u * u / 2;
            } else if constexpr (std::is_same_v<T, Cauchy>) {
                return -Scalar(s.gamma) * a;
            } else if constexpr (std::is_same_v<T, SymmetricStable>) {
                return -pow(Scalar(s.c) * a, Scalar(s.alpha));
            } else if constexpr (std::is_same_v<T, SymmetricNIG>) {
                const Scalar al = Scalar(s.alpha);
                // alpha - sqrt(alpha^2 + a^2) without cancellation
                return -Scalar(s.delta) * a * a / (al + sqrt(al * al + a * a));
            } else {
                static_assert(std::is_same_v<T, Laplace>);
                return Scalar(0); // unused
            }
        },
        spec);
}

} // namespace detail

// Characteristic function value. Real and even by construction.
template <std::floating_point Scalar>
Scalar eval(const CharFnSpec& spec, Scalar t)
{
    using std::exp;
    const Scalar a = detail::capped_abs(t);
    if (const auto* lap = std::get_if<Laplace>(&spec)) {
        const Scalar u = Scalar(lap->b) * a;
        return Scalar(1) / (Scalar(1) + u * u);
    }
    return exp(detail::log_charfn(spec, a));
}

// 1 - eval(spec, t), evaluated without cancellation near t = 0.
template <std::floating_point Scalar>
Scalar one_minus_eval(const CharFnSpec& spec, Scalar t)
{
    using std::expm1;
    const Scalar a = detail::capped_abs(t);
    if (const auto* lap = std::get_if<Laplace>(&spec)) {
        const Scalar u2 = Scalar(lap->b) * a * Scalar(lap->b) * a;
        return u2 / (Scalar(1) + u2);
    }
    return -expm1(detail::log_charfn(spec, a));
}

template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> eval(
    const CharFnSpec& spec, const Eigen::ArrayBase<Derived>& t)
{
    using Scalar = typename Derived::Scalar;
    return t.derived().unaryExpr([&spec](Scalar x) { return eval(spec, x); });
}

} // namespace dispersion
