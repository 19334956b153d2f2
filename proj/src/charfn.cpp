#include "dispersion/charfn.hpp"

#include "dispersion/error.hpp"

#include <sstream>

namespace dispersion {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

ValidationResult reject(const std::string& family, const std::string& what, double value)
{
    std::ostringstream os;
    os.precision(17);
    os << family << ": " << what << " (got " << value << ")";
    return {false, os.str()};
}

} // namespace

ValidationResult validate(const CharFnSpec& spec)
{
    return std::visit(
        [](const auto& s) -> ValidationResult {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Normal>) {
                if (!positive_finite(s.sigma))
                    return reject("normal", "scale sigma must be positive", s.sigma);
            } else if constexpr (std::is_same_v<T, Cauchy>) {
                if (!positive_finite(s.gamma))
                    return reject("cauchy", "scale gamma must be positive", s.gamma);
            } else if constexpr (std::is_same_v<T, Laplace>) {
                if (!positive_finite(s.b))
                    return reject("laplace", "scale b must be positive", s.b);
            } else if constexpr (std::is_same_v<T, SymmetricStable>) {
                if (!std::isfinite(s.alpha) || s.alpha <= 0.0 || s.alpha > 2.0)
                    return reject("stable", "index alpha must lie in (0, 2]", s.alpha);
                if (!positive_finite(s.c))
                    return reject("stable", "scale c must be positive", s.c);
            } else {
                static_assert(std::is_same_v<T, SymmetricNIG>);
                if (!positive_finite(s.alpha))
                    return reject("nig", "tail parameter alpha must be positive", s.alpha);
                if (!positive_finite(s.delta))
                    return reject("nig", "scale delta must be positive", s.delta);
            }
            return {};
        },
        spec);
}

void require_valid(const CharFnSpec& spec)
{
    if (auto r = validate(spec); !r)
        throw ValidationError(r.message);
}

bool has_finite_second_moment(const CharFnSpec& spec)
{
    return std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Cauchy>)
                return false;
            else if constexpr (std::is_same_v<T, SymmetricStable>)
                return s.alpha == 2.0;
            else
                return true;
        },
        spec);
}

std::string family_name(const CharFnSpec& spec)
{
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Normal>)
                return "normal";
            else if constexpr (std::is_same_v<T, Cauchy>)
                return "cauchy";
            else if constexpr (std::is_same_v<T, Laplace>)
                return "laplace";
            else if constexpr (std::is_same_v<T, SymmetricStable>)
                return "stable";
            else
                return "nig";
        },
        spec);
}

} // namespace dispersion
