#include "dispersion/serialize.hpp"

#include "dispersion/error.hpp"

#include <charconv>
#include <vector>

namespace dispersion {

using nlohmann::json;

namespace {

double param(const json& params, const char* name, const std::string& family)
{
    if (!params.contains(name) || !params.at(name).is_number())
        throw ValidationError(family + ": missing numeric parameter '" + name + "'");
    return params.at(name).get<double>();
}

std::vector<double> parse_numbers(const std::string& text, const std::string& context)
{
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string token = text.substr(start, end - start);
        double v = 0.0;
        const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
        if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size())
            throw ValidationError(context + ": malformed number '" + token + "'");
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

void expect_count(const std::vector<double>& v, std::size_t n, const std::string& context)
{
    if (v.size() != n)
        throw ValidationError(context + ": expected " + std::to_string(n) + " parameter(s), got " +
                              std::to_string(v.size()));
}

} // namespace

void to_json(json& j, const CharFnSpec& spec)
{
    json params = std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Normal>)
                return {{"sigma", s.sigma}};
            else if constexpr (std::is_same_v<T, Cauchy>)
                return {{"gamma", s.gamma}};
            else if constexpr (std::is_same_v<T, Laplace>)
                return {{"b", s.b}};
            else if constexpr (std::is_same_v<T, SymmetricStable>)
                return {{"alpha", s.alpha}, {"c", s.c}};
            else
                return {{"alpha", s.alpha}, {"delta", s.delta}};
        },
        spec);
    j = json{{"family", family_name(spec)}, {"params", params}};
}

void from_json(const json& j, CharFnSpec& spec)
{
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
        throw ValidationError("characteristic function record needs a string 'family'");
    const std::string family = j.at("family").get<std::string>();
    const json params = j.value("params", json::object());
    if (family == "normal")
        spec = Normal{param(params, "sigma", family)};
    else if (family == "cauchy")
        spec = Cauchy{param(params, "gamma", family)};
    else if (family == "laplace")
        spec = Laplace{param(params, "b", family)};
    else if (family == "stable")
        spec = SymmetricStable{param(params, "alpha", family), param(params, "c", family)};
    else if (family == "nig")
        spec = SymmetricNIG{param(params, "alpha", family), param(params, "delta", family)};
    else
        throw ValidationError("unknown characteristic function family '" + family + "'");
}

void to_json(json& j, const PerturbationSpec& f)
{
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ZeroPerturbation>)
                j = json{{"family", "zero"}, {"params", json::object()}};
            else if constexpr (std::is_same_v<T, CosineGaussian>)
                j = json{{"family", "cosgauss"},
                         {"params", {{"amplitude", p.amplitude}, {"omega", p.omega}, {"width", p.width}}}};
            else if constexpr (std::is_same_v<T, OddGaussian>)
                j = json{{"family", "oddgauss"},
                         {"params", {{"amplitude", p.amplitude}, {"width", p.width}}}};
            else
                j = json{{"family", "table"}, {"params", {{"y", p.y}, {"value", p.value}}}};
        },
        f);
}

void from_json(const json& j, PerturbationSpec& f)
{
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
        throw ValidationError("perturbation record needs a string 'family'");
    const std::string family = j.at("family").get<std::string>();
    const json params = j.value("params", json::object());
    if (family == "zero") {
        f = ZeroPerturbation{};
    } else if (family == "cosgauss") {
        f = CosineGaussian{param(params, "amplitude", family), param(params, "omega", family),
                           param(params, "width", family)};
    } else if (family == "oddgauss") {
        f = OddGaussian{param(params, "amplitude", family), param(params, "width", family)};
    } else if (family == "table") {
        if (!params.contains("y") || !params.contains("value"))
            throw ValidationError("table perturbation needs 'y' and 'value' arrays");
        f = TabulatedPerturbation{params.at("y").get<std::vector<double>>(),
                                  params.at("value").get<std::vector<double>>()};
    } else {
        throw ValidationError("unknown perturbation family '" + family + "'");
    }
    require_valid(f);
}

void to_json(json& j, const Window& w)
{
    j = json{{"lo", w.lo}, {"hi", w.hi}, {"n_grid", w.n_grid}};
}

void from_json(const json& j, Window& w)
{
    w.lo = j.value("lo", w.lo);
    w.hi = j.value("hi", w.hi);
    w.n_grid = j.value("n_grid", w.n_grid);
}

void to_json(json& j, const AxiomReport& r)
{
    json witnesses = json::array();
    for (const auto& v : r.violations)
        witnesses.push_back({{"axiom", v.axiom}, {"y", v.y}, {"mu", v.mu}, {"value", v.value}});
    j = json{{"passed", r.passed},
             {"max_diagonal", r.max_diagonal},
             {"min_off_diagonal", r.min_off_diagonal},
             {"diagonal_points", r.diagonal_points},
             {"off_diagonal_points", r.off_diagonal_points},
             {"violation_count", r.violation_count},
             {"violations", witnesses}};
}

void to_json(json& j, const RegularityReport& r)
{
    j = json{{"second_derivative_at_diagonal", r.second_derivative_at_diagonal},
             {"left_slope", r.left_slope},
             {"right_slope", r.right_slope},
             {"is_regular", r.is_regular},
             {"kink_detected", r.kink_detected}};
}

void to_json(json& j, const DiagnosticsReport& r)
{
    json residuals = json::array();
    for (const auto& [mu, res] : r.normalization_residuals)
        residuals.push_back({{"mu", mu}, {"residual", res}});
    j = json{{"normalization_residuals", residuals},
             {"classification", to_string(r.classification)},
             {"edm_excluded", r.edm_excluded},
             {"regularity", r.regularity},
             {"truncation_drift", r.truncation_drift}};
}

void to_json(json& j, const GramReport& r)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < r.gram.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < r.gram.cols(); ++k)
            row.push_back(r.gram(i, k));
        rows.push_back(row);
    }
    j = json{{"gram", rows},
             {"eigenvalues", std::vector<double>(r.eigenvalues.data(),
                                                 r.eigenvalues.data() + r.eigenvalues.size())},
             {"min_eigenvalue", r.min_eigenvalue},
             {"max_eigenvalue", r.max_eigenvalue},
             {"k_norm_sq", r.k_norm_sq},
             {"tight_claim_gap", r.tight_claim_gap}};
}

void to_json(json& j, const FrameBounds& b)
{
    j = json{{"lower", b.lower}, {"upper", b.upper}, {"lower_ratio", b.lower_ratio},
             {"upper_ratio", b.upper_ratio}};
}

void to_json(json& j, const DeconvolutionReport& r)
{
    j = json{{"dc_value", r.dc_value},
             {"non_constancy", r.non_constancy},
             {"expected_constant", r.expected_constant},
             {"suppressed_coefficients", r.suppressed_coefficients},
             {"n", r.solution.size()}};
}

CharFnSpec parse_charfn(const std::string& text)
{
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ValidationError("characteristic function '" + text + "' must look like FAMILY:PARAMS");
    const std::string family = text.substr(0, colon);
    const std::vector<double> p = parse_numbers(text.substr(colon + 1), family);
    if (family == "normal") {
        expect_count(p, 1, family);
        return Normal{p[0]};
    }
    if (family == "cauchy") {
        expect_count(p, 1, family);
        return Cauchy{p[0]};
    }
    if (family == "laplace") {
        expect_count(p, 1, family);
        return Laplace{p[0]};
    }
    if (family == "stable") {
        expect_count(p, 2, family);
        return SymmetricStable{p[0], p[1]};
    }
    if (family == "nig") {
        expect_count(p, 2, family);
        return SymmetricNIG{p[0], p[1]};
    }
    throw ValidationError("unknown characteristic function family '" + family + "'");
}

std::string format_charfn(const CharFnSpec& spec)
{
    const json j = spec;
    std::string out = family_name(spec) + ":";
    bool first = true;
    for (const auto& [key, value] : j.at("params").items()) {
        (void)key;
        if (!first)
            out += ',';
        out += value.dump();
        first = false;
    }
    return out;
}

PerturbationSpec parse_perturbation(const std::string& text)
{
    if (text == "zero")
        return ZeroPerturbation{};
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ValidationError("perturbation '" + text + "' must be 'zero' or FAMILY:PARAMS");
    const std::string family = text.substr(0, colon);
    const std::vector<double> p = parse_numbers(text.substr(colon + 1), family);
    PerturbationSpec f;
    if (family == "cosgauss") {
        expect_count(p, 3, family);
        f = CosineGaussian{p[0], p[1], p[2]};
    } else if (family == "oddgauss") {
        expect_count(p, 2, family);
        f = OddGaussian{p[0], p[1]};
    } else {
        throw ValidationError("unknown perturbation family '" + family + "'");
    }
    require_valid(f);
    return f;
}

} // namespace dispersion
