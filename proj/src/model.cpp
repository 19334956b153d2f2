#include "dispersion/model.hpp"

#include "dispersion/error.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

namespace dispersion {

namespace {

void require_position(const DispersionModel& m, double mu)
{
    if (!m.position_domain.contains(mu)) {
        std::ostringstream os;
        os << "position mu = " << mu << " is outside the position domain (" << m.position_domain.lo
           << ", " << m.position_domain.hi << ")";
        throw ValidationError(os.str());
    }
}

double unit_uniform(std::mt19937_64& gen) { return double(gen() >> 11) * 0x1.0p-53; }

} // namespace

DispersionModel make_model(const KernelSpec& kernel, const NormalizerSpec& normalizer,
                           std::optional<Interval> position_domain)
{
    DispersionModel m;
    m.kernel = kernel;
    m.normalizer = normalizer;
    if (position_domain) {
        m.position_domain = *position_domain;
    } else {
        const double quarter = 0.25 * normalizer.window.width();
        m.position_domain = {normalizer.window.lo + quarter, normalizer.window.hi - quarter};
    }
    require_valid(m);
    return m;
}

void require_valid(const DispersionModel& m)
{
    require_valid(m.kernel);
    require_valid(m.normalizer.window);
    if (!(m.normalizer.a_tilde > 0.0))
        throw ValidationError("normalizer constant a_tilde must be positive");
    if ((m.normalizer.kind == NormalizerSpec::Kind::Perturbed) != m.normalizer.perturbation.has_value())
        throw ValidationError("normalizer kind and perturbation disagree");
    const Window& w = m.window();
    const Interval& p = m.position_domain;
    if (!(p.lo < p.hi && p.lo >= w.lo && p.hi <= w.hi))
        throw ValidationError("position domain must be a non-empty open interval inside the window");
}

double density_eval(const DispersionModel& m, double y, double mu)
{
    if (!m.window().contains(y)) {
        std::ostringstream os;
        os << "observation y = " << y << " is outside the window [" << m.window().lo << ", "
           << m.window().hi << "]";
        throw ValidationError(os.str());
    }
    require_position(m, mu);
    return m.normalizer.value(y) * kernel_eval(m.kernel, y - mu);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> density_curve(const DispersionModel& m, double mu,
                                                          Eigen::Index n)
{
    require_position(m, mu);
    if (n < 2)
        throw ValidationError("density curve needs at least two points");
    const double half = std::min(mu - m.window().lo, m.window().hi - mu);
    const double step = 2.0 * half / double(n - 1);
    const double mid = 0.5 * double(n - 1);

    Eigen::VectorXd y(n), p(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double offset = (double(i) - mid) * step;
        y[i] = mu + offset;
        // y - mu recomputed from the offset so mirrored points see mirrored residuals
        p[i] = m.normalizer.value(y[i]) * kernel_eval(m.kernel, offset);
    }
    return {y, p};
}

double normalization_check(const DispersionModel& m, double mu, double tol)
{
    require_valid(m);
    require_position(m, mu);
    const Window& w = m.window();
    const std::array<double, 2> breaks{mu, 0.0};
    const Integral total = integrate_or_throw(
        [&](double y) { return m.normalizer.value(y) * kernel_eval(m.kernel, y - mu); }, w.lo, w.hi,
        breaks, {.abs_tol = tol}, "normalization check");
    return total.value - 1.0;
}

std::string to_string(Classification c)
{
    return c == Classification::PDM ? "PDM" : "NSDM_candidate";
}

Classification classify(const DispersionModel& m)
{
    if (m.normalizer.kind == NormalizerSpec::Kind::Trivial || !m.normalizer.perturbation ||
        is_zero(*m.normalizer.perturbation))
        return Classification::PDM;
    return Classification::NSDMCandidate;
}

DiagnosticsReport diagnose(const DispersionModel& m, std::span<const double> mu_grid, double tol,
                           double regularity_step)
{
    require_valid(m);
    DiagnosticsReport report;
    report.classification = classify(m);
    report.edm_excluded = true;
    const double center = 0.5 * (m.position_domain.lo + m.position_domain.hi);
    report.regularity = regularity_probe(m.kernel.pair, center, regularity_step);

    for (double mu : mu_grid) {
        report.normalization_residuals.emplace_back(mu, normalization_check(m, mu, tol));
        const Integral mass = kernel_mass(m.kernel, m.window(), mu, tol);
        report.truncation_drift =
            std::max(report.truncation_drift, std::abs(m.normalizer.a_tilde * mass.value - 1.0));
    }
    return report;
}

std::vector<double> sample(const DispersionModel& m, double mu, std::size_t n, std::uint64_t seed)
{
    require_valid(m);
    require_position(m, mu);
    std::vector<double> draws;
    if (n == 0)
        return draws;

    const Window& w = m.window();
    const Eigen::VectorXd ys = w.grid(4 * w.n_grid);
    double peak = m.normalizer.value(mu); // kernel is 1 at y = mu
    for (double y : ys)
        peak = std::max(peak, m.normalizer.value(y) * kernel_eval(m.kernel, y - mu));
    const double envelope = 1.01 * peak;

    std::mt19937_64 gen(seed);
    draws.reserve(n);
    while (draws.size() < n) {
        const double y = w.lo + w.width() * unit_uniform(gen);
        const double u = unit_uniform(gen);
        const double p = m.normalizer.value(y) * kernel_eval(m.kernel, y - mu);
        if (p > envelope) {
            std::ostringstream os;
            os.precision(17);
            os << "rejection envelope " << envelope << " exceeded by density " << p << " at y = " << y
               << "; grid undersampled";
            throw NumericalError(os.str());
        }
        if (u * envelope <= p)
            draws.push_back(y);
    }
    return draws;
}

} // namespace dispersion
