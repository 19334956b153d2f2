#include "dispersion/deviance.hpp"

#include "dispersion/error.hpp"

#include <limits>
#include <sstream>

namespace dispersion {

namespace {

constexpr std::size_t max_witnesses = 16;

void record(AxiomReport& report, std::string axiom, double y, double mu, double value)
{
    report.passed = false;
    ++report.violation_count;
    if (report.violations.size() < max_witnesses)
        report.violations.push_back({std::move(axiom), y, mu, value});
}

} // namespace

void require_valid(const UnitDeviancePair& pair)
{
    if (auto r = validate(pair.phi); !r)
        throw ValidationError("phi: " + r.message);
    if (auto r = validate(pair.psi); !r)
        throw ValidationError("psi: " + r.message);
}

Grid Grid::square(double lo, double hi, Eigen::Index n)
{
    if (!(hi > lo) || n < 2)
        throw ValidationError("grid needs hi > lo and at least two points");
    Grid g;
    g.y = Eigen::VectorXd::LinSpaced(n, lo, hi);
    g.mu = g.y;
    return g;
}

AxiomReport check_unit_deviance(const DevianceFunction& d, const Grid& grid)
{
    if (grid.y.size() == 0 || grid.mu.size() == 0)
        throw ValidationError("axiom grid is empty");

    AxiomReport report;
    report.min_off_diagonal = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < grid.mu.size(); ++j) {
        const double mu = grid.mu[j];
        for (Eigen::Index i = 0; i < grid.y.size(); ++i) {
            const double y = grid.y[i];
            const double v = d(y, mu);
            if (y == mu) {
                ++report.diagonal_points;
                report.max_diagonal = std::max(report.max_diagonal, std::abs(v));
                if (!(std::abs(v) <= diagonal_tolerance))
                    record(report, "d(mu;mu) = 0", y, mu, v);
            } else {
                ++report.off_diagonal_points;
                report.min_off_diagonal = std::min(report.min_off_diagonal, v);
                if (!(v > 0.0))
                    record(report, "d(y;mu) > 0 for y != mu", y, mu, v);
            }
        }
    }
    if (report.diagonal_points == 0)
        throw ValidationError("axiom grid contains no diagonal points (y == mu)");
    return report;
}

AxiomReport check_unit_deviance(const UnitDeviancePair& pair, const Grid& grid)
{
    require_valid(pair);
    return check_unit_deviance(
        [&pair](double y, double mu) { return deviance(pair, y, mu); }, grid);
}

RegularityReport regularity_probe(const UnitDeviancePair& pair, double mu, double h)
{
    require_valid(pair);
    if (!(h > 0.0 && h <= 1e-2)) {
        std::ostringstream os;
        os << "regularity step h must lie in (0, 1e-2], got " << h;
        throw ValidationError(os.str());
    }

    const double y = mu;
    const double d0 = deviance(pair, y, mu);
    const double dp = deviance(pair, y, mu + h);
    const double dm = deviance(pair, y, mu - h);

    RegularityReport r;
    r.second_derivative_at_diagonal = (dp - 2.0 * d0 + dm) / (h * h);
    r.right_slope = (dp - d0) / h;
    r.left_slope = (d0 - dm) / h;
    r.is_regular = has_finite_second_moment(pair.phi) && has_finite_second_moment(pair.psi);
    r.kink_detected = std::abs(r.left_slope - r.right_slope) > 100.0 * h;
    return r;
}

} // namespace dispersion
