#include "dispersion/error.hpp"
#include "dispersion/model.hpp"
#include "dispersion/riesz.hpp"

#include "oracles/golden.hpp"
#include "oracles/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace dispersion;

namespace {

const UnitDeviancePair normal_normal{Normal{1.0}, Normal{1.0}};
const UnitDeviancePair laplace_laplace{Laplace{1.0}, Laplace{1.0}};
const Window wide{-20.0, 20.0, 4096};
const CosineGaussian figure_bump{1.0, 3.0, std::sqrt(5.0)};

DispersionModel trivial(const UnitDeviancePair& pair, double lambda = 1.0)
{
    const KernelSpec k{pair, lambda};
    return make_model(k, trivial_normalizer(k, wide, 1e-10));
}

DispersionModel fig2d()
{
    const DispersionModel c = trivial(laplace_laplace);
    return make_model(c.kernel, perturbed_normalizer(c.normalizer, figure_bump));
}

} // namespace

TEST(Model, DefaultPositionDomainIsMiddleHalf)
{
    const DispersionModel m = trivial(normal_normal);
    EXPECT_EQ(m.position_domain.lo, -10.0);
    EXPECT_EQ(m.position_domain.hi, 10.0);
    EXPECT_THROW(make_model(m.kernel, m.normalizer, Interval{-30.0, 0.0}), ValidationError);
}

TEST(Density, Values)
{
    const DispersionModel m = trivial(normal_normal);
    EXPECT_EQ(density_eval(m, 1.25, 1.25), m.normalizer.a_tilde);
    EXPECT_NEAR(density_eval(m, 2.0, 0.0), golden::density_fig1a_t2, 1e-15);

    const DispersionModel d = fig2d();
    EXPECT_NEAR(density_eval(d, 0.0, 0.0), d.normalizer.a_tilde + 2.0, 1e-15);

    EXPECT_THROW(density_eval(m, 25.0, 0.0), ValidationError);
    EXPECT_THROW(density_eval(m, 0.0, 15.0), ValidationError);
}

TEST(Density, SymmetryAndPositivity)
{
    for (const DispersionModel& m : {trivial(normal_normal), trivial({Cauchy{1.0}, Normal{1.0}}), fig2d()}) {
        for (double mu : {0.0, 2.5, -7.0}) {
            for (double t = 0.0; t < 10.0; t += 0.37) {
                const double p = density_eval(m, mu + t, mu);
                EXPECT_GT(p, 0.0);
                if (m.normalizer.kind == NormalizerSpec::Kind::Trivial)
                    EXPECT_NEAR(p, density_eval(m, mu - t, mu), 1e-15 * p);
                if (m.normalizer.kind == NormalizerSpec::Kind::Trivial && mu == 0.0)
                    EXPECT_EQ(p, density_eval(m, -t, mu));
            }
        }
        const auto [y, p] = density_curve(m, 0.0, 401);
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            EXPECT_EQ(y[i], -y[y.size() - 1 - i]);
            EXPECT_EQ(p[i], p[p.size() - 1 - i]);
            EXPECT_GE(p[i], m.normalizer.a_tilde * std::exp(-2.0 * m.kernel.lambda));
        }
    }
}

TEST(Normalization, TrivialCenterAndDrift)
{
    const DispersionModel m = trivial(normal_normal);
    EXPECT_LE(std::abs(normalization_check(m, 0.0, 1e-10)), 1e-9);

    const DispersionModel edge = make_model(m.kernel, m.normalizer, Interval{-19.5, 19.5});
    const double mu = 0.45 * wide.width();
    const double drift = normalization_check(edge, mu, 1e-10);
    EXPECT_GT(std::abs(drift), 1e-4);
    EXPECT_NEAR(drift, golden::trivial_nn_drift_mu18, 1e-9);
}

TEST(Normalization, PerturbedEqualsOrthogonalityDefectPlusDrift)
{
    const DispersionModel d = fig2d();
    const DispersionModel c = trivial(laplace_laplace);
    for (double mu : {-5.0, -1.5, 0.0, 3.0, 5.0}) {
        const std::array<double, 1> at{mu};
        const double rho = orthogonality_residual(figure_bump, d.kernel, wide, at, 1e-10)[0];
        const double trivial_residual = normalization_check(c, mu, 1e-10);
        EXPECT_NEAR(normalization_check(d, mu, 1e-10), trivial_residual + rho, 1e-8) << mu;
    }
    EXPECT_NEAR(normalization_check(d, 0.0, 1e-10), golden::rho_ll_mu_0, 1e-8);
}

TEST(Classify, Labels)
{
    const DispersionModel c = trivial(laplace_laplace);
    EXPECT_EQ(classify(c), Classification::PDM);
    EXPECT_EQ(classify(make_model(c.kernel, perturbed_normalizer(c.normalizer, ZeroPerturbation{}))),
              Classification::PDM);
    EXPECT_EQ(classify(fig2d()), Classification::NSDMCandidate);

    // scaling lambda keeps the label
    for (double lambda : {0.1, 1.0, 10.0}) {
        const DispersionModel m = trivial(laplace_laplace, lambda);
        EXPECT_EQ(classify(m), Classification::PDM);
        EXPECT_EQ(classify(make_model(m.kernel, perturbed_normalizer(m.normalizer, figure_bump))),
                  Classification::NSDMCandidate);
    }
}

TEST(Diagnostics, Report)
{
    const std::array<double, 3> mus{-5.0, 0.0, 5.0};
    const DiagnosticsReport r = diagnose(fig2d(), mus, 1e-8);
    EXPECT_EQ(r.classification, Classification::NSDMCandidate);
    EXPECT_TRUE(r.edm_excluded);
    EXPECT_TRUE(r.regularity.is_regular);
    ASSERT_EQ(r.normalization_residuals.size(), 3u);
    EXPECT_NEAR(r.normalization_residuals[0].second, r.normalization_residuals[2].second, 1e-8);
    EXPECT_GT(r.truncation_drift, 0.0);
    EXPECT_LT(r.truncation_drift, 1e-3);
}

TEST(Sample, EmptyAndDeterministic)
{
    const DispersionModel m = trivial(normal_normal);
    EXPECT_TRUE(sample(m, 0.0, 0, 1).empty());
    EXPECT_EQ(sample(m, 0.0, 1000, 42), sample(m, 0.0, 1000, 42));
    EXPECT_NE(sample(m, 0.0, 1000, 42), sample(m, 0.0, 1000, 43));
    for (double y : sample(fig2d(), 1.0, 2000, 5))
        EXPECT_TRUE(wide.contains(y));
}

TEST(Sample, MeanAndKolmogorovSmirnov)
{
    const DispersionModel m = trivial(laplace_laplace);
    const std::size_t n = 20000;
    const std::vector<double> draws = sample(m, 0.0, n, 2024);
    const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double y : draws)
        ss += (y - mean) * (y - mean);
    const double sd = std::sqrt(ss / double(n - 1));
    EXPECT_LE(std::abs(mean), 4.0 * sd / std::sqrt(double(n)));

    const oracle::TabulatedCdf cdf(
        [](long double y) {
            return oracle::kernel([](long double t) { return oracle::laplace_cf(t); },
                                  [](long double t) { return oracle::laplace_cf(t); }, 1, y);
        },
        -20, 20, 400000);
    EXPECT_LE(oracle::ks_statistic(draws, cdf), 1.95 / std::sqrt(double(n)));
}
