#include "dispersion/charfn.hpp"
#include "dispersion/error.hpp"
#include "dispersion/serialize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace dispersion;

namespace {

std::vector<CharFnSpec> catalog()
{
    return {Normal{1.0},          Normal{0.3},           Cauchy{1.0},       Cauchy{2.5},
            Laplace{1.0},         Laplace{0.7},          SymmetricStable{1.5, 1.0},
            SymmetricStable{2.0, 1.0}, SymmetricStable{0.5, 2.0}, SymmetricNIG{1.0, 1.0},
            SymmetricNIG{3.0, 0.5}};
}

} // namespace

TEST(CharFn, ClosedFormValues)
{
    EXPECT_EQ(eval(CharFnSpec{Normal{1.0}}, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(eval(CharFnSpec{Laplace{1.0}}, 1.0), 0.5);
    EXPECT_NEAR(eval(CharFnSpec{Cauchy{1.0}}, -2.0), 0.1353352832366127, 1e-15);
    EXPECT_DOUBLE_EQ(eval(CharFnSpec{SymmetricStable{2.0, 1.0}}, 1.5), std::exp(-2.25));
    EXPECT_NEAR(eval(CharFnSpec{SymmetricNIG{1.0, 1.0}}, 2.0), std::exp(1.0 - std::sqrt(5.0)), 1e-15);
}

TEST(CharFn, OneMinusEvalMatchesAwayFromZero)
{
    for (const auto& spec : catalog())
        for (double t : {0.5, 1.0, 3.0, -7.0})
            EXPECT_NEAR(one_minus_eval(spec, t), 1.0 - eval(spec, t), 1e-15) << family_name(spec);
}

TEST(CharFn, OneMinusEvalKeepsPrecisionNearZero)
{
    // 1 - exp(-t^2/2) ~ t^2/2 for tiny t
    const double t = 1e-9;
    EXPECT_NEAR(one_minus_eval(CharFnSpec{Normal{1.0}}, t) / (t * t / 2), 1.0, 1e-12);
    EXPECT_NEAR(one_minus_eval(CharFnSpec{Laplace{1.0}}, t) / (t * t), 1.0, 1e-12);
}

TEST(CharFn, Validation)
{
    EXPECT_TRUE(validate(SymmetricStable{2.0, 1.0}));
    const auto bad = validate(SymmetricStable{2.5, 1.0});
    EXPECT_FALSE(bad);
    EXPECT_NE(bad.message.find("alpha"), std::string::npos);
    EXPECT_TRUE(validate(SymmetricNIG{1.0, 1.0}));
    EXPECT_FALSE(validate(Normal{0.0}));
    EXPECT_FALSE(validate(Cauchy{-1.0}));
    EXPECT_FALSE(validate(Laplace{NAN}));
    EXPECT_FALSE(validate(SymmetricStable{0.0, 1.0}));
    EXPECT_FALSE(validate(SymmetricNIG{1.0, 0.0}));
    EXPECT_THROW(require_valid(CharFnSpec{SymmetricStable{2.5, 1.0}}), ValidationError);
}

TEST(CharFn, SecondMoments)
{
    EXPECT_TRUE(has_finite_second_moment(Normal{1.0}));
    EXPECT_FALSE(has_finite_second_moment(Cauchy{1.0}));
    EXPECT_FALSE(has_finite_second_moment(SymmetricStable{1.5, 1.0}));
    EXPECT_TRUE(has_finite_second_moment(SymmetricStable{2.0, 1.0}));
    EXPECT_TRUE(has_finite_second_moment(Laplace{1.0}));
    EXPECT_TRUE(has_finite_second_moment(SymmetricNIG{1.0, 1.0}));
}

TEST(CharFn, GridProperties)
{
    const Eigen::ArrayXd t = Eigen::ArrayXd::LinSpaced(2001, -50.0, 50.0);
    for (const auto& spec : catalog()) {
        const Eigen::ArrayXd v = eval(spec, t);
        const Eigen::ArrayXd mirrored = eval(spec, Eigen::ArrayXd(-t));
        EXPECT_TRUE((v == mirrored).all()) << family_name(spec);
        EXPECT_TRUE((v.abs() <= 1.0).all()) << family_name(spec);
        for (Eigen::Index i = 0; i < t.size(); ++i)
            if (t[i] != 0.0)
                EXPECT_LT(v[i], 1.0) << family_name(spec) << " t=" << t[i];
        EXPECT_EQ(eval(spec, 0.0), 1.0);
    }
}

TEST(CharFn, ContinuityAtRandomPoints)
{
    std::mt19937_64 gen(20201);
    std::uniform_real_distribution<double> pick(-20.0, 20.0);
    for (const auto& spec : catalog()) {
        for (int i = 0; i < 200; ++i) {
            const double t = pick(gen);
            const double d1 = std::abs(eval(spec, t + 1e-4) - eval(spec, t));
            const double d2 = std::abs(eval(spec, t + 1e-7) - eval(spec, t));
            EXPECT_LE(d2, d1 + 1e-12);
            EXPECT_LT(d2, 1e-5);
        }
    }
}

TEST(CharFn, LargeArgumentsUnderflowToZero)
{
    for (const auto& spec : catalog()) {
        const double v = eval(spec, 1e300);
        EXPECT_TRUE(std::isfinite(v));
        EXPECT_GE(v, 0.0);
        EXPECT_LT(v, 1e-8);
    }
}

TEST(CharFn, LongDoubleInstantiation)
{
    const long double v = eval(CharFnSpec{Laplace{1.0}}, 3.0L);
    EXPECT_NEAR(double(v), 0.1, 1e-17);
}

TEST(CharFn, JsonRecordRoundTrip)
{
    for (const auto& spec : catalog()) {
        const nlohmann::json j = spec;
        EXPECT_TRUE(j.contains("family"));
        EXPECT_TRUE(j.contains("params"));
        const auto back = j.get<CharFnSpec>();
        EXPECT_EQ(family_name(back), family_name(spec));
        for (double t : {0.1, 1.0, 4.0})
            EXPECT_EQ(eval(back, t), eval(spec, t));
        EXPECT_EQ(format_charfn(parse_charfn(format_charfn(spec))), format_charfn(spec));
    }
    const auto j = nlohmann::json::parse(R"({"family": "stable", "params": {"alpha": 1.5, "c": 2}})");
    const auto s = j.get<CharFnSpec>();
    ASSERT_TRUE(std::holds_alternative<SymmetricStable>(s));
    EXPECT_EQ(std::get<SymmetricStable>(s).alpha, 1.5);
    EXPECT_THROW(nlohmann::json::parse(R"({"family": "gamma", "params": {}})").get<CharFnSpec>(),
                 ValidationError);
}

TEST(CharFn, FlagSyntax)
{
    EXPECT_TRUE(std::holds_alternative<Normal>(parse_charfn("normal:1")));
    const auto st = parse_charfn("stable:2.5,1");
    EXPECT_EQ(std::get<SymmetricStable>(st).alpha, 2.5);
    EXPECT_THROW(parse_charfn("normal"), ValidationError);
    EXPECT_THROW(parse_charfn("normal:1,2"), ValidationError);
    EXPECT_THROW(parse_charfn("normal:x"), ValidationError);
    EXPECT_THROW(parse_charfn("weibull:1"), ValidationError);
}
