#pragma once

// Test-only brute-force oracles. Nothing here calls into the library's
// evaluation or quadrature code: closed forms are re-typed in long double and
// integrals are plain midpoint sums.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using Fn = std::function<long double(long double)>;

inline long double normal_cf(long double t, long double s = 1) { return std::exp(-s * s * t * t / 2); }
inline long double cauchy_cf(long double t, long double g = 1) { return std::exp(-g * std::fabs(t)); }
inline long double laplace_cf(long double t, long double b = 1) { return 1 / (1 + b * b * t * t); }
inline long double stable_cf(long double t, long double a, long double c = 1)
{
    return std::exp(-std::pow(std::fabs(c * t), a));
}
inline long double nig_cf(long double t, long double a, long double d)
{
    return std::exp(d * (a - std::sqrt(a * a + t * t)));
}

inline long double deviance(const Fn& phi, const Fn& psi, long double t)
{
    return (1 - phi(t)) * std::fabs(psi(t));
}

inline long double kernel(const Fn& phi, const Fn& psi, long double lambda, long double t)
{
    return std::exp(-lambda * deviance(phi, psi, t));
}

inline long double cosgauss(long double y, long double a = 1, long double w = 3, long double s2 = 5)
{
    return a * (std::cos(w * y) + 1) * std::exp(-y * y / (2 * s2));
}

// Midpoint rule with n cells, accumulated in long double.
inline long double midpoint(const Fn& f, long double lo, long double hi, std::size_t n)
{
    const long double h = (hi - lo) / n;
    long double sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        sum += f(lo + (i + 0.5L) * h);
    return sum * h;
}

// Cyclic Jacobi eigenvalues of a small symmetric matrix (row-major), ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<long double> a, std::size_t n)
{
    auto at = [&](std::size_t i, std::size_t j) -> long double& { return a[i * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        long double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                off += at(i, j) * at(i, j);
        if (off < 1e-36L)
            break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (at(p, q) == 0)
                    continue;
                const long double theta = (at(q, q) - at(p, p)) / (2 * at(p, q));
                const long double t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
                const long double c = 1 / std::sqrt(t * t + 1);
                const long double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const long double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const long double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i)
        ev[i] = double(at(i, i));
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Two-sided Kolmogorov-Smirnov statistic of sorted draws against a CDF.
inline double ks_statistic(std::vector<double> draws, const std::function<double(double)>& cdf)
{
    std::sort(draws.begin(), draws.end());
    const double n = double(draws.size());
    double d = 0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = cdf(draws[i]);
        d = std::max({d, double(i + 1) / n - f, f - double(i) / n});
    }
    return d;
}

// Cumulative distribution by accumulating midpoint cells on a fine grid,
// then linear interpolation between cell edges.
class TabulatedCdf {
public:
    TabulatedCdf(const Fn& density, long double lo, long double hi, std::size_t cells)
        : lo_(lo), h_((hi - lo) / cells), cum_(cells + 1, 0.0)
    {
        long double acc = 0;
        for (std::size_t i = 0; i < cells; ++i) {
            acc += density(lo + (i + 0.5L) * h_) * h_;
            cum_[i + 1] = acc;
        }
        for (auto& v : cum_)
            v /= acc;
    }

    double operator()(double x) const
    {
        const long double s = (x - lo_) / h_;
        if (s <= 0)
            return 0.0;
        const std::size_t i = std::size_t(s);
        if (i + 1 >= cum_.size())
            return 1.0;
        const long double frac = s - i;
        return double(cum_[i] + frac * (cum_[i + 1] - cum_[i]));
    }

private:
    long double lo_;
    long double h_;
    std::vector<long double> cum_;
};

} // namespace oracle
