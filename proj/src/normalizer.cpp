#include "dispersion/normalizer.hpp"

#include "dispersion/error.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <complex>
#include <sstream>

namespace dispersion {

void require_valid(const KernelSpec& kernel)
{
    require_valid(kernel.pair);
    if (!std::isfinite(kernel.lambda) || kernel.lambda < 0.0) {
        std::ostringstream os;
        os << "index parameter lambda must be non-negative, got " << kernel.lambda;
        throw ValidationError(os.str());
    }
}

Eigen::VectorXd Window::grid(Eigen::Index n) const { return Eigen::VectorXd::LinSpaced(n, lo, hi); }

void require_valid(const Window& w)
{
    if (!std::isfinite(w.lo) || !std::isfinite(w.hi) || !(w.hi > w.lo))
        throw ValidationError("window needs finite lo < hi");
    if (w.n_grid < 16)
        throw ValidationError("window grid needs at least 16 points");
}

void require_valid(const PerturbationSpec& f)
{
    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CosineGaussian>) {
                if (!std::isfinite(p.amplitude) || !std::isfinite(p.omega) || !(p.width > 0.0))
                    throw ValidationError("cosine-gaussian perturbation needs finite A, omega and s > 0");
            } else if constexpr (std::is_same_v<T, OddGaussian>) {
                if (!std::isfinite(p.amplitude) || !(p.width > 0.0))
                    throw ValidationError("odd-gaussian perturbation needs finite A and s > 0");
            } else if constexpr (std::is_same_v<T, TabulatedPerturbation>) {
                if (p.y.size() < 2 || p.y.size() != p.value.size())
                    throw ValidationError("tabulated perturbation needs >= 2 matching (y, value) pairs");
                if (p.y.front() != 0.0)
                    throw ValidationError("tabulated perturbation must start at y = 0");
                for (std::size_t i = 1; i < p.y.size(); ++i)
                    if (!(p.y[i] > p.y[i - 1]))
                        throw ValidationError("tabulated perturbation abscissae must increase strictly");
                for (double v : p.value)
                    if (!std::isfinite(v))
                        throw ValidationError("tabulated perturbation values must be finite");
            }
        },
        f);
}

double perturbation_eval(const PerturbationSpec& f, double y)
{
    return std::visit(
        [y](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ZeroPerturbation>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, CosineGaussian>) {
                return p.amplitude * (std::cos(p.omega * y) + 1.0) *
                       std::exp(-y * y / (2.0 * p.width * p.width));
            } else if constexpr (std::is_same_v<T, OddGaussian>) {
                return p.amplitude * y * std::exp(-y * y / (2.0 * p.width * p.width));
            } else {
                const double a = std::abs(y);
                if (a >= p.y.back())
                    return a == p.y.back() ? p.value.back() : 0.0;
                const auto it = std::upper_bound(p.y.begin(), p.y.end(), a);
                const std::size_t i = std::size_t(it - p.y.begin()) - 1;
                const double s = (a - p.y[i]) / (p.y[i + 1] - p.y[i]);
                return p.value[i] + s * (p.value[i + 1] - p.value[i]);
            }
        },
        f);
}

bool is_zero(const PerturbationSpec& f)
{
    if (std::holds_alternative<ZeroPerturbation>(f))
        return true;
    if (const auto* c = std::get_if<CosineGaussian>(&f))
        return c->amplitude == 0.0;
    if (const auto* o = std::get_if<OddGaussian>(&f))
        return o->amplitude == 0.0;
    const auto& t = std::get<TabulatedPerturbation>(f);
    return std::all_of(t.value.begin(), t.value.end(), [](double v) { return v == 0.0; });
}

bool is_symmetric(const PerturbationSpec& f)
{
    if (const auto* o = std::get_if<OddGaussian>(&f))
        return o->amplitude == 0.0;
    return true;
}

double NormalizerSpec::value(double y) const
{
    if (kind == Kind::Trivial || !perturbation)
        return a_tilde;
    return a_tilde + perturbation_eval(*perturbation, y);
}

Integral kernel_mass(const KernelSpec& k, const Window& w, double mu, double tol)
{
    require_valid(k);
    require_valid(w);
    const std::array<double, 1> breaks{mu};
    return integrate_or_throw([&k, mu](double y) { return kernel_eval(k, y - mu); }, w.lo, w.hi,
                              breaks, {.abs_tol = tol}, "kernel integral");
}

Integral kernel_integral(const KernelSpec& k, const Window& w, double tol)
{
    return kernel_mass(k, w, 0.0, tol);
}

NormalizerSpec trivial_normalizer(const KernelSpec& k, const Window& w, double tol)
{
    const Integral mass = kernel_integral(k, w, tol);
    NormalizerSpec n;
    n.kind = NormalizerSpec::Kind::Trivial;
    n.a_tilde = 1.0 / mass.value;
    n.window = w;
    return n;
}

NormalizerSpec perturbed_normalizer(const NormalizerSpec& base, const PerturbationSpec& f)
{
    if (base.kind != NormalizerSpec::Kind::Trivial)
        throw ValidationError("perturbed normalizer must start from a trivial normalizer");
    require_valid(f);

    NormalizerSpec n = base;
    n.kind = NormalizerSpec::Kind::Perturbed;
    n.perturbation = f;

    const Eigen::VectorXd ys = base.window.grid(4 * base.window.n_grid);
    for (double y : ys) {
        const double g = n.value(y);
        if (!(g > 0.0)) {
            std::ostringstream os;
            os.precision(17);
            os << "perturbed normalizer is not positive: a_tilde + f(y) = " << g << " at y = " << y;
            throw ValidationError(os.str());
        }
    }
    return n;
}

Eigen::VectorXd convolution_residual(const NormalizerSpec& norm, const KernelSpec& k,
                                     std::span<const double> mu_grid, double tol)
{
    require_valid(k);
    const Window& w = norm.window;
    require_valid(w);

    Eigen::VectorXd r(Eigen::Index(mu_grid.size()));
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
        const double mu = mu_grid[i];
        if (!w.contains(mu)) {
            std::ostringstream os;
            os << "position " << mu << " lies outside the window";
            throw ValidationError(os.str());
        }
        const std::array<double, 2> breaks{mu, 0.0};
        const Integral v = integrate_or_throw(
            [&](double y) { return norm.value(y) * kernel_eval(k, mu - y); }, w.lo, w.hi, breaks,
            {.abs_tol = tol}, "convolution residual");
        r[Eigen::Index(i)] = v.value - 1.0;
    }
    return r;
}

DeconvolutionReport fft_deconvolve_check(const KernelSpec& k, const Window& w)
{
    require_valid(k);
    require_valid(w);
    const Eigen::Index n = w.n_grid;
    if ((n & (n - 1)) != 0)
        throw ValidationError("fft deconvolution needs n_grid to be a power of two");

    const double dy = w.spacing();

    // Circular kernel: offsets k dy for k < n/2, (k - n) dy above.
    std::vector<std::complex<double>> kernel(static_cast<std::size_t>(n));
    std::vector<std::complex<double>> ones(static_cast<std::size_t>(n), 1.0);
    double kernel_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double offset = (i < n / 2 ? double(i) : double(i - n)) * dy;
        const double v = kernel_eval(k, offset);
        kernel[std::size_t(i)] = v;
        kernel_sum += v;
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> kernel_hat, rhs_hat;
    fft.fwd(kernel_hat, kernel);
    fft.fwd(rhs_hat, ones);

    DeconvolutionReport report;
    const double kernel_scale = std::abs(kernel_hat[0]);
    const double rhs_scale = std::abs(rhs_hat[0]);
    std::vector<std::complex<double>> solution_hat(std::size_t(n), 0.0);
    for (std::size_t i = 0; i < std::size_t(n); ++i) {
        const bool rhs_vanishes = std::abs(rhs_hat[i]) <= 1e-12 * rhs_scale;
        const bool kernel_vanishes = std::abs(kernel_hat[i]) <= 1e-13 * kernel_scale;
        if (kernel_vanishes && !rhs_vanishes) {
            std::ostringstream os;
            os << "kernel transform vanishes at frequency index " << i
               << " where the right-hand side does not; deconvolution is ill-conditioned";
            throw NumericalError(os.str());
        }
        if (rhs_vanishes) {
            if (kernel_vanishes)
                ++report.suppressed_coefficients;
            continue;
        }
        solution_hat[i] = rhs_hat[i] / (dy * kernel_hat[i]);
    }

    std::vector<std::complex<double>> solution;
    fft.inv(solution, solution_hat);

    report.y.resize(n);
    report.solution.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        report.y[i] = w.lo + double(i) * dy;
        report.solution[i] = solution[std::size_t(i)].real();
    }
    report.dc_value = report.solution.mean();
    report.non_constancy = report.solution.maxCoeff() - report.solution.minCoeff();
    report.expected_constant = 1.0 / (dy * kernel_sum);
    return report;
}

} // namespace dispersion
