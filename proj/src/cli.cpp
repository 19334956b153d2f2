#include "dispersion/cli.hpp"

#include "dispersion/csv.hpp"
#include "dispersion/error.hpp"
#include "dispersion/model.hpp"
#include "dispersion/riesz.hpp"
#include "dispersion/serialize.hpp"

#include <CLI11.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <utility>

namespace dispersion::cli {

using nlohmann::json;
namespace fs = std::filesystem;

void to_json(json& j, const RunConfig& c)
{
    j = json{{"subcommand", c.subcommand},
             {"model",
              {{"phi", c.phi},
               {"psi", c.psi},
               {"lambda", c.lambda},
               {"window", c.window},
               {"perturbation", c.perturbation}}},
             {"mu", c.mu},
             {"tol", c.tol},
             {"residual_tol", c.residual_tol},
             {"seed", c.seed},
             {"n_samples", c.n_samples},
             {"n_points", c.n_points},
             {"out", c.out}};
}

void from_json(const json& j, RunConfig& c)
{
    if (!j.is_object())
        throw ValidationError("config document must be a JSON object");
    c.subcommand = j.value("subcommand", c.subcommand);
    if (j.contains("model")) {
        const json& m = j.at("model");
        if (m.contains("phi"))
            c.phi = m.at("phi").get<CharFnSpec>();
        if (m.contains("psi"))
            c.psi = m.at("psi").get<CharFnSpec>();
        c.lambda = m.value("lambda", c.lambda);
        if (m.contains("window"))
            c.window = m.at("window").get<Window>();
        if (m.contains("perturbation"))
            c.perturbation = m.at("perturbation").get<PerturbationSpec>();
    }
    c.mu = j.value("mu", c.mu);
    c.tol = j.value("tol", c.tol);
    c.residual_tol = j.value("residual_tol", c.residual_tol);
    c.seed = j.value("seed", c.seed);
    c.n_samples = j.value("n_samples", c.n_samples);
    c.n_points = j.value("n_points", c.n_points);
    c.out = j.value("out", c.out);
}

double standard_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double student_t_pdf(double x, double dof)
{
    const double log_c = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                         0.5 * std::log(dof * std::numbers::pi);
    return std::exp(log_c - 0.5 * (dof + 1.0) * std::log1p(x * x / dof));
}

std::vector<std::string> figure_files()
{
    return {"fig1a.csv", "fig1b.csv", "fig2c.csv", "fig2d.csv", "reference_normal.csv",
            "reference_t3.csv"};
}

namespace {

struct OutputFile {
    std::string name;
    std::string content;
};

// Either a single stream payload or named files under a directory.
struct Outputs {
    std::string stdout_text;
    std::vector<OutputFile> files;
};

struct Flags {
    std::string config;
    std::string phi, psi, perturb;
    double lambda = 0.0, mu = 0.0, tol = 0.0;
    std::vector<double> window;
    Eigen::Index grid = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0, n_points = 0;
    std::string out;
};

void add_common_options(CLI::App* sub, Flags& f)
{
    sub->add_option("--config", f.config, "JSON run configuration; flags override it");
    sub->add_option("--phi", f.phi, "characteristic function inside 1 - phi, FAMILY:PARAMS");
    sub->add_option("--psi", f.psi, "characteristic function inside the modulus, FAMILY:PARAMS");
    sub->add_option("--lambda", f.lambda, "index parameter");
    sub->add_option("--window", f.window, "support window LO HI")->expected(2);
    sub->add_option("--grid", f.grid, "window grid size");
    sub->add_option("--mu", f.mu, "position parameter");
    sub->add_option("--perturb", f.perturb, "zero | cosgauss:A,omega,s | oddgauss:A,s");
    sub->add_option("--tol", f.tol, "absolute quadrature tolerance");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--out", f.out, "output path");
}

bool given(const CLI::App& sub, const std::string& name)
{
    const CLI::Option* o = sub.get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
}

RunConfig resolve(const CLI::App& sub, const Flags& f)
{
    RunConfig c;
    if (given(sub, "--config")) {
        std::ifstream in(f.config);
        if (!in)
            throw ValidationError("cannot read config file '" + f.config + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ValidationError("malformed config file '" + f.config + "': " + e.what());
        }
        try {
            c = j.get<RunConfig>();
        } catch (const json::exception& e) {
            throw ValidationError("malformed config file '" + f.config + "': " + e.what());
        }
    }
    c.subcommand = sub.get_name();
    if (given(sub, "--phi"))
        c.phi = parse_charfn(f.phi);
    if (given(sub, "--psi"))
        c.psi = parse_charfn(f.psi);
    if (given(sub, "--lambda"))
        c.lambda = f.lambda;
    if (given(sub, "--window")) {
        c.window.lo = f.window.at(0);
        c.window.hi = f.window.at(1);
    }
    if (given(sub, "--grid"))
        c.window.n_grid = f.grid;
    if (given(sub, "--mu"))
        c.mu = f.mu;
    if (given(sub, "--perturb"))
        c.perturbation = parse_perturbation(f.perturb);
    if (given(sub, "--tol"))
        c.tol = f.tol;
    if (given(sub, "--seed"))
        c.seed = f.seed;
    if (given(sub, "--n"))
        c.n_samples = f.n;
    if (given(sub, "--n-points"))
        c.n_points = f.n_points;
    if (given(sub, "--out"))
        c.out = f.out;

    if (!(c.tol > 0.0) || !(c.residual_tol > 0.0))
        throw ValidationError("tolerances must be positive");
    return c;
}

KernelSpec kernel_of(const RunConfig& c)
{
    KernelSpec k{{c.phi, c.psi}, c.lambda};
    require_valid(k);
    require_valid(c.window);
    return k;
}

DispersionModel model_of(const RunConfig& c, const KernelSpec& k)
{
    NormalizerSpec norm = trivial_normalizer(k, c.window, c.tol);
    if (!std::holds_alternative<ZeroPerturbation>(c.perturbation))
        norm = perturbed_normalizer(norm, c.perturbation);
    return make_model(k, norm);
}

// 21 positions over the middle quarter of the window.
std::vector<double> position_grid(const Window& w)
{
    const Eigen::VectorXd g = Eigen::VectorXd::LinSpaced(21, w.center() - 0.125 * w.width(),
                                                         w.center() + 0.125 * w.width());
    return {g.data(), g.data() + g.size()};
}

Eigen::VectorXd as_vector(const std::vector<double>& v)
{
    return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

std::string density_csv(const DispersionModel& m, double mu)
{
    const auto [y, p] = density_curve(m, mu, m.window().n_grid + 1);
    return csv::write_columns({"y", "density"}, {&y, &p});
}

Outputs run_density(const RunConfig& c)
{
    const KernelSpec k = kernel_of(c);
    const DispersionModel m = model_of(c, k);
    return {density_csv(m, c.mu), {}};
}

Outputs run_sample(const RunConfig& c)
{
    const KernelSpec k = kernel_of(c);
    const DispersionModel m = model_of(c, k);
    return {csv::write_column("sample", sample(m, c.mu, c.n_samples, c.seed)), {}};
}

Outputs run_verify(const RunConfig& c)
{
    const KernelSpec k = kernel_of(c);
    const DispersionModel m = model_of(c, k);
    const std::vector<double> mus = position_grid(c.window);

    json report;
    report["config"] = c;
    report["axioms"] =
        check_unit_deviance(k.pair, Grid::square(m.position_domain.lo, m.position_domain.hi, 101));
    const DiagnosticsReport diag = diagnose(m, mus, c.residual_tol);
    report["diagnostics"] = diag;
    report["a_tilde"] = m.normalizer.a_tilde;

    Outputs o;
    const Eigen::Index n = c.window.n_grid;
    if ((n & (n - 1)) == 0) {
        const DeconvolutionReport dec = fft_deconvolve_check(k, c.window);
        report["deconvolution"] = dec;
        const Eigen::VectorXd index = Eigen::VectorXd::LinSpaced(n, 0.0, double(n - 1));
        o.files.push_back({"deconvolution.csv",
                           csv::write_columns({"index", "y", "value"}, {&index, &dec.y, &dec.solution})});
    } else {
        report["deconvolution"] = nullptr;
    }

    Eigen::VectorXd mu_col(Eigen::Index(mus.size())), res_col(Eigen::Index(mus.size()));
    for (std::size_t i = 0; i < diag.normalization_residuals.size(); ++i) {
        mu_col[Eigen::Index(i)] = diag.normalization_residuals[i].first;
        res_col[Eigen::Index(i)] = diag.normalization_residuals[i].second;
    }
    o.files.push_back({"residuals.csv", csv::write_columns({"mu", "residual"}, {&mu_col, &res_col})});
    o.stdout_text = report.dump(2) + "\n";
    o.files.insert(o.files.begin(), {"report.json", o.stdout_text});
    return o;
}

Outputs run_riesz(const RunConfig& c)
{
    const KernelSpec k = kernel_of(c);
    if (c.n_points == 0)
        throw ValidationError("riesz needs --n-points >= 1");
    std::vector<double> points = rational_enumeration(c.n_points);
    for (double& p : points)
        p += c.window.center();
    const GramReport gram = gram_matrix({k, points, c.window}, c.tol);

    json trajectory = json::array();
    for (Eigen::Index n = 1; n <= gram.gram.rows(); ++n) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram.gram.topLeftCorner(n, n),
                                                          Eigen::EigenvaluesOnly);
        trajectory.push_back(
            {{"n", n}, {"lower", es.eigenvalues()[0]}, {"upper", es.eigenvalues()[n - 1]}});
    }

    const std::vector<double> mus = position_grid(c.window);
    const Eigen::VectorXd rho = orthogonality_residual(c.perturbation, k, c.window, mus, c.residual_tol);
    const Eigen::VectorXd mu_col = as_vector(mus);

    json report;
    report["config"] = c;
    report["points"] = points;
    report["gram"] = gram;
    report["frame_bounds"] = frame_bounds_estimate(gram);
    report["bound_trajectory"] = trajectory;

    Outputs o;
    o.stdout_text = report.dump(2) + "\n";
    o.files.push_back({"report.json", o.stdout_text});
    o.files.push_back({"orthogonality.csv", csv::write_columns({"mu", "residual"}, {&mu_col, &rho})});
    return o;
}

Outputs run_figures(const RunConfig& c)
{
    if (c.out.empty())
        throw ValidationError("figures needs --out DIR");
    const Normal normal{1.0};
    const Cauchy cauchy{1.0};
    const Laplace laplace{1.0};
    const CosineGaussian bump{1.0, 3.0, std::sqrt(5.0)};

    auto trivial_model = [&](const CharFnSpec& phi, const CharFnSpec& psi) {
        const KernelSpec k{{phi, psi}, c.lambda};
        require_valid(k);
        require_valid(c.window);
        return make_model(k, trivial_normalizer(k, c.window, c.tol));
    };

    const DispersionModel fig1a = trivial_model(normal, normal);
    const DispersionModel fig1b = trivial_model(cauchy, normal);
    const DispersionModel fig2c = trivial_model(laplace, laplace);
    const DispersionModel fig2d =
        make_model(fig2c.kernel, perturbed_normalizer(fig2c.normalizer, bump));

    Outputs o;
    const auto names = figure_files();
    o.files.push_back({names[0], density_csv(fig1a, c.mu)});
    o.files.push_back({names[1], density_csv(fig1b, c.mu)});
    o.files.push_back({names[2], density_csv(fig2c, c.mu)});
    o.files.push_back({names[3], density_csv(fig2d, c.mu)});

    const Eigen::VectorXd y = density_curve(fig1a, c.mu, c.window.n_grid + 1).first;
    const Eigen::VectorXd pn = y.unaryExpr([](double x) { return standard_normal_pdf(x); });
    const Eigen::VectorXd pt = y.unaryExpr([](double x) { return student_t_pdf(x, 3.0); });
    o.files.push_back({names[4], csv::write_columns({"y", "density"}, {&y, &pn})});
    o.files.push_back({names[5], csv::write_columns({"y", "density"}, {&y, &pt})});
    return o;
}

void write_atomically(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        f << content;
        if (!f)
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
    }
    fs::rename(tmp, path);
}

void emit(const RunConfig& c, const Outputs& o, std::ostream& out)
{
    const bool single_file = c.subcommand == "density" || c.subcommand == "sample";
    if (c.out.empty()) {
        out << o.stdout_text;
        return;
    }
    if (single_file) {
        write_atomically(c.out, o.stdout_text);
        return;
    }
    for (const OutputFile& f : o.files)
        write_atomically(fs::path(c.out) / f.name, f.content);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Dispersion models built from characteristic functions", "dispmodel"};
    app.require_subcommand(1);
    Flags flags;

    CLI::App* density = app.add_subcommand("density", "density curve as CSV y,density");
    CLI::App* verify = app.add_subcommand("verify", "deviance axioms, regularity, normalization diagnostics");
    CLI::App* riesz = app.add_subcommand("riesz", "gram matrix, frame bounds, orthogonality residuals");
    CLI::App* sample_cmd = app.add_subcommand("sample", "rejection-sampled draws as CSV");
    CLI::App* figures = app.add_subcommand("figures", "model and reference curves for the four figure panels");
    for (CLI::App* sub : {density, verify, riesz, sample_cmd, figures})
        add_common_options(sub, flags);
    sample_cmd->add_option("--n", flags.n, "number of draws");
    riesz->add_option("--n-points", flags.n_points, "number of translation points");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("dispmodel");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argv_storage)
        argv.push_back(s.data());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return validation_error;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        const RunConfig config = resolve(*sub, flags);
        Outputs o;
        if (sub == density)
            o = run_density(config);
        else if (sub == verify)
            o = run_verify(config);
        else if (sub == riesz)
            o = run_riesz(config);
        else if (sub == sample_cmd)
            o = run_sample(config);
        else
            o = run_figures(config);
        emit(config, o, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return validation_error;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return validation_error;
    }
    return ok;
}

} // namespace dispersion::cli
