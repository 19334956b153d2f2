#pragma once

#include "dispersion/charfn.hpp"
#include "dispersion/normalizer.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dispersion::cli {

// Everything a run needs. Loads from a JSON config document; explicit flags
// override the file.
struct RunConfig {
    std::string subcommand;
    CharFnSpec phi = Normal{1.0};
    CharFnSpec psi = Normal{1.0};
    double lambda = 1.0;
    Window window;
    PerturbationSpec perturbation = ZeroPerturbation{};
    double mu = 0.0;
    double tol = default_integral_tol;
    double residual_tol = default_residual_tol;
    std::uint64_t seed = 1;
    std::size_t n_samples = 1000;
    std::size_t n_points = 8;
    std::string out; // file for density/sample, directory otherwise; empty = stdout
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

enum ExitCode : int { ok = 0, validation_error = 1, numerical_error = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

double standard_normal_pdf(double x);
double student_t_pdf(double x, double dof);

// File names written by `figures`, in emission order.
std::vector<std::string> figure_files();

} // namespace dispersion::cli
