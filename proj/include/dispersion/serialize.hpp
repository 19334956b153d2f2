#pragma once

// Structured text records (JSON) for specs and reports, plus the compact
// FAMILY:PARAMS command-line forms.

#include "dispersion/charfn.hpp"
#include "dispersion/deviance.hpp"
#include "dispersion/model.hpp"
#include "dispersion/normalizer.hpp"
#include "dispersion/riesz.hpp"

#include <json.hpp>

#include <string>

namespace dispersion {

// {"family": "stable", "params": {"alpha": 1.5, "c": 1}}
void to_json(nlohmann::json& j, const CharFnSpec& spec);
void from_json(const nlohmann::json& j, CharFnSpec& spec);

// {"family": "cosgauss", "params": {"amplitude": 1, "omega": 3, "width": 2.236...}}
void to_json(nlohmann::json& j, const PerturbationSpec& f);
void from_json(const nlohmann::json& j, PerturbationSpec& f);

void to_json(nlohmann::json& j, const Window& w);
void from_json(const nlohmann::json& j, Window& w);

void to_json(nlohmann::json& j, const AxiomReport& r);
void to_json(nlohmann::json& j, const RegularityReport& r);
void to_json(nlohmann::json& j, const DiagnosticsReport& r);
void to_json(nlohmann::json& j, const GramReport& r);
void to_json(nlohmann::json& j, const FrameBounds& b);
void to_json(nlohmann::json& j, const DeconvolutionReport& r);

// "normal:1", "cauchy:1", "laplace:1", "stable:1.5,1", "nig:1,1"
CharFnSpec parse_charfn(const std::string& text);
std::string format_charfn(const CharFnSpec& spec);

// "zero", "cosgauss:A,omega,s", "oddgauss:A,s"
PerturbationSpec parse_perturbation(const std::string& text);

} // namespace dispersion
