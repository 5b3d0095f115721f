// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimo/bounds.hpp"
#include "mimo/capacity.hpp"
#include "mimo/channel.hpp"
#include "mimo/structure.hpp"

namespace mimo::study {

enum class Model { scattering_powerlaw, scattering_equal, iid_gaussian };

const char* to_string(Model m);
Model model_from_string(const std::string& name);

// Knobs of a scaling study. Every field can come from a JSON config file and
// be overridden by a CLI flag of the same name.
struct StudyConfig {
    Model model = Model::scattering_powerlaw;
    std::vector<int> m_values = {4, 8, 16, 32, 64, 128, 256};
    double kappa = 10.0;
    std::uint64_t seed = 1;
    int paths_per_scenario = 256;  // clamped to M by the scenario generator
    double gain_decay_s = 1.0;
    double wavelength = 0.1;
    double spacing_over_wavelength = 0.5;
    bool normalize_power = false;
    std::optional<double> gamma_fixed;
    std::string output_dir = "out";

    void validate() const;
};

StudyConfig config_from_json(const std::string& text);
std::string config_to_json(const StudyConfig& c);
StudyConfig read_config_file(const std::string& path);

// Transfer matrix for one study point, plus the scenario when the model is
// scattering-based. Deterministic per (config, m).
struct ModelOutput {
    ComplexMatrix h;
    std::optional<channel::ScatteringScenario> scenario;
};
ModelOutput build_model_matrix(const StudyConfig& config, int m);

// Single-matrix analysis: structure certificate, fading spectrum, the four
// capacity forms, and the bound verifications.
struct AnalysisResult {
    int m = 0;
    double kappa = 0.0;
    std::optional<structure::StructureReport> structure;
    std::string structure_error;  // set when the certificate could not be built
    std::vector<double> fading_eigs;
    capacity::CapacityResult cap_logdet{};
    capacity::CapacityResult cap_singular{};
    capacity::CapacityResult cap_fading{};
    capacity::CapacityResult cap_integral{};
    bounds::BoundReport counting{};
    bounds::BoundReport densta{};
    bounds::BoundReport capacity_power{};
    double runtime_ms = 0.0;
};

AnalysisResult analyze_matrix(const ComplexMatrix& h, double kappa,
                              std::optional<double> gamma_fixed);
std::string analysis_to_json(const AnalysisResult& a);

enum class CheckOutcome { holds, fails, inapplicable };
const char* to_string(CheckOutcome o);

// One row of a scaling study.
struct ScalingRecord {
    int m = 0;
    std::string model;
    std::uint64_t seed = 0;
    double capacity_bits = 0.0;
    double bound_bits = 0.0;  // NaN when no capacity bound applies
    std::string bound_kind;   // "capacity_power" or "inapplicable"
    double alpha_min = 0.0;
    double f_plus = 0.0;
    double gamma = 0.0;
    double rho_plus = 0.0;
    double spectral_radius = 0.0;
    CheckOutcome counting_bound_holds = CheckOutcome::inapplicable;
    CheckOutcome capacity_bound_holds = CheckOutcome::inapplicable;
    double runtime_ms = 0.0;
    std::string error;  // per-row failure note; row values are zero when set
};

ScalingRecord record_from_analysis(const StudyConfig& config, const AnalysisResult& a);

struct StudyResult {
    std::vector<ScalingRecord> records;
    std::string records_csv_path;
    std::string plotdata_csv_path;
    bool any_bound_failure = false;
};

// Runs the study over config.m_values, writing records.csv, plotdata.csv,
// per-M analysis_<M>.json, and the scenario/matrix files into
// config.output_dir. Rows are processed and written in m order.
StudyResult run_scaling_study(const StudyConfig& config);

// records.csv column list, in order.
extern const char* const kRecordsCsvHeader;

std::string records_to_csv(const std::vector<ScalingRecord>& records);
std::string plotdata_to_csv(const std::vector<ScalingRecord>& records);

// File names used by `generate` and the study for one study point.
std::string matrix_file_name(int m);
std::string scenario_file_name(int m);

}  // namespace mimo::study
