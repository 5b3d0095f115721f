// SPDX-License-Identifier: Apache-2.0

#include "mimo/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mimo/eigen.hpp"
#include "mimo/errors.hpp"
#include "mimo/matrix_io.hpp"

namespace mimo::study {

using nlohmann::json;

const char* to_string(Model m) {
    switch (m) {
        case Model::scattering_powerlaw: return "scattering_powerlaw";
        case Model::scattering_equal: return "scattering_equal";
        case Model::iid_gaussian: return "iid_gaussian";
    }
    return "unknown";
}

Model model_from_string(const std::string& name) {
    if (name == "scattering_powerlaw")
        return Model::scattering_powerlaw;
    if (name == "scattering_equal")
        return Model::scattering_equal;
    if (name == "iid_gaussian")
        return Model::iid_gaussian;
    throw std::invalid_argument("unknown model: " + name);
}

void StudyConfig::validate() const {
    if (m_values.empty())
        throw std::invalid_argument("config: m_values must be non-empty");
    int prev = 0;
    for (int m : m_values) {
        if (m <= prev)
            throw std::invalid_argument("config: m_values must be strictly increasing positive");
        prev = m;
    }
    if (kappa <= 0.0)
        throw std::invalid_argument("config: kappa must be positive");
    if (paths_per_scenario < 1)
        throw std::invalid_argument("config: paths_per_scenario must be >= 1");
    if (wavelength <= 0.0 || spacing_over_wavelength <= 0.0)
        throw std::invalid_argument("config: wavelength and spacing_over_wavelength must be positive");
    if (output_dir.empty())
        throw std::invalid_argument("config: output_dir must be non-empty");
}

namespace {

const char* const kConfigKeys[] = {"model",          "m_values",
                                   "kappa",          "seed",
                                   "paths_per_scenario", "gain_decay_s",
                                   "wavelength",     "spacing_over_wavelength",
                                   "normalize_power", "gamma_fixed",
                                   "output_dir"};

void format_double(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

}  // namespace

StudyConfig config_from_json(const std::string& text) {
    const json j = json::parse(text);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const bool known = std::any_of(std::begin(kConfigKeys), std::end(kConfigKeys),
                                       [&](const char* k) { return it.key() == k; });
        if (!known)
            throw std::invalid_argument("config: unknown key '" + it.key() + "'");
    }
    StudyConfig c;
    if (j.contains("model"))
        c.model = model_from_string(j.at("model").get<std::string>());
    if (j.contains("m_values"))
        c.m_values = j.at("m_values").get<std::vector<int>>();
    if (j.contains("kappa"))
        c.kappa = j.at("kappa").get<double>();
    if (j.contains("seed"))
        c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("paths_per_scenario"))
        c.paths_per_scenario = j.at("paths_per_scenario").get<int>();
    if (j.contains("gain_decay_s"))
        c.gain_decay_s = j.at("gain_decay_s").get<double>();
    if (j.contains("wavelength"))
        c.wavelength = j.at("wavelength").get<double>();
    if (j.contains("spacing_over_wavelength"))
        c.spacing_over_wavelength = j.at("spacing_over_wavelength").get<double>();
    if (j.contains("normalize_power"))
        c.normalize_power = j.at("normalize_power").get<bool>();
    if (j.contains("gamma_fixed") && !j.at("gamma_fixed").is_null())
        c.gamma_fixed = j.at("gamma_fixed").get<double>();
    if (j.contains("output_dir"))
        c.output_dir = j.at("output_dir").get<std::string>();
    c.validate();
    return c;
}

std::string config_to_json(const StudyConfig& c) {
    json j;
    j["model"] = to_string(c.model);
    j["m_values"] = c.m_values;
    j["kappa"] = c.kappa;
    j["seed"] = c.seed;
    j["paths_per_scenario"] = c.paths_per_scenario;
    j["gain_decay_s"] = c.gain_decay_s;
    j["wavelength"] = c.wavelength;
    j["spacing_over_wavelength"] = c.spacing_over_wavelength;
    j["normalize_power"] = c.normalize_power;
    j["gamma_fixed"] = c.gamma_fixed ? json(*c.gamma_fixed) : json();
    j["output_dir"] = c.output_dir;
    return j.dump(2) + "\n";
}

StudyConfig read_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open config: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return config_from_json(buf.str());
}

ModelOutput build_model_matrix(const StudyConfig& config, int m) {
    config.validate();
    if (m < 1)
        throw std::invalid_argument("build_model_matrix: m must be >= 1");

    ModelOutput out;
    if (config.model == Model::iid_gaussian) {
        out.h = channel::iid_gaussian_transfer_matrix(m, config.seed, 1.0);
    } else {
        channel::ScenarioParams params;
        params.paths = config.paths_per_scenario;
        params.gain_decay_s = config.gain_decay_s;
        params.wavelength = config.wavelength;
        params.spacing_over_wavelength = config.spacing_over_wavelength;
        const auto family = config.model == Model::scattering_powerlaw
                                ? channel::GainFamily::power_law
                                : channel::GainFamily::equal;
        out.scenario = channel::make_scattering_scenario(m, config.seed, params, family);
        out.h = channel::scattering_transfer_matrix(*out.scenario);
    }
    if (config.normalize_power)
        out.h = channel::normalize_total_power(out.h);
    return out;
}

AnalysisResult analyze_matrix(const ComplexMatrix& h, double kappa,
                              std::optional<double> gamma_fixed) {
    if (!h.square())
        throw std::invalid_argument("analyze_matrix: H must be square");
    const auto t0 = std::chrono::steady_clock::now();

    AnalysisResult a;
    a.m = h.rows();
    a.kappa = kappa;

    const ComplexMatrix f = channel::fading_matrix(h);
    const SpectralSummary spec = hermitian_eigen(f, false);
    a.fading_eigs = spec.eigenvalues;

    a.cap_logdet = capacity::capacity_logdet(h, kappa);
    std::vector<double> mu(a.fading_eigs.size());
    for (std::size_t i = 0; i < mu.size(); ++i)
        mu[i] = static_cast<double>(a.m) * std::sqrt(std::max(0.0, a.fading_eigs[i]));
    a.cap_singular = capacity::capacity_from_singular_values(mu, kappa, a.m);
    a.cap_fading = capacity::capacity_from_fading_eigs(a.fading_eigs, kappa, a.m);
    a.cap_integral = capacity::capacity_from_counting_integral(a.fading_eigs, kappa, a.m);

    try {
        structure::StructureReport rep = structure::build_structure_report(f, gamma_fixed);
        a.counting = bounds::verify_counting_bound(a.fading_eigs, rep);
        const ComplexMatrix f_sorted = structure::sort_diagonal_descending(f).second;
        a.densta = bounds::verify_densta_domination(f_sorted, rep.alpha_min);
        a.capacity_power =
            bounds::verify_capacity_bound(a.cap_fading.bits, rep, kappa, a.m);
        a.structure = std::move(rep);
    } catch (const std::exception& e) {
        a.structure_error = e.what();
        a.counting.applicable = false;
        a.densta.kind = bounds::BoundKind::densta_domination;
        a.densta.applicable = false;
        a.capacity_power.kind = bounds::BoundKind::capacity_power;
        a.capacity_power.applicable = false;
    }

    const auto t1 = std::chrono::steady_clock::now();
    a.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return a;
}

std::string analysis_to_json(const AnalysisResult& a) {
    json j;
    j["m"] = a.m;
    j["kappa"] = a.kappa;
    if (a.structure)
        j["structure"] = json::parse(structure::report_to_json(*a.structure));
    else
        j["structure"] = nullptr;
    if (!a.structure_error.empty())
        j["structure_error"] = a.structure_error;
    j["fading_eigenvalues"] = a.fading_eigs;
    j["capacity_bits"] = {{"logdet", a.cap_logdet.bits},
                          {"singular_sum", a.cap_singular.bits},
                          {"fading_sum", a.cap_fading.bits},
                          {"counting_integral", a.cap_integral.bits}};
    j["bounds"] = {{"counting_power", json::parse(bounds::report_to_json(a.counting))},
                   {"densta_domination", json::parse(bounds::report_to_json(a.densta))},
                   {"capacity_power", json::parse(bounds::report_to_json(a.capacity_power))}};
    j["runtime_ms"] = a.runtime_ms;
    return j.dump(2) + "\n";
}

const char* to_string(CheckOutcome o) {
    switch (o) {
        case CheckOutcome::holds: return "true";
        case CheckOutcome::fails: return "false";
        case CheckOutcome::inapplicable: return "inapplicable";
    }
    return "unknown";
}

namespace {

CheckOutcome outcome_of(const bounds::BoundReport& r) {
    if (!r.applicable)
        return CheckOutcome::inapplicable;
    return r.holds ? CheckOutcome::holds : CheckOutcome::fails;
}

}  // namespace

ScalingRecord record_from_analysis(const StudyConfig& config, const AnalysisResult& a) {
    ScalingRecord r;
    r.m = a.m;
    r.model = to_string(config.model);
    r.seed = config.seed;
    r.capacity_bits = a.cap_fading.bits;
    r.runtime_ms = a.runtime_ms;

    if (a.structure) {
        r.alpha_min = a.structure->alpha_min;
        r.f_plus = a.structure->f_plus;
        r.gamma = a.structure->gamma;
        r.rho_plus = a.structure->rho_plus;
        r.spectral_radius = a.structure->spectral_radius;
    } else {
        r.error = a.structure_error;
    }

    r.counting_bound_holds = outcome_of(a.counting);

    // The capacity bound is a certified claim only for the scattering models;
    // the i.i.d. baseline asserts no structural certificate.
    const bool asserted = config.model != Model::iid_gaussian;
    if (asserted && a.structure && a.capacity_power.applicable) {
        r.capacity_bound_holds = outcome_of(a.capacity_power);
        r.bound_bits =
            bounds::capacity_bound_power(a.m, config.kappa, a.structure->rho_plus,
                                         a.structure->gamma);
        r.bound_kind = "capacity_power";
    } else {
        r.capacity_bound_holds = CheckOutcome::inapplicable;
        r.bound_bits = std::numeric_limits<double>::quiet_NaN();
        r.bound_kind = "inapplicable";
    }
    return r;
}

const char* const kRecordsCsvHeader =
    "M,model,seed,capacity_bits,bound_bits,bound_kind,alpha_min,f_plus,gamma,rho_plus,"
    "spectral_radius,counting_bound_holds,capacity_bound_holds,runtime_ms,error";

std::string records_to_csv(const std::vector<ScalingRecord>& records) {
    std::ostringstream os;
    os << kRecordsCsvHeader << '\n';
    for (const ScalingRecord& r : records) {
        os << r.m << ',' << r.model << ',' << r.seed << ',';
        format_double(os, r.capacity_bits);
        os << ',';
        format_double(os, r.bound_bits);
        os << ',' << r.bound_kind << ',';
        format_double(os, r.alpha_min);
        os << ',';
        format_double(os, r.f_plus);
        os << ',';
        format_double(os, r.gamma);
        os << ',';
        format_double(os, r.rho_plus);
        os << ',';
        format_double(os, r.spectral_radius);
        os << ',' << to_string(r.counting_bound_holds) << ','
           << to_string(r.capacity_bound_holds) << ',';
        format_double(os, r.runtime_ms);
        // keep the CSV one-token-per-column: errors may carry commas
        std::string err = r.error;
        std::replace(err.begin(), err.end(), ',', ';');
        std::replace(err.begin(), err.end(), '\n', ' ');
        os << ',' << err << '\n';
    }
    return os.str();
}

std::string plotdata_to_csv(const std::vector<ScalingRecord>& records) {
    std::ostringstream os;
    os << "M,capacity_bits,bound_bits,capacity_per_m,bound_per_m\n";
    for (const ScalingRecord& r : records) {
        os << r.m << ',';
        format_double(os, r.capacity_bits);
        os << ',';
        format_double(os, r.bound_bits);
        os << ',';
        format_double(os, r.capacity_bits / r.m);
        os << ',';
        format_double(os, r.bound_bits / r.m);
        os << '\n';
    }
    return os.str();
}

std::string matrix_file_name(int m) {
    return "H_" + std::to_string(m) + ".mat";
}

std::string scenario_file_name(int m) {
    return "scenario_" + std::to_string(m) + ".json";
}

StudyResult run_scaling_study(const StudyConfig& config) {
    config.validate();
    namespace fs = std::filesystem;
    const fs::path out_dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory: " + config.output_dir);

    StudyResult result;
    for (int m : config.m_values) {
        ScalingRecord row;
        try {
            const ModelOutput model = build_model_matrix(config, m);
            if (model.scenario)
                channel::write_scenario_file((out_dir / scenario_file_name(m)).string(),
                                             *model.scenario);
            write_matrix_file((out_dir / matrix_file_name(m)).string(), model.h);

            const AnalysisResult a = analyze_matrix(model.h, config.kappa, config.gamma_fixed);
            std::ofstream aj(out_dir / ("analysis_" + std::to_string(m) + ".json"));
            aj << analysis_to_json(a);

            row = record_from_analysis(config, a);
            if ((row.counting_bound_holds == CheckOutcome::fails) ||
                (row.capacity_bound_holds == CheckOutcome::fails))
                result.any_bound_failure = true;
        } catch (const std::exception& e) {
            row.m = m;
            row.model = to_string(config.model);
            row.seed = config.seed;
            row.error = e.what();
            row.bound_bits = std::numeric_limits<double>::quiet_NaN();
            row.bound_kind = "inapplicable";
        }
        result.records.push_back(std::move(row));
    }

    result.records_csv_path = (out_dir / "records.csv").string();
    result.plotdata_csv_path = (out_dir / "plotdata.csv").string();
    std::ofstream rc(result.records_csv_path);
    rc << records_to_csv(result.records);
    std::ofstream pc(result.plotdata_csv_path);
    pc << plotdata_to_csv(result.records);
    if (!rc.flush() || !pc.flush())
        throw IoError("failed writing study CSV outputs");
    return result;
}

}  // namespace mimo::study
