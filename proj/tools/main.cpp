// SPDX-License-Identifier: Apache-2.0
//
// mimocap: multi-path MIMO capacity-scaling toolkit.
//
// Subcommands:
//   generate       write a scenario and its transfer matrix for one size M
//   analyze        structure certificate + capacity + bound checks for a matrix file
//   scaling-study  run the study over all configured sizes, emit CSVs
//   verify         bound checks with user-supplied (or computed) constants
//
// Exit codes: 0 success, 1 usage error, 2 bound-check failure, 3 I/O failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mimo/bounds.hpp"
#include "mimo/capacity.hpp"
#include "mimo/channel.hpp"
#include "mimo/eigen.hpp"
#include "mimo/errors.hpp"
#include "mimo/matrix_io.hpp"
#include "mimo/structure.hpp"
#include "mimo/study.hpp"

namespace {

using mimo::ComplexMatrix;
namespace study = mimo::study;
namespace bounds = mimo::bounds;
namespace structure = mimo::structure;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBoundFailure = 2;
constexpr int kExitIo = 3;

struct ConfigOpts {
    std::string config_path;
    std::string model;
    std::vector<int> m_values;
    double kappa = 0.0;
    std::uint64_t seed = 0;
    int paths_per_scenario = 0;
    double gain_decay_s = 0.0;
    double wavelength = 0.0;
    double spacing_over_wavelength = 0.0;
    bool normalize_power = false;
    double gamma_fixed = 0.0;
    std::string output_dir;

    CLI::Option* o_model = nullptr;
    CLI::Option* o_m_values = nullptr;
    CLI::Option* o_kappa = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_paths = nullptr;
    CLI::Option* o_decay = nullptr;
    CLI::Option* o_wavelength = nullptr;
    CLI::Option* o_spacing = nullptr;
    CLI::Option* o_normalize = nullptr;
    CLI::Option* o_gamma_fixed = nullptr;
    CLI::Option* o_output_dir = nullptr;
};

void add_config_options(CLI::App* cmd, ConfigOpts& co) {
    cmd->add_option("--config", co.config_path, "JSON config file");
    co.o_model = cmd->add_option("--model", co.model,
                                 "scattering_powerlaw | scattering_equal | iid_gaussian");
    co.o_m_values = cmd->add_option("--m_values", co.m_values, "study sizes, strictly increasing");
    co.o_kappa = cmd->add_option("--kappa", co.kappa, "SNR ratio E_S/nu_0");
    co.o_seed = cmd->add_option("--seed", co.seed, "stream seed");
    co.o_paths = cmd->add_option("--paths_per_scenario", co.paths_per_scenario,
                                 "scattering paths (clamped to M)");
    co.o_decay = cmd->add_option("--gain_decay_s", co.gain_decay_s,
                                 "|beta_p| = p^-s gain decay exponent");
    co.o_wavelength = cmd->add_option("--wavelength", co.wavelength, "carrier wavelength (m)");
    co.o_spacing = cmd->add_option("--spacing_over_wavelength", co.spacing_over_wavelength,
                                   "array spacing over wavelength");
    co.o_normalize = cmd->add_option("--normalize_power", co.normalize_power,
                                     "rescale H so sum |h|^2 = M");
    co.o_gamma_fixed = cmd->add_option("--gamma_fixed", co.gamma_fixed,
                                       "use this envelope exponent instead of fitting");
    co.o_output_dir = cmd->add_option("--output_dir", co.output_dir, "output directory");
}

study::StudyConfig resolve_config(const ConfigOpts& co) {
    study::StudyConfig c;
    if (!co.config_path.empty())
        c = study::read_config_file(co.config_path);
    if (co.o_model->count())
        c.model = study::model_from_string(co.model);
    if (co.o_m_values->count())
        c.m_values = co.m_values;
    if (co.o_kappa->count())
        c.kappa = co.kappa;
    if (co.o_seed->count())
        c.seed = co.seed;
    if (co.o_paths->count())
        c.paths_per_scenario = co.paths_per_scenario;
    if (co.o_decay->count())
        c.gain_decay_s = co.gain_decay_s;
    if (co.o_wavelength->count())
        c.wavelength = co.wavelength;
    if (co.o_spacing->count())
        c.spacing_over_wavelength = co.spacing_over_wavelength;
    if (co.o_normalize->count())
        c.normalize_power = co.normalize_power;
    if (co.o_gamma_fixed->count())
        c.gamma_fixed = co.gamma_fixed;
    if (co.o_output_dir->count())
        c.output_dir = co.output_dir;
    c.validate();
    return c;
}

ComplexMatrix load_square_matrix(const std::string& path) {
    ComplexMatrix h = mimo::read_matrix_file(path);
    for (std::size_t i = 0; i < h.size(); ++i)
        if (!std::isfinite(h.data()[i].real()) || !std::isfinite(h.data()[i].imag()))
            throw mimo::IoError("matrix file contains non-finite entries: " + path);
    if (!h.square())
        throw mimo::IoError("matrix must be square for this command: " + path);
    return h;
}

void print_bound_row(const char* label, const bounds::BoundReport& r) {
    if (!r.applicable) {
        std::printf("  %-22s inapplicable\n", label);
        return;
    }
    std::printf("  %-22s %-5s margin=%-12.4g points=%d\n", label, r.holds ? "holds" : "FAILS",
                r.worst_margin, r.checked_points);
}

int cmd_generate(const study::StudyConfig& config, int m) {
    namespace fs = std::filesystem;
    const fs::path out_dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw mimo::IoError("cannot create output directory: " + config.output_dir);

    const study::ModelOutput model = study::build_model_matrix(config, m);
    if (model.scenario) {
        const std::string spath = (out_dir / study::scenario_file_name(m)).string();
        mimo::channel::write_scenario_file(spath, *model.scenario);
        std::printf("wrote %s\n", spath.c_str());
    }
    const std::string hpath = (out_dir / study::matrix_file_name(m)).string();
    mimo::write_matrix_file(hpath, model.h);
    std::printf("wrote %s\n", hpath.c_str());
    return kExitOk;
}

int cmd_analyze(const std::string& matrix_file, double kappa,
                std::optional<double> gamma_fixed, const std::string& out_path,
                const std::string& fading_path) {
    const ComplexMatrix h = load_square_matrix(matrix_file);
    if (!fading_path.empty()) {
        mimo::write_matrix_file(fading_path, mimo::channel::fading_matrix(h));
        std::printf("wrote %s\n", fading_path.c_str());
    }
    const study::AnalysisResult a = study::analyze_matrix(h, kappa, gamma_fixed);
    const std::string text = study::analysis_to_json(a);
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream f(out_path);
        if (!f)
            throw mimo::IoError("cannot open for writing: " + out_path);
        f << text;
        std::printf("wrote %s\n", out_path.c_str());
    }
    std::printf("capacity %.6f bits (m=%d, kappa=%g)\n", a.cap_fading.bits, a.m, kappa);
    print_bound_row("counting_power", a.counting);
    print_bound_row("densta_domination", a.densta);
    print_bound_row("capacity_power", a.capacity_power);
    if (!a.structure_error.empty())
        std::printf("  structure certificate unavailable: %s\n", a.structure_error.c_str());
    const bool failed = (a.counting.applicable && !a.counting.holds) ||
                        (a.densta.applicable && !a.densta.holds) ||
                        (a.capacity_power.applicable && !a.capacity_power.holds);
    return failed ? kExitBoundFailure : kExitOk;
}

int cmd_scaling_study(const study::StudyConfig& config) {
    const study::StudyResult result = study::run_scaling_study(config);
    std::printf("%-6s %-20s %-14s %-14s %-10s %-9s %-9s\n", "M", "model", "capacity", "bound",
                "gamma", "counting", "capacity");
    for (const study::ScalingRecord& r : result.records) {
        if (!r.error.empty()) {
            std::printf("%-6d %-20s row failed: %s\n", r.m, r.model.c_str(), r.error.c_str());
            continue;
        }
        std::printf("%-6d %-20s %-14.5f %-14.5f %-10.4f %-9s %-9s\n", r.m, r.model.c_str(),
                    r.capacity_bits, r.bound_bits, r.gamma,
                    study::to_string(r.counting_bound_holds),
                    study::to_string(r.capacity_bound_holds));
    }
    std::printf("wrote %s\nwrote %s\n", result.records_csv_path.c_str(),
                result.plotdata_csv_path.c_str());
    if (result.any_bound_failure) {
        std::printf("bound-check FAILURE in at least one row\n");
        return kExitBoundFailure;
    }
    return kExitOk;
}

// verify operates on a fading matrix file (Hermitian PSD), not a transfer
// matrix; `analyze --emit_fading` produces one from a transfer matrix.
int cmd_verify(const std::string& matrix_file, std::optional<double> alpha_opt,
               std::optional<double> f_plus_opt, std::optional<double> gamma_opt,
               double kappa) {
    const ComplexMatrix f = load_square_matrix(matrix_file);
    if (!f.is_hermitian())
        throw mimo::IoError("verify expects a fading matrix (Hermitian): " + matrix_file);
    const int m = f.rows();

    const structure::StructureReport fitted = structure::build_structure_report(f, gamma_opt);
    const ComplexMatrix f_sorted = structure::sort_diagonal_descending(f).second;

    const double alpha = alpha_opt.value_or(fitted.alpha_min);
    const double gamma = gamma_opt.value_or(fitted.gamma);
    double f_plus = f_plus_opt.value_or(0.0);
    if (!f_plus_opt) {
        // minimal admissible constant for the chosen gamma
        f_plus = structure::fit_power_envelope(fitted.diag_sorted, gamma).first;
    }

    // hypothesis check on the user-facing constants
    bool hypothesis_ok = alpha >= fitted.alpha_min * (1.0 - 1e-12) - 1e-15;
    std::string hypothesis_note;
    if (!hypothesis_ok)
        hypothesis_note = "alpha below the minimal dominance constant";
    for (std::size_t i = 0; i < fitted.diag_sorted.size() && hypothesis_ok; ++i) {
        const double envelope =
            f_plus * std::pow(static_cast<double>(i + 1), -gamma);
        if (fitted.diag_sorted[i] > envelope * (1.0 + 1e-12) + 1e-15) {
            hypothesis_ok = false;
            hypothesis_note = "diagonal exceeds the requested envelope at index " +
                              std::to_string(i + 1);
        }
    }

    structure::StructureReport claimed = fitted;
    claimed.alpha_min = alpha;
    claimed.f_plus = f_plus;
    claimed.gamma = gamma;
    claimed.gamma_admissible = gamma > 1.0;
    claimed.rho_plus = (1.0 + alpha) * f_plus;

    const mimo::SpectralSummary spec = mimo::hermitian_eigen(f, false);
    const auto cap = mimo::capacity::capacity_from_fading_eigs(spec.eigenvalues, kappa, m);

    const bounds::BoundReport counting = bounds::verify_counting_bound(spec.eigenvalues, claimed);
    const bounds::BoundReport densta = bounds::verify_densta_domination(f_sorted, alpha);
    const bounds::BoundReport diag_counting =
        bounds::verify_diag_counting_bound(claimed.diag_sorted, f_plus, gamma);
    const bounds::BoundReport capacity = bounds::verify_capacity_bound(cap.bits, claimed, kappa, m);

    std::printf("m=%d kappa=%g alpha=%.6g f_plus=%.6g gamma=%.6g rho_plus=%.6g\n", m, kappa,
                alpha, f_plus, gamma, claimed.rho_plus);
    if (!hypothesis_ok)
        std::printf("hypothesis not satisfied (%s); checks below are informational\n",
                    hypothesis_note.c_str());
    print_bound_row("counting_power", counting);
    print_bound_row("densta_domination", densta);
    print_bound_row("diag_counting", diag_counting);
    print_bound_row("capacity_power", capacity);
    std::printf("capacity %.6f bits\n", cap.bits);

    const bool any_fail = (counting.applicable && !counting.holds) ||
                          (densta.applicable && !densta.holds) ||
                          (diag_counting.applicable && !diag_counting.holds) ||
                          (capacity.applicable && !capacity.holds);
    if (!hypothesis_ok)
        return kExitOk;  // nothing certified, nothing violated
    return any_fail ? kExitBoundFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-path MIMO capacity-scaling toolkit"};
    app.require_subcommand(1);

    ConfigOpts gen_opts;
    int gen_m = 0;
    CLI::App* gen = app.add_subcommand("generate", "write scenario + transfer matrix for one M");
    add_config_options(gen, gen_opts);
    gen->add_option("--M", gen_m, "system size")->required();

    std::string an_matrix, an_out, an_fading;
    double an_kappa = 10.0;
    double an_gamma_fixed = 0.0;
    CLI::App* an = app.add_subcommand("analyze", "analyze one matrix file");
    an->add_option("--matrix_file", an_matrix, "matrix file (shared text format)")->required();
    an->add_option("--kappa", an_kappa, "SNR ratio");
    CLI::Option* an_gamma_opt = an->add_option("--gamma_fixed", an_gamma_fixed,
                                               "use this envelope exponent instead of fitting");
    an->add_option("--out", an_out, "write analysis JSON here instead of stdout");
    an->add_option("--emit_fading", an_fading, "also write the fading matrix to this file");

    ConfigOpts st_opts;
    CLI::App* st = app.add_subcommand("scaling-study", "run the scaling study");
    add_config_options(st, st_opts);

    std::string vf_matrix;
    double vf_alpha = 0.0, vf_f_plus = 0.0, vf_gamma = 0.0, vf_kappa = 10.0;
    CLI::App* vf = app.add_subcommand("verify", "verify bounds with given constants");
    vf->add_option("--matrix_file", vf_matrix, "matrix file (shared text format)")->required();
    CLI::Option* vf_alpha_opt = vf->add_option("--alpha", vf_alpha, "dominance constant");
    CLI::Option* vf_fplus_opt = vf->add_option("--f_plus", vf_f_plus, "envelope constant");
    CLI::Option* vf_gamma_opt = vf->add_option("--gamma", vf_gamma, "envelope exponent");
    vf->add_option("--kappa", vf_kappa, "SNR ratio");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen)
            return cmd_generate(resolve_config(gen_opts), gen_m);
        if (*an)
            return cmd_analyze(an_matrix, an_kappa,
                               an_gamma_opt->count() ? std::optional<double>(an_gamma_fixed)
                                                     : std::nullopt,
                               an_out, an_fading);
        if (*st)
            return cmd_scaling_study(resolve_config(st_opts));
        if (*vf)
            return cmd_verify(vf_matrix,
                              vf_alpha_opt->count() ? std::optional<double>(vf_alpha)
                                                    : std::nullopt,
                              vf_fplus_opt->count() ? std::optional<double>(vf_f_plus)
                                                    : std::nullopt,
                              vf_gamma_opt->count() ? std::optional<double>(vf_gamma)
                                                    : std::nullopt,
                              vf_kappa);
    } catch (const mimo::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
