#include "galspec/driver.hpp"
#include "galspec/errors.hpp"
#include "galspec/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace {

using galspec::io::RunConfig;

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "flat key=value configuration file");
    cmd->add_option("--model", cfg.model, "girardeau | hyl | mean-field");
    cmd->add_option("--rho", cfg.rho, "target density");
    cmd->add_option("--a", cfg.a, "scattering length (sets a-tilde = 8*pi*a)");
    cmd->add_option("--a-tilde", cfg.a_tilde, "occupation-model coupling");
    cmd->add_option("--v", cfg.v_lim, "boost velocity (snapped per box)");
    cmd->add_option("--L0", cfg.L_base, "base length of the box sequence");
    cmd->add_option("--nmax", cfg.n_max, "number of boxes in the sweep");
    cmd->add_option("--dim", cfg.dim, "spatial dimension (1 or 3)");
    cmd->add_option("--c", cfg.c_cap, "subspace energy cap");
    cmd->add_option("--d", cfg.d_cap, "subspace momentum cap");
    cmd->add_option("--r", cfg.r_cap, "max particle-hole excitations");
    cmd->add_option("--rho-max", cfg.rho_max, "depletion density cap");
    cmd->add_option("--jobs", cfg.jobs, "worker count (results are identical)");
    cmd->add_flag("--strict", cfg.strict, "fail on non-convergent trajectories");
    cmd->add_option("--out", cfg.out, "output path prefix (stdout when omitted)");
    cmd->add_option("--window", cfg.window, "mode/index window");
    cmd->add_option("--cap", cfg.energy_cap, "spectrum energy cap");
    cmd->add_option("--mmax", cfg.cascade_max, "largest cascade tracked");
    cmd->add_option("--budget", cfg.budget, "enumeration budget");
    cmd->add_option("--seed", cfg.seed, "seed for randomized checks");
    cmd->add_option("--tol-rel", cfg.tol_rel, "limit fit relative tolerance");
    cmd->add_option("--tol-abs", cfg.tol_abs, "limit fit absolute tolerance");
    cmd->add_option("--min-exponent", cfg.min_exponent, "convergence exponent floor");
    cmd->add_option("--vc-step", cfg.vc_step, "critical-velocity scan step");
    cmd->add_flag("!--no-vc-scan", cfg.vc_scan, "skip the critical-velocity scan");
}

std::map<std::string, std::string> read_flat_ini(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw galspec::config_error("cannot read configuration file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        if (!key.empty()) kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

// Flat file supplies any value not already given on the command line.
void apply_config_file(CLI::App* cmd, RunConfig& cfg, const std::string& path) {
    const auto kv = read_flat_ini(path);
    auto want = [&](const char* flag, const char* key) -> const std::string* {
        if (cmd->count(flag) > 0) return nullptr; // flags override the file
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto as_bool = [](const std::string& s) {
        return s == "1" || s == "true" || s == "yes" || s == "on";
    };
    try {
        if (auto* s = want("--model", "model")) cfg.model = *s;
        if (auto* s = want("--rho", "rho")) cfg.rho = std::stod(*s);
        if (auto* s = want("--a", "a")) cfg.a = std::stod(*s);
        if (auto* s = want("--a-tilde", "a_tilde")) cfg.a_tilde = std::stod(*s);
        if (auto* s = want("--v", "v")) cfg.v_lim = std::stod(*s);
        if (auto* s = want("--L0", "L0")) cfg.L_base = std::stod(*s);
        if (auto* s = want("--nmax", "nmax")) cfg.n_max = std::stoi(*s);
        if (auto* s = want("--dim", "dim")) cfg.dim = std::stoi(*s);
        if (auto* s = want("--N", "N")) cfg.N_override = std::stoll(*s);
        if (auto* s = want("--L", "L")) cfg.L_override = std::stod(*s);
        if (auto* s = want("--c", "c")) cfg.c_cap = std::stod(*s);
        if (auto* s = want("--d", "d")) cfg.d_cap = std::stod(*s);
        if (auto* s = want("--r", "r")) cfg.r_cap = std::stoi(*s);
        if (auto* s = want("--rho-max", "rho_max")) cfg.rho_max = std::stod(*s);
        if (auto* s = want("--jobs", "jobs")) cfg.jobs = std::stoi(*s);
        if (auto* s = want("--strict", "strict")) cfg.strict = as_bool(*s);
        if (auto* s = want("--out", "out")) cfg.out = *s;
        if (auto* s = want("--window", "window")) cfg.window = std::stoi(*s);
        if (auto* s = want("--cap", "cap")) cfg.energy_cap = std::stod(*s);
        if (auto* s = want("--mmax", "mmax")) cfg.cascade_max = std::stoi(*s);
        if (auto* s = want("--budget", "budget")) cfg.budget = std::stoull(*s);
        if (auto* s = want("--seed", "seed")) cfg.seed = static_cast<unsigned>(std::stoul(*s));
        if (auto* s = want("--tol-rel", "tol_rel")) cfg.tol_rel = std::stod(*s);
        if (auto* s = want("--tol-abs", "tol_abs")) cfg.tol_abs = std::stod(*s);
        if (auto* s = want("--min-exponent", "min_exponent")) cfg.min_exponent = std::stod(*s);
        if (auto* s = want("--vc-step", "vc_step")) cfg.vc_step = std::stod(*s);
        if (auto* s = want("--no-vc-scan", "vc_scan")) cfg.vc_scan = as_bool(*s);
    } catch (const std::exception&) {
        throw galspec::config_error("malformed value in configuration file: " + path);
    }
}

int emit(const galspec::driver::CommandOutput& result, const RunConfig& cfg) {
    if (!result.message.empty()) std::cerr << result.message << "\n";
    for (const auto& [suffix, content] : result.files) {
        if (cfg.out.empty()) {
            // Data on stdout; only JSON documents are streamed there.
            if (suffix.find(".json") != std::string::npos) std::cout << content;
        } else {
            galspec::io::write_file(cfg.out + suffix, content);
        }
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact energy-momentum spectra of boosted Bose gases"};
    app.require_subcommand(1);

    RunConfig spectrum_cfg;
    RunConfig sweep_cfg;
    std::string spectrum_ini, sweep_ini;
    int verify_jobs = 1;

    auto* spectrum = app.add_subcommand("spectrum", "point cloud of one finite box");
    add_common_flags(spectrum, spectrum_cfg, spectrum_ini);
    spectrum->add_option("--N", spectrum_cfg.N_override, "particle number override");
    spectrum->add_option("--L", spectrum_cfg.L_override, "box side override");

    auto* sweep = app.add_subcommand("sweep", "thermodynamic sweep with verdict");
    add_common_flags(sweep, sweep_cfg, sweep_ini);

    auto* verify = app.add_subcommand("verify", "oracle-equivalence and invariant suite");
    verify->add_option("--jobs", verify_jobs, "worker count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return galspec::driver::exit_config;
    }

    try {
        if (spectrum->parsed()) {
            if (!spectrum_ini.empty()) apply_config_file(spectrum, spectrum_cfg, spectrum_ini);
            return emit(galspec::driver::run_spectrum(spectrum_cfg), spectrum_cfg);
        }
        if (sweep->parsed()) {
            if (!sweep_ini.empty()) apply_config_file(sweep, sweep_cfg, sweep_ini);
            return emit(galspec::driver::run_sweep_command(sweep_cfg), sweep_cfg);
        }
        if (verify->parsed()) {
            auto results = galspec::verify::run_verification(verify_jobs);
            std::cout << galspec::verify::render_table(results);
            return galspec::verify::all_passed(results) ? galspec::driver::exit_ok
                                                        : galspec::driver::exit_check_failed;
        }
    } catch (const galspec::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return galspec::driver::exit_budget;
    } catch (const galspec::config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return galspec::driver::exit_config;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return galspec::driver::exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return galspec::driver::exit_config;
}
