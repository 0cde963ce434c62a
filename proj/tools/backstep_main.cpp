// Command-line front end. Talks to the toolkit exclusively through the
// shared-library C API declared in backstep.h.

#include <backstep.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct ConfigDeleter {
    void operator()(bstp_config* c) const { bstp_config_free(c); }
};
using ConfigPtr = std::unique_ptr<bstp_config, ConfigDeleter>;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<double> lambda1, lambda2;
    std::optional<int> n, nx;
    std::string scenario;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_sim_flags) {
    cmd->add_option("--config", a.config_path, "configuration file (key = value lines)");
    cmd->add_option("--out", a.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--lambda1", a.lambda1, "coupling constant lambda1 (overrides config)");
    cmd->add_option("--lambda2", a.lambda2, "coupling constant lambda2 (overrides config)");
    cmd->add_option("--n", a.n, "kernel grid resolution (overrides config)");
    if (with_sim_flags) {
        cmd->add_option("--nx", a.nx, "simulation grid resolution (overrides config)");
        cmd->add_option("--scenario", a.scenario, "scenario name (overrides config)");
    }
}

int fail_status(const char* what, bstp_status s) {
    std::fprintf(stderr, "error: %s: %s (%s)\n", what, bstp_last_error(), bstp_status_name(s));
    return (s == BSTP_ERR_PARSE || s == BSTP_ERR_INVALID_ARGUMENT || s == BSTP_ERR_IO) ? kExitUsage
                                                                                       : kExitFailure;
}

// Build the effective configuration: file (when given) + flag overrides.
int make_config(const CommonArgs& a, ConfigPtr& out) {
    bstp_config* raw = nullptr;
    bstp_status s =
        a.config_path.empty() ? bstp_config_create(&raw) : bstp_config_load(a.config_path.c_str(), &raw);
    if (s != BSTP_OK) return fail_status("loading configuration", s);
    out.reset(raw);

    auto set = [&](const char* key, const std::string& value) -> int {
        const bstp_status st = bstp_config_set(out.get(), key, value.c_str());
        if (st != BSTP_OK) return fail_status(key, st);
        return kExitOk;
    };
    if (a.lambda1 && set("lambda1", std::to_string(*a.lambda1))) return kExitUsage;
    if (a.lambda2 && set("lambda2", std::to_string(*a.lambda2))) return kExitUsage;
    if (a.n && set("n", std::to_string(*a.n))) return kExitUsage;
    if (a.nx && set("nx", std::to_string(*a.nx))) return kExitUsage;
    if (!a.scenario.empty() && set("scenario", a.scenario)) return kExitUsage;
    return kExitOk;
}

void echo_outputs(const std::string& out_dir) {
    std::printf("wrote %s/manifest.json\n", out_dir.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"backstepping boundary-control toolkit for coupled reaction-diffusion systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("backstep ") + bstp_version());

    CommonArgs kernels_args, sim_args, verify_args, spectrum_args;
    CLI::App* kernels = app.add_subcommand("kernels", "solve the four kernel families, emit CSV surfaces and gain curves");
    add_common(kernels, kernels_args, false);
    CLI::App* simulate = app.add_subcommand("simulate", "time-step the configured scenario, emit snapshot and norm CSVs");
    add_common(simulate, sim_args, true);
    CLI::App* verify = app.add_subcommand("verify", "run the full verification suite, emit the report");
    add_common(verify, verify_args, false);
    CLI::App* spectrum = app.add_subcommand("spectrum", "print the dominant open-loop growth rate");
    add_common(spectrum, spectrum_args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (kernels->parsed()) {
        ConfigPtr cfg;
        if (const int rc = make_config(kernels_args, cfg)) return rc;
        const bstp_status s = bstp_cmd_kernels(cfg.get(), kernels_args.out_dir.c_str());
        if (s != BSTP_OK) return fail_status("kernels", s);
        echo_outputs(kernels_args.out_dir);
        return kExitOk;
    }

    if (simulate->parsed()) {
        if (sim_args.config_path.empty() && sim_args.scenario.empty()) {
            std::fprintf(stderr, "error: simulate needs --config or --scenario\n");
            return kExitUsage;
        }
        ConfigPtr cfg;
        if (const int rc = make_config(sim_args, cfg)) return rc;
        const bstp_status s = bstp_cmd_simulate(cfg.get(), sim_args.out_dir.c_str());
        if (s != BSTP_OK) return fail_status("simulate", s);
        echo_outputs(sim_args.out_dir);
        return kExitOk;
    }

    if (verify->parsed()) {
        ConfigPtr cfg;
        if (const int rc = make_config(verify_args, cfg)) return rc;
        int failed = 0;
        const bstp_status s = bstp_cmd_verify(cfg.get(), verify_args.out_dir.c_str(), &failed);
        if (s != BSTP_OK && s != BSTP_ERR_VERIFICATION) return fail_status("verify", s);

        std::ifstream report(verify_args.out_dir + "/verify_report.txt");
        std::cout << report.rdbuf();
        return failed == 0 ? kExitOk : kExitFailure;
    }

    // spectrum
    ConfigPtr cfg;
    if (const int rc = make_config(spectrum_args, cfg)) return rc;
    char l1[64], l2[64];
    bstp_config_get(cfg.get(), "lambda1", l1, sizeof l1);
    bstp_config_get(cfg.get(), "lambda2", l2, sizeof l2);
    double rate = 0.0;
    const bstp_status s = bstp_modal_rate(std::strtod(l1, nullptr), std::strtod(l2, nullptr), &rate);
    if (s != BSTP_OK) return fail_status("spectrum", s);
    std::printf("%.6g\n", rate);
    return kExitOk;
}
