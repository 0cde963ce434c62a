#include "commands.hpp"

#include "analysis.hpp"
#include "csv_io.hpp"
#include "errors.hpp"
#include "verify.hpp"

#include <chrono>
#include <filesystem>

namespace backstep {
namespace {

using Clock = std::chrono::steady_clock;

std::string ensure_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) fail(Errc::Io, "cannot create output directory '" + out_dir + "': " + ec.message());
    return out_dir;
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

} // namespace

void cmd_kernels(const ToolkitConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    ensure_dir(out_dir);
    cfg.sim.validate();

    RunManifest man;
    man.command = "kernels";
    man.config = cfg;

    const double l1 = cfg.sim.lambda1, l2 = cfg.sim.lambda2;
    const KernelField control = control_kernel(l1, l2, cfg.kernel);
    const KernelField inverse = inverse_kernel(l1, l2, cfg.kernel);
    const KernelField anti = observer_kernel_anticollocated(l1, l2, cfg.kernel);
    const KernelField col = observer_kernel_collocated(l1, l2, cfg.kernel);
    man.add_kernel("control", control);
    man.add_kernel("inverse", inverse);
    man.add_kernel("observer_anticollocated", anti);
    man.add_kernel("observer_collocated", col);

    auto emit_kernel = [&](const std::string& name, const KernelField& kf) {
        const std::string path = out_dir + "/kernel_" + name + ".csv";
        write_kernel_csv(path, kf);
        man.outputs.push_back({path, "kernel_csv"});
    };
    emit_kernel("control", control);
    emit_kernel("inverse", inverse);
    emit_kernel("observer_anticollocated", anti);
    emit_kernel("observer_collocated", col);

    const std::string fb_path = out_dir + "/gains_control.csv";
    write_feedback_gain_csv(fb_path, extract_gains(control, ObserverSetup::AntiCollocated));
    man.outputs.push_back({fb_path, "gain_csv"});

    const std::string pa_path = out_dir + "/gains_observer_anticollocated.csv";
    write_injection_gain_csv(pa_path, extract_gains(anti, ObserverSetup::AntiCollocated));
    man.outputs.push_back({pa_path, "gain_csv"});

    const std::string pc_path = out_dir + "/gains_observer_collocated.csv";
    write_injection_gain_csv(pc_path, extract_gains(col, ObserverSetup::Collocated));
    man.outputs.push_back({pc_path, "gain_csv"});

    man.wall_ms = ms_since(t0);
    write_manifest(out_dir + "/manifest.json", man);
}

void cmd_simulate(const ToolkitConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    ensure_dir(out_dir);
    cfg.sim.validate();

    RunManifest man;
    man.command = "simulate";
    man.config = cfg;

    const double l1 = cfg.sim.lambda1, l2 = cfg.sim.lambda2;

    KernelField control, observer;
    GainSet gains;
    ScenarioKernels ker;
    if (cfg.sim.uses_feedback()) {
        control = control_kernel(l1, l2, cfg.kernel);
        man.add_kernel("control", control);
        ker.control = &control;
    }
    if (cfg.sim.has_observer()) {
        if (*cfg.sim.setup() == ObserverSetup::AntiCollocated) {
            observer = observer_kernel_anticollocated(l1, l2, cfg.kernel);
            man.add_kernel("observer_anticollocated", observer);
            gains = extract_gains(observer, ObserverSetup::AntiCollocated);
        } else {
            observer = observer_kernel_collocated(l1, l2, cfg.kernel);
            man.add_kernel("observer_collocated", observer);
            gains = extract_gains(observer, ObserverSetup::Collocated);
        }
        ker.injection = &gains;
    }

    const Trajectory traj = run_scenario(cfg.sim, ker);

    const std::string snap_path = out_dir + "/snapshots.csv";
    write_snapshots_csv(snap_path, traj);
    man.outputs.push_back({snap_path, "snapshot_csv"});

    const std::string norm_path = out_dir + "/norms.csv";
    if (cfg.sim.scenario == Scenario::OutputFeedbackAntiCollocated) {
        const LyapunovReport rep = lyapunov_monitor(traj, control, observer, gains);
        write_norms_csv(norm_path, traj, &rep.V);
    } else {
        write_norms_csv(norm_path, traj);
    }
    man.outputs.push_back({norm_path, "norms_csv"});

    man.wall_ms = ms_since(t0);
    write_manifest(out_dir + "/manifest.json", man);
}

int cmd_verify(const ToolkitConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    ensure_dir(out_dir);

    RunManifest man;
    man.command = "verify";
    man.config = cfg;

    VerifyOptions opt;
    opt.lambda1 = cfg.sim.lambda1;
    opt.lambda2 = cfg.sim.lambda2;
    opt.out_dir = out_dir;
    const std::vector<CheckResult> checks = run_verification(opt);

    const std::string txt_path = out_dir + "/verify_report.txt";
    const std::string csv_path = out_dir + "/verify_report.csv";
    write_report_text(txt_path, checks);
    write_report_csv(csv_path, checks);
    man.outputs.push_back({txt_path, "report_text"});
    man.outputs.push_back({csv_path, "report_csv"});
    man.outputs.push_back({out_dir + "/kernel_control.csv", "kernel_csv"});
    man.outputs.push_back({out_dir + "/gains_control.csv", "gain_csv"});

    man.wall_ms = ms_since(t0);
    write_manifest(out_dir + "/manifest.json", man);
    return count_failed(checks);
}

double cmd_spectrum(const ToolkitConfig& cfg) {
    return modal_rate_oracle(cfg.sim.lambda1, cfg.sim.lambda2);
}

} // namespace backstep
