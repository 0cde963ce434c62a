#pragma once

#include "config.hpp"
#include "kernel_families.hpp"
#include "pde_sim.hpp"

#include <string>
#include <vector>

namespace backstep {

// All data files use full-precision decimal floats (17 significant digits)
// and contain no volatile metadata, so identical inputs produce
// byte-identical files.

std::string format_real(double x);

// header x,y,Kuu,Kuv,Kvu,Kvv; one row per triangle node, i-major.
void write_kernel_csv(const std::string& path, const KernelField& kf);

// Read back the four components of a kernel CSV; n is deduced from the row
// count. Metadata (family, lambdas) is not stored in the CSV and is left
// at defaults.
KernelField read_kernel_csv(const std::string& path);

// control feedback row: header y,Kuu,Kuv,Kvu,Kvv (values of K(1, y))
void write_feedback_gain_csv(const std::string& path, const GainSet& g);
// observer injection gains: header x,p1,p2
void write_injection_gain_csv(const std::string& path, const GainSet& g);

// header t,x,u,v plus uhat,vhat when observer snapshots are present
void write_snapshots_csv(const std::string& path, const Trajectory& traj);

// header t,l2_u,l2_v,l2_w plus l2_err when an observer is present and
// V_lyap when a Lyapunov series is supplied (must match snapshot count)
void write_norms_csv(const std::string& path, const Trajectory& traj,
                     const std::vector<double>* lyapunov = nullptr);

struct CheckResult {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string detail;
};

// one row per check: name,value,bound,pass
void write_report_csv(const std::string& path, const std::vector<CheckResult>& checks);
void write_report_text(const std::string& path, const std::vector<CheckResult>& checks);
std::string report_to_text(const std::vector<CheckResult>& checks);

struct ManifestEntry {
    std::string path;
    std::string kind;
};

struct RunManifest {
    std::string command;
    ToolkitConfig config;
    std::vector<ManifestEntry> outputs;
    struct KernelMeta {
        std::string family;
        int n = 0;
        int iterations[2] = {0, 0};
        double final_increment[2] = {0.0, 0.0};
    };
    std::vector<KernelMeta> kernels;
    double wall_ms = 0.0;

    void add_kernel(const std::string& family, const KernelField& kf);
};

// JSON manifest; written last so its presence marks a completed run.
void write_manifest(const std::string& path, const RunManifest& m);

} // namespace backstep
