#include "csv_io.hpp"

#include "analysis.hpp"
#include "errors.hpp"
#include "version.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace backstep {
namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::Io, "cannot open '" + path + "' for writing");
    return out;
}

std::vector<double> error_norms(const Trajectory& traj) {
    std::vector<double> e(traj.times.size(), 0.0);
    for (std::size_t k = 0; k < traj.observer.size(); ++k) {
        const FieldPair& w = traj.plant[k];
        const FieldPair& wh = traj.observer[k];
        FieldPair d(w.nx());
        for (int j = 0; j <= w.nx(); ++j) {
            d.u[j] = w.u[j] - wh.u[j];
            d.v[j] = w.v[j] - wh.v[j];
        }
        e[k] = l2_norm(d);
    }
    return e;
}

} // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_kernel_csv(const std::string& path, const KernelField& kf) {
    auto out = open_out(path);
    out << "x,y,Kuu,Kuv,Kvu,Kvv\n";
    const int n = kf.n;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j) {
            out << format_real(static_cast<double>(i) / n) << ','
                << format_real(static_cast<double>(j) / n) << ','
                << format_real(kf.Kuu.at(i, j)) << ',' << format_real(kf.Kuv.at(i, j)) << ','
                << format_real(kf.Kvu.at(i, j)) << ',' << format_real(kf.Kvv.at(i, j)) << '\n';
        }
}

KernelField read_kernel_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::Io, "cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,y,", 0) != 0)
        fail(Errc::Parse, "'" + path + "': missing kernel CSV header");

    std::vector<std::array<double, 6>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::array<double, 6> r{};
        std::stringstream ss(line);
        std::string tok;
        for (int c = 0; c < 6; ++c) {
            if (!std::getline(ss, tok, ','))
                fail(Errc::Parse, "'" + path + "' line " + std::to_string(lineno) + ": expected 6 columns");
            r[c] = std::strtod(tok.c_str(), nullptr);
        }
        rows.push_back(r);
    }

    // node count (n+1)(n+2)/2 determines n
    const std::size_t cnt = rows.size();
    const int n = static_cast<int>(std::lround((std::sqrt(8.0 * cnt + 1.0) - 3.0) / 2.0));
    if (static_cast<std::size_t>(n + 1) * (n + 2) / 2 != cnt)
        fail(Errc::Parse, "'" + path + "': row count " + std::to_string(cnt) + " is not triangular");

    KernelField kf;
    kf.n = n;
    kf.Kuu = TriField(n);
    kf.Kuv = TriField(n);
    kf.Kvu = TriField(n);
    kf.Kvv = TriField(n);
    std::size_t r = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j, ++r) {
            kf.Kuu.at(i, j) = rows[r][2];
            kf.Kuv.at(i, j) = rows[r][3];
            kf.Kvu.at(i, j) = rows[r][4];
            kf.Kvv.at(i, j) = rows[r][5];
        }
    return kf;
}

void write_feedback_gain_csv(const std::string& path, const GainSet& g) {
    if (g.fb_uu.empty()) fail(Errc::FamilyMismatch, "gain set carries no feedback row");
    auto out = open_out(path);
    out << "y,Kuu,Kuv,Kvu,Kvv\n";
    for (int j = 0; j <= g.n; ++j)
        out << format_real(static_cast<double>(j) / g.n) << ',' << format_real(g.fb_uu[j]) << ','
            << format_real(g.fb_uv[j]) << ',' << format_real(g.fb_vu[j]) << ','
            << format_real(g.fb_vv[j]) << '\n';
}

void write_injection_gain_csv(const std::string& path, const GainSet& g) {
    if (g.p1.empty()) fail(Errc::FamilyMismatch, "gain set carries no injection gains");
    auto out = open_out(path);
    out << "x,p1,p2\n";
    for (int i = 0; i <= g.n; ++i)
        out << format_real(static_cast<double>(i) / g.n) << ',' << format_real(g.p1[i]) << ','
            << format_real(g.p2[i]) << '\n';
}

void write_snapshots_csv(const std::string& path, const Trajectory& traj) {
    auto out = open_out(path);
    const bool obs = !traj.observer.empty();
    out << (obs ? "t,x,u,v,uhat,vhat\n" : "t,x,u,v\n");
    const int nx = traj.cfg.nx;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const std::string t = format_real(traj.times[k]);
        for (int j = 0; j <= nx; ++j) {
            out << t << ',' << format_real(static_cast<double>(j) / nx) << ','
                << format_real(traj.plant[k].u[j]) << ',' << format_real(traj.plant[k].v[j]);
            if (obs)
                out << ',' << format_real(traj.observer[k].u[j]) << ','
                    << format_real(traj.observer[k].v[j]);
            out << '\n';
        }
    }
}

void write_norms_csv(const std::string& path, const Trajectory& traj,
                     const std::vector<double>* lyapunov) {
    const bool obs = !traj.observer.empty();
    if (lyapunov && lyapunov->size() != traj.times.size())
        fail(Errc::InvalidArgument, "norms CSV: Lyapunov series length mismatch");

    const std::vector<double> errs = obs ? error_norms(traj) : std::vector<double>{};

    auto out = open_out(path);
    out << "t,l2_u,l2_v,l2_w";
    if (obs) out << ",l2_err";
    if (lyapunov) out << ",V_lyap";
    out << '\n';
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out << format_real(traj.times[k]) << ',' << format_real(l2_norm_line(traj.plant[k].u))
            << ',' << format_real(l2_norm_line(traj.plant[k].v)) << ','
            << format_real(l2_norm(traj.plant[k]));
        if (obs) out << ',' << format_real(errs[k]);
        if (lyapunov) out << ',' << format_real((*lyapunov)[k]);
        out << '\n';
    }
}

void write_report_csv(const std::string& path, const std::vector<CheckResult>& checks) {
    auto out = open_out(path);
    out << "name,value,bound,pass\n";
    for (const auto& c : checks)
        out << c.name << ',' << format_real(c.value) << ',' << format_real(c.bound) << ','
            << (c.pass ? "pass" : "fail") << '\n';
}

std::string report_to_text(const std::vector<CheckResult>& checks) {
    std::ostringstream out;
    int failed = 0;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  value=" << format_real(c.value)
            << "  bound=" << format_real(c.bound);
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
        if (!c.pass) ++failed;
    }
    out << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << '\n';
    return out.str();
}

void write_report_text(const std::string& path, const std::vector<CheckResult>& checks) {
    auto out = open_out(path);
    out << report_to_text(checks);
}

void RunManifest::add_kernel(const std::string& family, const KernelField& kf) {
    KernelMeta m;
    m.family = family;
    m.n = kf.n;
    for (int p = 0; p < 2; ++p) {
        m.iterations[p] = kf.meta[p].iterations_used;
        m.final_increment[p] = kf.meta[p].final_increment;
    }
    kernels.push_back(std::move(m));
}

void write_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::json j;
    j["version"] = BACKSTEP_VERSION;
    j["command"] = m.command;
    j["config"] = m.config.echo();
    j["wall_ms"] = m.wall_ms;
    j["outputs"] = nlohmann::json::array();
    for (const auto& e : m.outputs) j["outputs"].push_back({{"path", e.path}, {"kind", e.kind}});
    j["kernels"] = nlohmann::json::array();
    for (const auto& k : m.kernels)
        j["kernels"].push_back({{"family", k.family},
                                {"n", k.n},
                                {"iterations", {k.iterations[0], k.iterations[1]}},
                                {"final_increment", {k.final_increment[0], k.final_increment[1]}}});
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

} // namespace backstep
