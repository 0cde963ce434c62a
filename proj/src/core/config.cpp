#include "config.hpp"

#include "errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace backstep {
namespace {

// shortest representation that round-trips the double
std::string real_to_string(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    if (line > 0) fail(Errc::Parse, "line " + std::to_string(line) + ": " + msg);
    fail(Errc::Parse, msg);
}

double to_real(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        parse_fail(line, "expected a real number for '" + key + "', got '" + v + "'");
    }
}

int to_int(const std::string& v, const std::string& key, int line) {
    int x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
        parse_fail(line, "expected an integer for '" + key + "', got '" + v + "'");
    return x;
}

} // namespace

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::OpenLoop: return "open_loop";
        case Scenario::StateFeedback: return "state_feedback";
        case Scenario::OutputFeedbackAntiCollocated: return "output_feedback_anticollocated";
        case Scenario::OutputFeedbackCollocated: return "output_feedback_collocated";
        case Scenario::ObserverOnlyAntiCollocated: return "observer_only_anticollocated";
        case Scenario::ObserverOnlyCollocated: return "observer_only_collocated";
    }
    return "open_loop";
}

Scenario scenario_from_name(const std::string& name) {
    for (Scenario s : {Scenario::OpenLoop, Scenario::StateFeedback,
                       Scenario::OutputFeedbackAntiCollocated, Scenario::OutputFeedbackCollocated,
                       Scenario::ObserverOnlyAntiCollocated, Scenario::ObserverOnlyCollocated})
        if (name == scenario_name(s)) return s;
    fail(Errc::Parse, "unknown scenario '" + name + "'");
}

std::string preset_to_string(const IcPreset& p) {
    switch (p.kind) {
        case IcPreset::Kind::CosHalfPi: return "cos:" + real_to_string(p.amplitude);
        case IcPreset::Kind::Constant: return "const:" + real_to_string(p.amplitude);
        case IcPreset::Kind::Bump:
            return "bump:" + real_to_string(p.center) + "," + real_to_string(p.width) + "," +
                   real_to_string(p.amplitude);
    }
    return {};
}

IcPreset preset_from_string(const std::string& s) {
    const auto colon = s.find(':');
    const std::string kind = trim(colon == std::string::npos ? s : s.substr(0, colon));
    const std::string args = colon == std::string::npos ? "" : trim(s.substr(colon + 1));

    auto split_reals = [&](std::size_t expect) {
        std::vector<double> out;
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(to_real(trim(tok), "preset", 0));
        if (out.size() != expect)
            fail(Errc::Parse, "preset '" + s + "': expected " + std::to_string(expect) + " parameter(s)");
        return out;
    };

    IcPreset p;
    if (kind == "cos") {
        p.kind = IcPreset::Kind::CosHalfPi;
        p.amplitude = args.empty() ? 1.0 : split_reals(1)[0];
    } else if (kind == "const") {
        p.kind = IcPreset::Kind::Constant;
        p.amplitude = args.empty() ? 1.0 : split_reals(1)[0];
    } else if (kind == "bump") {
        p.kind = IcPreset::Kind::Bump;
        const auto v = split_reals(3);
        p.center = v[0];
        p.width = v[1];
        p.amplitude = v[2];
    } else {
        fail(Errc::Parse, "unknown initial-condition preset '" + s + "'");
    }
    return p;
}

void config_apply(ToolkitConfig& cfg, const std::string& key, const std::string& value, int line) {
    if (key == "lambda1") {
        cfg.sim.lambda1 = to_real(value, key, line);
        cfg.lambda1_set = true;
    } else if (key == "lambda2") {
        cfg.sim.lambda2 = to_real(value, key, line);
        cfg.lambda2_set = true;
    } else if (key == "scenario") {
        try {
            cfg.sim.scenario = scenario_from_name(value);
        } catch (const Error& e) {
            parse_fail(line, e.what());
        }
        cfg.scenario_set = true;
    } else if (key == "nx") {
        cfg.sim.nx = to_int(value, key, line);
    } else if (key == "n") {
        cfg.kernel.n = to_int(value, key, line);
    } else if (key == "dt") {
        cfg.sim.dt = to_real(value, key, line);
    } else if (key == "t_final") {
        cfg.sim.t_final = to_real(value, key, line);
    } else if (key == "theta") {
        cfg.sim.theta = to_real(value, key, line);
    } else if (key == "tol") {
        cfg.kernel.tol = to_real(value, key, line);
    } else if (key == "max_iter") {
        cfg.kernel.max_iter = to_int(value, key, line);
    } else if (key == "record_every") {
        cfg.sim.record_every = to_int(value, key, line);
    } else if (key == "ic_u" || key == "ic_v" || key == "observer_ic_u" || key == "observer_ic_v") {
        IcPreset p;
        try {
            p = preset_from_string(value);
        } catch (const Error& e) {
            parse_fail(line, e.what());
        }
        if (key == "ic_u") cfg.sim.ic_u = p;
        else if (key == "ic_v") cfg.sim.ic_v = p;
        else if (key == "observer_ic_u") cfg.sim.observer_ic_u = p;
        else cfg.sim.observer_ic_v = p;
    } else {
        parse_fail(line, "unknown key '" + key + "'");
    }
}

void ToolkitConfig::require_complete() const {
    if (!lambda1_set) fail(Errc::Parse, "missing required key 'lambda1'");
    if (!lambda2_set) fail(Errc::Parse, "missing required key 'lambda2'");
    if (!scenario_set) fail(Errc::Parse, "missing required key 'scenario'");
}

std::map<std::string, std::string> ToolkitConfig::echo() const {
    auto real = [](double x) { return real_to_string(x); };
    return {
        {"lambda1", real(sim.lambda1)},
        {"lambda2", real(sim.lambda2)},
        {"scenario", scenario_name(sim.scenario)},
        {"nx", std::to_string(sim.nx)},
        {"n", std::to_string(kernel.n)},
        {"dt", real(sim.dt)},
        {"t_final", real(sim.t_final)},
        {"theta", real(sim.theta)},
        {"tol", real(kernel.tol)},
        {"max_iter", std::to_string(kernel.max_iter)},
        {"record_every", std::to_string(sim.record_every)},
        {"ic_u", preset_to_string(sim.ic_u)},
        {"ic_v", preset_to_string(sim.ic_v)},
        {"observer_ic_u", preset_to_string(sim.observer_ic_u)},
        {"observer_ic_v", preset_to_string(sim.observer_ic_v)},
    };
}

ToolkitConfig parse_config_text(const std::string& text) {
    ToolkitConfig cfg;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) parse_fail(line, "expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty()) parse_fail(line, "expected 'key = value', got '" + s + "'");
        config_apply(cfg, key, value, line);
    }
    cfg.require_complete();
    return cfg;
}

ToolkitConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::Io, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace backstep
