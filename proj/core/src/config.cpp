#include "gsns/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gsns {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key: " + path + key);
    }
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError("missing key: " + path + key);
    if (!obj[key].is_number()) throw ConfigError("not a number: " + path + key);
    return obj[key].get<double>();
}

ModeIndex parse_mode(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        throw ConfigError("expected [k1, k2]: " + path);
    }
    return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");

    reject_unknown(root,
                   {"n", "epsilon", "dt", "t_final", "output_every", "seed", "scheme", "forcing",
                    "x0", "lyapunov", "stationary", "horseshoe"},
                   "");

    ExperimentConfig cfg;
    cfg.config_hash = fnv1a_hex(text);

    const double n = require_number(root, "n", "");
    if (n < 1 || n != std::floor(n)) throw ConfigError("n must be a positive integer");
    cfg.n = static_cast<int>(n);
    cfg.epsilon = require_number(root, "epsilon", "");
    if (cfg.epsilon < 0) throw ConfigError("epsilon must be >= 0");

    if (root.contains("dt")) cfg.dt = root["dt"].get<double>();
    if (!(cfg.dt > 0)) throw ConfigError("dt must be positive");
    if (root.contains("t_final")) cfg.t_final = root["t_final"].get<double>();
    if (root.contains("output_every")) {
        cfg.output_every = root["output_every"].get<int>();
        if (cfg.output_every < 1) throw ConfigError("output_every must be >= 1");
    }
    if (root.contains("seed")) cfg.seed = root["seed"].get<std::uint64_t>();
    if (root.contains("scheme")) {
        try {
            cfg.scheme = scheme_from_name(root["scheme"].get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
    }

    if (!root.contains("forcing") || !root["forcing"].is_array()) {
        throw ConfigError("missing key: forcing (array, possibly empty)");
    }
    std::set<std::pair<int, int>> seen_modes;
    int idx = 0;
    for (const auto& f : root["forcing"]) {
        const std::string path = "forcing[" + std::to_string(idx) + "].";
        if (!f.is_object()) throw ConfigError("forcing entries must be objects");
        reject_unknown(f, {"k", "e1", "e2"}, path);
        ForcingSpec spec;
        if (!f.contains("k")) throw ConfigError("missing key: " + path + "k");
        spec.k = parse_mode(f["k"], path + "k");
        spec.e1 = require_number(f, "e1", path);
        spec.e2 = require_number(f, "e2", path);
        if ((spec.e1 == 0.0) != (spec.e2 == 0.0)) {
            throw ConfigError(path + "e1/e2: a mode is either unforced or forced in both components");
        }
        if (!in_upper_lattice(spec.k) || norm_inf(spec.k) > cfg.n) {
            throw ConfigError(path + "k: mode outside the upper truncated lattice");
        }
        if (!seen_modes.insert({spec.k.k1, spec.k.k2}).second) {
            throw ConfigError(path + "k: duplicate forcing mode");
        }
        cfg.forcing.push_back(spec);
        ++idx;
    }

    if (root.contains("x0")) {
        const auto& x0 = root["x0"];
        if (x0.is_string()) {
            if (x0.get<std::string>() != "zero") throw ConfigError("x0: expected \"zero\" or an array");
        } else if (x0.is_array()) {
            int xi = 0;
            for (const auto& a : x0) {
                const std::string path = "x0[" + std::to_string(xi) + "].";
                reject_unknown(a, {"k", "c1", "c2"}, path);
                InitialAmplitude amp;
                if (!a.contains("k")) throw ConfigError("missing key: " + path + "k");
                amp.k = parse_mode(a["k"], path + "k");
                if (a.contains("c1")) amp.c1 = a["c1"].get<double>();
                if (a.contains("c2")) amp.c2 = a["c2"].get<double>();
                if (!in_upper_lattice(amp.k) || norm_inf(amp.k) > cfg.n) {
                    throw ConfigError(path + "k: mode outside the upper truncated lattice");
                }
                cfg.x0.push_back(amp);
                ++xi;
            }
        } else {
            throw ConfigError("x0: expected \"zero\" or an array");
        }
    }

    if (root.contains("lyapunov")) {
        const auto& b = root["lyapunov"];
        reject_unknown(b, {"p", "t_total", "reorth_every", "burn_in_fraction", "seeds"}, "lyapunov.");
        if (b.contains("p")) cfg.lyapunov.p = b["p"].get<int>();
        if (b.contains("t_total")) cfg.lyapunov.t_total = b["t_total"].get<double>();
        if (b.contains("reorth_every")) cfg.lyapunov.reorth_every = b["reorth_every"].get<int>();
        if (b.contains("burn_in_fraction")) cfg.lyapunov.burn_in_fraction = b["burn_in_fraction"].get<double>();
        if (b.contains("seeds")) {
            for (const auto& s : b["seeds"]) cfg.lyapunov.seeds.push_back(s.get<std::uint64_t>());
        }
    }
    if (root.contains("stationary")) {
        const auto& b = root["stationary"];
        reject_unknown(b, {"burn_in", "samples", "thin", "seed"}, "stationary.");
        if (b.contains("burn_in")) cfg.stationary.burn_in = b["burn_in"].get<double>();
        if (b.contains("samples")) cfg.stationary.samples = b["samples"].get<int>();
        if (b.contains("thin")) cfg.stationary.thin = b["thin"].get<int>();
        if (b.contains("seed")) cfg.stationary.seed = b["seed"].get<std::uint64_t>();
    }
    if (root.contains("horseshoe")) {
        const auto& b = root["horseshoe"];
        reject_unknown(b, {"radius", "min_separation", "j", "tau", "seed", "multistarts",
                           "max_iterations", "horizon"},
                       "horseshoe.");
        if (b.contains("radius")) cfg.horseshoe.radius = b["radius"].get<double>();
        if (b.contains("min_separation")) cfg.horseshoe.min_separation = b["min_separation"].get<double>();
        if (b.contains("j")) {
            for (const auto& t : b["j"]) cfg.horseshoe.times.push_back(t.get<int>());
        }
        if (b.contains("tau")) cfg.horseshoe.tau = b["tau"].get<double>();
        if (b.contains("seed")) cfg.horseshoe.seed = b["seed"].get<std::uint64_t>();
        if (b.contains("multistarts")) cfg.horseshoe.multistarts = b["multistarts"].get<int>();
        if (b.contains("max_iterations")) cfg.horseshoe.max_iterations = b["max_iterations"].get<int>();
        if (b.contains("horizon")) cfg.horseshoe.horizon = b["horizon"].get<int>();
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ForcingPattern ExperimentConfig::pattern(const TruncationLattice& lattice) const {
    ForcingPattern p = ForcingPattern::zero(lattice);
    for (const auto& f : forcing) {
        const int pos = lattice.index_of(f.k);
        if (pos < 0) throw ConfigError("forcing mode outside lattice");
        p.e1[pos] = f.e1;
        p.e2[pos] = f.e2;
    }
    return p;
}

Vec ExperimentConfig::initial_state(const TruncationLattice& lattice) const {
    Vec q = Vec::Zero(lattice.d());
    for (const auto& a : x0) {
        const int pos = lattice.index_of(a.k);
        if (pos < 0) throw ConfigError("x0 mode outside lattice");
        q[2 * pos] = a.c1;
        q[2 * pos + 1] = a.c2;
    }
    return q;
}

}  // namespace gsns
