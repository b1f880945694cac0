// Command-line front end: one config file drives simulation, Lyapunov
// spectra, stationary sampling, entropy, hypoellipticity checks, free-set
// search and horseshoe certification. Reports go to --out (or stdout) and
// are byte-reproducible for a fixed config and seed.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gsns/config.hpp"
#include "gsns/horseshoe.hpp"
#include "gsns/hypoellipticity.hpp"
#include "gsns/measure.hpp"
#include "gsns/parallel.hpp"
#include "gsns/report.hpp"
#include "gsns/rng.hpp"
#include "gsns/symbolic.hpp"
#include "gsns/tangent.hpp"

using json = nlohmann::ordered_json;
using namespace gsns;

namespace {

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        if (content.empty() || content.back() != '\n') std::cout << '\n';
    } else {
        write_file_atomic(out_path, content);
    }
}

json mode_json(ModeIndex k) { return json::array({k.k1, k.k2}); }

json modeset_json(const ModeSet& s) {
    json arr = json::array();
    for (const ModeIndex k : s) arr.push_back(mode_json(k));
    return arr;
}

json config_json(const ExperimentConfig& cfg) {
    json j;
    j["n"] = cfg.n;
    j["epsilon"] = cfg.epsilon;
    j["dt"] = cfg.dt;
    j["scheme"] = scheme_name(cfg.scheme);
    j["seed"] = cfg.seed;
    json forcing = json::array();
    for (const auto& f : cfg.forcing) {
        forcing.push_back({{"k", mode_json(f.k)}, {"e1", f.e1}, {"e2", f.e2}});
    }
    j["forcing"] = forcing;
    return j;
}

void stamp(json& j, const std::string& hash) {
    j["format_version"] = kReportFormatVersion;
    j["config_hash"] = hash;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const std::uint64_t a = std::stoull(text.substr(0, dots));
        const std::uint64_t b = std::stoull(text.substr(dots + 2));
        for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
        return seeds;
    }
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) seeds.push_back(std::stoull(tok));
    }
    return seeds;
}

std::vector<ModeIndex> parse_mode_list(const std::string& text) {
    std::vector<ModeIndex> out;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        if (pair.empty()) continue;
        const auto comma = pair.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("expected k1,k2 pairs separated by ';'");
        out.push_back({std::stoi(pair.substr(0, comma)), std::stoi(pair.substr(comma + 1))});
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

struct Bundle {
    ExperimentConfig cfg;
    TruncationLattice lattice;
    TriadTable triads;
    System system;
    ForcingPattern forcing;

    explicit Bundle(const std::string& config_path)
        : cfg(parse_config_file(config_path)),
          lattice(cfg.n),
          triads(build_triads(lattice)),
          system(lattice, triads, {cfg.epsilon, cfg.dt, cfg.scheme}),
          forcing(cfg.pattern(lattice)) {
        validate_coupling(forcing, lattice);
    }
};

int cmd_hypo_check(int n, const std::string& force, const std::string& out_path) {
    const auto modes = parse_mode_list(force);
    const ModeSet k(modes.begin(), modes.end());
    const auto trace = check_hypoelliptic(k, n);
    json j;
    j["hypoelliptic"] = trace.hypoelliptic;
    json gens = json::array();
    for (const auto& g : trace.generations) gens.push_back(modeset_json(g));
    j["generations"] = gens;
    j["uncovered"] = modeset_json(trace.uncovered);
    stamp(j, fnv1a_hex("hypo-check n=" + std::to_string(n) + " force=" + force));
    emit(out_path, j.dump(2));
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
    const Bundle b(config_path);
    const int n_steps = grid_steps(b.cfg.t_final, b.cfg.dt);
    const NoisePath path = b.forcing.any()
                               ? sample_noise(b.forcing, b.lattice, b.cfg.dt, std::max(1, n_steps), b.cfg.seed)
                               : NoisePath::unforced(b.cfg.dt, n_steps);

    std::string csv = csv_preamble(b.cfg) + trajectory_header(b.lattice) + "\n";
    Vec q = b.cfg.initial_state(b.lattice);
    Vec w1(b.system.dim()), w2(b.system.dim());
    csv += trajectory_row(0.0, q) + "\n";
    for (int s = 0; s < n_steps; ++s) {
        b.system.step_inplace(q, path, s, w1, w2);
        if (!q.allFinite()) throw BlowupError((s + 1) * b.cfg.dt,
                                              "trajectory blew up at t = " + format17((s + 1) * b.cfg.dt));
        if ((s + 1) % b.cfg.output_every == 0 || s + 1 == n_steps) {
            csv += trajectory_row((s + 1) * b.cfg.dt, q) + "\n";
        }
    }
    emit(out_path, csv);
    return 0;
}

int cmd_lyapunov(const std::string& config_path, int p_flag, double t_total_flag, int reorth_flag,
                 const std::string& seeds_flag, const std::string& out_path) {
    const Bundle b(config_path);
    LyapunovConfig lc;
    lc.p = p_flag > 0 ? p_flag : b.cfg.lyapunov.p;
    lc.t_total = t_total_flag > 0 ? t_total_flag : b.cfg.lyapunov.t_total;
    lc.reorth_every = reorth_flag > 0 ? reorth_flag : b.cfg.lyapunov.reorth_every;
    lc.burn_in_fraction = b.cfg.lyapunov.burn_in_fraction;

    std::vector<std::uint64_t> seeds = seeds_flag.empty() ? b.cfg.lyapunov.seeds : parse_seed_list(seeds_flag);
    if (seeds.empty()) seeds.push_back(b.cfg.seed);

    const int n_steps = grid_steps(lc.t_total, b.cfg.dt);
    const Vec x0 = b.cfg.initial_state(b.lattice);
    std::vector<LyapunovReport> reports(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), [&](int i) {
        const NoisePath path =
            b.forcing.any() ? sample_noise(b.forcing, b.lattice, b.cfg.dt, n_steps, seeds[static_cast<std::size_t>(i)])
                            : NoisePath::unforced(b.cfg.dt, n_steps);
        reports[static_cast<std::size_t>(i)] = lyapunov_spectrum(x0, path, b.system, lc);
    });

    const auto n_seeds = reports.size();
    std::vector<double> exps(static_cast<std::size_t>(lc.p), 0.0), errs(static_cast<std::size_t>(lc.p), 0.0);
    for (int i = 0; i < lc.p; ++i) {
        double mean = 0.0;
        for (const auto& r : reports) mean += r.exponents[static_cast<std::size_t>(i)];
        mean /= static_cast<double>(n_seeds);
        exps[static_cast<std::size_t>(i)] = mean;
        if (n_seeds > 1) {
            double var = 0.0;
            for (const auto& r : reports) {
                const double dlt = r.exponents[static_cast<std::size_t>(i)] - mean;
                var += dlt * dlt;
            }
            var /= static_cast<double>(n_seeds - 1);
            errs[static_cast<std::size_t>(i)] = std::sqrt(var / static_cast<double>(n_seeds));
        } else {
            errs[static_cast<std::size_t>(i)] = reports[0].stderrs[static_cast<std::size_t>(i)];
        }
    }

    json j;
    j["exponents"] = exps;
    j["stderr"] = errs;
    json per_seed = json::array();
    for (std::size_t i = 0; i < n_seeds; ++i) {
        per_seed.push_back({{"seed", seeds[i]},
                            {"exponents", reports[i].exponents},
                            {"stderr", reports[i].stderrs}});
    }
    j["per_seed"] = per_seed;
    json cfg = config_json(b.cfg);
    cfg["lyapunov"] = {{"p", lc.p},
                       {"t_total", lc.t_total},
                       {"reorth_every", lc.reorth_every},
                       {"burn_in_fraction", lc.burn_in_fraction}};
    j["config"] = cfg;
    stamp(j, b.cfg.config_hash);
    emit(out_path, j.dump(2));
    return 0;
}

int cmd_entropy(const std::string& report_path) {
    std::ifstream in(report_path);
    if (!in) throw std::runtime_error("cannot open " + report_path);
    json r = json::parse(in);
    LyapunovReport rep;
    rep.exponents = r.at("exponents").get<std::vector<double>>();
    rep.stderrs = r.at("stderr").get<std::vector<double>>();
    rep.p = static_cast<int>(rep.exponents.size());
    const int n = r.at("config").at("n").get<int>();
    const int d = 4 * n * (n + 1);
    const auto e = pesin_entropy(rep, d);
    json j;
    j["entropy"] = e.value;
    j["stderr"] = e.se;
    stamp(j, r.value("config_hash", std::string("unknown")));
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_stationary(const std::string& config_path, double burn_in_flag, int samples_flag,
                   int thin_flag, std::int64_t seed_flag, const std::string& out_path) {
    const Bundle b(config_path);
    const double burn_in = burn_in_flag >= 0 ? burn_in_flag : b.cfg.stationary.burn_in;
    const int samples = samples_flag > 0 ? samples_flag : b.cfg.stationary.samples;
    const int thin = thin_flag > 0 ? thin_flag : b.cfg.stationary.thin;
    const std::uint64_t seed = seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag)
                                              : (b.cfg.stationary.seed ? b.cfg.stationary.seed : b.cfg.seed);

    const Vec x0 = b.cfg.initial_state(b.lattice);
    const auto m = sample_stationary(b.system, b.forcing, burn_in, samples, thin, seed, &x0);

    std::string csv = csv_preamble(b.cfg) + "sample" + trajectory_header(b.lattice).substr(1) + "\n";
    for (std::size_t i = 0; i < m.samples.size(); ++i) {
        csv += std::to_string(i);
        for (Eigen::Index c = 0; c < m.samples[i].size(); ++c) {
            csv += ',';
            csv += format17(m.samples[i][c]);
        }
        csv += '\n';
    }
    emit(out_path, csv);
    return 0;
}

int cmd_horseshoe(const std::string& config_path, double radius_flag, const std::string& j_flag,
                  double tau_flag, std::int64_t seed_flag, int propose_size,
                  const std::string& out_path) {
    const Bundle b(config_path);
    const auto& hs = b.cfg.horseshoe;
    const double tau = tau_flag > 0 ? tau_flag : hs.tau;
    const std::uint64_t seed = seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag)
                                              : (hs.seed ? hs.seed : b.cfg.seed);

    // stationary ensemble for ball placement and search starts
    const std::uint64_t chain_seed = b.cfg.stationary.seed ? b.cfg.stationary.seed : b.cfg.seed;
    const auto measure = sample_stationary(b.system, b.forcing, b.cfg.stationary.burn_in,
                                           b.cfg.stationary.samples, b.cfg.stationary.thin, chain_seed);

    const double radius = radius_flag > 0 ? radius_flag
                                          : (hs.radius > 0 ? hs.radius
                                                           : nn_distance_percentile(measure.samples, 30.0));
    const double min_sep = hs.min_separation > 0 ? hs.min_separation : 4.0 * radius;
    const BallPair balls = propose_balls(measure, radius, min_sep, rng::derive(seed, 0xba11));

    std::vector<int> times = j_flag.empty() ? hs.times : parse_int_list(j_flag);
    NoisePath path;
    auto make_path = [&](int horizon_tau) {
        const int n_steps = grid_steps(tau, b.cfg.dt) * std::max(1, horizon_tau);
        return b.forcing.any() ? sample_noise(b.forcing, b.lattice, b.cfg.dt, n_steps, seed)
                               : NoisePath::unforced(b.cfg.dt, n_steps);
    };
    if (times.empty()) {
        // propose times from the hitting sets of a thinned ensemble
        const int horizon = hs.horizon > 0 ? hs.horizon : 8 * std::max(1, propose_size);
        path = make_path(horizon);
        std::vector<Vec> probes;
        for (std::size_t i = 0; i < measure.samples.size() && probes.size() < 32; i += std::max<std::size_t>(1, measure.samples.size() / 32)) {
            probes.push_back(measure.samples[i]);
        }
        const auto hits = empirical_hitting_times(probes, balls, path, tau, horizon, b.system);
        const int spacing = std::max(1, horizon / (2 * std::max(1, propose_size)));
        int last = -spacing;
        for (int t : hits) {
            if (static_cast<int>(times.size()) >= propose_size) break;
            if (t - last >= spacing) {
                times.push_back(t);
                last = t;
            }
        }
        if (times.empty()) throw std::runtime_error("no candidate hitting times found; give --j explicitly");
    } else {
        path = make_path(times.back() + 1);
    }

    SearchConfig sc;
    sc.multistarts = hs.multistarts;
    sc.max_iterations = hs.max_iterations;
    sc.seed = seed;
    const int horizon = hs.horizon > 0 ? hs.horizon : (times.empty() ? 1 : times.back() + 1);
    const auto cert = certify_full_horseshoe(times, balls, path, tau, b.system, measure.samples, sc, horizon);

    json j;
    json jb;
    jb["c1"] = std::vector<double>(cert.balls.center1.data(), cert.balls.center1.data() + cert.balls.center1.size());
    jb["c2"] = std::vector<double>(cert.balls.center2.data(), cert.balls.center2.data() + cert.balls.center2.size());
    jb["radius"] = cert.balls.radius;
    j["balls"] = jb;
    j["tau"] = cert.tau;
    j["J"] = cert.times;
    j["density"] = cert.density;
    json words = json::array();
    for (std::size_t w = 0; w < cert.words.size(); ++w) {
        const auto& r = cert.results[w];
        json jw;
        jw["s"] = cert.words[w];
        jw["success"] = r.success;
        jw["residual"] = r.residual;
        jw["x"] = r.x.size() > 0 ? std::vector<double>(r.x.data(), r.x.data() + r.x.size())
                                 : std::vector<double>{};
        words.push_back(jw);
    }
    j["words"] = words;
    j["all_realized"] = cert.all_realized;
    j["config"] = config_json(b.cfg);
    stamp(j, b.cfg.config_hash);
    emit(out_path, j.dump(2));
    return 0;
}

int cmd_free_set(int r, int n, const std::string& words_path, const std::string& out_path) {
    std::ifstream in(words_path);
    if (!in) throw std::runtime_error("cannot open " + words_path);
    std::ostringstream raw;
    raw << in.rdbuf();
    std::vector<std::vector<int>> words;
    std::stringstream lines(raw.str());
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        words.push_back(parse_int_list(line));
    }
    const PatternFamily family(n, r, std::move(words));
    const auto j_set = find_free_set(family);
    json j;
    j["max_trace_set"] = j_set;
    j["size"] = j_set.size();
    j["ratio"] = n > 0 ? static_cast<double>(j_set.size()) / n : 0.0;
    stamp(j, fnv1a_hex("free-set r=" + std::to_string(r) + " n=" + std::to_string(n) + "\n" + raw.str()));
    emit(out_path, j.dump(2));
    return 0;
}

int cmd_triads(int n, const std::string& out_path) {
    const auto lattice = build_lattice(n);
    const auto table = build_triads(lattice);
    std::ostringstream out;
    write_triads_csv(table, out);
    emit(out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Galerkin-truncated stochastic 2D Navier-Stokes toolkit"};
    app.require_subcommand(1);

    // hypo-check
    auto* hypo = app.add_subcommand("hypo-check", "decide hypoellipticity of a forcing set");
    int hypo_n = 0;
    std::string hypo_force, hypo_out = "-";
    hypo->add_option("--n", hypo_n, "truncation")->required();
    hypo->add_option("--force", hypo_force, "driven modes, \"k1,k2;k1,k2;...\"")->required();
    hypo->add_option("--out", hypo_out, "output file (default stdout)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "integrate one trajectory to CSV");
    std::string sim_config, sim_out;
    sim->add_option("--config", sim_config)->required();
    sim->add_option("--out", sim_out, "trajectory CSV")->required();

    // lyapunov
    auto* lya = app.add_subcommand("lyapunov", "estimate the exponent spectrum");
    std::string lya_config, lya_seeds, lya_out;
    int lya_p = 0, lya_reorth = 0;
    double lya_t = 0;
    lya->add_option("--config", lya_config)->required();
    lya->add_option("--p", lya_p, "number of exponents");
    lya->add_option("--t-total", lya_t, "accumulation time");
    lya->add_option("--reorth-every", lya_reorth, "steps between QR passes");
    lya->add_option("--seeds", lya_seeds, "\"a..b\" or \"a,b,c\"");
    lya->add_option("--out", lya_out, "report JSON")->required();

    // entropy
    auto* ent = app.add_subcommand("entropy", "sum of positive exponents from a report");
    std::string ent_report;
    ent->add_option("--lyapunov", ent_report, "lyapunov report JSON")->required();

    // stationary
    auto* sta = app.add_subcommand("stationary", "sample the stationary ensemble to CSV");
    std::string sta_config, sta_out;
    double sta_burn = -1;
    int sta_samples = 0, sta_thin = 0;
    std::int64_t sta_seed = -1;
    sta->add_option("--config", sta_config)->required();
    sta->add_option("--burn-in", sta_burn, "discarded leading time");
    sta->add_option("--samples", sta_samples);
    sta->add_option("--thin", sta_thin, "steps between samples");
    sta->add_option("--seed", sta_seed);
    sta->add_option("--out", sta_out, "measure CSV")->required();

    // horseshoe
    auto* hor = app.add_subcommand("horseshoe", "certify all itineraries over a hitting set");
    std::string hor_config, hor_j, hor_out;
    double hor_radius = 0, hor_tau = 0;
    std::int64_t hor_seed = -1;
    int hor_propose = 4;
    hor->add_option("--config", hor_config)->required();
    hor->add_option("--radius", hor_radius, "ball radius");
    hor->add_option("--j", hor_j, "hitting times, comma separated");
    hor->add_option("--tau", hor_tau, "sampling interval");
    hor->add_option("--seed", hor_seed);
    hor->add_option("--propose-j", hor_propose, "size of auto-proposed J when --j is absent");
    hor->add_option("--out", hor_out, "certificate JSON")->required();

    // free-set
    auto* fre = app.add_subcommand("free-set", "maximum fully traced coordinate set");
    int fre_r = 0, fre_n = 0;
    std::string fre_words, fre_out = "-";
    fre->add_option("--r", fre_r, "alphabet size")->required();
    fre->add_option("--n", fre_n, "word length")->required();
    fre->add_option("--words", fre_words, "file, one word per line, symbols comma-separated")->required();
    fre->add_option("--out", fre_out);

    // triads (debug)
    auto* tri = app.add_subcommand("triads", "dump the triad interaction table");
    int tri_n = 0;
    std::string tri_out = "-";
    tri->add_option("--n", tri_n)->required();
    tri->add_option("--out", tri_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (hypo->parsed()) return cmd_hypo_check(hypo_n, hypo_force, hypo_out);
        if (sim->parsed()) return cmd_simulate(sim_config, sim_out);
        if (lya->parsed()) return cmd_lyapunov(lya_config, lya_p, lya_t, lya_reorth, lya_seeds, lya_out);
        if (ent->parsed()) return cmd_entropy(ent_report);
        if (sta->parsed()) return cmd_stationary(sta_config, sta_burn, sta_samples, sta_thin, sta_seed, sta_out);
        if (hor->parsed()) return cmd_horseshoe(hor_config, hor_radius, hor_j, hor_tau, hor_seed, hor_propose, hor_out);
        if (fre->parsed()) return cmd_free_set(fre_r, fre_n, fre_words, fre_out);
        if (tri->parsed()) return cmd_triads(tri_n, tri_out);
    } catch (const BlowupError& e) {
        json err;
        err["error"] = "blow_up";
        err["time"] = e.time;
        err["what"] = e.what();
        std::cout << err.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "failed";
        err["what"] = e.what();
        std::cout << err.dump() << '\n';
        return 1;
    }
    return 0;
}
