// End-to-end acceptance suite. Each criterion is a self-contained experiment
// with its thresholds pinned in code; run one with --criterion N (as the
// ctest entries do) or everything with --all. Prints one PASS/FAIL line per
// criterion and exits nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gsns/config.hpp"
#include "gsns/horseshoe.hpp"
#include "gsns/hypoellipticity.hpp"
#include "gsns/measure.hpp"
#include "gsns/report.hpp"
#include "gsns/rng.hpp"
#include "gsns/symbolic.hpp"
#include "gsns/tangent.hpp"

using namespace gsns;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        notes.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    }
    void info(const std::string& what) { notes.push_back("  info " + what); }
};

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

Vec random_state(int d, std::uint64_t seed, double scale = 1.0) {
    Vec q(d);
    for (int c = 0; c < d; ++c) q[c] = scale * rng::gaussian(seed, 7, static_cast<std::uint64_t>(c));
    return q;
}

ForcingPattern pattern_on(const TruncationLattice& lat, std::initializer_list<ModeIndex> modes,
                          double e) {
    ForcingPattern p = ForcingPattern::zero(lat);
    for (const ModeIndex k : modes) {
        p.e1[lat.index_of(k)] = e;
        p.e2[lat.index_of(k)] = e;
    }
    return p;
}

std::string join_modes(const ModeSet& s) {
    std::string out;
    for (const ModeIndex k : s) {
        if (!out.empty()) out += " ";
        out += "(" + std::to_string(k.k1) + "," + std::to_string(k.k2) + ")";
    }
    return out.empty() ? "none" : out;
}

// ---------------------------------------------------------------------------
// 1. Hypoellipticity verdicts on the classical driving sets.
// ---------------------------------------------------------------------------
Outcome criterion_1() {
    Outcome o;
    const double t0 = now_seconds();
    const std::vector<std::pair<std::string, ModeSet>> positive = {
        {"{(0,1),(1,1)}", {{0, 1}, {1, 1}}},
        {"{(1,0),(1,1)}", {{1, 0}, {1, 1}}},
    };
    for (const auto& [name, k] : positive) {
        for (int n = 1; n <= 8; ++n) {
            const auto trace = check_hypoelliptic(k, n);
            o.require(trace.hypoelliptic,
                      "K=" + name + " N=" + std::to_string(n) + " hypoelliptic" +
                          (trace.hypoelliptic ? "" : "; uncovered: " + join_modes(trace.uncovered)));
        }
    }
    const std::vector<std::pair<std::string, ModeSet>> negative = {
        {"{(0,1)}", {{0, 1}}},
        {"{(1,0),(0,1)}", {{1, 0}, {0, 1}}},
    };
    for (const auto& [name, k] : negative) {
        for (int n = 1; n <= 8; ++n) {
            const auto trace = check_hypoelliptic(k, n);
            o.require(!trace.hypoelliptic && !trace.uncovered.empty(),
                      "K=" + name + " N=" + std::to_string(n) + " not hypoelliptic, uncovered nonempty");
        }
    }
    const double elapsed = now_seconds() - t0;
    o.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s < 1 s");
    return o;
}

// ---------------------------------------------------------------------------
// 2. Inviscid unforced conservation of enstrophy and energy.
// ---------------------------------------------------------------------------
Outcome criterion_2() {
    Outcome o;
    const double dt = 1e-3, t_final = 10.0;
    for (int n : {1, 2, 3}) {
        const auto lat = build_lattice(n);
        const auto tri = build_triads(lat);
        const System sys(lat, tri, {0.0, dt, Scheme::heun_deterministic});
        const auto path = NoisePath::unforced(dt, grid_steps(t_final, dt));
        for (std::uint64_t ic = 0; ic < 5; ++ic) {
            Vec x0 = random_state(lat.d(), 1000 * static_cast<std::uint64_t>(n) + ic);
            x0 /= x0.norm();
            const double z0 = enstrophy(x0), e0 = energy(x0, lat);
            const Vec xT = sys.flow(x0, path, t_final);
            const double dz = std::abs(enstrophy(xT) - z0) / z0;
            const double de = std::abs(energy(xT, lat) - e0) / e0;
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "N=%d ic=%llu enstrophy drift %.2e, energy drift %.2e < 1e-5", n,
                          static_cast<unsigned long long>(ic), dz, de);
            o.require(dz < 1e-5 && de < 1e-5, buf);
        }
    }
    return o;
}

// ---------------------------------------------------------------------------
// 3. Linearization spectrum at the origin.
// ---------------------------------------------------------------------------
Outcome criterion_3() {
    Outcome o;
    const double t0 = now_seconds();
    const double eps = 0.1;
    const auto lat = build_lattice(1);
    const auto tri = build_triads(lat);
    const System sys(lat, tri, {eps, 1e-3, Scheme::heun_deterministic});
    LyapunovConfig cfg;
    cfg.p = lat.d();
    cfg.t_total = 20.0;
    const auto rep = lyapunov_spectrum(Vec::Zero(lat.d()), NoisePath::unforced(1e-3, 20000), sys, cfg);

    std::vector<double> expect;
    for (const ModeIndex k : lat.modes()) {
        expect.push_back(-eps * norm_sq(k));
        expect.push_back(-eps * norm_sq(k));
    }
    std::sort(expect.begin(), expect.end(), std::greater<>());
    double worst = 0.0;
    for (std::size_t i = 0; i < expect.size(); ++i) {
        worst = std::max(worst, std::abs(rep.exponents[i] - expect[i]));
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "multiset max abs error %.2e < 1e-6", worst);
    o.require(worst < 1e-6, buf);
    const double elapsed = now_seconds() - t0;
    o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s < 60 s");
    return o;
}

// ---------------------------------------------------------------------------
// 4. Jacobian against central finite differences.
// ---------------------------------------------------------------------------
Outcome criterion_4() {
    Outcome o;
    const double t0 = now_seconds();
    const double h = 1e-6;
    for (int n : {1, 2}) {
        const auto lat = build_lattice(n);
        const auto tri = build_triads(lat);
        const System sys(lat, tri, {0.05, 1e-3, Scheme::euler_maruyama});
        double worst = 0.0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            const Vec q = random_state(lat.d(), 11000 + s);
            const Vec v = random_state(lat.d(), 12000 + s);
            const Vec fd = (sys.drift(q + h * v) - sys.drift(q - h * v)) / (2.0 * h);
            const Vec an = sys.jacobian_apply(q, v);
            worst = std::max(worst, (fd - an).norm() / std::max(1.0, an.norm()));
        }
        char buf[120];
        std::snprintf(buf, sizeof(buf), "N=%d worst relative error %.2e < 1e-6 (100 pairs)", n, worst);
        o.require(worst < 1e-6, buf);
    }
    const double elapsed = now_seconds() - t0;
    o.require(elapsed < 10.0, "runtime " + std::to_string(elapsed) + " s < 10 s");
    return o;
}

// ---------------------------------------------------------------------------
// 5. Cocycle identity, bit-identical composition.
// ---------------------------------------------------------------------------
Outcome criterion_5() {
    Outcome o;
    const double t0 = now_seconds();
    const auto lat = build_lattice(2);
    const auto tri = build_triads(lat);
    const double dt = 1e-3;
    const System sys(lat, tri, {0.01, dt, Scheme::euler_maruyama});
    const auto pat = pattern_on(lat, {{0, 1}, {1, 1}}, 1.0);
    int identical = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t seed = 500 + static_cast<std::uint64_t>(trial);
        const int s_steps = 1 + static_cast<int>(rng::key3(seed, 1, 0) % 1500);
        const int t_steps = 1 + static_cast<int>(rng::key3(seed, 2, 0) % 1500);
        const double s = s_steps * dt, t = t_steps * dt;
        const auto path = sample_noise(pat, lat, dt, s_steps + t_steps, seed);
        const Vec x0 = random_state(lat.d(), seed, 0.5);
        const Vec direct = sys.flow(x0, path, s + t);
        const Vec composed = sys.flow(sys.flow(x0, path, s), shift_path(path, s), t);
        bool same = direct.size() == composed.size();
        for (Eigen::Index c = 0; same && c < direct.size(); ++c) same = direct[c] == composed[c];
        if (same) ++identical;
    }
    o.require(identical == 20,
              "composed == direct bitwise on " + std::to_string(identical) + "/20 triples");
    const double elapsed = now_seconds() - t0;
    o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s < 60 s");
    return o;
}

// ---------------------------------------------------------------------------
// 6. Positive top exponent and positive entropy in the chaotic regime.
// ---------------------------------------------------------------------------
struct ChaoticSetup {
    // dt below the library default: the explicit scheme needs the headroom at
    // these viscosities (stationary enstrophy is inflated ~5x at dt = 1e-3).
    static constexpr double kDt = 2e-4;
    TruncationLattice lat = build_lattice(2);
    TriadTable tri = build_triads(lat);
    ForcingPattern pat = pattern_on(lat, {{0, 1}, {1, 1}}, 1.0);
    System make_system(double eps) const { return System(lat, tri, {eps, kDt, Scheme::euler_maruyama}); }
};

Outcome criterion_6() {
    Outcome o;
    const ChaoticSetup setup;
    const double t_total = 5000.0;

    for (double eps : {0.005, 0.01}) {
        const System sys = setup.make_system(eps);
        const int n_steps = grid_steps(t_total, sys.dt());
        int excluding = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto path = sample_noise(setup.pat, setup.lat, sys.dt(), n_steps, seed);
            LyapunovConfig cfg;
            cfg.p = 1;
            cfg.t_total = t_total;
            const auto rep = lyapunov_spectrum(Vec::Zero(sys.dim()), path, sys, cfg);
            const bool positive = rep.exponents[0] - 1.96 * rep.stderrs[0] > 0.0;
            if (positive) ++excluding;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "eps=%g seed=%llu lambda1 = %.4f +- %.4f (95%% band %s 0)",
                          eps, static_cast<unsigned long long>(seed), rep.exponents[0],
                          rep.stderrs[0], positive ? "excludes" : "CONTAINS");
            o.info(buf);
        }
        o.require(excluding >= 8, "eps=" + std::to_string(eps) + ": 95% band excludes 0 on " +
                                      std::to_string(excluding) + "/10 seeds (need >= 8)");

        // Full spectrum on one seed for the entropy formula.
        LyapunovConfig full;
        full.p = sys.dim();
        full.t_total = t_total;
        const auto path = sample_noise(setup.pat, setup.lat, sys.dt(), n_steps, 1);
        const auto rep = lyapunov_spectrum(Vec::Zero(sys.dim()), path, sys, full);
        const auto h = pesin_entropy(rep, sys.dim());
        char buf[160];
        std::snprintf(buf, sizeof(buf), "eps=%g entropy (sum of positive exponents) = %.4f +- %.4f > 0",
                      eps, h.value, h.se);
        o.require(h.value > 0.0, buf);
        std::string spectrum = "eps=" + std::to_string(eps) + " leading exponents:";
        for (std::size_t i = 0; i < 6; ++i) {
            char e[32];
            std::snprintf(e, sizeof(e), " %.4f", rep.exponents[i]);
            spectrum += e;
        }
        o.info(spectrum);
    }
    return o;
}

// ---------------------------------------------------------------------------
// 7. Free-set search equals exhaustive enumeration.
// ---------------------------------------------------------------------------
std::vector<int> free_set_by_enumeration(const PatternFamily& family) {
    const int n = family.n();
    std::vector<int> best;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> coords;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) coords.push_back(i + 1);
        if (!is_fully_traced(family, coords)) continue;
        if (coords.size() > best.size() || (coords.size() == best.size() && coords < best)) best = coords;
    }
    return best;
}

PatternFamily random_family(int n, int r, int count, std::uint64_t seed) {
    std::vector<std::vector<int>> words;
    for (int w = 0; w < count; ++w) {
        std::vector<int> word(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            word[static_cast<std::size_t>(i)] =
                1 + static_cast<int>(rng::key3(seed, static_cast<std::uint64_t>(w),
                                               static_cast<std::uint64_t>(i)) %
                                     static_cast<std::uint64_t>(r));
        }
        words.push_back(std::move(word));
    }
    return PatternFamily(n, r, std::move(words));
}

Outcome criterion_7() {
    Outcome o;
    const double t0 = now_seconds();
    int bad2 = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const int n = 1 + static_cast<int>(rng::key3(42, 1, s) % 4);
        const int count = 1 + static_cast<int>(rng::key3(42, 2, s) % (1u << n));
        const auto fam = random_family(n, 2, count, 90000 + s);
        if (find_free_set(fam) != free_set_by_enumeration(fam)) ++bad2;
    }
    o.require(bad2 == 0, "r=2, n<=4: exact set and cardinality match on 1000 random families (" +
                             std::to_string(bad2) + " mismatches)");
    int bad3 = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const int n = 1 + static_cast<int>(rng::key3(43, 1, s) % 3);
        const int count = 1 + static_cast<int>(rng::key3(43, 2, s) % 27);
        const auto fam = random_family(n, 3, count, 95000 + s);
        if (find_free_set(fam) != free_set_by_enumeration(fam)) ++bad3;
    }
    o.require(bad3 == 0, "r=3, n<=3: exact set and cardinality match on 200 random families (" +
                             std::to_string(bad3) + " mismatches)");
    const double elapsed = now_seconds() - t0;
    o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s < 60 s");
    return o;
}

// ---------------------------------------------------------------------------
// 8. Stationary-measure uniqueness heuristic.
// ---------------------------------------------------------------------------
Outcome criterion_8() {
    Outcome o;
    const ChaoticSetup setup;
    const System sys = setup.make_system(0.01);

    const double burn_in = 200.0;
    const int samples = 4000;
    const int thin = 1250;  // 0.25 time units between samples

    struct Run {
        std::string name;
        std::uint64_t seed;
        bool far_start;
    };
    const std::vector<Run> runs = {
        {"seed=21,x0=0", 21, false},
        {"seed=22,x0=0", 22, false},
        {"seed=21,x0=far", 21, true},
        {"seed=22,x0=far", 22, true},
    };
    std::vector<MomentReport> reports;
    for (const auto& run : runs) {
        Vec far = random_state(sys.dim(), 31337, 1.0);
        far *= 5.0 / far.norm();
        const Vec* x0 = run.far_start ? &far : nullptr;
        const auto m = sample_stationary(sys, setup.pat, burn_in, samples, thin, run.seed, x0);
        reports.push_back(moments(m));
        char buf[200];
        std::snprintf(buf, sizeof(buf), "%s: mean|x|^2 = %.3f +- %.3f, tail slope %.4f",
                      run.name.c_str(), reports.back().mean_sq_norm, reports.back().se_mean_sq_norm,
                      reports.back().tail_slope);
        o.info(buf);
        o.require(reports.back().tail_defined && reports.back().tail_slope < 0.0,
                  run.name + ": tail slope negative");
    }
    for (std::size_t a = 0; a < reports.size(); ++a) {
        for (std::size_t b = a + 1; b < reports.size(); ++b) {
            const double gap = std::abs(reports[a].mean_sq_norm - reports[b].mean_sq_norm);
            const double combined = std::sqrt(reports[a].se_mean_sq_norm * reports[a].se_mean_sq_norm +
                                              reports[b].se_mean_sq_norm * reports[b].se_mean_sq_norm);
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s vs %s: |diff| %.3f <= 3 x combined stderr %.3f",
                          runs[a].name.c_str(), runs[b].name.c_str(), gap, 3.0 * combined);
            o.require(gap <= 3.0 * combined, buf);
        }
    }
    return o;
}

// ---------------------------------------------------------------------------
// 9. Full-horseshoe certificate at the chaotic parameters.
// ---------------------------------------------------------------------------
Outcome criterion_9() {
    Outcome o;
    const double t0 = now_seconds();
    const ChaoticSetup setup;
    const double eps = 0.01, tau = 1.0;
    const System sys = setup.make_system(eps);

    // Lyapunov time from a short pilot run.
    LyapunovConfig pilot;
    pilot.p = 1;
    pilot.t_total = 500.0;
    const auto pilot_path =
        sample_noise(setup.pat, setup.lat, sys.dt(), grid_steps(pilot.t_total, sys.dt()), 1);
    const double lambda1 = lyapunov_spectrum(Vec::Zero(sys.dim()), pilot_path, sys, pilot).exponents[0];
    const int gap = std::max(1, static_cast<int>(std::ceil(2.0 / (lambda1 * tau))));
    o.info("pilot lambda1 = " + std::to_string(lambda1) + ", time spacing >= " + std::to_string(gap) +
           " sampling intervals (>= 2 Lyapunov times)");

    bool certified = false;
    for (int attempt = 0; attempt < 5 && !certified; ++attempt) {
        const std::uint64_t chain_seed = 9000 + static_cast<std::uint64_t>(attempt);
        const auto measure = sample_stationary(sys, setup.pat, 200.0, 1500, 500, chain_seed);

        // Ball scale from the bulk geometry: the nearest-neighbour radius is
        // far too small for revisits in d = 24, so size the balls against the
        // median pairwise distance instead (a few percent of the measure per
        // ball) while keeping them strictly disjoint.
        double median_pw;
        {
            std::vector<double> pw;
            const std::size_t stride = std::max<std::size_t>(1, measure.samples.size() / 300);
            std::vector<const Vec*> sub;
            for (std::size_t i = 0; i < measure.samples.size(); i += stride) sub.push_back(&measure.samples[i]);
            for (std::size_t a = 0; a < sub.size(); ++a)
                for (std::size_t b = a + 1; b < sub.size(); ++b) pw.push_back((*sub[a] - *sub[b]).norm());
            std::nth_element(pw.begin(), pw.begin() + static_cast<long>(pw.size() / 2), pw.end());
            median_pw = pw[pw.size() / 2];
        }
        const double radius_factors[5] = {0.45, 0.5, 0.4, 0.55, 0.45};
        const double radius = radius_factors[attempt] * median_pw;
        BallPair balls;
        try {
            balls = propose_balls(measure, radius, 2.3 * radius, rng::derive(chain_seed, 0xba11));
        } catch (const std::exception& e) {
            o.info("attempt " + std::to_string(attempt) + ": ball proposal failed: " + e.what());
            continue;
        }

        const int horizon = 6 * gap + 1;
        const auto path = sample_noise(setup.pat, setup.lat, sys.dt(),
                                       grid_steps(horizon * tau, sys.dt()),
                                       rng::derive(chain_seed, 0x9a77));
        std::vector<Vec> probes;
        const std::size_t stride = std::max<std::size_t>(1, measure.samples.size() / 48);
        for (std::size_t i = 0; i < measure.samples.size(); i += stride) {
            probes.push_back(measure.samples[i]);
        }
        const auto hits = empirical_hitting_times(probes, balls, path, tau, horizon, sys);
        std::vector<int> times;
        int last = -gap;
        for (int t : hits) {
            if (static_cast<int>(times.size()) >= 4) break;
            if (t - last >= gap) {
                times.push_back(t);
                last = t;
            }
        }
        if (times.size() < 4) {
            o.info("attempt " + std::to_string(attempt) + ": only " + std::to_string(times.size()) +
                   " admissible hitting times, retrying");
            continue;
        }

        SearchConfig sc;
        sc.multistarts = 16;
        sc.max_iterations = 250;
        sc.max_evaluations = 60000;
        sc.seed = rng::derive(chain_seed, 0x5ea0);
        const auto cert =
            certify_full_horseshoe(times, balls, path, tau, sys, measure.samples, sc, horizon);

        int realized = 0;
        for (const auto& r : cert.results) realized += r.success ? 1 : 0;
        std::string jtxt;
        for (int t : times) jtxt += (jtxt.empty() ? "" : ",") + std::to_string(t);
        char buf[240];
        std::snprintf(buf, sizeof(buf),
                      "attempt %d: radius %.3f, J={%s}, %d/16 words realized, density %.3f", attempt,
                      radius, jtxt.c_str(), realized, cert.density);
        o.info(buf);

        if (!cert.all_realized) continue;

        // Independent re-verification of every word by direct simulation.
        bool verified = true;
        for (std::size_t w = 0; w < cert.words.size(); ++w) {
            ItinerarySpec spec;
            spec.tau = tau;
            for (std::size_t m = 0; m < times.size(); ++m) {
                spec.times.push_back(times[m]);
                spec.symbols.push_back(cert.words[w][m] - '0');
            }
            verified =
                verified && itinerary_residual(cert.results[w].x, path, spec, balls, sys) == 0.0;
        }
        o.require(verified, "all 16 realizations re-verified by direct simulation");

        // Subset monotonicity: restricted words are realized by the same points.
        bool subsets_ok = true;
        for (std::size_t drop = 0; drop < times.size(); ++drop) {
            for (std::size_t w = 0; w < cert.words.size(); ++w) {
                ItinerarySpec spec;
                spec.tau = tau;
                for (std::size_t m = 0; m < times.size(); ++m) {
                    if (m == drop) continue;
                    spec.times.push_back(times[m]);
                    spec.symbols.push_back(cert.words[w][m] - '0');
                }
                subsets_ok =
                    subsets_ok && itinerary_residual(cert.results[w].x, path, spec, balls, sys) == 0.0;
            }
        }
        o.require(subsets_ok, "every size-3 sub-itinerary inherited from the certificate verifies");
        o.info("achieved density " + std::to_string(cert.density) + " over horizon m=" +
               std::to_string(horizon) + " (the theory only asserts some b > 0)");
        certified = true;
    }
    o.require(certified, "all 16 itineraries realized on at least one of 5 attempts");
    const double elapsed = now_seconds() - t0;
    o.require(elapsed < 1800.0, "runtime " + std::to_string(elapsed) + " s <= 30 min");
    return o;
}

// ---------------------------------------------------------------------------
// 10. Byte-identical CLI reports under identical config + seed.
// ---------------------------------------------------------------------------
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion_10(const std::string& cli) {
    Outcome o;
    if (cli.empty()) {
        o.require(false, "no --cli path given");
        return o;
    }
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "gsns_acceptance_c10";
    fs::create_directories(dir);

    const std::string config = R"({
  "n": 1,
  "epsilon": 0.4,
  "dt": 0.001,
  "t_final": 1.0,
  "seed": 3,
  "forcing": [
    {"k": [-1, 1], "e1": 1.5, "e2": 1.5},
    {"k": [0, 1], "e1": 1.5, "e2": 1.5},
    {"k": [1, 1], "e1": 1.5, "e2": 1.5}
  ],
  "stationary": {"burn_in": 5.0, "samples": 300, "thin": 20, "seed": 9},
  "lyapunov": {"p": 8, "t_total": 50.0},
  "horseshoe": {"tau": 0.1, "multistarts": 4, "max_iterations": 40, "seed": 5}
})";
    const fs::path cfg_path = dir / "config.json";
    {
        std::ofstream out(cfg_path);
        out << config;
    }
    const fs::path words_path = dir / "words.txt";
    {
        std::ofstream out(words_path);
        out << "1,1,2\n2,2,1\n1,2,1\n2,1,2\n";
    }

    struct Cmd {
        std::string name;
        std::string args;  // {out} replaced per run
    };
    const std::vector<Cmd> commands = {
        {"hypo-check", "hypo-check --n 3 --force \"0,1;1,1\" --out {out}"},
        {"triads", "triads --n 2 --out {out}"},
        {"free-set", "free-set --r 2 --n 3 --words " + words_path.string() + " --out {out}"},
        {"simulate", "simulate --config " + cfg_path.string() + " --out {out}"},
        {"lyapunov", "lyapunov --config " + cfg_path.string() + " --seeds 3,4 --out {out}"},
        {"stationary", "stationary --config " + cfg_path.string() + " --out {out}"},
        {"horseshoe",
         "horseshoe --config " + cfg_path.string() + " --radius 1.0 --j \"0,2\" --out {out}"},
    };

    std::map<std::string, fs::path> first_outputs;
    for (const auto& cmd : commands) {
        bool ok = true;
        std::string detail;
        std::vector<std::string> payloads;
        for (int run = 0; run < 2 && ok; ++run) {
            const fs::path out = dir / (cmd.name + "_" + std::to_string(run) + ".out");
            std::string args = cmd.args;
            const auto pos = args.find("{out}");
            args.replace(pos, 5, out.string());
            const std::string shell = cli + " " + args + " 2> " + (dir / "stderr.log").string();
            const int rc = std::system(shell.c_str());
            if (rc != 0) {
                ok = false;
                detail = "exit code " + std::to_string(rc);
                break;
            }
            payloads.push_back(slurp(out));
            if (run == 0) first_outputs[cmd.name] = out;
        }
        if (ok && payloads.size() == 2) {
            ok = !payloads[0].empty() && payloads[0] == payloads[1];
            detail = ok ? "byte-identical (" + std::to_string(payloads[0].size()) + " bytes)"
                        : "outputs differ";
        }
        o.require(ok, cmd.name + ": " + detail);
    }

    // entropy consumes the lyapunov report; compare stdout bytes.
    {
        bool ok = true;
        std::string detail;
        std::vector<std::string> payloads;
        for (int run = 0; run < 2 && ok; ++run) {
            const fs::path out = dir / ("entropy_" + std::to_string(run) + ".out");
            const std::string shell = cli + " entropy --lyapunov " +
                                      first_outputs["lyapunov"].string() + " > " + out.string() +
                                      " 2> " + (dir / "stderr.log").string();
            const int rc = std::system(shell.c_str());
            if (rc != 0) {
                ok = false;
                detail = "exit code " + std::to_string(rc);
                break;
            }
            payloads.push_back(slurp(out));
        }
        if (ok && payloads.size() == 2) {
            ok = !payloads[0].empty() && payloads[0] == payloads[1];
            detail = ok ? "byte-identical (" + std::to_string(payloads[0].size()) + " bytes)"
                        : "outputs differ";
        }
        o.require(ok, "entropy: " + detail);
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::vector<int> selected;
    for (int a = 1; a < argc; ++a) {
        const std::string arg = argv[a];
        if (arg == "--criterion" && a + 1 < argc) {
            selected.push_back(std::atoi(argv[++a]));
        } else if (arg == "--cli" && a + 1 < argc) {
            cli = argv[++a];
        } else if (arg == "--all") {
            selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        } else {
            std::cerr << "usage: gsns_acceptance [--all] [--criterion N]... [--cli PATH]\n";
            return 2;
        }
    }
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    const std::map<int, std::string> titles = {
        {1, "hypoellipticity verdicts on the classical driving sets"},
        {2, "inviscid unforced conservation of enstrophy and energy"},
        {3, "linearization spectrum at the origin"},
        {4, "drift jacobian vs central finite differences"},
        {5, "cocycle identity, bit-identical composition"},
        {6, "positive top exponent and positive entropy"},
        {7, "free-set search vs exhaustive enumeration"},
        {8, "stationary-measure uniqueness heuristic"},
        {9, "full-horseshoe certificate"},
        {10, "byte-identical CLI reports"},
    };

    bool all_pass = true;
    for (int c : selected) {
        Outcome o;
        switch (c) {
            case 1: o = criterion_1(); break;
            case 2: o = criterion_2(); break;
            case 3: o = criterion_3(); break;
            case 4: o = criterion_4(); break;
            case 5: o = criterion_5(); break;
            case 6: o = criterion_6(); break;
            case 7: o = criterion_7(); break;
            case 8: o = criterion_8(); break;
            case 9: o = criterion_9(); break;
            case 10: o = criterion_10(cli); break;
            default: std::cerr << "unknown criterion " << c << "\n"; return 2;
        }
        std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << c << ": " << titles.at(c)
                  << "\n";
        for (const auto& note : o.notes) std::cout << note << "\n";
        std::cout.flush();
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
