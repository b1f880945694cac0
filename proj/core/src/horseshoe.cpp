#include "gsns/horseshoe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gsns/nelder_mead.hpp"
#include "gsns/parallel.hpp"
#include "gsns/rng.hpp"
#include "gsns/symbolic.hpp"

namespace gsns {

void validate_balls(const BallPair& balls) {
    if (!(balls.radius > 0.0)) throw std::invalid_argument("balls: radius must be positive");
    if (balls.center1.size() != balls.center2.size()) {
        throw std::invalid_argument("balls: center dimension mismatch");
    }
    if (!((balls.center1 - balls.center2).norm() > 2.0 * balls.radius)) {
        throw std::invalid_argument("balls: centers closer than 2 radius, balls not disjoint");
    }
}

namespace {

void validate_spec(const ItinerarySpec& spec) {
    if (spec.times.size() != spec.symbols.size()) {
        throw std::invalid_argument("itinerary: times/symbols length mismatch");
    }
    for (std::size_t m = 0; m < spec.times.size(); ++m) {
        if (spec.times[m] < 0) throw std::invalid_argument("itinerary: negative time");
        if (m > 0 && spec.times[m] <= spec.times[m - 1]) {
            throw std::invalid_argument("itinerary: times must be strictly increasing");
        }
        if (spec.symbols[m] != 1 && spec.symbols[m] != 2) {
            throw std::invalid_argument("itinerary: symbols must be 1 or 2");
        }
    }
    if (!(spec.tau > 0.0)) throw std::invalid_argument("itinerary: tau must be positive");
}

}  // namespace

double nn_distance_percentile(const std::vector<Vec>& samples, double percentile) {
    const auto n = samples.size();
    if (n < 2) throw std::invalid_argument("nn_distance_percentile: need at least two samples");
    std::vector<double> nn(n, std::numeric_limits<double>::infinity());
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double dist = (samples[a] - samples[b]).norm();
            nn[a] = std::min(nn[a], dist);
            nn[b] = std::min(nn[b], dist);
        }
    }
    std::sort(nn.begin(), nn.end());
    const double frac = std::clamp(percentile, 0.0, 100.0) / 100.0;
    return nn[static_cast<std::size_t>(frac * static_cast<double>(n - 1))];
}

BallPair propose_balls(const EmpiricalMeasure& measure, double radius, double min_separation,
                       std::uint64_t seed) {
    if (measure.samples.empty()) throw std::invalid_argument("propose_balls: empty measure");
    if (!(min_separation > 2.0 * radius)) {
        throw std::invalid_argument("propose_balls: min_separation must exceed 2 radius");
    }

    // Work on a seeded subsample when the ensemble is large.
    constexpr std::size_t kMaxCandidates = 2048;
    std::vector<const Vec*> cand;
    const auto n = measure.samples.size();
    if (n <= kMaxCandidates) {
        for (const auto& s : measure.samples) cand.push_back(&s);
    } else {
        cand.reserve(kMaxCandidates);
        for (std::size_t i = 0; i < kMaxCandidates; ++i) {
            cand.push_back(&measure.samples[rng::key3(seed, 0xba11, i) % n]);
        }
    }

    // Local density score: distance to the k-th nearest neighbour (k = 10).
    const std::size_t k = std::min<std::size_t>(10, cand.size() - 1);
    std::vector<double> score(cand.size());
    std::vector<double> dists(cand.size());
    for (std::size_t a = 0; a < cand.size(); ++a) {
        for (std::size_t b = 0; b < cand.size(); ++b) dists[b] = (*cand[a] - *cand[b]).norm();
        std::nth_element(dists.begin(), dists.begin() + static_cast<long>(k), dists.end());
        score[a] = dists[k];
    }

    std::vector<std::size_t> order(cand.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            if ((*cand[order[a]] - *cand[order[b]]).norm() >= min_separation) {
                BallPair balls{*cand[order[a]], *cand[order[b]], radius};
                validate_balls(balls);
                return balls;
            }
        }
    }
    throw std::runtime_error("propose_balls: no sample pair at the requested separation");
}

double itinerary_residual(const Vec& x0, const NoisePath& path, const ItinerarySpec& spec,
                          const BallPair& balls, const System& system) {
    validate_spec(spec);
    validate_balls(balls);
    if (spec.times.empty()) return 0.0;
    const int steps_per_tau = grid_steps(spec.tau, system.dt());
    const long long last = static_cast<long long>(spec.times.back()) * steps_per_tau;
    if (last > path.n_steps) throw std::invalid_argument("itinerary_residual: itinerary exceeds path horizon");

    Vec q = x0;
    Vec w1(system.dim()), w2(system.dim());
    double res = 0.0;
    long long step = 0;
    for (std::size_t m = 0; m < spec.times.size(); ++m) {
        const long long upto = static_cast<long long>(spec.times[m]) * steps_per_tau;
        for (; step < upto; ++step) system.step_inplace(q, path, static_cast<int>(step), w1, w2);
        const Vec& center = spec.symbols[m] == 1 ? balls.center1 : balls.center2;
        const double gap = (q - center).norm() - balls.radius;
        if (gap > 0.0) res += gap * gap;
        if (!q.allFinite()) return std::numeric_limits<double>::infinity();
    }
    return res;
}

namespace {

ItinerarySpec prefix_of(const ItinerarySpec& spec, std::size_t len) {
    ItinerarySpec p;
    p.times.assign(spec.times.begin(), spec.times.begin() + static_cast<long>(len));
    p.symbols.assign(spec.symbols.begin(), spec.symbols.begin() + static_cast<long>(len));
    p.tau = spec.tau;
    return p;
}

// Direct membership check, independent of any optimizer bookkeeping.
bool verify_by_simulation(const Vec& x, const NoisePath& path, const ItinerarySpec& spec,
                          const BallPair& balls, const System& system) {
    const int steps_per_tau = grid_steps(spec.tau, system.dt());
    for (std::size_t m = 0; m < spec.times.size(); ++m) {
        const Vec at = system.flow(x, path, spec.times[m] * steps_per_tau * system.dt());
        const Vec& center = spec.symbols[m] == 1 ? balls.center1 : balls.center2;
        if (!((at - center).norm() <= balls.radius)) return false;
    }
    return true;
}

}  // namespace

RealizationResult realize_itinerary(const ItinerarySpec& spec, const BallPair& balls,
                                    const NoisePath& path, const System& system,
                                    const std::vector<Vec>& ensemble, const SearchConfig& config,
                                    const std::vector<Vec>* hints) {
    validate_spec(spec);
    validate_balls(balls);
    if (ensemble.empty()) throw std::invalid_argument("realize_itinerary: empty start ensemble");

    const double jitter = config.perturbation > 0.0 ? config.perturbation : 0.5 * balls.radius;
    const double step0 = config.simplex_step > 0.0 ? config.simplex_step : 0.25 * balls.radius;
    const std::uint64_t pick_seed = rng::derive(config.seed, 0x9127ull);
    const std::uint64_t jitter_seed = rng::derive(config.seed, 0x55aaull);

    auto make_start = [&](int i) {
        Vec x = ensemble[rng::key3(pick_seed, 0, static_cast<std::uint64_t>(i)) % ensemble.size()];
        if (i > 0) {
            for (Eigen::Index c = 0; c < x.size(); ++c) {
                x[c] += jitter * rng::gaussian(jitter_seed, static_cast<std::uint64_t>(i),
                                               static_cast<std::uint64_t>(c));
            }
        }
        return x;
    };

    const std::size_t n_hints = hints ? hints->size() : 0;
    const std::size_t n_starts = n_hints + static_cast<std::size_t>(config.multistarts);

    RealizationResult best;
    best.residual = std::numeric_limits<double>::infinity();
    best.success = false;

    if (spec.times.empty()) {
        best.x = n_hints > 0 ? (*hints)[0] : make_start(0);
        best.residual = 0.0;
        best.success = true;
        return best;
    }

    const std::size_t n_stages = spec.times.size();
    int iterations = 0;
    long evals = 0;
    const long budget = config.max_evaluations > 0 ? config.max_evaluations
                                                   : std::numeric_limits<long>::max();

    for (std::size_t s = 0; s < n_starts && evals < budget; ++s) {
        Vec x = s < n_hints ? (*hints)[s] : make_start(static_cast<int>(s - n_hints));
        bool feasible = true;
        for (std::size_t stage = 1; stage <= n_stages; ++stage) {
            const ItinerarySpec sub = prefix_of(spec, stage);
            auto objective = [&](const Vec& y) {
                ++evals;
                return itinerary_residual(y, path, sub, balls, system);
            };
            double value = objective(x);
            // Later constraints see exponentially amplified sensitivity, so
            // retry the simplex at shrinking scales.
            for (int cascade = 0; cascade < 4 && value > 0.0 && evals < budget; ++cascade) {
                const double scale = step0 * std::pow(8.0, -cascade);
                NelderMeadResult nm = nelder_mead(objective, x, scale, config.max_iterations, 0.0,
                                                  config.tolerance);
                iterations += nm.iterations;
                if (nm.value < value) {
                    value = nm.value;
                    x = nm.x;
                }
            }
            if (value > 0.0) {
                feasible = false;
                break;
            }
        }
        const double full = itinerary_residual(x, path, spec, balls, system);
        if (feasible && full == 0.0 && verify_by_simulation(x, path, spec, balls, system)) {
            best.x = x;
            best.residual = 0.0;
            best.success = true;
            best.iterations = iterations;
            return best;
        }
        if (full < best.residual) {
            best.residual = full;
            best.x = x;
        }
    }
    best.iterations = iterations;
    return best;
}

HorseshoeCertificate certify_full_horseshoe(const std::vector<int>& times, const BallPair& balls,
                                            const NoisePath& path, double tau, const System& system,
                                            const std::vector<Vec>& ensemble,
                                            const SearchConfig& config, int horizon) {
    if (times.size() > 8) throw std::invalid_argument("certify_full_horseshoe: |J| capped at 8");
    validate_balls(balls);
    const auto depth = times.size();

    HorseshoeCertificate cert;
    cert.balls = balls;
    cert.times = times;
    cert.tau = tau;
    cert.horizon = horizon > 0 ? horizon : (times.empty() ? 1 : times.back() + 1);
    cert.density = mask_density(BinaryMask::from_set(times, cert.horizon));

    const auto n_words = static_cast<std::size_t>(1) << depth;
    // Level-by-level prefix search: solutions for "12" seed both "121" and
    // "122", which is what makes the 2^|J| cube affordable. A word whose
    // prefix could not be realized cannot be realized either, so nodes under
    // a failed prefix get only a token budget.
    std::vector<std::vector<Vec>> level_solutions(1);  // level 0: the empty prefix
    std::vector<std::uint8_t> parent_failed(1, 0);
    std::vector<RealizationResult> leaf_results(n_words);
    for (std::size_t level = 1; level <= depth; ++level) {
        const auto n_nodes = static_cast<std::size_t>(1) << level;
        std::vector<std::vector<Vec>> next(n_nodes);
        std::vector<std::uint8_t> failed(n_nodes, 0);
        parallel_for(static_cast<int>(n_nodes), [&](int node) {
            ItinerarySpec sub;
            sub.tau = tau;
            for (std::size_t m = 0; m < level; ++m) {
                sub.times.push_back(times[m]);
                sub.symbols.push_back(1 + ((node >> (level - 1 - m)) & 1));
            }
            SearchConfig node_config = config;
            node_config.seed = rng::key3(config.seed, level, static_cast<std::uint64_t>(node));
            if (parent_failed[static_cast<std::size_t>(node) / 2]) {
                node_config.multistarts = std::min(node_config.multistarts, 2);
                node_config.max_iterations = std::min(node_config.max_iterations, 50);
            }
            const std::vector<Vec>& hints = level_solutions[static_cast<std::size_t>(node) / 2];
            RealizationResult r = realize_itinerary(sub, balls, path, system, ensemble, node_config,
                                                    hints.empty() ? nullptr : &hints);
            if (r.success) {
                next[static_cast<std::size_t>(node)].push_back(r.x);
            } else {
                failed[static_cast<std::size_t>(node)] = 1;
            }
            if (level == depth) leaf_results[static_cast<std::size_t>(node)] = std::move(r);
        });
        level_solutions = std::move(next);
        parent_failed = std::move(failed);
    }

    cert.words.resize(n_words);
    cert.results.resize(n_words);
    parallel_for(static_cast<int>(n_words), [&](int w) {
        ItinerarySpec spec;
        spec.tau = tau;
        std::string name;
        for (std::size_t m = 0; m < depth; ++m) {
            const int sym = 1 + ((w >> (depth - 1 - m)) & 1);
            spec.times.push_back(times[m]);
            spec.symbols.push_back(sym);
            name.push_back(static_cast<char>('0' + sym));
        }
        cert.words[static_cast<std::size_t>(w)] = name;
        RealizationResult res = depth == 0
                                    ? realize_itinerary(spec, balls, path, system, ensemble, config)
                                    : std::move(leaf_results[static_cast<std::size_t>(w)]);
        // Success is never taken from the optimizer's bookkeeping alone.
        if (res.success && !verify_by_simulation(res.x, path, spec, balls, system)) {
            res.success = false;
            res.residual = itinerary_residual(res.x, path, spec, balls, system);
        }
        cert.results[static_cast<std::size_t>(w)] = std::move(res);
    });

    cert.all_realized = std::all_of(cert.results.begin(), cert.results.end(),
                                    [](const RealizationResult& r) { return r.success; });
    return cert;
}

std::vector<int> empirical_hitting_times(const std::vector<Vec>& ensemble, const BallPair& balls,
                                         const NoisePath& path, double tau, int horizon,
                                         const System& system) {
    if (ensemble.empty()) throw std::invalid_argument("empirical_hitting_times: empty ensemble");
    validate_balls(balls);
    const int steps_per_tau = grid_steps(tau, system.dt());
    const long long need = static_cast<long long>(horizon - 1) * steps_per_tau;
    if (horizon < 1 || need > path.n_steps) {
        throw std::invalid_argument("empirical_hitting_times: horizon exceeds path");
    }

    std::vector<std::vector<std::uint8_t>> hit1(ensemble.size()), hit2(ensemble.size());
    parallel_for(static_cast<int>(ensemble.size()), [&](int m) {
        auto& h1 = hit1[static_cast<std::size_t>(m)];
        auto& h2 = hit2[static_cast<std::size_t>(m)];
        h1.assign(static_cast<std::size_t>(horizon), 0);
        h2.assign(static_cast<std::size_t>(horizon), 0);
        Vec q = ensemble[static_cast<std::size_t>(m)];
        Vec w1(system.dim()), w2(system.dim());
        long long step = 0;
        for (int j = 0; j < horizon; ++j) {
            const long long upto = static_cast<long long>(j) * steps_per_tau;
            for (; step < upto; ++step) system.step_inplace(q, path, static_cast<int>(step), w1, w2);
            if ((q - balls.center1).norm() <= balls.radius) h1[static_cast<std::size_t>(j)] = 1;
            if ((q - balls.center2).norm() <= balls.radius) h2[static_cast<std::size_t>(j)] = 1;
        }
    });

    std::vector<int> out;
    for (int j = 0; j < horizon; ++j) {
        bool any1 = false, any2 = false;
        for (std::size_t m = 0; m < ensemble.size(); ++m) {
            any1 = any1 || hit1[m][static_cast<std::size_t>(j)];
            any2 = any2 || hit2[m][static_cast<std::size_t>(j)];
        }
        if (any1 && any2) out.push_back(j);
    }
    return out;
}

}  // namespace gsns
