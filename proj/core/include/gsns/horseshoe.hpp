#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsns/dynamics.hpp"
#include "gsns/measure.hpp"

namespace gsns {

/// Two disjoint closed balls: |c1 - c2| > 2 radius, strictly.
struct BallPair {
    Vec center1, center2;
    double radius = 0.0;
};

void validate_balls(const BallPair& balls);

/// Itinerary over sampling times J (in units of tau): visit ball symbols[m]
/// at time times[m] * tau.
struct ItinerarySpec {
    std::vector<int> times;    // strictly increasing, >= 0
    std::vector<int> symbols;  // in {1, 2}, same length as times
    double tau = 1.0;
};

struct RealizationResult {
    Vec x;
    double residual = 0.0;
    int iterations = 0;
    bool success = false;
};

struct SearchConfig {
    int multistarts = 64;
    int max_iterations = 500;  // simplex iterations per descent stage
    double tolerance = 1e-12;  // optimizer termination only, never the certificate
    std::uint64_t seed = 0;
    double perturbation = 0.0;   // Gaussian start jitter; 0 picks radius/2
    double simplex_step = 0.0;   // initial simplex scale; 0 picks radius/4
    long max_evaluations = 0;    // residual-evaluation budget per word; 0 = unlimited
};

struct HorseshoeCertificate {
    BallPair balls;
    std::vector<int> times;
    double tau = 1.0;
    int horizon = 0;
    std::vector<std::string> words;  // lexicographic, e.g. "1211"
    std::vector<RealizationResult> results;
    bool all_realized = false;
    double density = 0.0;
};

/// Picks two stationary samples at distance >= min_separation as centers,
/// preferring locally dense points (k-nearest-neighbour distance, k = 10).
/// Deterministic in seed.
BallPair propose_balls(const EmpiricalMeasure& measure, double radius, double min_separation,
                       std::uint64_t seed);

/// Soft membership penalty: sum over itinerary times of the squared hinge
/// max(0, |state - demanded center| - radius). Zero iff every constraint is
/// met (closed balls).
double itinerary_residual(const Vec& x0, const NoisePath& path, const ItinerarySpec& spec,
                          const BallPair& balls, const System& system);

/// Multistart simplex descent on the itinerary residual. Starts come from
/// optional hints, then ensemble draws with Gaussian jitter; constraints are
/// switched on one time at a time (earlier solutions seed later stages) and a
/// cascade of shrinking simplex scales handles the growing sensitivity of
/// late constraints. Success requires residual exactly zero on re-simulation.
/// Budget exhaustion is reported as success=false with the best residual.
RealizationResult realize_itinerary(const ItinerarySpec& spec, const BallPair& balls,
                                    const NoisePath& path, const System& system,
                                    const std::vector<Vec>& ensemble, const SearchConfig& config,
                                    const std::vector<Vec>* hints = nullptr);

/// Runs realize_itinerary for every word of {1,2}^J in lexicographic order,
/// sharing prefix solutions level by level (parallel within a level, results
/// deterministic per (seed, word)). horizon 0 defaults to max(J)+1.
HorseshoeCertificate certify_full_horseshoe(const std::vector<int>& times, const BallPair& balls,
                                            const NoisePath& path, double tau, const System& system,
                                            const std::vector<Vec>& ensemble,
                                            const SearchConfig& config, int horizon = 0);

/// Times j < horizon (units of tau) at which the ensemble, pushed through the
/// shared path, has at least one member inside each ball. Candidate hitting
/// times: a necessary condition for a word over {1,2} to be realizable there.
std::vector<int> empirical_hitting_times(const std::vector<Vec>& ensemble, const BallPair& balls,
                                         const NoisePath& path, double tau, int horizon,
                                         const System& system);

/// Percentile (0..100) of the per-sample nearest-neighbour distances; the
/// default ball radius comes from the 30th percentile.
double nn_distance_percentile(const std::vector<Vec>& samples, double percentile);

}  // namespace gsns
