#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsns/dynamics.hpp"

namespace gsns {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ForcingSpec {
    ModeIndex k;
    double e1 = 0.0;
    double e2 = 0.0;
};

struct InitialAmplitude {
    ModeIndex k;
    double c1 = 0.0;
    double c2 = 0.0;
};

struct LyapunovBlock {
    int p = 1;
    double t_total = 1000.0;
    int reorth_every = 10;
    double burn_in_fraction = 0.1;
    std::vector<std::uint64_t> seeds;  // empty -> the top-level seed
};

struct StationaryBlock {
    double burn_in = 100.0;
    int samples = 1000;
    int thin = 100;
    std::uint64_t seed = 0;  // 0 -> the top-level seed
};

struct HorseshoeBlock {
    double radius = 0.0;          // 0 -> 30th percentile nearest-neighbour distance
    double min_separation = 0.0;  // 0 -> 4 * radius
    std::vector<int> times;
    double tau = 1.0;
    std::uint64_t seed = 0;
    int multistarts = 64;
    int max_iterations = 500;
    int horizon = 0;
};

/// One config file drives every subcommand; command blocks are optional.
struct ExperimentConfig {
    int n = 0;
    double epsilon = 0.0;
    double dt = 1e-3;
    double t_final = 1.0;
    int output_every = 1;
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::euler_maruyama;
    std::vector<ForcingSpec> forcing;
    std::vector<InitialAmplitude> x0;  // empty -> origin
    LyapunovBlock lyapunov;
    StationaryBlock stationary;
    HorseshoeBlock horseshoe;

    std::string config_hash;  // FNV-1a of the raw config text

    ForcingPattern pattern(const TruncationLattice& lattice) const;
    Vec initial_state(const TruncationLattice& lattice) const;
};

/// Parses and validates a JSON config. Unknown keys are rejected with their
/// path; the forcing coupling condition and duplicate modes are checked here.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

std::string fnv1a_hex(const std::string& bytes);

inline constexpr const char* kReportFormatVersion = "1";

}  // namespace gsns
