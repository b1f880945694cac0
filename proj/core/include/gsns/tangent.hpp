#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsns/dynamics.hpp"

namespace gsns {

/// Advances each frame column through the differential of one state update
/// (the state itself is not modified). Additive noise drops out of the
/// linearization, so the frame update is deterministic.
Mat tangent_step(const Vec& q, const Mat& frame, const System& system);

struct LyapunovConfig {
    int p = 1;                      // number of exponents
    int reorth_every = 10;          // steps between QR re-orthonormalizations
    double t_total = 0.0;
    double burn_in_fraction = 0.1;  // leading fraction of QR events discarded
    int n_batches = 20;             // batch-means error bars
    int max_history_rows = 1024;
};

struct LyapunovReport {
    int p = 0;
    std::vector<double> exponents;                 // sorted non-increasing
    std::vector<double> stderrs;                   // batch-means, paired with exponents
    std::vector<std::vector<double>> history;      // running estimates, final row == exponents
    // run snapshot
    double dt = 0.0;
    double epsilon = 0.0;
    double t_total = 0.0;
    int reorth_every = 0;
    std::uint64_t seed = 0;
    std::string scheme;
};

/// Benettin: co-evolve state and an orthonormal p-frame, QR every
/// reorth_every steps with the R diagonal forced positive, accumulate
/// log diag(R). Throws on frame collapse (vanishing R diagonal).
LyapunovReport lyapunov_spectrum(const Vec& x0, const NoisePath& path, const System& system,
                                 const LyapunovConfig& config);

struct LogMomentReport {
    double mean_log_norm = 0.0;  // E[log+ |d Phi^1|]
    double se_log_norm = 0.0;
    double mean_log_inv = 0.0;   // E[log+ |(d Phi^1)^{-1}|]
    double se_log_inv = 0.0;
    int n_samples = 0;
    int n_singular = 0;          // numerically rank-deficient time-1 Jacobians
};

/// Monte-Carlo estimate of the first-order integrability diagnostics: draws
/// (noise, x) with x from the supplied stationary ensemble, builds the time-1
/// Jacobian on the identity frame, and reports log+ of its largest singular
/// value and of the inverse's largest singular value.
LogMomentReport log_moment_diagnostics(const System& system, const ForcingPattern& pattern,
                                       const std::vector<Vec>& ensemble, int n_samples,
                                       std::uint64_t seed);

}  // namespace gsns
