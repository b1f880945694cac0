#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gsns/dynamics.hpp"
#include "gsns/tangent.hpp"

namespace gsns {

/// Raised when a trajectory leaves the finite range; carries the grid time.
class BlowupError : public std::runtime_error {
public:
    BlowupError(double t, std::string what) : std::runtime_error(std::move(what)), time(t) {}
    double time;
};

struct EmpiricalMeasure {
    std::vector<Vec> samples;  // equal weights
    double burn_in = 0.0;
    int thin = 1;
    std::uint64_t seed = 0;
    double dt = 0.0;
    double epsilon = 0.0;
};

/// One long chain: integrate from x0 (origin by default), drop burn_in, then
/// record every thin-th state. Warns on stderr when the forcing pattern is
/// not hypoelliptic. Aborts with BlowupError on a non-finite state.
EmpiricalMeasure sample_stationary(const System& system, const ForcingPattern& pattern,
                                   double burn_in, int n_samples, int thin, std::uint64_t seed,
                                   const Vec* x0 = nullptr);

struct MomentReport {
    double mean_norm = 0.0;
    double mean_sq_norm = 0.0;
    double se_mean_norm = 0.0;
    double se_mean_sq_norm = 0.0;
    std::vector<double> per_component_mean;  // length d
    std::vector<double> per_mode_variance;   // length d/2, cos+sin variance per mode
    double tail_slope = 0.0;                 // least-squares slope of log S(t) vs t = |x|^2
    bool tail_defined = false;
    int n_samples = 0;
};

/// Plug-in moments with batch-means standard errors. The tail diagnostic fits
/// the log empirical survival frequency against |x|^2 over 20 bins spanning
/// the upper 5% quantile; Gaussian-type decay shows up as a negative slope.
MomentReport moments(const EmpiricalMeasure& measure);

struct EntropyEstimate {
    double value = 0.0;
    double se = 0.0;
};

/// Sum of positive exponents from a full-spectrum report (p must equal d);
/// the error propagates over the positive terms only.
EntropyEstimate pesin_entropy(const LyapunovReport& report, int full_dim);

}  // namespace gsns
