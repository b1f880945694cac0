#include "gsns/measure.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "gsns/hypoellipticity.hpp"
#include "gsns/rng.hpp"

namespace gsns {

EmpiricalMeasure sample_stationary(const System& system, const ForcingPattern& pattern,
                                   double burn_in, int n_samples, int thin, std::uint64_t seed,
                                   const Vec* x0) {
    if (n_samples < 1) throw std::invalid_argument("sample_stationary: need at least one sample");
    if (thin < 1) throw std::invalid_argument("sample_stationary: thinning interval must be >= 1");
    const int burn_steps = grid_steps(burn_in, system.dt());

    const bool forced = pattern.any();
    if (forced) {
        validate_coupling(pattern, system.lattice());
        const auto driven = driven_modes(pattern, system.lattice());
        ModeSet k(driven.begin(), driven.end());
        if (k.empty() || !check_hypoelliptic(k, system.lattice().truncation()).hypoelliptic) {
            std::cerr << "[gsns] warning: forcing is not hypoelliptic; "
                         "the chain may not explore a unique stationary state\n";
        }
    } else {
        std::cerr << "[gsns] warning: zero forcing; sampling a deterministic trajectory\n";
    }

    const long long total_steps = static_cast<long long>(burn_steps) +
                                  static_cast<long long>(n_samples) * thin;
    NoisePath path = forced
                         ? sample_noise(pattern, system.lattice(), system.dt(),
                                        static_cast<int>(total_steps), seed)
                         : NoisePath::unforced(system.dt(), static_cast<int>(total_steps));

    EmpiricalMeasure m;
    m.burn_in = burn_in;
    m.thin = thin;
    m.seed = seed;
    m.dt = system.dt();
    m.epsilon = system.config().epsilon;
    m.samples.reserve(static_cast<std::size_t>(n_samples));

    Vec q = x0 ? *x0 : Vec::Zero(system.dim());
    if (q.size() != system.dim()) throw std::invalid_argument("sample_stationary: x0 dimension mismatch");
    Vec w1(system.dim()), w2(system.dim());
    long long step = 0;
    auto advance = [&](long long n) {
        for (long long s = 0; s < n; ++s, ++step) {
            system.step_inplace(q, path, static_cast<int>(step), w1, w2);
        }
        if (!q.allFinite()) {
            const double t = static_cast<double>(step) * system.dt();
            throw BlowupError(t, "trajectory blew up at t = " + std::to_string(t));
        }
    };

    advance(burn_steps);
    for (int s = 0; s < n_samples; ++s) {
        advance(thin);
        m.samples.push_back(q);
    }
    return m;
}

MomentReport moments(const EmpiricalMeasure& measure) {
    const auto n = static_cast<int>(measure.samples.size());
    if (n < 100) throw std::invalid_argument("moments: need at least 100 samples");
    const auto d = measure.samples.front().size();

    MomentReport rep;
    rep.n_samples = n;

    std::vector<double> norms(static_cast<std::size_t>(n)), sq(static_cast<std::size_t>(n));
    Vec mean = Vec::Zero(d), meansq = Vec::Zero(d);
    for (int s = 0; s < n; ++s) {
        const Vec& x = measure.samples[static_cast<std::size_t>(s)];
        sq[static_cast<std::size_t>(s)] = x.squaredNorm();
        norms[static_cast<std::size_t>(s)] = std::sqrt(sq[static_cast<std::size_t>(s)]);
        mean += x;
        meansq += x.cwiseProduct(x);
    }
    mean /= n;
    meansq /= n;

    auto batched = [&](const std::vector<double>& v, double& out_mean, double& out_se) {
        out_mean = 0.0;
        for (double x : v) out_mean += x;
        out_mean /= static_cast<double>(v.size());
        const int b_count = std::min<int>(20, static_cast<int>(v.size()));
        std::vector<double> bmean(static_cast<std::size_t>(b_count), 0.0);
        std::vector<int> bn(static_cast<std::size_t>(b_count), 0);
        for (std::size_t s = 0; s < v.size(); ++s) {
            const auto b = static_cast<std::size_t>(s * static_cast<std::size_t>(b_count) / v.size());
            bmean[b] += v[s];
            ++bn[b];
        }
        double var = 0.0;
        for (int b = 0; b < b_count; ++b) {
            bmean[static_cast<std::size_t>(b)] /= std::max(1, bn[static_cast<std::size_t>(b)]);
            var += (bmean[static_cast<std::size_t>(b)] - out_mean) * (bmean[static_cast<std::size_t>(b)] - out_mean);
        }
        var /= std::max(1, b_count - 1);
        out_se = std::sqrt(var / b_count);
    };
    batched(norms, rep.mean_norm, rep.se_mean_norm);
    batched(sq, rep.mean_sq_norm, rep.se_mean_sq_norm);

    rep.per_component_mean.assign(mean.data(), mean.data() + d);
    rep.per_mode_variance.resize(static_cast<std::size_t>(d / 2));
    for (Eigen::Index p = 0; p < d / 2; ++p) {
        const double v1 = meansq[2 * p] - mean[2 * p] * mean[2 * p];
        const double v2 = meansq[2 * p + 1] - mean[2 * p + 1] * mean[2 * p + 1];
        rep.per_mode_variance[static_cast<std::size_t>(p)] = v1 + v2;
    }

    // Upper-tail survival fit over |x|^2.
    std::vector<double> sorted(sq);
    std::sort(sorted.begin(), sorted.end());
    const double q95 = sorted[static_cast<std::size_t>(0.95 * (n - 1))];
    const double top = sorted.back();
    if (top > q95 && n >= 100) {
        constexpr int kBins = 20;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int used = 0;
        for (int b = 0; b < kBins; ++b) {
            const double t = q95 + (top - q95) * b / kBins;
            const auto above = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t);
            if (above <= 0) break;
            const double y = std::log(static_cast<double>(above) / n);
            sx += t;
            sy += y;
            sxx += t * t;
            sxy += t * y;
            ++used;
        }
        const double denom = used * sxx - sx * sx;
        if (used >= 3 && denom > 0.0) {
            rep.tail_slope = (used * sxy - sx * sy) / denom;
            rep.tail_defined = true;
        }
    }
    return rep;
}

EntropyEstimate pesin_entropy(const LyapunovReport& report, int full_dim) {
    if (report.p != full_dim) {
        throw std::invalid_argument("pesin_entropy: report has " + std::to_string(report.p) +
                                    " exponents, need the full spectrum of " + std::to_string(full_dim));
    }
    EntropyEstimate e;
    double var = 0.0;
    for (std::size_t i = 0; i < report.exponents.size(); ++i) {
        if (report.exponents[i] > 0.0) {
            e.value += report.exponents[i];
            var += report.stderrs[i] * report.stderrs[i];
        }
    }
    e.se = std::sqrt(var);
    return e;
}

}  // namespace gsns
