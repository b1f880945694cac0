#include "gsns/tangent.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gsns/rng.hpp"

namespace gsns {

Mat tangent_step(const Vec& q, const Mat& frame, const System& system) {
    if (q.size() != system.dim() || frame.rows() != system.dim()) {
        throw std::invalid_argument("tangent_step: dimension mismatch");
    }
    Vec qc = q;
    Mat out = frame;
    Vec w1(system.dim()), w2(system.dim());
    Mat f1(frame.rows(), frame.cols()), f2(frame.rows(), frame.cols());
    const NoisePath none = NoisePath::unforced(system.dt(), 1);
    system.step_state_and_frame(qc, out, none, 0, w1, w2, f1, f2);
    return out;
}

namespace {

// QR with the R diagonal forced positive; returns log |R_ii|.
void reorthonormalize(Mat& frame, std::vector<double>& logs, long step_for_error) {
    Eigen::HouseholderQR<Mat> qr(frame);
    Mat thin_q = Mat::Identity(frame.rows(), frame.cols());
    thin_q = qr.householderQ() * thin_q;
    const Mat r = qr.matrixQR().topRows(frame.cols()).triangularView<Eigen::Upper>();
    logs.resize(static_cast<std::size_t>(frame.cols()));
    for (Eigen::Index c = 0; c < frame.cols(); ++c) {
        const double diag = r(c, c);
        const double mag = std::abs(diag);
        if (!(mag > 1e-300)) {
            throw std::runtime_error("tangent frame collapsed at step " + std::to_string(step_for_error));
        }
        logs[static_cast<std::size_t>(c)] = std::log(mag);
        if (diag < 0.0) thin_q.col(c) = -thin_q.col(c);
    }
    frame = thin_q;
}

// Sort exponents (and anything paired with them) non-increasing.
std::vector<std::size_t> descending_order(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&v](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    return idx;
}

}  // namespace

LyapunovReport lyapunov_spectrum(const Vec& x0, const NoisePath& path, const System& system,
                                 const LyapunovConfig& config) {
    const int d = system.dim();
    if (config.p < 1 || config.p > d) throw std::invalid_argument("lyapunov_spectrum: p must be in [1, d]");
    if (config.reorth_every < 1) throw std::invalid_argument("lyapunov_spectrum: reorth_every must be >= 1");
    if (x0.size() != d) throw std::invalid_argument("lyapunov_spectrum: state dimension mismatch");
    const int n_steps = grid_steps(config.t_total, system.dt());
    if (n_steps > path.n_steps) throw std::invalid_argument("lyapunov_spectrum: t_total beyond path horizon");
    const int n_events = n_steps / config.reorth_every;
    if (n_events < 2) throw std::invalid_argument("lyapunov_spectrum: too few re-orthonormalizations");

    const int p = config.p;
    const int burn_events = static_cast<int>(std::ceil(config.burn_in_fraction * n_events));
    const int kept_events = n_events - burn_events;
    if (kept_events < 1) throw std::invalid_argument("lyapunov_spectrum: burn-in leaves no data");
    const int n_batches = std::min(config.n_batches, kept_events);

    Vec q = x0;
    Mat frame = Mat::Identity(d, p);
    Vec w1(d), w2(d);
    Mat f1(d, p), f2(d, p);

    std::vector<double> total(p, 0.0);
    std::vector<std::vector<double>> batch_sum(static_cast<std::size_t>(n_batches), std::vector<double>(p, 0.0));
    std::vector<double> batch_time(static_cast<std::size_t>(n_batches), 0.0);
    std::vector<double> logs;

    LyapunovReport report;
    const int history_stride = std::max(1, kept_events / std::max(1, config.max_history_rows));
    double kept_time = 0.0;
    const double event_time = config.reorth_every * system.dt();

    int event = 0;
    for (int s = 0; s < n_steps; ++s) {
        system.step_state_and_frame(q, frame, path, s, w1, w2, f1, f2);
        if ((s + 1) % config.reorth_every != 0) continue;
        reorthonormalize(frame, logs, s);
        if (event >= burn_events) {
            const int kept_idx = event - burn_events;
            const auto b = static_cast<std::size_t>(static_cast<long long>(kept_idx) * n_batches / kept_events);
            kept_time += event_time;
            batch_time[b] += event_time;
            for (int i = 0; i < p; ++i) {
                total[static_cast<std::size_t>(i)] += logs[static_cast<std::size_t>(i)];
                batch_sum[b][static_cast<std::size_t>(i)] += logs[static_cast<std::size_t>(i)];
            }
            const bool last = kept_idx == kept_events - 1;
            if (kept_idx % history_stride == 0 || last) {
                std::vector<double> running(total);
                for (double& x : running) x /= kept_time;
                std::sort(running.begin(), running.end(), std::greater<>());
                report.history.push_back(std::move(running));
            }
        }
        ++event;
    }

    std::vector<double> exponents(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) exponents[static_cast<std::size_t>(i)] = total[static_cast<std::size_t>(i)] / kept_time;

    std::vector<double> stderrs(static_cast<std::size_t>(p), 0.0);
    if (n_batches >= 2) {
        for (int i = 0; i < p; ++i) {
            double mean = 0.0;
            std::vector<double> est(static_cast<std::size_t>(n_batches));
            for (int b = 0; b < n_batches; ++b) {
                est[static_cast<std::size_t>(b)] =
                    batch_sum[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)] /
                    batch_time[static_cast<std::size_t>(b)];
                mean += est[static_cast<std::size_t>(b)];
            }
            mean /= n_batches;
            double var = 0.0;
            for (double e : est) var += (e - mean) * (e - mean);
            var /= (n_batches - 1);
            stderrs[static_cast<std::size_t>(i)] = std::sqrt(var / n_batches);
        }
    }

    const auto order = descending_order(exponents);
    report.p = p;
    report.exponents.resize(static_cast<std::size_t>(p));
    report.stderrs.resize(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        report.exponents[static_cast<std::size_t>(i)] = exponents[order[static_cast<std::size_t>(i)]];
        report.stderrs[static_cast<std::size_t>(i)] = stderrs[order[static_cast<std::size_t>(i)]];
    }
    report.dt = system.dt();
    report.epsilon = system.config().epsilon;
    report.t_total = config.t_total;
    report.reorth_every = config.reorth_every;
    report.seed = path.seed;
    report.scheme = scheme_name(system.config().scheme);
    if (report.history.empty()) report.history.push_back(report.exponents);
    report.history.back() = report.exponents;
    return report;
}

LogMomentReport log_moment_diagnostics(const System& system, const ForcingPattern& pattern,
                                       const std::vector<Vec>& ensemble, int n_samples,
                                       std::uint64_t seed) {
    if (ensemble.empty()) throw std::invalid_argument("log_moment_diagnostics: empty ensemble");
    if (n_samples < 2) throw std::invalid_argument("log_moment_diagnostics: need at least two samples");
    const int d = system.dim();
    const int steps_per_unit = grid_steps(1.0, system.dt());

    LogMomentReport rep;
    rep.n_samples = n_samples;
    std::vector<double> ln(static_cast<std::size_t>(n_samples), 0.0);
    std::vector<double> li(static_cast<std::size_t>(n_samples), 0.0);

    Vec w1(d), w2(d);
    Mat f1(d, d), f2(d, d);
    for (int s = 0; s < n_samples; ++s) {
        const std::uint64_t pick =
            rng::key3(seed, 0x5eed5eedull, static_cast<std::uint64_t>(s)) % ensemble.size();
        Vec q = ensemble[static_cast<std::size_t>(pick)];
        Mat jac = Mat::Identity(d, d);
        NoisePath path;
        if (pattern.any()) {
            path = sample_noise(pattern, system.lattice(), system.dt(), steps_per_unit,
                                rng::derive(seed, static_cast<std::uint64_t>(s)));
        } else {
            path = NoisePath::unforced(system.dt(), steps_per_unit);
        }
        for (int n = 0; n < steps_per_unit; ++n) {
            system.step_state_and_frame(q, jac, path, n, w1, w2, f1, f2);
        }
        Eigen::JacobiSVD<Mat> svd(jac);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(d - 1);
        if (!(smin > 0.0) || !std::isfinite(smax)) {
            ++rep.n_singular;
            ln[static_cast<std::size_t>(s)] = li[static_cast<std::size_t>(s)] =
                std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        ln[static_cast<std::size_t>(s)] = std::max(0.0, std::log(smax));
        li[static_cast<std::size_t>(s)] = std::max(0.0, std::log(1.0 / smin));
    }

    auto mean_se = [&](const std::vector<double>& v, double& mean, double& se) {
        double m = 0.0;
        int n = 0;
        for (double x : v)
            if (std::isfinite(x)) {
                m += x;
                ++n;
            }
        m /= std::max(1, n);
        double var = 0.0;
        for (double x : v)
            if (std::isfinite(x)) var += (x - m) * (x - m);
        var /= std::max(1, n - 1);
        mean = m;
        se = std::sqrt(var / std::max(1, n));
    };
    mean_se(ln, rep.mean_log_norm, rep.se_log_norm);
    mean_se(li, rep.mean_log_inv, rep.se_log_inv);
    return rep;
}

}  // namespace gsns
