#include "gsns/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "gsns/rng.hpp"

namespace gsns {

std::string scheme_name(Scheme s) {
    return s == Scheme::euler_maruyama ? "euler_maruyama" : "heun_deterministic";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "euler_maruyama") return Scheme::euler_maruyama;
    if (name == "heun_deterministic") return Scheme::heun_deterministic;
    throw std::invalid_argument("unknown scheme: " + name);
}

ForcingPattern ForcingPattern::zero(const TruncationLattice& lattice) {
    ForcingPattern p;
    p.e1 = Vec::Zero(static_cast<Eigen::Index>(lattice.modes().size()));
    p.e2 = Vec::Zero(static_cast<Eigen::Index>(lattice.modes().size()));
    return p;
}

bool ForcingPattern::any() const {
    return e1.cwiseAbs().maxCoeff() > 0.0 || e2.cwiseAbs().maxCoeff() > 0.0;
}

void validate_coupling(const ForcingPattern& pattern, const TruncationLattice& lattice) {
    const auto n_modes = static_cast<Eigen::Index>(lattice.modes().size());
    if (pattern.e1.size() != n_modes || pattern.e2.size() != n_modes) {
        throw std::invalid_argument("forcing pattern size does not match lattice");
    }
    for (Eigen::Index p = 0; p < n_modes; ++p) {
        const bool z1 = pattern.e1[p] == 0.0;
        const bool z2 = pattern.e2[p] == 0.0;
        if (z1 != z2) {
            const ModeIndex k = lattice.modes()[static_cast<std::size_t>(p)];
            throw std::invalid_argument("forcing mode (" + std::to_string(k.k1) + "," + std::to_string(k.k2) +
                                        ") has exactly one zero amplitude; a mode is either unforced or forced in both components");
        }
    }
}

std::vector<ModeIndex> driven_modes(const ForcingPattern& pattern, const TruncationLattice& lattice) {
    std::vector<ModeIndex> out;
    for (std::size_t p = 0; p < lattice.modes().size(); ++p) {
        if (pattern.e1[static_cast<Eigen::Index>(p)] * pattern.e2[static_cast<Eigen::Index>(p)] > 0.0) {
            out.push_back(lattice.modes()[p]);
        }
    }
    return out;
}

std::vector<ForcedComponent> forced_components(const ForcingPattern& pattern, const TruncationLattice& lattice) {
    std::vector<ForcedComponent> out;
    for (std::size_t p = 0; p < lattice.modes().size(); ++p) {
        const auto ip = static_cast<Eigen::Index>(p);
        if (pattern.e1[ip] != 0.0) out.push_back({static_cast<int>(p), 0, pattern.e1[ip]});
        if (pattern.e2[ip] != 0.0) out.push_back({static_cast<int>(p), 1, pattern.e2[ip]});
    }
    return out;
}

double NoisePath::increment(int row, int col) const {
    return std::sqrt(dt) * rng::gaussian(seed, static_cast<std::uint64_t>(col),
                                         static_cast<std::uint64_t>(offset + row));
}

Eigen::MatrixXd NoisePath::materialize() const {
    Eigen::MatrixXd m(n_steps, n_cols());
    for (int r = 0; r < n_steps; ++r)
        for (int c = 0; c < n_cols(); ++c) m(r, c) = increment(r, c);
    return m;
}

NoisePath NoisePath::unforced(double dt, int n_steps) {
    NoisePath p;
    p.dt = dt;
    p.n_steps = n_steps;
    return p;
}

NoisePath sample_noise(const ForcingPattern& pattern, const TruncationLattice& lattice,
                       double dt, int n_steps, std::uint64_t seed) {
    if (dt <= 0.0) throw std::invalid_argument("sample_noise: dt must be positive");
    if (n_steps < 1) throw std::invalid_argument("sample_noise: need at least one step");
    validate_coupling(pattern, lattice);
    if (!pattern.any()) throw std::invalid_argument("sample_noise: pattern has no forced components");
    NoisePath p;
    p.seed = seed;
    p.dt = dt;
    p.n_steps = n_steps;
    p.forced = forced_components(pattern, lattice);
    return p;
}

int grid_steps(double t, double dt) {
    const double ratio = t / dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) > 1e-9 * std::max(1.0, std::abs(ratio))) {
        throw std::invalid_argument("time " + std::to_string(t) + " is not a multiple of dt");
    }
    return static_cast<int>(nearest);
}

NoisePath shift_path(const NoisePath& path, double s) {
    if (s < 0.0) throw std::invalid_argument("shift_path: negative shift");
    const int r = grid_steps(s, path.dt);
    if (r > path.n_steps) throw std::invalid_argument("shift_path: shift beyond horizon");
    NoisePath out = path;
    out.offset += r;
    out.n_steps -= r;
    return out;
}

System::System(const TruncationLattice& lattice, const TriadTable& triads, SimConfig config)
    : lattice_(&lattice), triads_(&triads), config_(config) {
    if (config_.epsilon < 0.0) throw std::invalid_argument("System: negative viscosity");
    if (config_.dt <= 0.0) throw std::invalid_argument("System: dt must be positive");
    for (const auto& e : triads.entries) {
        // Equations of motion carry 1/2 on the i+j sums and -1 on the i-j sums.
        const Quad q{2 * e.pi, 2 * e.pj, 2 * e.pk, e.kind == TriadKind::sum ? 0.5 * e.c : -e.c};
        (e.kind == TriadKind::sum ? sum_ : diff_).push_back(q);
    }
    damping_ = Vec(lattice.d());
    for (int p = 0; p < static_cast<int>(lattice.modes().size()); ++p) {
        damping_[2 * p] = damping_[2 * p + 1] = config_.epsilon * lattice.norm_sq_at(p);
    }
}

void System::drift_into(const double* q, double* out) const {
    const int d = dim();
    // Quadratic part first, dissipation folded in last: the drift then equals
    // quadratic-only plus -eps A q bit-exactly, which the tests pin down.
    for (int c = 0; c < d; ++c) out[c] = 0.0;
    for (const Quad& t : sum_) {
        const double qi1 = q[t.i2], qi2 = q[t.i2 + 1];
        const double qj1 = q[t.j2], qj2 = q[t.j2 + 1];
        out[t.k2] += t.w * (qi1 * qj1 - qi2 * qj2);
        out[t.k2 + 1] += t.w * (qi1 * qj2 + qi2 * qj1);
    }
    for (const Quad& t : diff_) {
        const double qi1 = q[t.i2], qi2 = q[t.i2 + 1];
        const double qj1 = q[t.j2], qj2 = q[t.j2 + 1];
        out[t.k2] += t.w * (qi1 * qj1 + qi2 * qj2);
        out[t.k2 + 1] += t.w * (qi2 * qj1 - qi1 * qj2);
    }
    for (int c = 0; c < d; ++c) out[c] -= damping_[c] * q[c];
}

void System::jacobian_apply_into(const double* q, const double* v, double* out) const {
    const int d = dim();
    for (int c = 0; c < d; ++c) out[c] = 0.0;
    for (const Quad& t : sum_) {
        const double qi1 = q[t.i2], qi2 = q[t.i2 + 1], qj1 = q[t.j2], qj2 = q[t.j2 + 1];
        const double vi1 = v[t.i2], vi2 = v[t.i2 + 1], vj1 = v[t.j2], vj2 = v[t.j2 + 1];
        out[t.k2] += t.w * (qi1 * vj1 + vi1 * qj1 - qi2 * vj2 - vi2 * qj2);
        out[t.k2 + 1] += t.w * (qi1 * vj2 + vi1 * qj2 + qi2 * vj1 + vi2 * qj1);
    }
    for (const Quad& t : diff_) {
        const double qi1 = q[t.i2], qi2 = q[t.i2 + 1], qj1 = q[t.j2], qj2 = q[t.j2 + 1];
        const double vi1 = v[t.i2], vi2 = v[t.i2 + 1], vj1 = v[t.j2], vj2 = v[t.j2 + 1];
        out[t.k2] += t.w * (qi1 * vj1 + vi1 * qj1 + qi2 * vj2 + vi2 * qj2);
        out[t.k2 + 1] += t.w * (qi2 * vj1 + vi2 * qj1 - qi1 * vj2 - vi1 * qj2);
    }
    for (int c = 0; c < d; ++c) out[c] -= damping_[c] * v[c];
}

Vec System::drift(const Vec& q) const {
    if (q.size() != dim()) throw std::invalid_argument("drift: state dimension mismatch");
    Vec out(dim());
    drift_into(q.data(), out.data());
    return out;
}

Vec System::jacobian_apply(const Vec& q, const Vec& v) const {
    if (q.size() != dim() || v.size() != dim()) {
        throw std::invalid_argument("jacobian_apply: dimension mismatch");
    }
    Vec out(dim());
    jacobian_apply_into(q.data(), v.data(), out.data());
    return out;
}

void System::add_noise(Vec& q, const NoisePath& path, int step_index) const {
    if (step_index < 0 || step_index >= path.n_steps) {
        throw std::out_of_range("step index " + std::to_string(step_index) + " outside the noise grid");
    }
    for (int col = 0; col < path.n_cols(); ++col) {
        const ForcedComponent& fc = path.forced[static_cast<std::size_t>(col)];
        // (k,1) takes +e1/2 dW, (k,2) takes -e2/2 dW.
        const double coeff = (fc.component == 0 ? 0.5 : -0.5) * fc.amplitude;
        q[2 * fc.mode_pos + fc.component] += coeff * path.increment(step_index, col);
    }
}

void System::step_inplace(Vec& q, const NoisePath& path, int step_index, Vec& work1, Vec& work2) const {
    const double dt = config_.dt;
    drift_into(q.data(), work1.data());
    if (config_.scheme == Scheme::euler_maruyama) {
        q.noalias() += dt * work1;
        add_noise(q, path, step_index);
    } else {
        work2.noalias() = q + dt * work1;  // predictor
        q.noalias() += (0.5 * dt) * work1;
        drift_into(work2.data(), work1.data());
        q.noalias() += (0.5 * dt) * work1;
    }
}

Vec System::step(const Vec& q, const NoisePath& path, int step_index) const {
    if (q.size() != dim()) throw std::invalid_argument("step: state dimension mismatch");
    Vec out = q;
    Vec w1(dim()), w2(dim());
    step_inplace(out, path, step_index, w1, w2);
    return out;
}

Vec System::flow(const Vec& x0, const NoisePath& path, double t) const {
    if (x0.size() != dim()) throw std::invalid_argument("flow: state dimension mismatch");
    if (path.dt != config_.dt) throw std::invalid_argument("flow: path dt differs from integrator dt");
    const int n = grid_steps(t, config_.dt);
    if (n < 0) throw std::invalid_argument("flow: negative time");
    if (n > path.n_steps) throw std::invalid_argument("flow: time beyond path horizon");
    Vec q = x0;
    Vec w1(dim()), w2(dim());
    for (int s = 0; s < n; ++s) step_inplace(q, path, s, w1, w2);
    return q;
}

void System::step_state_and_frame(Vec& q, Mat& frame, const NoisePath& path, int step_index,
                                  Vec& work1, Vec& work2, Mat& fwork1, Mat& fwork2) const {
    const double dt = config_.dt;
    const auto p = frame.cols();
    if (config_.scheme == Scheme::euler_maruyama) {
        for (Eigen::Index c = 0; c < p; ++c) {
            jacobian_apply_into(q.data(), frame.col(c).data(), fwork1.col(c).data());
        }
        drift_into(q.data(), work1.data());
        q.noalias() += dt * work1;
        frame.noalias() += dt * fwork1;
        add_noise(q, path, step_index);
    } else {
        // Exact differential of the two-stage deterministic update:
        //   q'  = q + dt/2 (F(q) + F(q~)),        q~ = q + dt F(q)
        //   V'  = V + dt/2 (J(q)V + J(q~) V~),    V~ = V + dt J(q) V
        drift_into(q.data(), work1.data());
        for (Eigen::Index c = 0; c < p; ++c) {
            jacobian_apply_into(q.data(), frame.col(c).data(), fwork1.col(c).data());
        }
        work2.noalias() = q + dt * work1;  // q~
        fwork2.noalias() = frame + dt * fwork1;
        q.noalias() += (0.5 * dt) * work1;
        frame.noalias() += (0.5 * dt) * fwork1;
        drift_into(work2.data(), work1.data());
        q.noalias() += (0.5 * dt) * work1;
        for (Eigen::Index c = 0; c < p; ++c) {
            jacobian_apply_into(work2.data(), fwork2.col(c).data(), fwork1.col(c).data());
        }
        frame.noalias() += (0.5 * dt) * fwork1;
    }
}

Vec drift(const Vec& q, const TruncationLattice& lattice, const TriadTable& triads, double epsilon) {
    return System(lattice, triads, {epsilon, 1e-3, Scheme::euler_maruyama}).drift(q);
}

Vec drift_jacobian_apply(const Vec& q, const Vec& v, const TruncationLattice& lattice,
                         const TriadTable& triads, double epsilon) {
    return System(lattice, triads, {epsilon, 1e-3, Scheme::euler_maruyama}).jacobian_apply(q, v);
}

double enstrophy(const Vec& q) { return q.squaredNorm(); }

double energy(const Vec& q, const TruncationLattice& lattice) {
    double e = 0.0;
    for (int p = 0; p < static_cast<int>(lattice.modes().size()); ++p) {
        e += (q[2 * p] * q[2 * p] + q[2 * p + 1] * q[2 * p + 1]) / lattice.norm_sq_at(p);
    }
    return e;
}

}  // namespace gsns
