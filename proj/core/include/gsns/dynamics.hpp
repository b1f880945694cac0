#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gsns/lattice.hpp"

namespace gsns {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Scheme { euler_maruyama, heun_deterministic };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct SimConfig {
    double epsilon = 0.0;  // viscosity
    double dt = 1e-3;
    Scheme scheme = Scheme::euler_maruyama;
};

/// Per-mode noise amplitudes, component 1 (cos) and 2 (sin). Either both
/// vanish or both are nonzero for a given mode; validate() enforces that.
struct ForcingPattern {
    Vec e1, e2;  // length = number of lattice modes

    static ForcingPattern zero(const TruncationLattice& lattice);
    bool any() const;
};

void validate_coupling(const ForcingPattern& pattern, const TruncationLattice& lattice);

/// Driven modes: e1(k) * e2(k) > 0.
std::vector<ModeIndex> driven_modes(const ForcingPattern& pattern, const TruncationLattice& lattice);

struct ForcedComponent {
    int mode_pos;      // position in lattice.modes()
    int component;     // 0 -> (k,1), 1 -> (k,2)
    double amplitude;  // e_{(k,c)}
};

/// Components with nonzero amplitude in canonical order (mode order, (k,1)
/// before (k,2)); this fixes the noise-grid column layout.
std::vector<ForcedComponent> forced_components(const ForcingPattern& pattern, const TruncationLattice& lattice);

/// A seeded grid of Brownian increments, one column per forced component.
/// Entries are synthesized on demand from the counter-based generator keyed
/// (seed, column, offset + row); a path is its key, so shifting is just an
/// offset bump and increments never need to be stored.
struct NoisePath {
    std::uint64_t seed = 0;
    double dt = 0.0;
    int n_steps = 0;
    int offset = 0;
    std::vector<ForcedComponent> forced;

    int n_cols() const { return static_cast<int>(forced.size()); }
    double horizon() const { return dt * n_steps; }
    /// Gaussian(0, dt) increment at grid row/column.
    double increment(int row, int col) const;
    Eigen::MatrixXd materialize() const;

    /// A path with no forced components, for purely deterministic runs.
    static NoisePath unforced(double dt, int n_steps);
};

/// Rejects an identically-zero pattern; otherwise returns the increment grid
/// handle for the pattern's forced components.
NoisePath sample_noise(const ForcingPattern& pattern, const TruncationLattice& lattice,
                       double dt, int n_steps, std::uint64_t seed);

/// Wiener shift at grid resolution: row r of the result is row r + s/dt of
/// the input. s must lie on the grid within the horizon.
NoisePath shift_path(const NoisePath& path, double s);

/// Converts a time to a step count, requiring it to sit on the dt grid.
int grid_steps(double t, double dt);

/// The equations of motion bound to a lattice + triad table. Construction
/// folds the triad weights into a flat kernel; all methods are const and the
/// object can be shared read-only across threads.
class System {
public:
    System(const TruncationLattice& lattice, const TriadTable& triads, SimConfig config);

    const TruncationLattice& lattice() const { return *lattice_; }
    const TriadTable& triads() const { return *triads_; }
    const SimConfig& config() const { return config_; }
    double dt() const { return config_.dt; }
    int dim() const { return lattice_->d(); }

    /// Deterministic part of the equations of motion at q.
    Vec drift(const Vec& q) const;
    /// Directional derivative of the drift at q in direction v.
    Vec jacobian_apply(const Vec& q, const Vec& v) const;

    /// One update of the configured scheme. euler_maruyama consumes the
    /// increment row at step_index; heun_deterministic ignores the path.
    Vec step(const Vec& q, const NoisePath& path, int step_index) const;

    /// Composition of t/dt steps starting at path row 0.
    Vec flow(const Vec& x0, const NoisePath& path, double t) const;

    // Hot-loop variants used by the tangent/measure/horseshoe drivers.
    void drift_into(const double* q, double* out) const;
    void jacobian_apply_into(const double* q, const double* v, double* out) const;
    void step_inplace(Vec& q, const NoisePath& path, int step_index, Vec& work1, Vec& work2) const;
    /// Joint update of state and tangent frame (exact differential of the
    /// state update; additive noise never enters the frame).
    void step_state_and_frame(Vec& q, Mat& frame, const NoisePath& path, int step_index,
                              Vec& work1, Vec& work2, Mat& fwork1, Mat& fwork2) const;

private:
    void add_noise(Vec& q, const NoisePath& path, int step_index) const;

    struct Quad {
        int i2, j2, k2;  // component-array offsets (2 * lattice position)
        double w;        // prefactor-folded weight
    };
    const TruncationLattice* lattice_;
    const TriadTable* triads_;
    SimConfig config_;
    std::vector<Quad> sum_, diff_;
    Vec damping_;  // epsilon * |k|^2 per state component
};

// Spec-surface wrappers over System for one-off evaluation.
Vec drift(const Vec& q, const TruncationLattice& lattice, const TriadTable& triads, double epsilon);
Vec drift_jacobian_apply(const Vec& q, const Vec& v, const TruncationLattice& lattice,
                         const TriadTable& triads, double epsilon);

double enstrophy(const Vec& q);
double energy(const Vec& q, const TruncationLattice& lattice);

}  // namespace gsns
