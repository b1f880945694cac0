#include "gsns/hypoellipticity.hpp"

#include <algorithm>
#include <stdexcept>

namespace gsns {

ModeSet band_modes(int n) {
    ModeSet out;
    for (int k1 = -n; k1 <= n; ++k1)
        for (int k2 = -n; k2 <= n; ++k2)
            if (in_band({k1, k2}, n)) out.insert({k1, k2});
    return out;
}

ModeSet generate_step(const ModeSet& z_prev, const ModeSet& z0, int n) {
    ModeSet out;
    for (const ModeIndex i : z_prev) {
        for (const ModeIndex j : z0) {
            const ModeIndex k = i + j;
            if (!in_band(k, n)) continue;
            if (interaction_coefficient(i, j) != 0.0) out.insert(k);
        }
    }
    return out;
}

GenerationTrace check_hypoelliptic(const ModeSet& forcing, int n) {
    if (n < 1) throw std::invalid_argument("check_hypoelliptic: N must be >= 1");
    if (forcing.empty()) throw std::invalid_argument("check_hypoelliptic: empty forcing set");
    for (const ModeIndex k : forcing) {
        if (!in_upper_lattice(k) || norm_inf(k) > n) {
            throw std::invalid_argument("check_hypoelliptic: forcing mode outside the upper truncated lattice");
        }
    }

    const ModeSet target = band_modes(n);

    GenerationTrace trace;
    ModeSet z0 = forcing;
    for (const ModeIndex k : forcing) z0.insert(-k);

    std::vector<ModeSet> seen;  // exact generation sets, for cycle detection
    ModeSet z = z0;
    trace.generations.push_back(z);
    trace.accumulated = z;
    seen.push_back(z);

    while (trace.accumulated != target) {
        ModeSet next = generate_step(z, z0, n);
        trace.accumulated.insert(next.begin(), next.end());
        if (trace.accumulated == target) {
            trace.generations.push_back(next);
            break;
        }
        if (std::find(seen.begin(), seen.end(), next) != seen.end()) break;  // union stabilized
        trace.generations.push_back(next);
        seen.push_back(next);
        z = std::move(next);
    }

    trace.hypoelliptic = (trace.accumulated == target);
    if (!trace.hypoelliptic) {
        std::set_difference(target.begin(), target.end(),
                            trace.accumulated.begin(), trace.accumulated.end(),
                            std::inserter(trace.uncovered, trace.uncovered.begin()));
    }
    return trace;
}

}  // namespace gsns
