#pragma once

#include <set>
#include <vector>

#include "gsns/lattice.hpp"

namespace gsns {

using ModeSet = std::set<ModeIndex>;

/// All of Z^2_{0,N}: nonzero modes with |k|_inf <= N (both half planes).
ModeSet band_modes(int n);

/// One generation step: { k in the band : k = i + j, i in z_prev, j in z0,
/// interaction coefficient nonzero }.
ModeSet generate_step(const ModeSet& z_prev, const ModeSet& z0, int n);

struct GenerationTrace {
    std::vector<ModeSet> generations;  // Z^0, Z^1, ... up to termination
    ModeSet accumulated;
    bool hypoelliptic = false;
    ModeSet uncovered;
};

/// Iterates generations from Z^0 = K u (-K) until the band is covered or the
/// generation sequence revisits a set (the sequence is a deterministic map of
/// the previous set, so a repeat means the union has stabilized).
/// Rejects an empty forcing set.
GenerationTrace check_hypoelliptic(const ModeSet& forcing, int n);

}  // namespace gsns
