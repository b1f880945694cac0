#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

namespace gsns {

/// Integer wavevector on the 2-torus.
struct ModeIndex {
    int k1 = 0;
    int k2 = 0;
    auto operator<=>(const ModeIndex&) const = default;
};

inline ModeIndex operator+(ModeIndex a, ModeIndex b) { return {a.k1 + b.k1, a.k2 + b.k2}; }
inline ModeIndex operator-(ModeIndex a, ModeIndex b) { return {a.k1 - b.k1, a.k2 - b.k2}; }
inline ModeIndex operator-(ModeIndex a) { return {-a.k1, -a.k2}; }

inline int norm_sq(ModeIndex k) { return k.k1 * k.k1 + k.k2 * k.k2; }
inline int norm_inf(ModeIndex k) { return std::max(k.k1 < 0 ? -k.k1 : k.k1, k.k2 < 0 ? -k.k2 : k.k2); }

/// Upper half plane convention: k2 > 0, or k2 = 0 with k1 > 0.
inline bool in_upper_lattice(ModeIndex k) { return k.k2 > 0 || (k.k1 > 0 && k.k2 == 0); }

/// Nonzero modes within the truncation band, 0 < |k|_inf <= N.
inline bool in_band(ModeIndex k, int n) { return norm_inf(k) > 0 && norm_inf(k) <= n; }

/// Coupling weight <i_perp, j> (1/|j|^2 - 1/|i|^2), i_perp = (i2, -i1).
/// The vanishing cases (collinear i,j or equal norms) are decided in integer
/// arithmetic, so a zero return is exact. Rejects the zero wavevector.
double interaction_coefficient(ModeIndex i, ModeIndex j);

/// Upper-half modes with |k|_inf <= N in ascending (k1, k2) order, plus the
/// inverse index map. State dimension d = 4N(N+1) = 2 * |modes|.
class TruncationLattice {
public:
    explicit TruncationLattice(int n);

    int truncation() const { return n_; }
    int d() const { return static_cast<int>(2 * modes_.size()); }
    const std::vector<ModeIndex>& modes() const { return modes_; }

    bool contains(ModeIndex k) const { return index_.count(k) != 0; }
    /// Position of k in modes(), or -1 when absent.
    int index_of(ModeIndex k) const;
    int norm_sq_at(int pos) const { return norm_sq_[static_cast<std::size_t>(pos)]; }

private:
    int n_;
    std::vector<ModeIndex> modes_;
    std::map<ModeIndex, int> index_;
    std::vector<int> norm_sq_;
};

TruncationLattice build_lattice(int n);

enum class TriadKind : std::uint8_t { sum, diff };

/// One interacting ordered pair (i, j) feeding mode k = i + j or k = i - j.
/// c is the raw coupling weight; the 1/2 and -1 prefactors of the equations
/// of motion are applied at drift-assembly time, not stored here.
struct TriadEntry {
    ModeIndex i, j, k;
    TriadKind kind;
    double c;
    int pi, pj, pk;  // lattice positions, cached for the integrator
};

struct TriadTable {
    std::vector<TriadEntry> entries;
};

/// Every ordered pair (i, j) over the lattice with c != 0 whose sum or
/// difference lands back in the lattice. Ordering is deterministic:
/// i-major, j-minor, sum entry before diff entry.
TriadTable build_triads(const TruncationLattice& lattice);

/// Debug dump, one row per entry: i1,i2,j1,j2,k1,k2,kind,c.
void write_triads_csv(const TriadTable& table, std::ostream& out);

}  // namespace gsns
