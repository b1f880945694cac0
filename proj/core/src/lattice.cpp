#include "gsns/lattice.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace gsns {

double interaction_coefficient(ModeIndex i, ModeIndex j) {
    if ((i.k1 == 0 && i.k2 == 0) || (j.k1 == 0 && j.k2 == 0)) {
        throw std::invalid_argument("interaction_coefficient: zero wavevector");
    }
    const long long cross = static_cast<long long>(i.k2) * j.k1 - static_cast<long long>(i.k1) * j.k2;
    const long long ni = static_cast<long long>(i.k1) * i.k1 + static_cast<long long>(i.k2) * i.k2;
    const long long nj = static_cast<long long>(j.k1) * j.k1 + static_cast<long long>(j.k2) * j.k2;
    if (cross == 0 || ni == nj) return 0.0;
    return static_cast<double>(cross) * (1.0 / static_cast<double>(nj) - 1.0 / static_cast<double>(ni));
}

TruncationLattice::TruncationLattice(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("TruncationLattice: N must be >= 1");
    for (int k1 = -n; k1 <= n; ++k1) {
        for (int k2 = -n; k2 <= n; ++k2) {
            const ModeIndex k{k1, k2};
            if (in_upper_lattice(k) && norm_inf(k) <= n) modes_.push_back(k);
        }
    }
    // (k1, k2) loop order already yields ascending lexicographic order.
    norm_sq_.reserve(modes_.size());
    for (std::size_t p = 0; p < modes_.size(); ++p) {
        index_[modes_[p]] = static_cast<int>(p);
        norm_sq_.push_back(norm_sq(modes_[p]));
    }
}

int TruncationLattice::index_of(ModeIndex k) const {
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
}

TruncationLattice build_lattice(int n) { return TruncationLattice(n); }

TriadTable build_triads(const TruncationLattice& lattice) {
    TriadTable table;
    const auto& modes = lattice.modes();
    for (std::size_t a = 0; a < modes.size(); ++a) {
        for (std::size_t b = 0; b < modes.size(); ++b) {
            const ModeIndex i = modes[a];
            const ModeIndex j = modes[b];
            const double c = interaction_coefficient(i, j);
            if (c == 0.0) continue;
            const ModeIndex ks = i + j;
            if (lattice.contains(ks)) {
                table.entries.push_back({i, j, ks, TriadKind::sum, c,
                                         static_cast<int>(a), static_cast<int>(b), lattice.index_of(ks)});
            }
            const ModeIndex kd = i - j;
            if (lattice.contains(kd)) {
                table.entries.push_back({i, j, kd, TriadKind::diff, c,
                                         static_cast<int>(a), static_cast<int>(b), lattice.index_of(kd)});
            }
        }
    }
    return table;
}

void write_triads_csv(const TriadTable& table, std::ostream& out) {
    out << "i1,i2,j1,j2,k1,k2,kind,c\n";
    char buf[64];
    for (const auto& e : table.entries) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.c);
        out << e.i.k1 << ',' << e.i.k2 << ',' << e.j.k1 << ',' << e.j.k2 << ','
            << e.k.k1 << ',' << e.k.k2 << ',' << (e.kind == TriadKind::sum ? "sum" : "diff") << ','
            << buf << '\n';
    }
}

}  // namespace gsns
