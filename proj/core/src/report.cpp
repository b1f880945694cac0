#include "gsns/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gsns {

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string trajectory_header(const TruncationLattice& lattice) {
    std::string h = "t";
    for (const ModeIndex k : lattice.modes()) {
        for (int c = 1; c <= 2; ++c) {
            h += ",q_" + std::to_string(k.k1) + "_" + std::to_string(k.k2) + "_" + std::to_string(c);
        }
    }
    return h;
}

std::string csv_preamble(const ExperimentConfig& config) {
    return std::string("# format_version=") + kReportFormatVersion + " config_hash=" + config.config_hash + "\n";
}

std::string trajectory_row(double t, const Vec& q) {
    std::string row = format17(t);
    for (Eigen::Index c = 0; c < q.size(); ++c) {
        row += ',';
        row += format17(q[c]);
    }
    return row;
}

}  // namespace gsns
