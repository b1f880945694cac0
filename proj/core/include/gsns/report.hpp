#pragma once

#include <string>
#include <vector>

#include "gsns/config.hpp"
#include "gsns/dynamics.hpp"

namespace gsns {

/// Shortest exact decimal for CSV cells: %.17g round-trips doubles.
std::string format17(double x);

/// Writes via a temporary file and rename, so readers never see a torn report.
void write_file_atomic(const std::string& path, const std::string& content);

/// Column header "t,q_k1_k2_1,q_k1_k2_2,..." in canonical mode order.
std::string trajectory_header(const TruncationLattice& lattice);

/// Leading metadata comment shared by all CSV reports.
std::string csv_preamble(const ExperimentConfig& config);

std::string trajectory_row(double t, const Vec& q);

}  // namespace gsns
