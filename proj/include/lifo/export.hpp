#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "lifo/estimators.hpp"
#include "lifo/trajectory.hpp"

namespace lifo::io {

/// Shortest round-trip representation, '.' as decimal separator regardless of locale.
std::string format_double(double v);

/// Columns: step, Y, C1..Ck, C, D_i_j for every i < j, f_consumed_depth.
/// f_consumed_depth is empty unless X(step) = F; then 0 when the burger came
/// from X(1, step-1), otherwise its original depth in X(-inf, 0).
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// One JSON object per F resolution.
void write_event_log(std::ostream& out, const Trajectory& trajectory);

struct EstimateRow {
  std::string quantity;
  int k = 0;
  double p = 0.0;
  std::size_t n = 0;
  Estimate estimate;
};

/// Columns: quantity, k, p, n, value, stderr, trials, truncated_mass.
void write_estimates_csv(std::ostream& out, std::span<const EstimateRow> rows);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

}  // namespace lifo::io
