#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bitsense/biht.hpp"
#include "bitsense/linalg.hpp"
#include "bitsense/montecarlo.hpp"
#include "bitsense/raic.hpp"

namespace bitsense::io {

/// Shortest decimal that round-trips to the same double ('.' separator,
/// locale independent). Non-finite values print as nan, inf, -inf.
std::string format_double(double x);

enum class MatrixFormat { kCsv, kBinary };

/// Picks kBinary for a ".bin" extension and kCsv otherwise.
MatrixFormat format_for_path(const std::filesystem::path& path);

/// CSV: one matrix row per line, comma separated, LF endings, no header.
///
/// Binary, all little-endian:
///   bytes 0-3  magic "B1CS"
///   bytes 4-7  u32 rows
///   bytes 8-11 u32 cols
///   then rows * cols IEEE-754 float64 in row-major order.
void write_matrix(std::ostream& out, const MeasurementMatrix& a, MatrixFormat format);
MeasurementMatrix read_matrix(std::istream& in, MatrixFormat format);
void save_matrix(const std::filesystem::path& path, const MeasurementMatrix& a);
MeasurementMatrix load_matrix(const std::filesystem::path& path);

/// Vectors use the same formats as a 1 x n matrix; reading accepts any shape
/// and flattens it in row-major order.
void save_vector(const std::filesystem::path& path, const Vector& v);
Vector load_vector(const std::filesystem::path& path);

/// `trial,iter,d_s,mismatch_L,lemma1_rhs` with a header row. Quantities that
/// are undefined for an iteration (no known signal, or lemma1_rhs at t = 0)
/// are written as nan.
void write_trajectory_header(std::ostream& out);
void write_trajectory_rows(std::ostream& out, std::size_t trial, const Trajectory& traj);

/// `pair_id,d_s,regime,residual,bound,ratio` with a header row.
void write_raic_csv(std::ostream& out, const RaicReport& report);

/// `name,estimate,theory,se,z,pass` with a header row; pass is true/false.
void write_validator_csv(std::ostream& out, const std::vector<montecarlo::ValidatorResult>& results);

}  // namespace bitsense::io
