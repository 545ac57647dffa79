#include "bitsense/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "bitsense/errors.hpp"

namespace bitsense::io {
namespace {

constexpr std::array<char, 4> kMagic = {'B', '1', 'C', 'S'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) throw IoError("binary matrix: truncated header");
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) | (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void put_f64(std::ostream& out, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

double get_f64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw IoError("binary matrix: truncated payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

double parse_double(std::string_view token, std::size_t line) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw IoError("CSV line " + std::to_string(line) + ": cannot parse '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

MatrixFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".bin" ? MatrixFormat::kBinary : MatrixFormat::kCsv;
}

void write_matrix(std::ostream& out, const MeasurementMatrix& a, MatrixFormat format) {
  if (format == MatrixFormat::kBinary) {
    if (a.rows() > std::numeric_limits<std::uint32_t>::max() || a.cols() > std::numeric_limits<std::uint32_t>::max()) {
      throw IoError("binary matrix: dimensions exceed u32");
    }
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, static_cast<std::uint32_t>(a.rows()));
    put_u32(out, static_cast<std::uint32_t>(a.cols()));
    for (double x : a.entries()) put_f64(out, x);
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const auto row = a.row(i);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out << ',';
        out << format_double(row[j]);
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("failed writing matrix");
}

MeasurementMatrix read_matrix(std::istream& in, MatrixFormat format) {
  if (format == MatrixFormat::kBinary) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw IoError("binary matrix: bad magic");
    const std::uint32_t rows = get_u32(in);
    const std::uint32_t cols = get_u32(in);
    std::vector<double> entries(static_cast<std::size_t>(rows) * cols);
    for (double& x : entries) x = get_f64(in);
    return MeasurementMatrix(rows, cols, std::move(entries));
  }
  std::vector<double> entries;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const std::size_t comma = rest.find(',');
      entries.push_back(parse_double(rest.substr(0, comma), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw IoError("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(cols) + " values, got " +
                    std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw IoError("CSV matrix is empty");
  return MeasurementMatrix(rows, cols, std::move(entries));
}

void save_matrix(const std::filesystem::path& path, const MeasurementMatrix& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_matrix(out, a, format_for_path(path));
}

MeasurementMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_matrix(in, format_for_path(path));
}

void save_vector(const std::filesystem::path& path, const Vector& v) {
  save_matrix(path, MeasurementMatrix(1, v.size(), v));
}

Vector load_vector(const std::filesystem::path& path) { return load_matrix(path).entries(); }

void write_trajectory_header(std::ostream& out) { out << "trial,iter,d_s,mismatch_L,lemma1_rhs\n"; }

void write_trajectory_rows(std::ostream& out, std::size_t trial, const Trajectory& traj) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const IterationRecord& r : traj.records) {
    out << trial << ',' << r.iter << ',' << format_double(r.error_ds.value_or(nan)) << ','
        << format_double(static_cast<double>(r.mismatch)) << ',' << format_double(r.lemma1_rhs.value_or(nan))
        << '\n';
  }
}

void write_raic_csv(std::ostream& out, const RaicReport& report) {
  out << "pair_id,d_s,regime,residual,bound,ratio\n";
  for (const RaicRecord& r : report.records) {
    out << r.pair_id << ',' << format_double(r.ds) << ',' << regime_name(r.regime) << ','
        << format_double(r.residual) << ',' << format_double(r.bound) << ',' << format_double(r.ratio) << '\n';
  }
}

void write_validator_csv(std::ostream& out, const std::vector<montecarlo::ValidatorResult>& results) {
  out << "name,estimate,theory,se,z,pass\n";
  for (const auto& r : results) {
    out << r.name << ',' << format_double(r.estimate) << ',' << format_double(r.theory) << ','
        << format_double(r.se) << ',' << format_double(r.z) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace bitsense::io
