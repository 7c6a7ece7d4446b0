#pragma once

// Text interchange formats.
//
//   .gmx  "GMX 1 <rows> <cols> <int|real>" then one line per row of
//         space-separated values; reals carry 17 significant digits.
//   .pts  "PTS 1 <count> <side>" then "<x> <y>" per line.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "uavcover/geometry.hpp"
#include "uavcover/grid.hpp"

namespace uavcover {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("cannot format value");
  return {buf, end};
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw ParseError(path.string() + ": cannot open file");
  }

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_.string() + ":" + std::to_string(line_no_) + ": " + what);
  }

  template <class T>
  T number(std::string_view token) const {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) fail("malformed number '" + std::string(token) + "'");
    return value;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace detail

inline std::string matrix_to_string(const GridMatrix& m) {
  std::string s = "GMX 1 " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " + to_string(m.kind()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      if (m.kind() == CellKind::integer) {
        s += std::to_string(std::llround(m(i, j)));
      } else {
        s += format_real(m(i, j));
      }
    }
    s += '\n';
  }
  return s;
}

inline void write_matrix(const std::filesystem::path& path, const GridMatrix& m) {
  detail::write_text(path, matrix_to_string(m));
}

inline GridMatrix read_matrix(const std::filesystem::path& path) {
  detail::LineReader in(path);
  std::string line;
  if (!in.next(line)) in.fail("missing GMX header");
  const auto head = detail::split_ws(line);
  if (head.size() != 5 || head[0] != "GMX") in.fail("expected 'GMX 1 <rows> <cols> <int|real>'");
  if (head[1] != "1") in.fail("unsupported GMX version '" + std::string(head[1]) + "'");
  const auto rows = in.number<std::size_t>(head[2]);
  const auto cols = in.number<std::size_t>(head[3]);
  CellKind kind = CellKind::integer;
  if (head[4] == "int") {
    kind = CellKind::integer;
  } else if (head[4] == "real") {
    kind = CellKind::real;
  } else {
    in.fail("unknown cell kind '" + std::string(head[4]) + "'");
  }

  std::vector<double> cells;
  cells.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!in.next(line)) in.fail("expected " + std::to_string(rows) + " data rows, found " + std::to_string(i));
    const auto tokens = detail::split_ws(line);
    if (tokens.size() != cols)
      in.fail("expected " + std::to_string(cols) + " values, found " + std::to_string(tokens.size()));
    for (auto tok : tokens) {
      if (kind == CellKind::integer) {
        cells.push_back(static_cast<double>(in.number<long long>(tok)));
      } else {
        cells.push_back(in.number<double>(tok));
      }
    }
  }
  while (in.next(line)) {
    if (!detail::split_ws(line).empty()) in.fail("unexpected data after " + std::to_string(rows) + " rows");
  }
  return GridMatrix(rows, cols, kind, std::move(cells));
}

struct PointFile {
  std::vector<Point> points;
  double side = 0.0;
};

inline std::string points_to_string(std::span<const Point> points, double side) {
  std::string s = "PTS 1 " + std::to_string(points.size()) + " " + format_real(side) + "\n";
  for (const auto& p : points) s += format_real(p.x) + " " + format_real(p.y) + "\n";
  return s;
}

inline void write_points(const std::filesystem::path& path, std::span<const Point> points, double side) {
  detail::write_text(path, points_to_string(points, side));
}

inline PointFile read_points(const std::filesystem::path& path) {
  detail::LineReader in(path);
  std::string line;
  if (!in.next(line)) in.fail("missing PTS header");
  const auto head = detail::split_ws(line);
  if (head.size() != 4 || head[0] != "PTS") in.fail("expected 'PTS 1 <count> <side>'");
  if (head[1] != "1") in.fail("unsupported PTS version '" + std::string(head[1]) + "'");
  const auto count = in.number<std::size_t>(head[2]);
  PointFile out{{}, in.number<double>(head[3])};
  out.points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (!in.next(line)) in.fail("expected " + std::to_string(count) + " points, found " + std::to_string(k));
    const auto tokens = detail::split_ws(line);
    if (tokens.size() != 2) in.fail("expected '<x> <y>'");
    const Point p{in.number<double>(tokens[0]), in.number<double>(tokens[1])};
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) in.fail("non-finite coordinate");
    out.points.push_back(p);
  }
  while (in.next(line)) {
    if (!detail::split_ws(line).empty()) in.fail("unexpected data after " + std::to_string(count) + " points");
  }
  return out;
}

}  // namespace uavcover
