#pragma once

// Frame files. Two formats: a structured text format (keys n, N, vectors,
// then optional metadata, in that order) and plain delimiter-separated
// values (one vector per row, no header). Numbers are written with 17
// significant digits so write -> read -> write is byte-identical.
//
// Vectors are rows in files (human-friendly) but columns of the FrameMatrix;
// the reader and writer transpose.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "framekit/errors.hpp"
#include "framekit/frame_matrix.hpp"

namespace framekit {

enum class FrameFileFormat { Structured, Dsv };

struct FrameFile {
  int n = 0;
  int N = 0;
  std::vector<std::vector<double>> vectors;  // N rows of n entries
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;

  FrameMatrix to_frame() const {
    Eigen::MatrixXd cols(n, N);
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < n; ++c) cols(c, r) = vectors[r][c];
    }
    return FrameMatrix(std::move(cols));
  }

  static FrameFile from_frame(const FrameMatrix& frame) {
    FrameFile file;
    file.n = frame.dim();
    file.N = frame.count();
    file.vectors.assign(file.N, std::vector<double>(file.n));
    for (int r = 0; r < file.N; ++r) {
      for (int c = 0; c < file.n; ++c) file.vectors[r][c] = frame.columns()(c, r);
    }
    return file;
  }
};

/// ".frame" selects the structured format; anything else is DSV.
inline FrameFileFormat format_for_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".frame") {
    return FrameFileFormat::Structured;
  }
  return FrameFileFormat::Dsv;
}

namespace detail {

inline std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

inline double parse_real(const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE ||
      !std::isfinite(value)) {
    throw ParseError("not a finite real number: '" + token + "'");
  }
  return value;
}

inline long long parse_integer(const std::string& token) {
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE) {
    throw ParseError("not an integer: '" + token + "'");
  }
  return value;
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (const char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == ',' || ch == ';' || ch == '\r') {
      if (!current.empty()) fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) fields.push_back(std::move(current));
  return fields;
}

inline void validate(const FrameFile& file) {
  if (file.n < 1 || file.N < 1) throw ParseError("frame file needs n >= 1 and N >= 1");
  if (static_cast<int>(file.vectors.size()) != file.N) {
    throw ParseError("vector row count does not match N");
  }
  for (const auto& row : file.vectors) {
    if (static_cast<int>(row.size()) != file.n) {
      throw ParseError("vector row length does not match n");
    }
  }
}

}  // namespace detail

inline std::string serialize_frame_file(const FrameFile& file,
                                        FrameFileFormat format = FrameFileFormat::Structured) {
  detail::validate(file);
  std::ostringstream out;
  const auto write_row = [&out](const std::vector<double>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ' ';
      out << detail::format_real(row[c]);
    }
    out << '\n';
  };
  if (format == FrameFileFormat::Dsv) {
    for (const auto& row : file.vectors) write_row(row);
    return out.str();
  }
  out << "n " << file.n << '\n';
  out << "N " << file.N << '\n';
  out << "vectors\n";
  for (const auto& row : file.vectors) write_row(row);
  if (file.name) out << "name " << *file.name << '\n';
  if (file.seed) out << "seed " << *file.seed << '\n';
  if (file.tolerance) out << "tolerance " << detail::format_real(*file.tolerance) << '\n';
  return out.str();
}

inline FrameFile parse_frame_file(const std::string& text, FrameFileFormat format) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }

  FrameFile file;
  if (format == FrameFileFormat::Dsv) {
    for (const auto& line : lines) {
      const auto fields = detail::split_fields(line);
      if (fields.empty()) continue;
      std::vector<double> row;
      row.reserve(fields.size());
      for (const auto& f : fields) row.push_back(detail::parse_real(f));
      file.vectors.push_back(std::move(row));
    }
    if (file.vectors.empty()) throw ParseError("empty DSV frame file");
    file.N = static_cast<int>(file.vectors.size());
    file.n = static_cast<int>(file.vectors.front().size());
    detail::validate(file);
    return file;
  }

  std::size_t at = 0;
  const auto next_line = [&]() -> const std::string& {
    if (at >= lines.size()) throw ParseError("unexpected end of structured frame file");
    return lines[at++];
  };

  {
    const auto fields = detail::split_fields(next_line());
    if (fields.size() != 2 || fields[0] != "n") throw ParseError("expected 'n <dim>'");
    file.n = static_cast<int>(detail::parse_integer(fields[1]));
  }
  {
    const auto fields = detail::split_fields(next_line());
    if (fields.size() != 2 || fields[0] != "N") throw ParseError("expected 'N <count>'");
    file.N = static_cast<int>(detail::parse_integer(fields[1]));
  }
  if (file.n < 1 || file.N < 1) throw ParseError("frame file needs n >= 1 and N >= 1");
  if (detail::split_fields(next_line()) != std::vector<std::string>{"vectors"}) {
    throw ParseError("expected 'vectors'");
  }
  for (int r = 0; r < file.N; ++r) {
    const auto fields = detail::split_fields(next_line());
    if (static_cast<int>(fields.size()) != file.n) {
      throw ParseError("vector row " + std::to_string(r + 1) + " does not have n entries");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(detail::parse_real(f));
    file.vectors.push_back(std::move(row));
  }
  // Optional metadata, fixed order: name, seed, tolerance.
  while (at < lines.size()) {
    const std::string& line = lines[at];
    if (detail::split_fields(line).empty()) {
      ++at;
      continue;
    }
    if (line.rfind("name ", 0) == 0 && !file.name && !file.seed && !file.tolerance) {
      file.name = line.substr(5);
    } else if (line.rfind("seed ", 0) == 0 && !file.seed && !file.tolerance) {
      const long long value = detail::parse_integer(line.substr(5));
      if (value < 0) throw ParseError("seed must be nonnegative");
      file.seed = static_cast<std::uint64_t>(value);
    } else if (line.rfind("tolerance ", 0) == 0 && !file.tolerance) {
      file.tolerance = detail::parse_real(line.substr(10));
    } else {
      throw ParseError("unexpected line in structured frame file: '" + line + "'");
    }
    ++at;
  }
  detail::validate(file);
  return file;
}

inline void write_frame_file(const std::string& path, const FrameFile& file,
                             std::optional<FrameFileFormat> format = std::nullopt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << serialize_frame_file(file, format.value_or(format_for_path(path)));
  if (!out) throw ParseError("write to '" + path + "' failed");
}

inline FrameFile read_frame_file(const std::string& path,
                                 std::optional<FrameFileFormat> format = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_frame_file(buffer.str(), format.value_or(format_for_path(path)));
}

}  // namespace framekit
