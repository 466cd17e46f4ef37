#pragma once

#include <cctype>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spdmean/means.hpp"
#include "spdmean/spectral.hpp"
#include "spdmean/weight.hpp"

namespace spdmean {

/// Parsed SPDLIST file: header `SPDLIST n m`, an optional `WEIGHTS w1 .. wn`
/// line, then n blocks of m rows with m decimals each. Lines starting with
/// `#` (and blank lines) are skipped anywhere.
struct MatrixListFile {
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  std::optional<Weight> weights;
  SpdTuple matrices;

  /// Stored weights, or the uniform weight when the file had none.
  Weight effective_weights() const {
    return weights ? *weights : Weight::uniform(n);
  }
};

namespace detail {

struct SignificantLine {
  std::string text;
  int number;  // 1-based physical line number
};

struct LineReader {
  std::istringstream in;
  int physical_line = 0;

  explicit LineReader(const std::string& text) : in(text) {}

  // Next non-blank, non-comment line, or nullopt at end of input.
  std::optional<SignificantLine> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++physical_line;
      std::size_t i = 0;
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i == line.size() || line[i] == '#') continue;
      return SignificantLine{line, physical_line};
    }
    return std::nullopt;
  }
};

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

inline double parse_double(const std::string& tok, int line) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a decimal number, got '" + tok + "'", line);
  }
  if (pos != tok.size()) throw ParseError("trailing characters in number '" + tok + "'", line);
  return value;
}

inline long parse_positive_int(const std::string& tok, const char* what, int line) {
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("expected ") + what + ", got '" + tok + "'", line);
  }
  if (pos != tok.size() || value < 1)
    throw ParseError(std::string(what) + " must be a positive integer", line);
  return value;
}

}  // namespace detail

inline MatrixListFile parse_matrix_list(const std::string& text) {
  detail::LineReader reader(text);

  auto header = reader.next();
  if (!header) throw ParseError("empty input, expected 'SPDLIST n m' header", 1);
  const auto head = detail::tokens(header->text);
  if (head.size() != 3 || head[0] != "SPDLIST")
    throw ParseError("malformed header, expected 'SPDLIST n m'", header->number);
  MatrixListFile file;
  file.n = detail::parse_positive_int(head[1], "matrix count n", header->number);
  file.m = detail::parse_positive_int(head[2], "dimension m", header->number);
  if (file.m > 64)
    throw ParseError("dimension m exceeds the supported limit of 64", header->number);

  auto line = reader.next();
  if (line && detail::tokens(line->text).front() == "WEIGHTS") {
    const auto toks = detail::tokens(line->text);
    if (static_cast<Eigen::Index>(toks.size()) != file.n + 1)
      throw ParseError(
          "WEIGHTS line must carry exactly n = " + std::to_string(file.n) + " entries",
          line->number);
    Vector w(file.n);
    for (Eigen::Index i = 0; i < file.n; ++i)
      w(i) = detail::parse_double(toks[static_cast<std::size_t>(i + 1)], line->number);
    try {
      file.weights = Weight(std::move(w));
    } catch (const Error& e) {
      throw ParseError(std::string("invalid WEIGHTS: ") + e.what(), line->number);
    }
    line = reader.next();
  }

  for (Eigen::Index k = 0; k < file.n; ++k) {
    Matrix a(file.m, file.m);
    int block_line = reader.physical_line;
    for (Eigen::Index r = 0; r < file.m; ++r) {
      if (!line)
        throw ParseError("unexpected end of input in matrix " + std::to_string(k + 1),
                         reader.physical_line);
      if (r == 0) block_line = line->number;
      const auto toks = detail::tokens(line->text);
      if (static_cast<Eigen::Index>(toks.size()) != file.m)
        throw ParseError("expected " + std::to_string(file.m) + " entries per row",
                         line->number);
      for (Eigen::Index c = 0; c < file.m; ++c)
        a(r, c) = detail::parse_double(toks[static_cast<std::size_t>(c)], line->number);
      line = reader.next();
    }
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9)
      throw ParseError("matrix " + std::to_string(k + 1) + " is asymmetric beyond 1e-9",
                       block_line);
    const Matrix sym = symmetrize(a);
    if (!is_positive_definite(sym))
      throw NotPositiveDefinite("matrix " + std::to_string(k + 1) + " is not positive definite",
                                static_cast<int>(k));
    file.matrices.push_back(sym);
  }
  if (line) throw ParseError("unexpected trailing content", line->number);
  return file;
}

/// Render with 17 significant digits per entry, so parse(format(x)) restores
/// every double bit-exactly.
inline std::string format_matrix_list(const MatrixListFile& file) {
  char buf[64];
  std::string out = "SPDLIST " + std::to_string(file.n) + " " + std::to_string(file.m) + "\n";
  if (file.weights) {
    out += "WEIGHTS";
    for (Eigen::Index i = 0; i < file.weights->size(); ++i) {
      std::snprintf(buf, sizeof(buf), " %.17g", (*file.weights)[i]);
      out += buf;
    }
    out += "\n";
  }
  for (const Matrix& a : file.matrices) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), c ? " %.17g" : "%.17g", a(r, c));
        out += buf;
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace spdmean
