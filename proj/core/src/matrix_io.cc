#include "bincs/matrix_io.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "bincs/error.h"

namespace bincs {
namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

long long parse_int(const std::string& tok, int line) {
  long long value = 0;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    parse_error(line, "expected an integer, got '" + tok + "'");
  }
  return value;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_matrix(const SensingMatrix& a) {
  const GirthReport girth = compute_girth(a.graph());
  std::string out = fmt::format("{} {} {}\ngirth {}\n", a.rows(), a.cols(),
                                a.degree(), girth_to_string(girth.global_girth));
  for (int j = 0; j < a.cols(); ++j) {
    out += fmt::format("{}\n", fmt::join(a.support(j), " "));
  }
  return out;
}

void write_matrix(const SensingMatrix& a, std::ostream& out) {
  out << format_matrix(a);
}

void write_matrix(const SensingMatrix& a, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_matrix(a, out);
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

SensingMatrix read_matrix(std::istream& in) {
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) parse_error(1, "missing 'M N d' header");
  ++line_no;
  const auto header = split(line);
  if (header.size() != 3) parse_error(line_no, "expected 'M N d'");
  const long long m = parse_int(header[0], line_no);
  const long long n = parse_int(header[1], line_no);
  const long long d = parse_int(header[2], line_no);
  if (m < 1 || n < 1 || d < 1 || d > m) {
    parse_error(line_no, "invalid dimensions");
  }

  if (!std::getline(in, line)) parse_error(2, "missing girth line");
  ++line_no;
  const auto girth_tokens = split(line);
  if (girth_tokens.size() != 2 || girth_tokens[0] != "girth") {
    parse_error(line_no, "expected 'girth G'");
  }
  Girth declared = kInfiniteGirth;
  if (girth_tokens[1] != "inf") {
    const long long g = parse_int(girth_tokens[1], line_no);
    if (g < 4 || g % 2 != 0) parse_error(line_no, "girth must be even and >= 4");
    declared = static_cast<Girth>(g);
  }

  std::vector<Support> supports;
  supports.reserve(static_cast<std::size_t>(n));
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split(line);
    if (tokens.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      parse_error(line_no, "blank line inside column list");
    }
    if (static_cast<long long>(supports.size()) == n) {
      throw Error(ErrorCode::kInconsistentHeader,
                  "line " + std::to_string(line_no) + ": more than N=" +
                      std::to_string(n) + " columns");
    }
    Support s;
    s.reserve(tokens.size());
    for (const auto& tok : tokens) {
      const long long r = parse_int(tok, line_no);
      if (r < 0 || r >= m) {
        throw Error(ErrorCode::kIndexOutOfRange,
                    "line " + std::to_string(line_no) + ": row " + tok +
                        " outside [0, " + std::to_string(m) + ")");
      }
      if (!s.empty() && r <= s.back()) {
        parse_error(line_no, "row indices must be strictly ascending");
      }
      s.push_back(static_cast<int>(r));
    }
    if (static_cast<long long>(s.size()) != d) {
      throw Error(ErrorCode::kInconsistentHeader,
                  "line " + std::to_string(line_no) + ": column lists " +
                      std::to_string(s.size()) + " rows, header declares d=" +
                      std::to_string(d));
    }
    supports.push_back(std::move(s));
  }
  if (static_cast<long long>(supports.size()) != n) {
    throw Error(ErrorCode::kInconsistentHeader,
                "header declares N=" + std::to_string(n) + " but " +
                    std::to_string(supports.size()) + " columns were listed");
  }

  SensingMatrix a = from_supports(static_cast<int>(m), static_cast<int>(n),
                                  static_cast<int>(d), std::move(supports));
  const Girth actual = compute_girth(a.graph()).global_girth;
  if (actual != declared) {
    throw Error(ErrorCode::kInconsistentHeader,
                "declared girth " + girth_to_string(declared) +
                    " but the matrix has girth " + girth_to_string(actual));
  }
  return a;
}

SensingMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  return read_matrix(in);
}

void write_dense_matrix(const Eigen::MatrixXd& a, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << fmt::format("dense {} {}\n", a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out << (j ? " " : "") << fmt::format("{}", a(i, j));
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

Eigen::MatrixXd read_dense_matrix(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) parse_error(1, "missing 'dense M N' header");
  const auto header = split(line);
  if (header.size() != 3 || header[0] != "dense") parse_error(1, "expected 'dense M N'");
  const long long m = parse_int(header[1], 1);
  const long long n = parse_int(header[2], 1);
  if (m < 1 || n < 1) parse_error(1, "invalid dimensions");

  Eigen::MatrixXd a(m, n);
  for (long long i = 0; i < m; ++i) {
    const int line_no = static_cast<int>(i) + 2;
    if (!std::getline(in, line)) parse_error(line_no, "missing matrix row");
    const auto tokens = split(line);
    if (static_cast<long long>(tokens.size()) != n) {
      throw Error(ErrorCode::kInconsistentHeader,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(n) + " values");
    }
    for (long long j = 0; j < n; ++j) {
      double v = 0;
      const auto& tok = tokens[j];
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        parse_error(line_no, "expected a number, got '" + tok + "'");
      }
      a(i, j) = v;
    }
  }
  return a;
}

bool is_dense_matrix_file(const std::filesystem::path& path) {
  std::ifstream in = open_for_read(path);
  std::string tag;
  in >> tag;
  return tag == "dense";
}

}  // namespace bincs
