#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

#include "bincs/sensing_matrix.h"

namespace bincs {

// Text format (UTF-8, LF):
//   M N d
//   girth G          (even integer or "inf"; re-verified on read)
//   r_1 ... r_d      (one line per column, 0-based, ascending)
std::string format_matrix(const SensingMatrix& a);
void write_matrix(const SensingMatrix& a, std::ostream& out);
void write_matrix(const SensingMatrix& a, const std::filesystem::path& path);

// Throws ParseError (message carries the 1-based line number) for malformed
// tokens and InconsistentHeader when the body disagrees with lines 1-2.
SensingMatrix read_matrix(std::istream& in);
SensingMatrix read_matrix(const std::filesystem::path& path);

// Dense real matrices (Gaussian baselines) use a separate layout:
//   dense M N
//   M lines of N values
void write_dense_matrix(const Eigen::MatrixXd& a, const std::filesystem::path& path);
Eigen::MatrixXd read_dense_matrix(const std::filesystem::path& path);

// True when the file starts with the "dense" tag.
bool is_dense_matrix_file(const std::filesystem::path& path);

}  // namespace bincs
