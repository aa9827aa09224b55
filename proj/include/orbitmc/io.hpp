#pragma once

#include "orbitmc/distribution.hpp"
#include "orbitmc/kernel.hpp"
#include "orbitmc/partition.hpp"

#include <iosfwd>
#include <string>

namespace orbitmc::io {

/// Shortest round-trip decimal form, '.' separator, independent of locale.
std::string format_double(double v);

/// Comma-separated rows, no header.
Mat read_csv_matrix(std::istream& in);
Mat read_csv_matrix_file(const std::string& path);
void write_csv_matrix(std::ostream& out, const Mat& m);

/// A distribution stored as one CSV row or one CSV column.
Distribution read_csv_distribution_file(const std::string& path);

/// {"n": ..., "pi": [...], "matrix": [[...], ...]}; the matrix may be omitted,
/// in which case only pi is read.
struct KernelFile {
  Distribution pi;
  Mat matrix;
};
KernelFile parse_kernel_json(const std::string& text);
KernelFile read_kernel_json_file(const std::string& path);
std::string kernel_json(const Kernel& k);

/// List of integer lists with 1-based state indices.
OrbitPartition parse_partition_json(const std::string& text, std::size_t n);
OrbitPartition read_partition_json_file(const std::string& path, std::size_t n);
std::string partition_json(const OrbitPartition& part);

std::string read_text_file(const std::string& path);

}  // namespace orbitmc::io
