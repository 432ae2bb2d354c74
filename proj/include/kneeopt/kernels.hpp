#pragma once

// Data-parallel inner loops of the ranking pipeline. Every kernel has a
// serial reference twin with identical results; the OpenMP versions are the
// ones the library uses, the serial ones exist for tests and the benchmark.

#include <cstdint>
#include <span>
#include <vector>

#include "kneeopt/core.hpp"

namespace kneeopt::kernels {

/// Dense row-major matrix of objective-space rows.
struct RowMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RowMatrix() = default;
  RowMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

/// Inputs of a pairwise dominance pass: transformed objective rows plus the
/// constraint counts that take precedence over them.
struct DominanceInput {
  RowMatrix cone_rows;
  std::vector<std::uint32_t> satisfied;
  std::uint32_t constraints_total = 0;
};

/// Normalizes each row with `b` and maps it through the symmetric cone
/// transform with off-diagonal coefficient `coeff`.
RowMatrix cone_transform(const RowMatrix& objectives, const Bounds& b, double coeff);
RowMatrix cone_transform_serial(const RowMatrix& objectives, const Bounds& b, double coeff);

/// Entry (i, j) is 1 iff row i dominates row j: more satisfied constraints
/// (unless both are feasible), otherwise component-wise <= with one strict <.
std::vector<std::uint8_t> dominance_matrix(const DominanceInput& in);
std::vector<std::uint8_t> dominance_matrix_serial(const DominanceInput& in);

/// Number of rows dominating each row (column sums of the dominance matrix).
std::vector<std::uint32_t> dominated_counts(std::span<const std::uint8_t> matrix, std::size_t n);
std::vector<std::uint32_t> dominated_counts_serial(std::span<const std::uint8_t> matrix, std::size_t n);

bool row_dominates(const DominanceInput& in, std::size_t i, std::size_t j);

}  // namespace kneeopt::kernels
