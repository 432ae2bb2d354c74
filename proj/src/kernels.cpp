#include "kneeopt/kernels.hpp"

#include <algorithm>
#include <cstddef>

namespace kneeopt::kernels {

namespace {

// Below this many rows the fork/join cost dominates the pairwise work.
constexpr std::ptrdiff_t kParallelThreshold = 64;

// Omega_i = x_i + c * sum_{j != i} x_j, written as (1 - c) x_i + c * S so
// that c == 0 returns x_i and c == 1 returns S bit-exactly.
inline void transform_row(std::span<const double> f, const Bounds& b, double coeff, std::span<double> out) {
  const std::size_t m = f.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double span = b.max_p[k] - b.min_p[k];
    out[k] = span != 0.0 ? (f[k] - b.min_p[k]) / span : 0.0;
    sum += out[k];
  }
  const double diag = 1.0 - coeff;
  for (std::size_t k = 0; k < m; ++k) {
    out[k] = diag * out[k] + coeff * sum;
  }
}

inline bool cone_rows_dominate(std::span<const double> a, std::span<const double> b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strict = true;
  }
  return strict;
}

}  // namespace

bool row_dominates(const DominanceInput& in, std::size_t i, std::size_t j) {
  const std::uint32_t si = in.satisfied[i];
  const std::uint32_t sj = in.satisfied[j];
  const std::uint32_t total = in.constraints_total;
  if (!(si == total && sj == total)) {
    if (si != sj) return si > sj;
  }
  return cone_rows_dominate(in.cone_rows.row(i), in.cone_rows.row(j));
}

RowMatrix cone_transform_serial(const RowMatrix& objectives, const Bounds& b, double coeff) {
  RowMatrix out(objectives.rows, objectives.cols);
  for (std::size_t i = 0; i < objectives.rows; ++i) {
    transform_row(objectives.row(i), b, coeff, out.row(i));
  }
  return out;
}

RowMatrix cone_transform(const RowMatrix& objectives, const Bounds& b, double coeff) {
  RowMatrix out(objectives.rows, objectives.cols);
  const auto n = static_cast<std::ptrdiff_t>(objectives.rows);
#pragma omp parallel for schedule(static) if (n > kParallelThreshold)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(i);
    transform_row(objectives.row(r), b, coeff, out.row(r));
  }
  return out;
}

std::vector<std::uint8_t> dominance_matrix_serial(const DominanceInput& in) {
  const std::size_t n = in.cone_rows.rows;
  std::vector<std::uint8_t> d(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) d[i * n + j] = row_dominates(in, i, j) ? 1 : 0;
    }
  }
  return d;
}

std::vector<std::uint8_t> dominance_matrix(const DominanceInput& in) {
  const std::size_t n = in.cone_rows.rows;
  std::vector<std::uint8_t> d(n * n, 0);
  const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16) if (sn > kParallelThreshold)
  for (std::ptrdiff_t si = 0; si < sn; ++si) {
    const auto i = static_cast<std::size_t>(si);
    std::uint8_t* row = d.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) row[j] = row_dominates(in, i, j) ? 1 : 0;
    }
  }
  return d;
}

std::vector<std::uint32_t> dominated_counts_serial(std::span<const std::uint8_t> matrix, std::size_t n) {
  std::vector<std::uint32_t> counts(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      counts[j] += matrix[i * n + j];
    }
  }
  return counts;
}

std::vector<std::uint32_t> dominated_counts(std::span<const std::uint8_t> matrix, std::size_t n) {
  // Each thread owns a block of columns and streams the rows through it, so
  // reads stay contiguous.
  constexpr std::size_t kBlock = 256;
  std::vector<std::uint32_t> counts(n, 0);
  const auto blocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static) if (n > static_cast<std::size_t>(kParallelThreshold) && blocks > 1)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint8_t* row = matrix.data() + i * n;
      for (std::size_t j = lo; j < hi; ++j) counts[j] += row[j];
    }
  }
  return counts;
}

}  // namespace kneeopt::kernels
