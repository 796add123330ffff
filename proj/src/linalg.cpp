#include "fsplit/linalg.hpp"

#include <algorithm>

#include "fsplit/ring.hpp"

namespace fsplit {

DenseMatrixModP::DenseMatrixModP(std::size_t rows, std::size_t cols, std::uint32_t prime)
    : rows_(rows), cols_(cols), prime_(prime), data_(rows * cols, 0) {}

std::size_t rank_mod_p(DenseMatrixModP& m, const simd::ModKernels& kernels) {
  const auto p = m.prime();
  const auto rows = m.rows();
  const auto cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m.at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      auto a = m.row(pivot);
      auto b = m.row(rank);
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(c), a.end(), b.begin() + static_cast<std::ptrdiff_t>(c));
    }
    std::uint32_t* prow = m.row(rank).data() + c;
    const std::size_t width = cols - c;
    kernels.scale(prow, width, mod_inv(*prow, p), p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint32_t* target = m.row(r).data() + c;
      if (*target == 0) continue;
      kernels.axpy(target, prow, width, p - *target, p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace fsplit
