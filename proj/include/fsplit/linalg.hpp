#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fsplit/simd_kernels.hpp"

namespace fsplit {

// Row-major dense matrix with entries in [0, p).
class DenseMatrixModP {
 public:
  DenseMatrixModP(std::size_t rows, std::size_t cols, std::uint32_t prime);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t prime() const noexcept { return prime_; }

  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::uint32_t prime_;
  std::vector<std::uint32_t> data_;
};

// Rank by Gaussian elimination; the matrix is overwritten with a row echelon form.
std::size_t rank_mod_p(DenseMatrixModP& m, const simd::ModKernels& kernels = simd::active_kernels());

}  // namespace fsplit
