#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pvc/kdf.hpp"
#include "pvc/matrix.hpp"

namespace pvc {

// Index plan for 3x3 shifting submatrices. Tops are 1-based master-matrix
// indices; block k covers rows [i, i+2] x cols [j, j+2].
struct SsmIndexPlan {
  std::vector<std::size_t> row_tops;  // I, ascending
  std::vector<std::size_t> col_tops;  // J, ascending

  std::size_t block_count() const { return row_tops.size() * col_tops.size(); }

  // Blocks are numbered k = 1..block_count in lexicographic (row, col) order.
  std::pair<std::size_t, std::size_t> origin(std::size_t k) const {
    std::size_t idx = k - 1;
    return {row_tops[idx / col_tops.size()], col_tops[idx % col_tops.size()]};
  }

  bool operator==(const SsmIndexPlan&) const = default;
};

// Stride-3 plan: tops 1, 4, 7, ... up to m-2, with m-2 appended when the
// stride misses it, so the last block hugs the bottom/right edge and every
// cell is covered. Requires m, n >= 3.
SsmIndexPlan plan_indices(std::size_t m, std::size_t n);

// Caller-supplied tops; validates bounds (1 <= top <= dim-2), ordering and
// full coverage. Throws Error(config) when the plan leaves holes.
SsmIndexPlan explicit_plan(std::vector<std::size_t> row_tops, std::vector<std::size_t> col_tops,
                           std::size_t m, std::size_t n);

// Message embedding: msg occupies m*n-cell row-major positions starting at
// (start_row, start_col), 1-based; every other cell takes the next padding
// stream octet, also in row-major order. Cell values are raw octets (< 256).
MatrixFp embed_message(ByteView msg, std::size_t m, std::size_t n, std::size_t start_row,
                       std::size_t start_col, const DerivedKeys& keys);

Bytes extract_message(const MatrixFp& mat, std::uint32_t msg_len, std::size_t start_row,
                      std::size_t start_col);

// 1-based block copy-out; requires the 3x3 window to fit.
Block extract_block(const MatrixFp& mat, std::size_t i, std::size_t j);

struct PlacedBlock {
  std::size_t i = 0;  // 1-based tops
  std::size_t j = 0;
  Block block;
};

// Rebuilds the master matrix from (possibly overlapping) blocks. Overlapping
// cells must agree; a disagreement throws Error(overlap_mismatch) carrying the
// 1-based cell. Blocks must cover every cell.
MatrixFp reassemble(std::span<const PlacedBlock> blocks, std::size_t m, std::size_t n);

}  // namespace pvc
