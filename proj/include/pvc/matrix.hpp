#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "pvc/field.hpp"

namespace pvc {

// 3x3 matrix over F_p, row-major.
struct Block {
  std::array<Fe, 9> e{};

  Fe& at(std::size_t r, std::size_t c) { return e[3 * r + c]; }          // 0-based
  Fe at(std::size_t r, std::size_t c) const { return e[3 * r + c]; }

  bool operator==(const Block&) const = default;

  static Block identity() {
    Block b;
    b.e = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return b;
  }
  static Block zero() { return Block{}; }
};

Block mat_add(const Block& a, const Block& b, const FieldCtx& ctx);
Block mat_sub(const Block& a, const Block& b, const FieldCtx& ctx);
Block mat_mul(const Block& a, const Block& b, const FieldCtx& ctx);
Fe det(const Block& a, const FieldCtx& ctx);
// Inverse via adjugate; throws Error(singular_matrix) when det == 0.
Block mat_inv(const Block& a, const FieldCtx& ctx);

// Delta in C = S*V + Delta*U: identity when the block's top-left master
// indices coincide, zero otherwise.
inline Block delta_block(std::size_t i, std::size_t j) {
  return i == j ? Block::identity() : Block::zero();
}

// Key matrices built from the shared vector:
//   V = [[0,k1,k1],[k2,0,k2],[k3,k3,0]],  U = diag(k1,k2,k3).
// det(V) = 2*k1*k2*k3, nonzero whenever every k_i is nonzero (p odd), so V
// is always invertible for a valid shared vector.
struct KeyMatrices {
  Block v;
  Block u;
  Block v_inv;
};

// Throws Error(degenerate_key) if any component of g_shared is 0 mod p.
KeyMatrices build_key_matrices(const SharedVector& g_shared, const FieldCtx& ctx);

// General m x n matrix over F_p, row-major, 0-based accessors.
struct MatrixFp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Fe> e;

  MatrixFp() = default;
  MatrixFp(std::size_t m, std::size_t n) : rows(m), cols(n), e(m * n, 0) {}

  Fe& at(std::size_t r, std::size_t c) { return e[r * cols + c]; }
  Fe at(std::size_t r, std::size_t c) const { return e[r * cols + c]; }

  bool operator==(const MatrixFp&) const = default;
};

MatrixFp mat_add(const MatrixFp& a, const MatrixFp& b, const FieldCtx& ctx);
MatrixFp mat_sub(const MatrixFp& a, const MatrixFp& b, const FieldCtx& ctx);

}  // namespace pvc
