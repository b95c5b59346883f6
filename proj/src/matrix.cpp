#include "pvc/matrix.hpp"

#include "pvc/errors.hpp"

namespace pvc {

Block mat_add(const Block& a, const Block& b, const FieldCtx& ctx) {
  Block r;
  for (std::size_t i = 0; i < 9; ++i) r.e[i] = ctx.add(a.e[i], b.e[i]);
  return r;
}

Block mat_sub(const Block& a, const Block& b, const FieldCtx& ctx) {
  Block r;
  for (std::size_t i = 0; i < 9; ++i) r.e[i] = ctx.sub(a.e[i], b.e[i]);
  return r;
}

Block mat_mul(const Block& a, const Block& b, const FieldCtx& ctx) {
  Block r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Fe acc = 0;
      for (std::size_t k = 0; k < 3; ++k) acc = ctx.add(acc, ctx.mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = acc;
    }
  return r;
}

Fe det(const Block& a, const FieldCtx& ctx) {
  auto m2 = [&](Fe w, Fe x, Fe y, Fe z) { return ctx.sub(ctx.mul(w, z), ctx.mul(x, y)); };
  Fe d = ctx.mul(a.at(0, 0), m2(a.at(1, 1), a.at(1, 2), a.at(2, 1), a.at(2, 2)));
  d = ctx.sub(d, ctx.mul(a.at(0, 1), m2(a.at(1, 0), a.at(1, 2), a.at(2, 0), a.at(2, 2))));
  d = ctx.add(d, ctx.mul(a.at(0, 2), m2(a.at(1, 0), a.at(1, 1), a.at(2, 0), a.at(2, 1))));
  return d;
}

Block mat_inv(const Block& a, const FieldCtx& ctx) {
  Fe d = det(a, ctx);
  if (d == 0) throw Error(Errc::singular_matrix, "3x3 matrix is singular mod p");
  Fe dinv = ctx.inv(d);
  auto cof = [&](std::size_t r, std::size_t c) {
    std::size_t r0 = (r + 1) % 3, r1 = (r + 2) % 3;
    std::size_t c0 = (c + 1) % 3, c1 = (c + 2) % 3;
    // Cyclic index choice absorbs the cofactor sign.
    return ctx.sub(ctx.mul(a.at(r0, c0), a.at(r1, c1)), ctx.mul(a.at(r0, c1), a.at(r1, c0)));
  };
  Block r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r.at(i, j) = ctx.mul(dinv, cof(j, i));  // adjugate = transposed cofactors
  return r;
}

KeyMatrices build_key_matrices(const SharedVector& g_shared, const FieldCtx& ctx) {
  const auto& k = g_shared.k;
  for (auto v : k)
    if (ctx.reduce(v) == 0)
      throw Error(Errc::degenerate_key, "shared vector has a zero component mod p");
  Fe k1 = ctx.reduce(k[0]), k2 = ctx.reduce(k[1]), k3 = ctx.reduce(k[2]);
  KeyMatrices m;
  m.v.e = {0, k1, k1, k2, 0, k2, k3, k3, 0};
  m.u.e = {k1, 0, 0, 0, k2, 0, 0, 0, k3};
  m.v_inv = mat_inv(m.v, ctx);
  return m;
}

MatrixFp mat_add(const MatrixFp& a, const MatrixFp& b, const FieldCtx& ctx) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error(Errc::config, "matrix shape mismatch in add");
  MatrixFp r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = ctx.add(a.e[i], b.e[i]);
  return r;
}

MatrixFp mat_sub(const MatrixFp& a, const MatrixFp& b, const FieldCtx& ctx) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw Error(Errc::config, "matrix shape mismatch in sub");
  MatrixFp r(a.rows, a.cols);
  for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = ctx.sub(a.e[i], b.e[i]);
  return r;
}

}  // namespace pvc
