#include "pvc/codec.hpp"

#include <algorithm>

#include "pvc/errors.hpp"

namespace pvc {

namespace {

std::vector<std::size_t> stride_tops(std::size_t dim) {
  std::vector<std::size_t> tops;
  for (std::size_t t = 1; t <= dim - 2; t += 3) tops.push_back(t);
  if (tops.back() != dim - 2) tops.push_back(dim - 2);
  return tops;
}

void check_shape(std::size_t m, std::size_t n) {
  if (m < 3 || n < 3) throw Error(Errc::config, "shape must be at least 3x3");
  if (m > 0xffff || n > 0xffff) throw Error(Errc::config, "shape exceeds 16-bit bounds");
}

void check_coverage(const std::vector<std::size_t>& tops, std::size_t dim, const char* what) {
  if (tops.empty()) throw Error(Errc::config, std::string(what) + ": empty top list");
  std::vector<bool> hit(dim + 1, false);
  for (std::size_t t : tops) {
    if (t < 1 || t > dim - 2)
      throw Error(Errc::config, std::string(what) + ": top index out of range");
    for (std::size_t d = 0; d < 3; ++d) hit[t + d] = true;
  }
  for (std::size_t x = 1; x <= dim; ++x)
    if (!hit[x]) throw Error(Errc::config, std::string(what) + ": plan leaves uncovered lines");
}

}  // namespace

SsmIndexPlan plan_indices(std::size_t m, std::size_t n) {
  check_shape(m, n);
  return SsmIndexPlan{stride_tops(m), stride_tops(n)};
}

SsmIndexPlan explicit_plan(std::vector<std::size_t> row_tops, std::vector<std::size_t> col_tops,
                           std::size_t m, std::size_t n) {
  check_shape(m, n);
  if (!std::is_sorted(row_tops.begin(), row_tops.end()) ||
      !std::is_sorted(col_tops.begin(), col_tops.end()))
    throw Error(Errc::config, "plan tops must be ascending");
  check_coverage(row_tops, m, "row plan");
  check_coverage(col_tops, n, "col plan");
  return SsmIndexPlan{std::move(row_tops), std::move(col_tops)};
}

MatrixFp embed_message(ByteView msg, std::size_t m, std::size_t n, std::size_t start_row,
                       std::size_t start_col, const DerivedKeys& keys) {
  check_shape(m, n);
  if (start_row < 1 || start_row > m || start_col < 1 || start_col > n)
    throw Error(Errc::out_of_bounds, "start position outside matrix");
  std::size_t s0 = (start_row - 1) * n + (start_col - 1);
  std::size_t capacity = m * n - s0;
  if (msg.size() > capacity)
    throw Error(Errc::message_too_long, "message needs " + std::to_string(msg.size()) +
                                            " cells, only " + std::to_string(capacity) +
                                            " available from start position");
  MatrixFp mat(m, n);
  Bytes pad = padding_bytes(keys, m * n - msg.size());
  std::size_t pad_at = 0;
  for (std::size_t t = 0; t < m * n; ++t) {
    if (t >= s0 && t < s0 + msg.size())
      mat.e[t] = msg[t - s0];
    else
      mat.e[t] = pad[pad_at++];
  }
  return mat;
}

Bytes extract_message(const MatrixFp& mat, std::uint32_t msg_len, std::size_t start_row,
                      std::size_t start_col) {
  if (start_row < 1 || start_row > mat.rows || start_col < 1 || start_col > mat.cols)
    throw Error(Errc::out_of_bounds, "start position outside matrix");
  std::size_t s0 = (start_row - 1) * mat.cols + (start_col - 1);
  if (msg_len > mat.rows * mat.cols - s0)
    throw Error(Errc::bad_length, "declared message length exceeds matrix capacity");
  Bytes out(msg_len);
  for (std::size_t t = 0; t < msg_len; ++t) {
    Fe v = mat.e[s0 + t];
    if (v > 0xff) throw Error(Errc::bad_length, "matrix cell is not an octet");
    out[t] = static_cast<std::uint8_t>(v);
  }
  return out;
}

Block extract_block(const MatrixFp& mat, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i + 2 > mat.rows || j + 2 > mat.cols)
    throw Error(Errc::out_of_bounds, "3x3 window does not fit at given tops");
  Block b;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) b.at(r, c) = mat.at(i - 1 + r, j - 1 + c);
  return b;
}

MatrixFp reassemble(std::span<const PlacedBlock> blocks, std::size_t m, std::size_t n) {
  check_shape(m, n);
  constexpr Fe kUnset = ~0ull;
  MatrixFp mat(m, n);
  std::fill(mat.e.begin(), mat.e.end(), kUnset);
  for (const auto& pb : blocks) {
    if (pb.i < 1 || pb.j < 1 || pb.i + 2 > m || pb.j + 2 > n)
      throw Error(Errc::out_of_bounds, "block tops outside matrix");
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        Fe& cell = mat.at(pb.i - 1 + r, pb.j - 1 + c);
        Fe v = pb.block.at(r, c);
        if (cell == kUnset) {
          cell = v;
        } else if (cell != v) {
          throw Error(Errc::overlap_mismatch, "overlapping blocks disagree at cell (" +
                                                  std::to_string(pb.i + r) + "," +
                                                  std::to_string(pb.j + c) + ")",
                      pb.i + r, pb.j + c);
        }
      }
  }
  for (std::size_t t = 0; t < m * n; ++t)
    if (mat.e[t] == kUnset) throw Error(Errc::config, "blocks do not cover the matrix");
  return mat;
}

}  // namespace pvc
