#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pvc/bytes.hpp"

namespace pvc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Field elements are u64 values kept in canonical form [0, p).
using Fe = u64;

// I2OSP/OS2IP per RFC 8017: big-endian, fixed length.
Bytes i2osp(u64 x, std::size_t len);  // throws Error(overflow) if x >= 256^len
u64 os2ip(ByteView octets);           // requires octets.size() <= 8

// Primality for any u64 (deterministic Miller-Rabin).
bool is_prime_u64(u64 n);

// Distinct prime factors, ascending (trial division + Brent's rho).
std::vector<u64> distinct_prime_factors(u64 n);

// Arithmetic context for F_p. Construction validates p and factors p-1 once.
class FieldCtx {
 public:
  // Requires: p prime, 3 <= p < 2^62. Throws Error(config) otherwise.
  explicit FieldCtx(u64 p);

  u64 p() const { return p_; }
  // Smallest byte length with 256^len > p-1, i.e. len = ceil(bits(p-1)/8).
  std::size_t octet_len() const { return octet_len_; }
  const std::vector<u64>& p_minus_1_factors() const { return factors_; }

  Fe reduce(u64 x) const { return x % p_; }
  Fe add(Fe a, Fe b) const {
    u64 s = a + b;  // p < 2^62, no wrap
    return s >= p_ ? s - p_ : s;
  }
  Fe sub(Fe a, Fe b) const { return a >= b ? a - b : a + p_ - b; }
  Fe mul(Fe a, Fe b) const { return static_cast<u64>((static_cast<u128>(a) * b) % p_); }
  Fe neg(Fe a) const { return a == 0 ? 0 : p_ - a; }
  Fe pow(Fe base, u64 exp) const;
  Fe inv(Fe a) const;  // throws Error(zero_inverse) if a == 0

  // Primitive root test: g generates the full multiplicative group.
  // Returns false for g outside (1, p).
  bool is_primitive_root(u64 g) const;

  // Fixed-width big-endian encoding of a field element.
  Bytes encode_element(Fe x) const { return i2osp(x, octet_len_); }

  // Big-endian bytes of any length reduced into the field.
  Fe reduce_bytes(ByteView octets) const;

 private:
  u64 p_;
  std::size_t octet_len_;
  std::vector<u64> factors_;
};

// Shared secret vector G = (k1, k2, k3), components in [1, p-1].
struct SharedVector {
  std::array<Fe, 3> k;
  bool operator==(const SharedVector&) const = default;
};

}  // namespace pvc
