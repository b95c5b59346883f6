#include "pvc/field.hpp"

#include <algorithm>
#include <numeric>

#include "pvc/errors.hpp"

namespace pvc {

Bytes i2osp(u64 x, std::size_t len) {
  if (len < 8 && (x >> (8 * len)) != 0)
    throw Error(Errc::overflow, "i2osp: value does not fit in " + std::to_string(len) + " octets");
  Bytes out(len, 0);
  for (std::size_t i = 0; i < len && i < 8; ++i)
    out[len - 1 - i] = static_cast<std::uint8_t>(x >> (8 * i));
  return out;
}

u64 os2ip(ByteView octets) {
  if (octets.size() > 8) throw Error(Errc::overflow, "os2ip: more than 8 octets");
  u64 x = 0;
  for (auto b : octets) x = (x << 8) | b;
  return x;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n, u64 a) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  u64 x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho; n must be odd composite, not a prime power of 2.
u64 brent_rho(u64 n, u64 c0) {
  if (n % 2 == 0) return 2;
  u64 c = c0;
  while (true) {
    u64 x = 2, y = 2, d = 1;
    u64 q = 1;
    int power = 1, lam = 0;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = (mulmod(y, y, n) + c) % n;
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      q = mulmod(q, diff, n);
      if (lam % 64 == 0 || power == lam) {
        d = std::gcd(q, n);
        if (d != 1) break;
      }
    }
    if (d == 1) d = std::gcd(q, n);
    if (d != 1 && d != n) return d;
    ++c;  // cycle degenerated, retry with a different constant
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = brent_rho(n, 1);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == sp) return true;
    if (n % sp == 0) return false;
  }
  // This base set is deterministic for all n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
    if (!miller_rabin(n, a)) return false;
  return true;
}

std::vector<u64> distinct_prime_factors(u64 n) {
  std::vector<u64> fac;
  for (u64 d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) {
      fac.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  for (u64 d = 7; d < 1000 && d * d <= n; d += 2) {
    if (n % d == 0) {
      fac.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    std::vector<u64> rest;
    factor_into(n, rest);
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    fac.insert(fac.end(), rest.begin(), rest.end());
  }
  std::sort(fac.begin(), fac.end());
  return fac;
}

FieldCtx::FieldCtx(u64 p) : p_(p) {
  if (p < 3 || p >= (1ull << 62))
    throw Error(Errc::config, "prime must satisfy 3 <= p < 2^62");
  if (!is_prime_u64(p)) throw Error(Errc::config, "p = " + std::to_string(p) + " is not prime");
  u64 top = p - 1;
  octet_len_ = 1;
  while (top >>= 8) ++octet_len_;
  factors_ = distinct_prime_factors(p - 1);
}

Fe FieldCtx::pow(Fe base, u64 exp) const { return powmod(base, exp, p_); }

Fe FieldCtx::inv(Fe a) const {
  if (a == 0) throw Error(Errc::zero_inverse, "inverse of 0 mod p");
  // Extended Euclid on (a, p); p prime so gcd is 1.
  std::int64_t t = 0, newt = 1;
  u64 r = p_, newr = a;
  while (newr != 0) {
    u64 q = r / newr;
    std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * newt;
    t = newt;
    newt = tmp_t;
    u64 tmp_r = r - q * newr;
    r = newr;
    newr = tmp_r;
  }
  return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(p_)) : static_cast<u64>(t);
}

bool FieldCtx::is_primitive_root(u64 g) const {
  if (g <= 1 || g >= p_) return false;
  for (u64 q : factors_)
    if (pow(g, (p_ - 1) / q) == 1) return false;
  return true;
}

Fe FieldCtx::reduce_bytes(ByteView octets) const {
  u64 acc = 0;
  for (auto b : octets) acc = (mulmod(acc, 256, p_) + b) % p_;
  return acc;
}

}  // namespace pvc
