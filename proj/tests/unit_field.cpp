#include "pvc/field.hpp"

#include "doctest.h"
#include "pvc/errors.hpp"
#include "pvc/rng.hpp"

using namespace pvc;

TEST_CASE("i2osp/os2ip round trip and bounds") {
  CHECK(to_hex(i2osp(12347, 2)) == "303b");
  CHECK(to_hex(i2osp(0, 2)) == "0000");
  CHECK(to_hex(i2osp(1, 3)) == "000001");
  CHECK(os2ip(i2osp(0x0123456789abcdefull, 8)) == 0x0123456789abcdefull);
  CHECK_THROWS_AS(i2osp(256, 1), Error);
  CHECK_THROWS_AS(i2osp(1, 0), Error);
  CHECK(i2osp(0, 0).empty());

  SeededRandom rng(7);
  for (int t = 0; t < 200; ++t) {
    u64 x = rng.next_u64();
    CHECK(os2ip(i2osp(x, 8)) == x);
    u64 small = x & 0xffff;
    CHECK(os2ip(i2osp(small, 2)) == small);
  }
  Bytes nine(9, 1);
  CHECK_THROWS_AS(os2ip(nine), Error);
}

TEST_CASE("primality") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(12347));
  CHECK(is_prime_u64(1000000007ull));
  CHECK(is_prime_u64(2305843009213693951ull));  // 2^61 - 1
  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(561));  // Carmichael
  CHECK_FALSE(is_prime_u64(12348));
  CHECK_FALSE(is_prime_u64(1000036000099ull));  // 1000003 * 1000033
}

TEST_CASE("distinct prime factors") {
  CHECK(distinct_prime_factors(12346) == std::vector<u64>{2, 6173});
  CHECK(distinct_prime_factors(720) == std::vector<u64>{2, 3, 5});
  CHECK(distinct_prime_factors(1000036000099ull) == std::vector<u64>{1000003, 1000033});
  CHECK(distinct_prime_factors(1) == std::vector<u64>{});
  CHECK(distinct_prime_factors(2305843009213693950ull) ==
        std::vector<u64>{2, 3, 5, 7, 11, 13, 31, 41, 61, 151, 331, 1321});
}

TEST_CASE("field context construction") {
  FieldCtx ctx(12347);
  CHECK(ctx.p() == 12347);
  CHECK(ctx.octet_len() == 2);
  CHECK(ctx.p_minus_1_factors() == std::vector<u64>{2, 6173});

  FieldCtx m61(2305843009213693951ull);
  CHECK(m61.octet_len() == 8);

  CHECK(FieldCtx(257).octet_len() == 2);  // p-1 = 256 needs two octets

  CHECK_THROWS_AS(FieldCtx(12348), Error);
  CHECK_THROWS_AS(FieldCtx(1), Error);
  CHECK_THROWS_AS(FieldCtx(1ull << 62), Error);
  try {
    FieldCtx bad(12348);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::config);
  }
}

TEST_CASE("modular arithmetic anchors") {
  FieldCtx ctx(12347);
  CHECK(ctx.mul(6104, 11849) == 9917);
  CHECK(ctx.inv(2) == 6174);
  CHECK(ctx.mul(ctx.p() - 1, ctx.p() - 1) == 1);
  CHECK(ctx.pow(2, 3) == 8);
  CHECK(ctx.pow(5, 3) == 125);
  CHECK(ctx.pow(6, 3) == 216);
  CHECK(ctx.add(12346, 1) == 0);
  CHECK(ctx.sub(0, 1) == 12346);
  CHECK(ctx.neg(0) == 0);
  CHECK(ctx.neg(5) == 12342);
  CHECK_THROWS_AS(ctx.inv(0), Error);
}

TEST_CASE("inverse property at small and large p") {
  SeededRandom rng(11);
  for (u64 p : {12347ull, 2305843009213693951ull}) {
    FieldCtx ctx(p);
    for (int t = 0; t < 500; ++t) {
      Fe a = rng.uniform(1, p - 1);
      CHECK(ctx.mul(a, ctx.inv(a)) == 1);
      CHECK(ctx.pow(a, p - 1) == 1);  // Fermat
    }
  }
}

TEST_CASE("primitive root detection") {
  FieldCtx ctx(12347);
  CHECK(ctx.is_primitive_root(2));
  CHECK(ctx.is_primitive_root(5));
  CHECK(ctx.is_primitive_root(6));
  CHECK_FALSE(ctx.is_primitive_root(1));
  CHECK_FALSE(ctx.is_primitive_root(0));
  CHECK_FALSE(ctx.is_primitive_root(4));       // square, even index
  CHECK_FALSE(ctx.is_primitive_root(12346));   // order 2
  CHECK_FALSE(ctx.is_primitive_root(12347));
  CHECK_FALSE(ctx.is_primitive_root(99999));
}

TEST_CASE("primitive roots match brute force at p=211") {
  FieldCtx ctx(211);
  std::size_t count = 0;
  for (u64 g = 1; g < 211; ++g) {
    u64 x = 1;
    std::size_t order = 0;
    do {
      x = ctx.mul(x, g);
      ++order;
    } while (x != 1);
    bool brute = order == 210;
    CHECK(ctx.is_primitive_root(g) == brute);
    if (brute) ++count;
  }
  CHECK(count == 48);  // phi(phi(211))
}

TEST_CASE("reduce_bytes folds big-endian strings mod p") {
  FieldCtx ctx(12347);
  Bytes ff(32, 0xff);
  CHECK(ctx.reduce_bytes(ff) == 180);
  SeededRandom rng(13);
  for (int t = 0; t < 100; ++t) {
    u64 x = rng.next_u64();
    CHECK(ctx.reduce_bytes(i2osp(x, 8)) == x % ctx.p());
  }
  CHECK(ctx.reduce_bytes(ByteView{}) == 0);
}

TEST_CASE("element encoding width") {
  FieldCtx ctx(12347);
  CHECK(to_hex(ctx.encode_element(10509)) == "290d");
  CHECK(to_hex(ctx.encode_element(11849)) == "2e49");
  CHECK(to_hex(ctx.encode_element(10836)) == "2a54");
}
