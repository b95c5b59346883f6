#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace pvc {

// Byte source for secrets, salts and test trials. Implementations need not be
// cryptographically strong; SeededRandom exists for reproducible runs.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t next_u64() {
    std::uint8_t b[8];
    fill(b);
    std::uint64_t x = 0;
    for (auto v : b) x = (x << 8) | v;
    return x;
  }

  // Uniform in [lo, hi], unbiased via rejection. Requires lo <= hi.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return next_u64();
    std::uint64_t n = span + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return lo + x % n;
  }
};

class SystemRandom final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override {
    for (auto& b : out) b = static_cast<std::uint8_t>(dev_());
  }

 private:
  std::random_device dev_;
};

class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : eng_(seed) {}
  void fill(std::span<std::uint8_t> out) override {
    for (auto& b : out) b = static_cast<std::uint8_t>(eng_());
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace pvc
