#pragma once

#include <span>
#include <string_view>

#include "pvc/matrix.hpp"

namespace pvc::kat {

// Known-answer vectors for the 3x3 block transform under the demo key
// matrices: twelve (i, j, S, C) tuples over the 8x10 plan satisfying
// C = S*V + Delta(i,j)*U mod 12347 with the shared vector below.
struct BlockVector {
  std::size_t i;
  std::size_t j;
  std::array<u64, 9> s;
  std::array<u64, 9> c;
};

inline constexpr u64 kDemoPrime = 12347;
inline constexpr std::array<u64, 3> kDemoGenerators{2, 5, 6};
inline constexpr u64 kDemoSecretA = 3;
inline constexpr u64 kDemoSecretB = 7;
inline constexpr std::array<u64, 3> kDemoShared{10509, 11849, 10836};
inline constexpr std::size_t kDemoRows = 8;
inline constexpr std::size_t kDemoCols = 10;
inline constexpr std::size_t kDemoStartRow = 2;
inline constexpr std::size_t kDemoStartCol = 3;
inline constexpr std::string_view kDemoMessage = "Peace at home, peace in the world.";

std::span<const BlockVector> demo_block_vectors();

}  // namespace pvc::kat
