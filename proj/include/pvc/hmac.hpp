#pragma once

#include <array>

#include "pvc/bytes.hpp"

namespace pvc {

using Digest = std::array<std::uint8_t, 32>;

Digest sha256(ByteView data);
Digest hmac_sha256(ByteView key, ByteView data);

// Constant-time comparison of equal-length byte strings.
bool ct_equal(ByteView a, ByteView b);

}  // namespace pvc
