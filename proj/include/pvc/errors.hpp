#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvc {

enum class Errc {
  config,            // bad parameters (prime, shape, ranges)
  zero_inverse,      // inverse of 0 requested
  overflow,          // integer does not fit the requested octet length
  singular_matrix,
  degenerate_key,    // shared vector has a zero component
  invalid_peer_public,
  signature_invalid,
  mac_invalid,
  message_too_long,
  bad_length,
  out_of_bounds,
  overlap_mismatch,  // inconsistent values at an overlapping cell
  parse,             // malformed serialized input
  insufficient_bits, // statistical test needs a longer stream
  io,
};

// Single exception type; tests discriminate on code(), humans read what().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Error(Errc code, const std::string& msg, std::size_t a, std::size_t b = 0)
      : std::runtime_error(msg), code_(code), a_(a), b_(b) {}

  Errc code() const { return code_; }
  // Error-specific positions: byte offset for parse errors,
  // 1-based (row, col) for overlap mismatches.
  std::size_t pos_a() const { return a_; }
  std::size_t pos_b() const { return b_; }

 private:
  Errc code_;
  std::size_t a_ = 0;
  std::size_t b_ = 0;
};

}  // namespace pvc
