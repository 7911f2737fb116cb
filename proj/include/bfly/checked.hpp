#pragma once

#include <cstdint>

#include "bfly/errors.hpp"

namespace bfly {

inline uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("64-bit counter overflow in addition");
  return r;
}

inline uint64_t checked_mul(uint64_t a, uint64_t b) {
  uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw OverflowError("64-bit counter overflow in multiplication");
  return r;
}

// C(c, 2) in 64 bits; c can be any degree- or multiplicity-sized value.
inline uint64_t choose2(uint64_t c) {
  if (c < 2) return 0;
  return (c % 2 == 0) ? checked_mul(c / 2, c - 1) : checked_mul(c, (c - 1) / 2);
}

}  // namespace bfly
