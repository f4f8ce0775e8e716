#pragma once

#include "salemforge/exactalg/matrix.hpp"

namespace salemforge {

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature& a, const Signature& b) {
    return a.positive == b.positive && a.negative == b.negative && a.zero == b.zero;
  }
};

// Inertia of a symmetric matrix by rational congruence elimination.
Signature signature(const IntMatrix& gram);
Signature signature(const RatMatrix& gram);

}  // namespace salemforge
