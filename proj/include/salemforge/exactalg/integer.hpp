#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "salemforge/core/errors.hpp"

namespace salemforge {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
// Non-negative remainder for m > 0.
Int mod(const Int& a, const Int& m);
Int floor_div(const Int& a, const Int& b);
Int floor(const Rat& q);
Int ceil(const Rat& q);
Rat make_rat(const Int& num, const Int& den);

bool fits_int64(const Int& a);
std::int64_t to_int64(const Int& a);

std::string to_string(const Int& a);
std::string to_string(const Rat& a);

IntVector to_int_vector(const std::vector<long>& v);
RatVector to_rat(const IntVector& v);
// Common denominator of a rational vector.
Int common_denominator(const RatVector& v);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

// Prime factorization by trial division; input must be nonzero.
std::vector<std::pair<Int, unsigned>> factor_integer(Int n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);

}  // namespace salemforge
