#include "salemforge/exactalg/integer.hpp"

#include <climits>

namespace salemforge {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

bool fits_int64(const Int& a) {
  return mpz_sizeinbase(a.get_mpz_t(), 2) <= 62;
}

std::int64_t to_int64(const Int& a) {
  if (!fits_int64(a)) throw OverflowError("integer does not fit in 62 bits: " + a.get_str());
  return a.get_si();
}

std::string to_string(const Int& a) { return a.get_str(); }
std::string to_string(const Rat& a) { return a.get_str(); }

IntVector to_int_vector(const std::vector<long>& v) {
  IntVector out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

RatVector to_rat(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const Int& x : v) out.emplace_back(x);
  return out;
}

Int common_denominator(const RatVector& v) {
  Int d = 1;
  for (const Rat& x : v) d = lcm(d, x.get_den());
  return d;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
  return r;
}

std::vector<std::pair<Int, unsigned>> factor_integer(Int n) {
  if (n == 0) throw PreconditionError("cannot factor zero");
  if (n < 0) n = -n;
  std::vector<std::pair<Int, unsigned>> out;
  for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

int moebius(std::uint64_t n) {
  int s = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      s = -s;
    }
  }
  if (n > 1) s = -s;
  return s;
}

}  // namespace salemforge
