#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cayscheme {

// Exact scalars. All spectral logic runs on these; no floating point
// appears anywhere in a verification path.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline bool is_odd(const Int& z) { return mpz_odd_p(z.get_mpz_t()) != 0; }

inline Int abs_int(const Int& z) { return z < 0 ? Int(-z) : z; }

inline std::string to_string(const Int& z) { return z.get_str(); }

inline std::string to_string(const Rat& q) {
  if (is_integer(q)) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Exact quotient; asserts divisibility.
Int divexact(const Int& a, const Int& b);

Int gcd_int(const Int& a, const Int& b);
Int lcm_int(const Int& a, const Int& b);

}  // namespace cayscheme
