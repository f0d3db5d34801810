#pragma once

// Integer helpers shared by the group and closed-form code. All arithmetic is
// on non-negative 64-bit values; products go through 128-bit intermediates.

#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "mgraph/error.hpp"

namespace mgraph {

using Int = std::int64_t;

inline Int mul_mod(Int a, Int b, Int n) {
  return static_cast<Int>((static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b)) %
                          static_cast<unsigned __int128>(n));
}

inline Int pow_mod(Int base, Int exp, Int n) {
  if (n == 1) return 0;
  Int result = 1;
  base %= n;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1;
  }
  return result;
}

/// Product with overflow check; throws resource-limit on overflow.
inline Int checked_mul(Int a, Int b) {
  Int out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::kResourceLimit, "integer overflow in product");
  }
  return out;
}

inline Int lcm(Int a, Int b) { return checked_mul(a / std::gcd(a, b), b); }

inline bool is_prime(Int n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (Int d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Prime factorization by trial division, primes ascending.
inline std::map<Int, int> factorize(Int n) {
  std::map<Int, int> out;
  for (Int p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

inline std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

/// Product of the distinct primes dividing n.
inline Int radical(Int n) {
  Int r = 1;
  for (const auto& [p, e] : factorize(n)) r *= p;
  return r;
}

/// Largest a >= 0 with p^a | n.
inline int p_adic_valuation(Int n, Int p) {
  if (!is_prime(p)) throw Error(ErrorKind::kInvalidArgument, "p_adic_valuation: " + std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "p_adic_valuation: n must be >= 1");
  int a = 0;
  while (n % p == 0) {
    n /= p;
    ++a;
  }
  return a;
}

/// True iff every prime factor of n divides m.
inline bool primes_divide(Int n, Int m) {
  for (const auto& [p, e] : factorize(n)) {
    if (m % p != 0) return false;
  }
  return true;
}

/// Sorted divisors of n.
inline std::vector<Int> divisors(Int n) {
  std::vector<Int> small, large;
  for (Int d = 1; d <= n / d; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Inverse of a modulo n, requires gcd(a, n) = 1. Returns 0 when n = 1.
inline Int mod_inverse(Int a, Int n) {
  if (n == 1) return 0;
  __int128 old_r = a % n, r = n, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw Error(ErrorKind::kInvalidArgument, "mod_inverse: not invertible");
  __int128 res = old_s % n;
  if (res < 0) res += n;
  return static_cast<Int>(res);
}

}  // namespace mgraph
