#pragma once

// Closed-form predictions for connected m-graphs: connectivity, vertex
// degrees and the degree census, distance to the identity, and the diameter
// classification for cyclic and non-cyclic groups. Every diameter carries
// the case of the classification that produced it.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "mgraph/error.hpp"
#include "mgraph/group.hpp"
#include "mgraph/number_theory.hpp"

namespace mgraph {

enum class DiameterCase {
  kK11,            // n = k = 2
  kStar,           // k = n > 2, K_{1,n-1}
  kPow2,           // k = 2 != n, n = 2^w
  kKPowW,          // k > 2, n = k^w
  kEven2W,         // n even, 2k^(w-1) != 0
  kOdd2W,          // n odd
  k2WMinus1,       // n even, 2k^(w-1) = 0, k != 2
  kCdimQ1,         // n = k^i
  kCdimQ2,         // n = 2k^i
  kCdimQGt2,       // n = qk^i, 2 < q < k
  kProductCase1,   // w_{i-1} = w_i or inner diameter = 2w_i
  kProductCase2,   // w_{i-1} = w_i - 1, inner diameter != 2w_i
  kProductCase3,   // w_{i-1} <= w_i - 2
};

inline const char* to_string(DiameterCase c) {
  switch (c) {
    case DiameterCase::kK11: return "K11";
    case DiameterCase::kStar: return "STAR";
    case DiameterCase::kPow2: return "POW2";
    case DiameterCase::kKPowW: return "K_POW_W";
    case DiameterCase::kEven2W: return "C3_EVEN_2W";
    case DiameterCase::kOdd2W: return "C3_ODD_2W";
    case DiameterCase::k2WMinus1: return "C3_2W_MINUS_1";
    case DiameterCase::kCdimQ1: return "CDIM_Q1";
    case DiameterCase::kCdimQ2: return "CDIM_Q2";
    case DiameterCase::kCdimQGt2: return "CDIM_QGT2";
    case DiameterCase::kProductCase1: return "NCDIM_CASE1";
    case DiameterCase::kProductCase2: return "NCDIM_CASE2";
    case DiameterCase::kProductCase3: return "NCDIM_CASE3";
  }
  return "?";
}

/// Parameters that justify a diameter case. Cyclic cases fill k, w and, for
/// the q*k^i form, q and i; product cases fill the per-factor lists and the
/// prediction for the largest factor.
struct DiameterWitness {
  Int k = 0;
  Int w = 0;
  Int q = 0;
  Int i = 0;
  std::vector<Int> d;
  std::vector<Int> w_list;
  Int inner_value = 0;
  std::string inner_case;
};

struct DiameterPrediction {
  Int value = 0;
  DiameterCase case_label = DiameterCase::kK11;
  DiameterWitness witnesses;
};

/// Degree census of a connected m-graph. When the identity has degree 1 it is
/// counted in count_deg_1 and identity_merged is set.
struct DegreeCensus {
  Int count_deg_1 = 0;
  Int count_deg_high = 0;
  Int high_degree_value = 0;
  Int identity_degree = 0;
  bool identity_merged = false;

  std::map<Int, Int> to_map() const {
    std::map<Int, Int> out;
    if (count_deg_1 > 0) out[1] += count_deg_1;
    if (count_deg_high > 0) out[high_degree_value] += count_deg_high;
    if (!identity_merged) out[identity_degree] += 1;
    return out;
  }
};

inline Int reduced_multiplier(Int order, Int m) { return std::gcd(m, order); }

/// Connected iff every prime factor of the group order divides gcd(m, order).
inline bool predict_connected(const GroupSpec& spec, Int m) {
  if (m <= 1) throw Error(ErrorKind::kInvalidArgument, "multiplier m must be > 1");
  return primes_divide(spec.order(), reduced_multiplier(spec.order(), m));
}

namespace detail {

inline void require_connected(const GroupSpec& spec, Int m, const char* what) {
  if (!predict_connected(spec, m)) {
    throw Error(ErrorKind::kOutOfDomain,
                std::string(what) + ": " + std::to_string(m) + "-G(" + spec.to_string() + ") is disconnected");
  }
}

inline std::vector<Int> factor_gcds(const GroupSpec& spec, Int m) {
  std::vector<Int> d;
  for (Int mj : spec.moduli()) d.push_back(std::gcd(m, mj));
  return d;
}

}  // namespace detail

/// Degree of a in the connected m-graph. With d_j = gcd(m, m_j) (d_1 = k for a
/// cyclic group): identity has prod d_j - 1; a vertex with some d_j not
/// dividing a_j is a leaf; every other vertex has prod d_j + 1.
inline Int predict_degree(const GroupSpec& spec, Int m, const GroupElement& a) {
  detail::require_connected(spec, m, "predict_degree");
  if (!(a.spec() == spec)) throw Error(ErrorKind::kInvalidArgument, "element belongs to a different group");
  const auto d = detail::factor_gcds(spec, m);
  Int prod = 1;
  for (Int dj : d) prod = checked_mul(prod, dj);
  if (a.is_identity()) return prod - 1;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (a.residue(j) % d[j] != 0) return 1;
  }
  return prod + 1;
}

/// With m_j = q_j d_j: prod q_j - 1 vertices of degree prod d_j + 1, the
/// identity of degree prod d_j - 1, and n - prod q_j leaves.
inline DegreeCensus predict_degree_census(const GroupSpec& spec, Int m) {
  detail::require_connected(spec, m, "predict_degree_census");
  const auto d = detail::factor_gcds(spec, m);
  Int prod_d = 1, prod_q = 1;
  for (std::size_t j = 0; j < d.size(); ++j) {
    prod_d = checked_mul(prod_d, d[j]);
    prod_q = checked_mul(prod_q, spec.modulus(j) / d[j]);
  }
  DegreeCensus c;
  c.identity_degree = prod_d - 1;
  c.high_degree_value = prod_d + 1;
  c.count_deg_high = prod_q - 1;
  c.count_deg_1 = spec.order() - prod_q;
  if (c.identity_degree == 1) {
    c.identity_merged = true;
    c.count_deg_1 += 1;
  }
  return c;
}

/// Least w >= 1 with n | k^w: max over p | n of ceil(v_p(n) / v_p(k)).
inline Int least_power_w(Int n, Int k) {
  if (n < 2 || k < 1) throw Error(ErrorKind::kInvalidArgument, "least_power_w: need n >= 2, k >= 1");
  Int w = 1;
  for (const auto& [p, a] : factorize(n)) {
    int b = 0;
    for (Int t = k; t % p == 0; t /= p) ++b;
    if (b == 0) {
      throw Error(ErrorKind::kOutOfDomain, "least_power_w: prime " + std::to_string(p) + " of " + std::to_string(n) +
                                               " does not divide " + std::to_string(k));
    }
    w = std::max<Int>(w, (a + b - 1) / b);
  }
  return w;
}

inline Int least_power_w(const GroupSpec& spec, Int k) { return least_power_w(spec.order(), k); }

/// d(a, 0) in the connected m-graph of Z_n: least r >= 1 with n | a*k^r.
inline Int predict_distance_to_zero(Int n, Int k, Int a) {
  if (a == 0) throw Error(ErrorKind::kInvalidArgument, "predict_distance_to_zero: a must be nonzero");
  if (a < 0 || a >= n) throw Error(ErrorKind::kInvalidArgument, "predict_distance_to_zero: a out of range");
  if (!primes_divide(n, std::gcd(k, n))) throw Error(ErrorKind::kOutOfDomain, "predict_distance_to_zero: disconnected");
  Int r = 1;
  for (const auto& [p, e] : factorize(n)) {
    int va = 0;
    for (Int t = a; t % p == 0; t /= p) ++va;
    int vk = 0;
    for (Int t = k; t % p == 0; t /= p) ++vk;
    const Int need = std::max<Int>(0, e - va);
    r = std::max<Int>(r, (need + vk - 1) / vk);
  }
  return r;
}

/// Diameter of the connected m-graph of Z_n by the total classification:
/// stars for k = n, 2(w-1) for k = 2, else 2w or 2w - 1 by the parity of n
/// and whether 2k^(w-1) vanishes.
inline DiameterPrediction predict_diameter_cyclic(Int n, Int m) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "predict_diameter_cyclic: n must be >= 2");
  const GroupSpec spec = GroupSpec::cyclic(n);
  detail::require_connected(spec, m, "predict_diameter_cyclic");
  const Int k = reduced_multiplier(n, m);
  DiameterPrediction out;
  out.witnesses.k = k;
  if (k == n) {
    out.witnesses.w = 1;
    out.value = n == 2 ? 1 : 2;
    out.case_label = n == 2 ? DiameterCase::kK11 : DiameterCase::kStar;
    return out;
  }
  const Int w = least_power_w(n, k);
  out.witnesses.w = w;
  if (k == 2) {
    out.value = 2 * (w - 1);
    out.case_label = DiameterCase::kPow2;
    return out;
  }
  const bool odd = n % 2 == 1;
  const bool twice_vanishes = mul_mod(2, pow_mod(k, w - 1, n), n) == 0;
  if (odd || !twice_vanishes) {
    out.value = 2 * w;
    Int power = 1;
    for (Int t = 0; t < w; ++t) power = checked_mul(power, k);
    if (power == n) {
      out.case_label = DiameterCase::kKPowW;
    } else {
      out.case_label = odd ? DiameterCase::kOdd2W : DiameterCase::kEven2W;
    }
    return out;
  }
  out.value = 2 * w - 1;
  out.case_label = DiameterCase::k2WMinus1;
  return out;
}

/// Diameter of k-G(Z_n) when n = q*k^i with i the greatest exponent such
/// that k^i | n and 1 <= q < k. Throws hypothesis-not-met otherwise.
inline DiameterPrediction predict_diameter_cyclic_qk(Int n, Int k) {
  if (n <= 2) throw Error(ErrorKind::kHypothesisNotMet, "q*k^i form needs n > 2");
  if (k < 2 || n % k != 0) throw Error(ErrorKind::kInvalidArgument, "q*k^i form needs k >= 2 dividing n");
  if (!primes_divide(n, k)) throw Error(ErrorKind::kOutOfDomain, "q*k^i form: disconnected");
  Int i = 0, q = n;
  while (q % k == 0) {
    q /= k;
    ++i;
  }
  if (q >= k) {
    throw Error(ErrorKind::kHypothesisNotMet, std::to_string(n) + " = " + std::to_string(q) + "*" + std::to_string(k) +
                                                  "^" + std::to_string(i) + " with q >= k");
  }
  DiameterPrediction out;
  out.witnesses.k = k;
  out.witnesses.q = q;
  out.witnesses.i = i;
  out.witnesses.w = q == 1 ? i : i + 1;
  if (q == 1) {
    out.value = k > 2 ? 2 * i : 2 * (i - 1);
    out.case_label = DiameterCase::kCdimQ1;
  } else if (q == 2) {
    out.value = 2 * i + 1;
    out.case_label = DiameterCase::kCdimQ2;
  } else {
    out.value = 2 * (i + 1);
    out.case_label = DiameterCase::kCdimQGt2;
  }
  return out;
}

/// Diameter of the connected m-graph of Z_{m_1} x ... x Z_{m_i} in chain form
/// (i >= 2), from d_j = gcd(m, m_j), w_j and the last factor's diameter.
inline DiameterPrediction predict_diameter_product(const GroupSpec& spec, Int m) {
  if (spec.factor_count() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "predict_diameter_product: needs at least 2 factors; use the cyclic predictor");
  }
  if (!spec.is_invariant_factor_form()) {
    throw Error(ErrorKind::kInvalidArgument, "predict_diameter_product: " + spec.to_string() + " is not in chain form");
  }
  detail::require_connected(spec, m, "predict_diameter_product");
  const auto d = detail::factor_gcds(spec, m);
  std::vector<Int> w;
  for (std::size_t j = 0; j < d.size(); ++j) w.push_back(least_power_w(spec.modulus(j), d[j]));

  const std::size_t last = d.size() - 1;
  const Int w_last = w[last];
  const Int w_prev = w[last - 1];
  const auto inner = predict_diameter_cyclic(spec.modulus(last), d[last]);

  DiameterPrediction out;
  out.witnesses.k = reduced_multiplier(spec.order(), m);
  out.witnesses.w = w_last;
  out.witnesses.d = d;
  out.witnesses.w_list = w;
  out.witnesses.inner_value = inner.value;
  out.witnesses.inner_case = to_string(inner.case_label);
  if (w_prev == w_last || inner.value == 2 * w_last) {
    out.value = 2 * w_last;
    out.case_label = DiameterCase::kProductCase1;
  } else if (w_prev == w_last - 1) {
    out.value = 2 * w_last - 1;
    out.case_label = DiameterCase::kProductCase2;
  } else {
    out.value = inner.value;
    out.case_label = DiameterCase::kProductCase3;
  }
  return out;
}

/// Canonicalizes to invariant factors, then dispatches to the cyclic or
/// product predictor.
inline DiameterPrediction predict_diameter(const GroupSpec& spec, Int m) {
  const GroupSpec canonical = invariant_factors(spec);
  if (canonical.is_single_factor()) return predict_diameter_cyclic(canonical.order(), m);
  return predict_diameter_product(canonical, m);
}

/// Number of divisors k of n divisible by every prime of n, i.e. the number of
/// distinct connected k-G(Z_n): the product of the prime exponents of n.
inline Int count_connected_variants(Int n) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "count_connected_variants: n must be >= 2");
  Int count = 1;
  for (const auto& [p, e] : factorize(n)) count *= e;
  return count;
}

/// The divisors counted by count_connected_variants, ascending.
inline std::vector<Int> connected_multipliers(Int n) {
  std::vector<Int> out;
  const Int rad = radical(n);
  for (Int k : divisors(n)) {
    if (k % rad == 0) out.push_back(k);
  }
  return out;
}

}  // namespace mgraph
