#pragma once

// Finite abelian groups written additively as Z_{m_1} x ... x Z_{m_i}.
// The power a^m is realized here as the scalar multiple m*a.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mgraph/error.hpp"
#include "mgraph/number_theory.hpp"

namespace mgraph {

class GroupSpec {
 public:
  explicit GroupSpec(std::vector<Int> moduli) {
    if (moduli.empty()) throw Error(ErrorKind::kInvalidSpec, "group needs at least one cyclic factor");
    Int order = 1;
    for (Int m : moduli) {
      if (m < 2) throw Error(ErrorKind::kInvalidSpec, "modulus " + std::to_string(m) + " < 2");
      order = checked_mul(order, m);
    }
    auto data = std::make_shared<Data>();
    data->moduli = std::move(moduli);
    data->order = order;
    data->factorization = factorize(order);
    Int exponent = 1;
    for (Int m : data->moduli) exponent = lcm(exponent, m);
    data->exponent = exponent;
    data_ = std::move(data);
  }

  static GroupSpec cyclic(Int n) { return GroupSpec({n}); }

  const std::vector<Int>& moduli() const { return data_->moduli; }
  Int modulus(std::size_t j) const { return data_->moduli[j]; }
  std::size_t factor_count() const { return data_->moduli.size(); }
  bool is_single_factor() const { return factor_count() == 1; }
  Int order() const { return data_->order; }
  /// lcm of the moduli; m*a depends on m only modulo this value.
  Int exponent() const { return data_->exponent; }
  const std::map<Int, int>& prime_factorization() const { return data_->factorization; }

  /// True iff the moduli already form a divisibility chain c_1 | c_2 | ... | c_t.
  bool is_invariant_factor_form() const {
    const auto& m = data_->moduli;
    for (std::size_t j = 1; j < m.size(); ++j) {
      if (m[j] % m[j - 1] != 0) return false;
    }
    return true;
  }

  /// "Z4 x Z8 x Z72"
  std::string to_string() const {
    std::string out;
    for (std::size_t j = 0; j < factor_count(); ++j) {
      if (j) out += " x ";
      out += "Z" + std::to_string(data_->moduli[j]);
    }
    return out;
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.moduli() == b.moduli(); }

 private:
  struct Data {
    std::vector<Int> moduli;
    Int order = 0;
    Int exponent = 0;
    std::map<Int, int> factorization;
  };
  std::shared_ptr<const Data> data_;
};

class GroupElement {
 public:
  GroupElement(GroupSpec spec, std::vector<Int> residues) : spec_(std::move(spec)), residues_(std::move(residues)) {
    if (residues_.size() != spec_.factor_count()) {
      throw Error(ErrorKind::kInvalidArgument, "residue count does not match modulus count");
    }
    for (std::size_t j = 0; j < residues_.size(); ++j) {
      if (residues_[j] < 0 || residues_[j] >= spec_.modulus(j)) {
        throw Error(ErrorKind::kInvalidArgument, "residue out of range for Z" + std::to_string(spec_.modulus(j)));
      }
    }
  }

  static GroupElement identity(const GroupSpec& spec) {
    return GroupElement(spec, std::vector<Int>(spec.factor_count(), 0));
  }

  const GroupSpec& spec() const { return spec_; }
  const std::vector<Int>& residues() const { return residues_; }
  Int residue(std::size_t j) const { return residues_[j]; }
  bool is_identity() const {
    return std::all_of(residues_.begin(), residues_.end(), [](Int r) { return r == 0; });
  }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.spec_ == b.spec_ && a.residues_ == b.residues_;
  }

 private:
  GroupSpec spec_;
  std::vector<Int> residues_;
};

/// Mixed-radix rank, first factor most significant, so rank order is
/// lexicographic order of residue vectors.
inline std::uint64_t rank_of(const GroupSpec& spec, std::span<const Int> residues) {
  std::uint64_t rank = 0;
  for (std::size_t j = 0; j < spec.factor_count(); ++j) {
    rank = rank * static_cast<std::uint64_t>(spec.modulus(j)) + static_cast<std::uint64_t>(residues[j]);
  }
  return rank;
}

inline std::uint64_t rank_of(const GroupElement& a) { return rank_of(a.spec(), a.residues()); }

inline std::vector<Int> unrank(const GroupSpec& spec, std::uint64_t rank) {
  std::vector<Int> residues(spec.factor_count());
  for (std::size_t j = spec.factor_count(); j-- > 0;) {
    const auto m = static_cast<std::uint64_t>(spec.modulus(j));
    residues[j] = static_cast<Int>(rank % m);
    rank /= m;
  }
  return residues;
}

inline GroupElement element_at(const GroupSpec& spec, std::uint64_t rank) {
  return GroupElement(spec, unrank(spec, rank));
}

/// t*a componentwise. t is reduced modulo each m_j first.
inline GroupElement scalar_mul(Int t, const GroupElement& a) {
  if (t < 0) throw Error(ErrorKind::kInvalidArgument, "scalar_mul: negative multiplier");
  std::vector<Int> out(a.residues().size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const Int m = a.spec().modulus(j);
    out[j] = mul_mod(t % m, a.residue(j), m);
  }
  return GroupElement(a.spec(), std::move(out));
}

/// Least d >= 1 with d*a = 0: lcm of the componentwise orders m_j / gcd(a_j, m_j).
inline Int element_order(const GroupElement& a) {
  Int order = 1;
  for (std::size_t j = 0; j < a.residues().size(); ++j) {
    const Int m = a.spec().modulus(j);
    order = lcm(order, m / std::gcd(a.residue(j), m));
  }
  return order;
}

/// Canonical invariant-factor form: split into prime powers and reassemble
/// largest-first, yielding c_1 | c_2 | ... | c_t.
inline GroupSpec invariant_factors(const std::vector<Int>& moduli) {
  if (moduli.empty()) throw Error(ErrorKind::kInvalidSpec, "group needs at least one cyclic factor");
  std::map<Int, std::vector<int>> exponents;
  for (Int m : moduli) {
    if (m < 2) throw Error(ErrorKind::kInvalidSpec, "modulus " + std::to_string(m) + " < 2");
    for (const auto& [p, e] : factorize(m)) exponents[p].push_back(e);
  }
  std::size_t length = 0;
  for (auto& [p, es] : exponents) {
    std::sort(es.begin(), es.end(), std::greater<>());
    length = std::max(length, es.size());
  }
  // chain[0] is the largest factor while assembling.
  std::vector<Int> chain(length, 1);
  for (const auto& [p, es] : exponents) {
    for (std::size_t j = 0; j < es.size(); ++j) {
      for (int e = 0; e < es[j]; ++e) chain[j] = checked_mul(chain[j], p);
    }
  }
  std::reverse(chain.begin(), chain.end());
  return GroupSpec(std::move(chain));
}

inline GroupSpec invariant_factors(const GroupSpec& spec) { return invariant_factors(spec.moduli()); }

struct CongruenceSolution {
  bool solvable = false;
  std::vector<Int> solutions;  // ascending residues in Z_n
  Int count = 0;
};

/// All x in Z_n with m*x = a (mod n). Solvable iff gcd(m, n) | a, and then
/// there are exactly gcd(m, n) solutions spaced n/gcd(m, n) apart.
inline CongruenceSolution solve_scalar_equation(Int m, Int a, Int n) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "solve_scalar_equation: n must be >= 2");
  if (m < 1) throw Error(ErrorKind::kInvalidArgument, "solve_scalar_equation: m must be positive");
  if (a < 0 || a >= n) throw Error(ErrorKind::kInvalidArgument, "solve_scalar_equation: a out of range");
  const Int k = std::gcd(m, n);
  CongruenceSolution out;
  if (a % k != 0) return out;
  const Int step = n / k;
  const Int x0 = mul_mod((a / k) % step, mod_inverse((m / k) % step, step), step);
  out.solvable = true;
  out.count = k;
  out.solutions.reserve(static_cast<std::size_t>(k));
  for (Int t = 0; t < k; ++t) out.solutions.push_back(x0 + t * step);
  return out;
}

/// Parses "Z72" or "Z4 x Z8 x Z72". Whitespace and case are ignored.
inline GroupSpec parse_group(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (s.empty()) throw Error(ErrorKind::kParse, "empty group literal");
  std::vector<Int> moduli;
  std::size_t pos = 0;
  while (true) {
    if (pos >= s.size() || s[pos] != 'z') throw Error(ErrorKind::kParse, "expected 'Z' in group literal '" + text + "'");
    ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || pos - start > 18) throw Error(ErrorKind::kParse, "bad modulus in group literal '" + text + "'");
    moduli.push_back(std::stoll(s.substr(start, pos - start)));
    if (pos == s.size()) break;
    if (s[pos] != 'x') throw Error(ErrorKind::kParse, "expected 'x' between factors in '" + text + "'");
    ++pos;
  }
  try {
    return GroupSpec(std::move(moduli));
  } catch (const Error& e) {
    throw Error(ErrorKind::kParse, e.what());
  }
}

}  // namespace mgraph
