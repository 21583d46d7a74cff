#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace normlab {

using Nat = std::uint64_t;

inline constexpr Nat kNatLimit = Nat{1} << 63;
inline constexpr std::size_t kPrimeTableSize = 10000;

// First kPrimeTableSize primes, p_1 = 2 stored at index 0.
const std::vector<Nat>& prime_table();
Nat nth_prime(std::size_t index);  // 0-based
std::size_t prime_index(Nat p);     // throws if p is not a tabulated prime

// Exponent vector of a natural over the primes 2,3,5,...
// Trailing zeros are never stored, so equality is structural.
class ExpVec {
 public:
  ExpVec() = default;
  ExpVec(std::initializer_list<std::uint32_t> e);
  explicit ExpVec(std::vector<std::uint32_t> e);

  std::uint32_t operator[](std::size_t i) const { return i < e_.size() ? e_[i] : 0; }
  std::size_t dim() const { return e_.size(); }
  const std::vector<std::uint32_t>& exps() const { return e_; }
  void set(std::size_t i, std::uint32_t v);

  ExpVec operator+(const ExpVec& o) const;
  bool divides(const ExpVec& o) const;  // componentwise <=
  bool operator==(const ExpVec& o) const = default;
  std::string str() const;

 private:
  void trim();
  std::vector<std::uint32_t> e_;
};

ExpVec nat_to_expvec(Nat m);
Nat expvec_to_nat(const ExpVec& v);  // throws std::overflow_error past 2^63

// Exponents of the first `dims` primes in m plus the leftover cofactor.
struct PartialFactor {
  std::vector<std::uint32_t> exps;
  Nat cofactor;
};
PartialFactor factor_partial(Nat m, std::size_t dims);

Nat checked_mul(Nat a, Nat b);
Nat checked_add(Nat a, Nat b);
Nat checked_pow(Nat base, unsigned e);

}  // namespace normlab
