#include "normlab/expvec.hpp"

#include <algorithm>
#include <cmath>

namespace normlab {

const std::vector<Nat>& prime_table() {
  static const std::vector<Nat> table = [] {
    // p_10000 = 104729
    const std::size_t limit = 104730;
    std::vector<bool> composite(limit, false);
    std::vector<Nat> out;
    out.reserve(kPrimeTableSize);
    for (std::size_t i = 2; i < limit && out.size() < kPrimeTableSize; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::size_t j = i * i; j < limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return table;
}

Nat nth_prime(std::size_t index) {
  const auto& t = prime_table();
  if (index >= t.size()) throw std::out_of_range("prime index beyond table");
  return t[index];
}

std::size_t prime_index(Nat p) {
  const auto& t = prime_table();
  auto it = std::lower_bound(t.begin(), t.end(), p);
  if (it == t.end() || *it != p) throw std::out_of_range("not a tabulated prime: " + std::to_string(p));
  return static_cast<std::size_t>(it - t.begin());
}

ExpVec::ExpVec(std::initializer_list<std::uint32_t> e) : e_(e) { trim(); }
ExpVec::ExpVec(std::vector<std::uint32_t> e) : e_(std::move(e)) { trim(); }

void ExpVec::trim() {
  while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

void ExpVec::set(std::size_t i, std::uint32_t v) {
  if (i >= e_.size()) {
    if (v == 0) return;
    e_.resize(i + 1, 0);
  }
  e_[i] = v;
  trim();
}

ExpVec ExpVec::operator+(const ExpVec& o) const {
  std::vector<std::uint32_t> r(std::max(e_.size(), o.e_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
  return ExpVec(std::move(r));
}

bool ExpVec::divides(const ExpVec& o) const {
  if (e_.size() > o.e_.size()) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

std::string ExpVec::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

PartialFactor factor_partial(Nat m, std::size_t dims) {
  if (m == 0) throw std::out_of_range("factor of zero");
  const auto& t = prime_table();
  dims = std::min(dims, t.size());
  PartialFactor f{std::vector<std::uint32_t>(dims, 0), m};
  for (std::size_t i = 0; i < dims && f.cofactor > 1; ++i) {
    const Nat p = t[i];
    while (f.cofactor % p == 0) {
      f.cofactor /= p;
      ++f.exps[i];
    }
  }
  return f;
}

ExpVec nat_to_expvec(Nat m) {
  if (m == 0 || m >= kNatLimit) throw std::out_of_range("nat_to_expvec: m outside [1, 2^63)");
  const auto& t = prime_table();
  std::vector<std::uint32_t> e;
  for (std::size_t i = 0; i < t.size() && m > 1; ++i) {
    const Nat p = t[i];
    if (p * p > m) {
      // m is prime now
      e.resize(prime_index(m) + 1, 0);
      ++e.back();
      m = 1;
      break;
    }
    while (m % p == 0) {
      m /= p;
      if (e.size() <= i) e.resize(i + 1, 0);
      ++e[i];
    }
  }
  if (m > 1) throw std::out_of_range("nat_to_expvec: prime factor beyond the prime table");
  return ExpVec(std::move(e));
}

Nat checked_mul(Nat a, Nat b) {
  Nat r;
  if (__builtin_mul_overflow(a, b, &r) || r >= kNatLimit) throw std::overflow_error("product exceeds 63 bits");
  return r;
}

Nat checked_add(Nat a, Nat b) {
  Nat r = a + b;
  if (r < a || r >= kNatLimit) throw std::overflow_error("sum exceeds 63 bits");
  return r;
}

Nat checked_pow(Nat base, unsigned e) {
  Nat r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

Nat expvec_to_nat(const ExpVec& v) {
  Nat r = 1;
  for (std::size_t i = 0; i < v.dim(); ++i) r = checked_mul(r, checked_pow(nth_prime(i), v[i]));
  return r;
}

}  // namespace normlab
