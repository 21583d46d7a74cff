#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "normlab/expvec.hpp"

namespace normlab {

enum class Semigroup { Additive, Multiplicative };

// Identity adjoined to (N,+) is 0; (N,x) already contains 1.
inline Nat identity(Semigroup s) { return s == Semigroup::Additive ? 0 : 1; }
inline Nat combine(Semigroup s, Nat a, Nat b) {
  return s == Semigroup::Additive ? checked_add(a, b) : checked_mul(a, b);
}
const char* to_string(Semigroup s);

struct Ratio {
  Nat num = 0;
  Nat den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Ratio reduced() const;
  std::strong_ordering operator<=>(const Ratio& o) const;
  bool operator==(const Ratio& o) const { return (*this <=> o) == 0; }
  std::string str() const;
};

class FiniteSet {
 public:
  FiniteSet() = default;
  static FiniteSet from_unsorted(std::vector<Nat> v);
  static FiniteSet from_sorted(std::vector<Nat> v);  // validates
  static FiniteSet range(Nat lo, Nat hi);            // {lo..hi}, empty if hi < lo

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  Nat min() const { return v_.front(); }
  Nat max() const { return v_.back(); }
  bool contains(Nat x) const;
  const std::vector<Nat>& elems() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  Nat operator[](std::size_t i) const { return v_[i]; }
  bool operator==(const FiniteSet&) const = default;

 private:
  std::vector<Nat> v_;
};

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b);
FiniteSet set_intersection(const FiniteSet& a, const FiniteSet& b);
std::size_t symmetric_difference_size(const FiniteSet& a, const FiniteSet& b);

// Anchored box {g : 0 <= g_i <= k_i} in the exponent lattice.
class AnchoredBox {
 public:
  AnchoredBox() = default;
  explicit AnchoredBox(std::vector<std::uint32_t> sizes);

  const std::vector<std::uint32_t>& sizes() const { return k_; }
  std::size_t dim() const { return k_.size(); }
  std::uint32_t extent(std::size_t i) const { return i < k_.size() ? k_[i] + 1 : 1; }
  std::uint64_t cardinality() const;
  Nat leading_parameter() const;  // throws on overflow
  bool contains(const ExpVec& g) const;
  // colex rank: first coordinate varies fastest
  std::uint64_t colex_index(const ExpVec& g) const;
  ExpVec colex_point(std::uint64_t idx) const;
  FiniteSet elements() const;  // naturals, i.e. divisors of the leading parameter
  bool operator==(const AnchoredBox&) const = default;

 private:
  std::vector<std::uint32_t> k_;
};

inline constexpr std::size_t kMaxDivisors = std::size_t{1} << 24;
FiniteSet divisors(Nat L);

class DirectionSchedule {
 public:
  enum class Kind { Staircase, Toeplitz, Explicit };

  static DirectionSchedule staircase() { return DirectionSchedule(Kind::Staircase, {}); }
  static DirectionSchedule toeplitz() { return DirectionSchedule(Kind::Toeplitz, {}); }
  static DirectionSchedule explicit_list(std::vector<std::uint32_t> dirs);

  Kind kind() const { return kind_; }
  // direction (1-based) of step n >= 1
  std::uint32_t at(std::size_t n) const;
  // occurrences of direction i among steps 1..N
  std::uint64_t count(std::uint32_t i, std::size_t N) const;
  // occurrence counts of directions 1..d for steps 1..N, trimmed
  std::vector<std::uint32_t> counts(std::size_t N) const;
  std::optional<std::size_t> length() const;
  std::string name() const;

 private:
  DirectionSchedule(Kind k, std::vector<std::uint32_t> l) : kind_(k), list_(std::move(l)) {}
  Kind kind_;
  std::vector<std::uint32_t> list_;
};

struct Interval {
  Nat lo, hi;  // inclusive
};

class FolnerSpec {
 public:
  enum class Kind { Classical, IntervalUnion, NiceBoxes, Doubling };

  static FolnerSpec classical();
  static FolnerSpec interval_union(std::vector<std::vector<Interval>> per_n);
  static FolnerSpec nice_boxes(std::vector<Nat> leading);
  static FolnerSpec nice_boxes(DirectionSchedule schedule);
  static FolnerSpec doubling(DirectionSchedule schedule);

  Kind kind() const { return kind_; }
  Semigroup semigroup() const;
  bool is_box() const { return kind_ == Kind::NiceBoxes || kind_ == Kind::Doubling; }
  std::optional<std::size_t> max_index() const;
  std::size_t min_index() const { return kind_ == Kind::Doubling ? 0 : 1; }

  FiniteSet set(std::size_t n) const;
  AnchoredBox box(std::size_t n) const;
  std::uint64_t cardinality(std::size_t n) const;
  const std::vector<Interval>& intervals(std::size_t n) const;
  const std::vector<Nat>& leading_list() const { return leading_; }
  const DirectionSchedule& schedule() const { return *schedule_; }
  std::string describe() const;

 private:
  void check_index(std::size_t n) const;
  Kind kind_ = Kind::Classical;
  std::vector<std::vector<Interval>> intervals_;
  std::vector<Nat> leading_;
  std::vector<AnchoredBox> leading_boxes_;
  std::optional<DirectionSchedule> schedule_;
};

Ratio invariance_defect(const FiniteSet& F, const FiniteSet& K, Semigroup s);
FiniteSet k_core(const FiniteSet& F, const FiniteSet& K, Semigroup s, bool include_identity);
FiniteSet translate(const FiniteSet& F, Nat g, Semigroup s);  // g o F

struct DensityRow {
  std::size_t n;
  std::uint64_t count;
  std::uint64_t card;
  double ratio() const { return card ? static_cast<double>(count) / static_cast<double>(card) : 0.0; }
};

struct DensityTable {
  std::vector<DensityRow> rows;
  double upper = 0;  // max over tail half
  double lower = 0;  // min over tail half
};

using Membership = std::function<bool(Nat)>;
DensityTable density(const Membership& A, const FolnerSpec& spec, std::size_t n_lo, std::size_t n_hi);
void finish_density_table(DensityTable& t);

Ratio equivalence_defect(const FolnerSpec& a, const FolnerSpec& b, std::size_t n);

}  // namespace normlab
