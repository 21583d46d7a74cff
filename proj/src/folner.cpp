#include "normlab/folner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace normlab {

const char* to_string(Semigroup s) { return s == Semigroup::Additive ? "additive" : "multiplicative"; }

Ratio Ratio::reduced() const {
  const Nat g = std::gcd(num, den);
  return g ? Ratio{num / g, den / g} : *this;
}

std::strong_ordering Ratio::operator<=>(const Ratio& o) const {
  const unsigned __int128 a = static_cast<unsigned __int128>(num) * o.den;
  const unsigned __int128 b = static_cast<unsigned __int128>(o.num) * den;
  return a <=> b;
}

std::string Ratio::str() const {
  const Ratio r = reduced();
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

// ---- FiniteSet

FiniteSet FiniteSet::from_unsorted(std::vector<Nat> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  FiniteSet s;
  s.v_ = std::move(v);
  return s;
}

FiniteSet FiniteSet::from_sorted(std::vector<Nat> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i]) throw std::invalid_argument("FiniteSet: input not strictly increasing");
  FiniteSet s;
  s.v_ = std::move(v);
  return s;
}

FiniteSet FiniteSet::range(Nat lo, Nat hi) {
  FiniteSet s;
  if (hi < lo) return s;
  s.v_.resize(hi - lo + 1);
  std::iota(s.v_.begin(), s.v_.end(), lo);
  return s;
}

bool FiniteSet::contains(Nat x) const { return std::binary_search(v_.begin(), v_.end(), x); }

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b) {
  std::vector<Nat> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet::from_sorted(std::move(out));
}

FiniteSet set_intersection(const FiniteSet& a, const FiniteSet& b) {
  std::vector<Nat> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteSet::from_sorted(std::move(out));
}

std::size_t symmetric_difference_size(const FiniteSet& a, const FiniteSet& b) {
  std::size_t i = 0, j = 0, d = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
      ++d;
    } else {
      ++j;
      ++d;
    }
  }
  return d + (a.size() - i) + (b.size() - j);
}

// ---- AnchoredBox

AnchoredBox::AnchoredBox(std::vector<std::uint32_t> sizes) : k_(std::move(sizes)) {
  while (!k_.empty() && k_.back() == 0) k_.pop_back();
}

std::uint64_t AnchoredBox::cardinality() const {
  std::uint64_t c = 1;
  for (auto k : k_) {
    if (__builtin_mul_overflow(c, std::uint64_t{k} + 1, &c)) throw std::overflow_error("box cardinality overflow");
  }
  return c;
}

Nat AnchoredBox::leading_parameter() const {
  Nat L = 1;
  for (std::size_t i = 0; i < k_.size(); ++i) L = checked_mul(L, checked_pow(nth_prime(i), k_[i]));
  return L;
}

bool AnchoredBox::contains(const ExpVec& g) const {
  if (g.dim() > k_.size()) return false;
  for (std::size_t i = 0; i < g.dim(); ++i)
    if (g[i] > k_[i]) return false;
  return true;
}

std::uint64_t AnchoredBox::colex_index(const ExpVec& g) const {
  std::uint64_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    idx += stride * g[i];
    stride *= k_[i] + 1;
  }
  return idx;
}

ExpVec AnchoredBox::colex_point(std::uint64_t idx) const {
  std::vector<std::uint32_t> e(k_.size());
  for (std::size_t i = 0; i < k_.size(); ++i) {
    e[i] = static_cast<std::uint32_t>(idx % (k_[i] + 1));
    idx /= k_[i] + 1;
  }
  return ExpVec(std::move(e));
}

FiniteSet AnchoredBox::elements() const {
  if (cardinality() > kMaxDivisors) throw std::overflow_error("box too large to enumerate");
  std::vector<Nat> out{1};
  for (std::size_t i = 0; i < k_.size(); ++i) {
    const Nat p = nth_prime(i);
    const std::size_t base = out.size();
    Nat pk = 1;
    for (std::uint32_t e = 1; e <= k_[i]; ++e) {
      pk = checked_mul(pk, p);
      for (std::size_t j = 0; j < base; ++j) out.push_back(checked_mul(out[j], pk));
    }
  }
  return FiniteSet::from_unsorted(std::move(out));
}

FiniteSet divisors(Nat L) {
  const ExpVec e = nat_to_expvec(L);
  return AnchoredBox(e.exps()).elements();
}

// ---- DirectionSchedule

DirectionSchedule DirectionSchedule::explicit_list(std::vector<std::uint32_t> dirs) {
  for (auto d : dirs)
    if (d == 0) throw std::invalid_argument("direction indices are 1-based");
  return DirectionSchedule(Kind::Explicit, std::move(dirs));
}

namespace {
// largest b with b(b+1)/2 <= N
std::uint64_t complete_blocks(std::uint64_t N) {
  std::uint64_t b = static_cast<std::uint64_t>((std::sqrt(8.0L * N + 1) - 1) / 2);
  while (b * (b + 1) / 2 > N) --b;
  while ((b + 1) * (b + 2) / 2 <= N) ++b;
  return b;
}
}  // namespace

std::uint32_t DirectionSchedule::at(std::size_t n) const {
  if (n == 0) throw std::out_of_range("schedule steps start at 1");
  switch (kind_) {
    case Kind::Staircase: {
      const std::uint64_t b = complete_blocks(n - 1);
      return static_cast<std::uint32_t>(n - b * (b + 1) / 2);
    }
    case Kind::Toeplitz:
      return 1 + static_cast<std::uint32_t>(__builtin_ctzll(n));
    case Kind::Explicit:
      if (n > list_.size()) throw std::out_of_range("explicit schedule exhausted");
      return list_[n - 1];
  }
  return 0;
}

std::uint64_t DirectionSchedule::count(std::uint32_t i, std::size_t N) const {
  if (i == 0) return 0;
  switch (kind_) {
    case Kind::Staircase: {
      const std::uint64_t B = complete_blocks(N);
      const std::uint64_t rest = N - B * (B + 1) / 2;
      return (B >= i ? B - i + 1 : 0) + (i <= rest ? 1 : 0);
    }
    case Kind::Toeplitz:
      if (i >= 64) return 0;
      return (N >> (i - 1)) - (N >> i);
    case Kind::Explicit: {
      if (N > list_.size()) throw std::out_of_range("explicit schedule exhausted");
      return static_cast<std::uint64_t>(std::count(list_.begin(), list_.begin() + N, i));
    }
  }
  return 0;
}

std::vector<std::uint32_t> DirectionSchedule::counts(std::size_t N) const {
  std::vector<std::uint32_t> c;
  if (kind_ == Kind::Explicit) {
    if (N > list_.size()) throw std::out_of_range("explicit schedule exhausted");
    for (std::size_t n = 0; n < N; ++n) {
      if (c.size() < list_[n]) c.resize(list_[n], 0);
      ++c[list_[n] - 1];
    }
    return c;
  }
  // staircase and Toeplitz counts vanish from the first empty direction on
  for (std::uint32_t i = 1;; ++i) {
    const auto v = count(i, N);
    if (v == 0) break;
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return c;
}

std::optional<std::size_t> DirectionSchedule::length() const {
  if (kind_ == Kind::Explicit) return list_.size();
  return std::nullopt;
}

std::string DirectionSchedule::name() const {
  switch (kind_) {
    case Kind::Staircase: return "staircase";
    case Kind::Toeplitz: return "toeplitz";
    case Kind::Explicit: {
      std::string s = "explicit:";
      for (std::size_t i = 0; i < list_.size(); ++i) s += (i ? "," : "") + std::to_string(list_[i]);
      return s;
    }
  }
  return "";
}

// ---- FolnerSpec

FolnerSpec FolnerSpec::classical() { return FolnerSpec(); }

FolnerSpec FolnerSpec::interval_union(std::vector<std::vector<Interval>> per_n) {
  FolnerSpec s;
  s.kind_ = Kind::IntervalUnion;
  for (auto& comps : per_n) {
    std::sort(comps.begin(), comps.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (comps[i].lo == 0 || comps[i].hi < comps[i].lo)
        throw std::invalid_argument("interval union: bad interval");
      if (i && comps[i].lo <= comps[i - 1].hi + 1)
        throw std::invalid_argument("interval union: components overlap or touch");
    }
  }
  s.intervals_ = std::move(per_n);
  return s;
}

FolnerSpec FolnerSpec::nice_boxes(std::vector<Nat> leading) {
  FolnerSpec s;
  s.kind_ = Kind::NiceBoxes;
  for (std::size_t i = 0; i < leading.size(); ++i) {
    if (leading[i] == 0) throw std::invalid_argument("leading parameter must be >= 1");
    if (i && (leading[i] == leading[i - 1] || leading[i] % leading[i - 1] != 0))
      throw std::invalid_argument("nice boxes: L_n must strictly divide L_{n+1} (n=" + std::to_string(i) + ")");
    s.leading_boxes_.emplace_back(nat_to_expvec(leading[i]).exps());
  }
  s.leading_ = std::move(leading);
  return s;
}

FolnerSpec FolnerSpec::nice_boxes(DirectionSchedule schedule) {
  FolnerSpec s;
  s.kind_ = Kind::NiceBoxes;
  s.schedule_ = std::move(schedule);
  return s;
}

FolnerSpec FolnerSpec::doubling(DirectionSchedule schedule) {
  FolnerSpec s;
  s.kind_ = Kind::Doubling;
  s.schedule_ = std::move(schedule);
  return s;
}

Semigroup FolnerSpec::semigroup() const {
  return is_box() ? Semigroup::Multiplicative : Semigroup::Additive;
}

std::optional<std::size_t> FolnerSpec::max_index() const {
  switch (kind_) {
    case Kind::Classical: return std::nullopt;
    case Kind::IntervalUnion: return intervals_.size();
    case Kind::NiceBoxes:
      if (!schedule_) return leading_.size();
      return schedule_->length();
    case Kind::Doubling: return schedule_->length();
  }
  return std::nullopt;
}

void FolnerSpec::check_index(std::size_t n) const {
  if (n < min_index()) throw std::out_of_range("Folner index below the first set");
  if (auto m = max_index(); m && n > *m) throw std::out_of_range("Folner index beyond the spec");
}

AnchoredBox FolnerSpec::box(std::size_t n) const {
  check_index(n);
  if (kind_ == Kind::NiceBoxes) {
    if (!schedule_) return leading_boxes_[n - 1];
    return AnchoredBox(schedule_->counts(n));
  }
  if (kind_ == Kind::Doubling) {
    auto c = schedule_->counts(n);
    for (auto& v : c) {
      if (v >= 32) throw std::overflow_error("doubling box side beyond 32 bits");
      v = (std::uint32_t{1} << v) - 1;
    }
    return AnchoredBox(std::move(c));
  }
  throw std::logic_error("box() on a non-box Folner spec");
}

const std::vector<Interval>& FolnerSpec::intervals(std::size_t n) const {
  if (kind_ != Kind::IntervalUnion) throw std::logic_error("intervals() on a non-interval spec");
  check_index(n);
  return intervals_[n - 1];
}

FiniteSet FolnerSpec::set(std::size_t n) const {
  check_index(n);
  switch (kind_) {
    case Kind::Classical: return FiniteSet::range(1, n);
    case Kind::IntervalUnion: {
      std::vector<Nat> v;
      for (const auto& c : intervals_[n - 1])
        for (Nat x = c.lo; x <= c.hi; ++x) v.push_back(x);
      return FiniteSet::from_sorted(std::move(v));
    }
    default: return box(n).elements();
  }
}

std::uint64_t FolnerSpec::cardinality(std::size_t n) const {
  check_index(n);
  switch (kind_) {
    case Kind::Classical: return n;
    case Kind::IntervalUnion: {
      std::uint64_t c = 0;
      for (const auto& i : intervals_[n - 1]) c += i.hi - i.lo + 1;
      return c;
    }
    default: return box(n).cardinality();
  }
}

std::string FolnerSpec::describe() const {
  switch (kind_) {
    case Kind::Classical: return "classical";
    case Kind::IntervalUnion: return "interval-union(" + std::to_string(intervals_.size()) + ")";
    case Kind::NiceBoxes:
      if (schedule_) return "nice-boxes(" + schedule_->name() + ")";
      return "nice-boxes(explicit," + std::to_string(leading_.size()) + ")";
    case Kind::Doubling: return "doubling(" + schedule_->name() + ")";
  }
  return "";
}

// ---- invariance, cores, densities

FiniteSet translate(const FiniteSet& F, Nat g, Semigroup s) {
  std::vector<Nat> v;
  v.reserve(F.size());
  for (Nat f : F) v.push_back(combine(s, g, f));
  return FiniteSet::from_sorted(std::move(v));
}

Ratio invariance_defect(const FiniteSet& F, const FiniteSet& K, Semigroup s) {
  if (F.empty() || K.empty()) throw std::invalid_argument("invariance_defect: empty set");
  std::vector<Nat> kf;
  kf.reserve(F.size() * K.size());
  for (Nat k : K)
    for (Nat f : F) kf.push_back(combine(s, k, f));
  const FiniteSet KF = FiniteSet::from_unsorted(std::move(kf));
  return Ratio{symmetric_difference_size(KF, F), F.size()};
}

FiniteSet k_core(const FiniteSet& F, const FiniteSet& K, Semigroup s, bool include_identity) {
  if (F.empty() || K.empty()) throw std::invalid_argument("k_core: empty set");
  const Nat k0 = K.min();
  std::vector<Nat> out;
  for (Nat f : F) {
    Nat h;
    if (s == Semigroup::Additive) {
      if (f < k0) continue;
      h = f - k0;
      if (h == 0 && !include_identity) continue;
    } else {
      if (f % k0) continue;
      h = f / k0;
    }
    bool ok = true;
    for (Nat k : K) {
      Nat kh;
      if (s == Semigroup::Additive ? __builtin_add_overflow(k, h, &kh) : __builtin_mul_overflow(k, h, &kh)) {
        ok = false;
        break;
      }
      if (!F.contains(kh)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(h);
  }
  return FiniteSet::from_sorted(std::move(out));
}

void finish_density_table(DensityTable& t) {
  if (t.rows.empty()) return;
  const std::size_t start = t.rows.size() / 2;
  t.upper = 0;
  t.lower = 1;
  for (std::size_t i = start; i < t.rows.size(); ++i) {
    t.upper = std::max(t.upper, t.rows[i].ratio());
    t.lower = std::min(t.lower, t.rows[i].ratio());
  }
}

DensityTable density(const Membership& A, const FolnerSpec& spec, std::size_t n_lo, std::size_t n_hi) {
  DensityTable t;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    std::uint64_t count = 0, card = 0;
    if (spec.kind() == FolnerSpec::Kind::Classical) {
      card = n;
      for (Nat x = 1; x <= n; ++x) count += A(x);
    } else {
      const FiniteSet F = spec.set(n);
      card = F.size();
      for (Nat x : F) count += A(x);
    }
    t.rows.push_back({n, count, card});
  }
  finish_density_table(t);
  return t;
}

Ratio equivalence_defect(const FolnerSpec& a, const FolnerSpec& b, std::size_t n) {
  if (a.semigroup() != b.semigroup()) throw std::invalid_argument("equivalence_defect: semigroups differ");
  const FiniteSet A = a.set(n), B = b.set(n);
  return Ratio{symmetric_difference_size(A, B), A.size()};
}

}  // namespace normlab
