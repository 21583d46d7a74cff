#include "normlab/liouville.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace normlab {

// ---- repetitive sequences

std::vector<std::uint64_t> RepetitiveSpec::lengths() const {
  std::vector<std::uint64_t> L;
  for (std::size_t k = 1; k <= u.size(); ++k) {
    const std::uint64_t prev = k == 1 ? 0 : L.back();
    L.push_back(checked_add(checked_mul(copies_at(k), prev), u[k - 1].size()));
  }
  return L;
}

void RepetitiveSpec::validate() const {
  if (u.empty()) throw std::invalid_argument("repetitive spec: no words");
  if (copies.size() < u.size() || copies.size() > u.size() + 1)
    throw std::invalid_argument("repetitive spec: copies must cover every level (and at most one more)");
  for (std::size_t k = 1; k <= u.size(); ++k)
    if (u[k - 1].size() == 0) throw std::invalid_argument("repetitive spec: u_" + std::to_string(k) + " is empty");
  for (std::size_t k = 2; k <= copies.size(); ++k)
    if (copies[k - 1] < k - 1)
      throw std::invalid_argument("repetitive spec: w_" + std::to_string(k - 1) + " must be repeated at least " +
                                  std::to_string(k - 1) + " times in w_" + std::to_string(k));
}

BitSeq build_repetitive(const RepetitiveSpec& spec, std::size_t N) {
  spec.validate();
  BitSeqBuilder b;
  b.reserve(N);
  auto append = [&](const BitSeq& w) {
    for (std::size_t i = 1; i <= w.size() && b.size() < N; ++i) b.push_back(w[i]);
  };
  append(spec.u[0]);
  for (std::size_t k = 2; k <= spec.copies.size() && b.size() < N; ++k) {
    const std::size_t prev = b.size();
    for (std::uint64_t c = 1; c < spec.copies[k - 1] && b.size() < N; ++c)
      for (std::size_t i = 1; i <= prev && b.size() < N; ++i) b.push_back(b.get(i));
    if (k <= spec.u.size()) append(spec.u[k - 1]);
  }
  if (b.size() < N) throw std::invalid_argument("repetitive spec too short for " + std::to_string(N) + " bits");
  return std::move(b).build("repetitive");
}

std::optional<std::size_t> eventual_period(const BitSeq& x, std::size_t max_period) {
  const std::size_t N = x.size();
  for (std::size_t p = 1; p <= max_period && 2 * p <= N; ++p) {
    bool ok = true;
    for (std::size_t i = N / 2 + 1; i + p <= N && ok; ++i) ok = x[i] == x[i + p];
    if (ok) return p;
  }
  return std::nullopt;
}

// ---- Liouville witnesses

namespace {

mpz_class to_mpz(const BitSeq& w, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 1; i <= n; ++i)
    if (w[i]) s[i - 1] = '1';
  return n ? mpz_class(s, 2) : mpz_class(0);
}

mpz_class pow2(std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace

bool bracket_check(const BitSeq& prefix, const BitSeq& period_word, int k) {
  const std::size_t N = prefix.size(), L = period_word.size();
  const mpz_class X = to_mpz(prefix, N), p = to_mpz(period_word, L);
  const mpz_class q = pow2(L) - 1, twoN = pow2(N);
  mpz_class qk;
  mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k - 1));
  auto ok = [&](const mpz_class& lo) {
    mpz_class d = lo * q - p * twoN;
    d = abs(d) * qk;  // |lo/2^N - p/q| < q^-k  <=>  |lo q - p 2^N| q^(k-1) < 2^N
    return d < twoN;
  };
  return ok(X) && ok(X + 1);
}

LiouvilleWitness liouville_witness(const RepetitiveSpec& spec, int k) {
  if (k < 1) throw std::invalid_argument("liouville_witness: k >= 1");
  spec.validate();
  const auto L = spec.lengths();
  std::size_t j = 0;
  for (std::size_t c = 1; c <= spec.u.size(); ++c)
    if (spec.copies_at(c + 1) >= static_cast<std::uint64_t>(k)) {
      j = c;
      break;
    }
  if (j == 0) throw std::invalid_argument("liouville_witness: prefix too short to bracket exponent " + std::to_string(k));
  LiouvilleWitness w;
  w.k = k;
  w.level = j;
  w.period = L[j - 1];
  w.agreement = checked_mul(spec.copies_at(j + 1), w.period);
  const BitSeq prefix = build_repetitive(spec, w.agreement);
  const BitSeq wj = BitSeq::generate(w.period, [&](std::size_t i) { return prefix[i]; }, "w_j");
  if (w.period <= 192) {
    w.p = to_mpz(wj, w.period).get_str();
    w.q = mpz_class(pow2(w.period) - 1).get_str();
  } else {
    w.p = "value of w_" + std::to_string(j) + " (" + std::to_string(w.period) + " bits)";
    w.q = "2^" + std::to_string(w.period) + "-1";
  }
  if (w.agreement <= kExactWitnessBits) {
    w.method = "exact-rational";
    w.verified = bracket_check(prefix, wj, k);
  } else {
    // x_1..x_N is (w_j)^c exactly, so X q - p 2^N = -p and (X+1) q - p 2^N = q - p;
    // both are below q, and q^k < 2^{kL} <= 2^N.
    w.method = "periodic-prefix";
    bool periodic = true;
    for (std::size_t i = w.period + 1; i <= prefix.size() && periodic; ++i) periodic = prefix[i] == prefix[i - w.period];
    w.verified = periodic && static_cast<std::uint64_t>(k) * w.period <= w.agreement;
  }
  return w;
}

// ---- interval refinement

std::vector<Interval> components(const FolnerSpec& spec, std::size_t n) {
  if (spec.kind() == FolnerSpec::Kind::Classical) return {{1, n}};
  if (spec.kind() == FolnerSpec::Kind::IntervalUnion) return spec.intervals(n);
  throw std::invalid_argument("components: additive interval spec required");
}

namespace {

std::uint64_t measure(const std::vector<Interval>& v) {
  std::uint64_t m = 0;
  for (const auto& i : v) m += i.hi - i.lo + 1;
  return m;
}

std::vector<Interval> merged(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& i : v) {
    if (!out.empty() && i.lo <= out.back().hi + 1)
      out.back().hi = std::max(out.back().hi, i.hi);
    else
      out.push_back(i);
  }
  return out;
}

std::uint64_t overlap(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  std::uint64_t m = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Nat lo = std::max(a[i].lo, b[j].lo), hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) m += hi - lo + 1;
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return m;
}

std::uint64_t sym_diff(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  return measure(a) + measure(b) - 2 * overlap(a, b);
}

// F_{K} + K for K = {1..ell}: a component [a,b] keeps [max(a,2), b] when it holds ell points past max(a-1,1).
std::vector<Interval> core_plus_k(const std::vector<Interval>& F, std::size_t ell) {
  std::vector<Interval> out;
  for (const auto& c : F) {
    const Nat h_lo = std::max<Nat>(c.lo - 1, 1);
    if (c.hi >= ell && c.hi - ell >= h_lo) out.push_back({h_lo + 1, c.hi});
  }
  return out;
}

}  // namespace

Ratio interval_defect(const std::vector<Interval>& F, std::size_t ell) {
  std::vector<Interval> KF;
  for (const auto& c : F) KF.push_back({c.lo + 1, c.hi + ell});
  return Ratio{sym_diff(merged(KF), F), measure(F)};
}

RefinedSpec interval_folner_refine(const FolnerSpec& spec, std::size_t n_lo, std::size_t n_hi) {
  if (spec.semigroup() != Semigroup::Additive) throw std::invalid_argument("interval_folner_refine: additive spec required");
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("interval_folner_refine: bad range");
  RefinedSpec r;
  for (std::size_t ell = 1;; ++ell) {
    // longest suffix of [n_lo, n_hi] on which F_n is (K_ell, 1/(2 ell^2))-invariant
    const Ratio tol{1, 2 * ell * ell};
    std::size_t n = n_hi + 1;
    while (n > n_lo && interval_defect(components(spec, n - 1), ell) <= tol) --n;
    if (n > n_hi) break;
    if (!r.thresholds.empty()) n = std::max(n, r.thresholds.back());
    r.thresholds.push_back(n);
  }
  r.ell.assign(n_hi + 1, 0);
  std::vector<std::vector<Interval>> sets;
  for (std::size_t n = 1; n <= n_hi; ++n) {
    std::size_t ell = 0;
    while (ell < r.thresholds.size() && r.thresholds[ell] <= n) ++ell;
    r.ell[n] = ell;
    const auto F = components(spec, n);
    auto Fp = ell ? core_plus_k(F, ell) : F;
    r.equivalence.push_back(Ratio{sym_diff(F, Fp), measure(F)});
    sets.push_back(std::move(Fp));
  }
  r.spec = FolnerSpec::interval_union(std::move(sets));
  return r;
}

// ---- additive construction

std::vector<std::uint64_t> shortest_components(const FolnerSpec& spec, std::size_t n_hi) {
  std::vector<std::uint64_t> ell(n_hi + 1, 0);
  for (std::size_t n = 1; n <= n_hi; ++n) {
    std::uint64_t m = UINT64_MAX;
    for (const auto& c : components(spec, n)) m = std::min<std::uint64_t>(m, c.hi - c.lo + 1);
    ell[n] = m == UINT64_MAX ? 0 : m;
  }
  return ell;
}

std::uint64_t threshold_t(const FolnerSpec& spec, const std::vector<std::uint64_t>& ell, std::uint64_t j) {
  const std::size_t n_hi = ell.size() - 1;
  for (std::size_t n = n_hi / 2 + 1; n <= n_hi; ++n)
    if (ell[n] < j)
      throw HorizonError("t_" + std::to_string(j) + ": F_" + std::to_string(n) +
                         " in the tail of the horizon still has a component shorter than " + std::to_string(j));
  std::uint64_t t = 0;
  for (std::size_t n = 1; n <= n_hi; ++n)
    if (ell[n] < j)
      for (const auto& c : components(spec, n)) t = std::max<std::uint64_t>(t, c.hi);
  return t;
}

AdditiveLiouville additive_liouville_normal(const FolnerSpec& spec, const BitSeq& source, std::size_t N,
                                            const AdditiveOptions& opt) {
  if (spec.semigroup() != Semigroup::Additive) throw std::invalid_argument("additive_liouville_normal: additive spec required");
  if (opt.word_scale == 0) throw std::invalid_argument("word_scale must be >= 1");
  std::size_t n_hi = opt.n_hi;
  if (auto m = spec.max_index()) n_hi = std::min(n_hi, *m);
  const auto ell = shortest_components(spec, n_hi);
  const auto vlen = [&](std::size_t k) -> std::uint64_t { return k * opt.word_scale; };

  AdditiveLiouville a;
  std::vector<std::uint64_t> W{0};  // W[k] = |w_k|
  for (std::size_t k = 1; W.back() < N || k <= opt.min_levels; ++k) {
    if (vlen(k) > source.size()) throw std::invalid_argument("source too short for v_" + std::to_string(k));
    const std::uint64_t copies = k == 1 ? 0 : k - 1;
    const std::uint64_t R = copies * W[k - 1];
    const std::uint64_t longest = std::max({vlen(k), vlen(k + 1), vlen(k + 2), W[k - 1]});
    const std::uint64_t t = k == 1 ? 0 : threshold_t(spec, ell, W[k - 1]);
    const std::uint64_t target = std::max({k * longest, k * R, t});
    const std::uint64_t reps = std::max<std::uint64_t>(1, target > R ? (target - R + vlen(k) - 1) / vlen(k) : 1);
    const std::uint64_t len = R + reps * vlen(k);
    const BitSeq v = BitSeq::generate(vlen(k), [&](std::size_t i) { return source[i]; }, "v");
    a.spec.u.push_back(BitSeq::generate(reps * vlen(k), [&](std::size_t i) { return v[(i - 1) % vlen(k) + 1]; }, "u"));
    a.spec.copies.push_back(copies);
    a.v_len.push_back(vlen(k));
    a.v_reps.push_back(reps);
    a.t_applied.push_back(t);
    a.delta.push_back(static_cast<double>(longest) / static_cast<double>(len));
    a.gamma.push_back(static_cast<double>(R) / static_cast<double>(len));
    a.eps.push_back(2 * (a.delta.back() + a.gamma.back()));
    W.push_back(len);
  }
  // copies of the last word in the next level are fixed by the rule already
  a.spec.copies.push_back(a.spec.u.size());
  a.x = build_repetitive(a.spec, N);
  return a;
}

CoverageReport word_coverage(const AdditiveLiouville& a, std::size_t k) {
  if (k < 2 || k + 2 > a.spec.u.size()) throw std::invalid_argument("word_coverage: need levels k-1..k+2");
  struct Tile {
    std::uint64_t len;
    bool covered;
  };
  const auto W = a.spec.lengths();
  std::vector<Tile> tiles;
  // expand w_L down to copies of w_{k-1} and copies of v_k, v_{k+1}, v_{k+2}
  auto expand = [&](auto&& self, std::size_t L) -> void {
    if (L == k - 1) {
      tiles.push_back({W[L - 1], false});
      return;
    }
    for (std::uint64_t c = 0; c < a.spec.copies_at(L); ++c) self(self, L - 1);
    for (std::uint64_t r = 0; r < a.v_reps[L - 1]; ++r) tiles.push_back({a.v_len[L - 1], true});
  };
  expand(expand, k + 2);
  const std::size_t T = tiles.size();
  std::vector<std::uint64_t> start(T + 1, 0), cov(T + 1, 0);
  for (std::size_t i = 0; i < T; ++i) {
    start[i + 1] = start[i] + tiles[i].len;
    cov[i + 1] = cov[i] + (tiles[i].covered ? tiles[i].len : 0);
  }
  const std::uint64_t n = start[T], minlen = W[k - 1];
  CoverageReport r;
  r.eps = a.eps[k - 1];
  // tile containing position s, then tiles ending inside [s, e]
  std::size_t first = 0;
  for (std::uint64_t s = 0; s + minlen <= n; ++s) {
    while (start[first] < s) ++first;  // first tile starting at or after s
    std::size_t last = first;          // tiles [first, last) end at or before e
    for (std::uint64_t e = s + minlen; e <= n; ++e) {
      while (last < T && start[last + 1] <= e) ++last;
      const std::uint64_t c = last > first ? cov[last] - cov[first] : 0;
      r.min_fraction = std::min(r.min_fraction, static_cast<double>(c) / static_cast<double>(e - s));
      ++r.subwords;
    }
  }
  return r;
}

// ---- multiplicative construction

Nat m_k_eps(unsigned k, Ratio eps) {
  if (eps.num == 0 || eps.num > eps.den) throw std::invalid_argument("m_k_eps: eps must lie in (0,1]");
  const auto& P = prime_table();
  const Nat p = *std::upper_bound(P.begin(), P.end(), static_cast<Nat>(k));
  const Nat r = (eps.den + eps.num - 1) / eps.num;
  return checked_pow(p, static_cast<unsigned>(r));
}

bool ZoneSchedule::in_zone(Nat i) const {
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (i <= m[j]) return false;  // zones are increasing and disjoint
    if (i <= (j + 2) * m[j]) return true;
  }
  return false;
}

bool ZoneSchedule::disjoint() const {
  for (std::size_t j = 0; j + 1 < m.size(); ++j)
    if (!((j + 2) * static_cast<unsigned __int128>(m[j]) < m[j + 1] + static_cast<unsigned __int128>(1))) return false;
  return true;
}

namespace {

// leading parameters L_1, L_2, ... of a nice spec while they fit 63 bits
std::vector<Nat> leading_parameters(const FolnerSpec& spec) {
  if (spec.kind() != FolnerSpec::Kind::NiceBoxes) throw std::invalid_argument("nice boxes spec required");
  if (!spec.leading_list().empty()) return spec.leading_list();
  std::vector<Nat> L;
  const std::size_t top = spec.max_index().value_or(4096);
  for (std::size_t n = 1; n <= top; ++n) {
    try {
      L.push_back(spec.box(n).leading_parameter());
    } catch (const std::overflow_error&) {
      break;
    }
  }
  return L;
}

std::optional<Nat> candidate(unsigned k, const std::vector<Nat>& L) {
  Nat mke;
  try {
    mke = m_k_eps(k, Ratio{1, Nat{1} << std::min(k, 62u)});
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  for (std::size_t n = 0; n < L.size(); ++n)
    if (L[n] % mke == 0) {
      const Nat prev = n ? L[n - 1] : 1;
      const Nat g = std::gcd(mke, prev);
      try {
        return checked_mul(mke / g, prev);
      } catch (const std::overflow_error&) {
        return std::nullopt;
      }
    }
  return std::nullopt;
}

}  // namespace

std::vector<Nat> desk_leading_list() {
  std::vector<Nat> L{2, 4, 12, 36, 108, 324};
  for (int t = 0; t < 8; ++t) L.push_back(L.back() * 5);
  return L;
}

ZoneSchedule zone_schedule(const FolnerSpec& spec, Nat N) {
  const auto L = leading_parameters(spec);
  ZoneSchedule z;
  unsigned kp = 1;
  for (unsigned j = 1;; ++j) {
    if (!z.m.empty() && z.m.back() > N) break;
    const unsigned __int128 need = z.m.empty() ? 0 : static_cast<unsigned __int128>(j) * z.m.back();
    std::optional<Nat> found;
    for (kp = std::max(kp, j); kp < 64; ++kp) {
      const auto c = candidate(kp, L);
      if (!c) break;  // later candidates need even larger prime powers
      if (*c > need) {
        found = c;
        break;
      }
    }
    if (!found) {
      // any later slot is a multiple of m_{k',2^-k'} for some k' >= j
      Nat lb = kNatLimit;
      try {
        lb = m_k_eps(j, Ratio{1, Nat{1} << std::min(j, 62u)});
      } catch (const std::overflow_error&) {
      }
      z.next_lower_bound = lb;
      if (lb <= N) throw std::runtime_error("zone_schedule: spec exhausts before m_" + std::to_string(j) + " is found");
      return z;
    }
    z.m.push_back(*found);
    z.source_index.push_back(kp);
    ++kp;
  }
  z.next_lower_bound = z.m.back();
  return z;
}

MultLiouville mult_liouville_normal(const FolnerSpec& spec, const BitSeq& base, std::size_t N) {
  if (base.size() < N) throw std::invalid_argument("mult_liouville_normal: base shorter than N");
  MultLiouville r;
  r.zones = zone_schedule(spec, N);
  BitSeqBuilder b;
  b.reserve(N);
  for (std::size_t i = 1; i <= N; ++i) b.push_back(base[i]);
  for (std::size_t j = 1; j <= r.zones.m.size(); ++j) {
    const Nat m = r.zones.m[j - 1];
    const Nat hi = std::min<Nat>(N, static_cast<Nat>(j + 1) * m);
    for (Nat i = m + 1; i <= hi; ++i) b.set(i, b.get((i - 1) % m + 1));
  }
  r.x = std::move(b).build("mult-liouville(" + spec.describe() + "," + base.provenance() + ")");

  // w_1 = base|[1,m_1], w_j = w_{j-1}^j base|[j m_{j-1}+1, m_j]
  r.spec.copies.push_back(0);
  for (std::size_t j = 1; j <= r.zones.m.size(); ++j) {
    const Nat m = r.zones.m[j - 1];
    if (m > base.size()) break;
    const Nat lo = j == 1 ? 1 : j * r.zones.m[j - 2] + 1;
    r.spec.u.push_back(BitSeq::generate(m - lo + 1, [&](std::size_t i) { return base[lo + i - 1]; }, "u"));
    r.spec.copies.push_back(j + 1);
  }
  if (r.spec.u.empty()) throw std::invalid_argument("mult_liouville_normal: base does not reach m_1");
  return r;
}

ZoneDensity zone_density(const ZoneSchedule& z, const FolnerSpec& spec, std::size_t n) {
  const AnchoredBox box = spec.box(n);
  const Nat Ln = box.leading_parameter();
  const FiniteSet F = box.elements();
  ZoneDensity d{n, F.size(), 0, 0, 0};
  for (Nat i : F) d.in_zones += z.in_zone(i);
  d.fraction = static_cast<double>(d.in_zones) / static_cast<double>(d.card);
  const double cube = std::cbrt(static_cast<double>(d.card));
  d.bound = 1.0 / cube;
  for (std::size_t j = 1; j <= z.m.size(); ++j) {
    const double km = static_cast<double>(j) * static_cast<double>(z.m[j - 1]);
    const bool small = km <= cube, large = z.m[j - 1] >= Ln;
    if (!small && !large) d.bound += std::ldexp(1.0, -static_cast<int>(j));
  }
  // unknown later slots fall in the large class only when their lower bound clears L_n
  if (z.next_lower_bound < Ln) d.bound += std::ldexp(1.0, -static_cast<int>(z.m.size()));
  return d;
}

}  // namespace normlab
