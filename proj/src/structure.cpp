#include "normlab/structure.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace normlab {

// ---- NatSet

NatSet::NatSet(std::vector<Nat> sorted, Nat horizon, std::string prov)
    : v_(std::move(sorted)), N_(horizon), prov_(std::move(prov)) {
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (v_[i] < 1 || v_[i] > N_) throw std::invalid_argument("NatSet: element outside [1, horizon]");
    if (i && v_[i] <= v_[i - 1]) throw std::invalid_argument("NatSet: elements must be strictly increasing");
  }
}

NatSet NatSet::from_predicate(Nat horizon, const std::function<bool(Nat)>& in, std::string prov) {
  std::vector<Nat> v;
  for (Nat m = 1; m <= horizon; ++m)
    if (in(m)) v.push_back(m);
  return NatSet(std::move(v), horizon, std::move(prov));
}

NatSet NatSet::support(const BitSeq& x) {
  std::vector<Nat> v;
  for (std::size_t i = 1; i <= x.size(); ++i)
    if (x[i]) v.push_back(i);
  return NatSet(std::move(v), x.size(), "support(" + x.provenance() + ")");
}

bool NatSet::contains(Nat m) const {
  if (m > N_) throw std::out_of_range("NatSet: " + std::to_string(m) + " lies beyond the horizon " + std::to_string(N_));
  return std::binary_search(v_.begin(), v_.end(), m);
}

BitSeq NatSet::indicator() const {
  BitSeqBuilder b;
  b.reserve(N_);
  for (Nat m = 1; m <= N_; ++m) b.push_back(false);
  for (Nat m : v_) b.set(m, true);
  return std::move(b).build(prov_);
}

namespace {

// bitmap indexed 0..horizon
std::vector<std::uint8_t> bitmap(const NatSet& A) {
  std::vector<std::uint8_t> b(A.horizon() + 1, 0);
  for (Nat m : A) b[m] = 1;
  return b;
}

}  // namespace

NatSet set_transform(const NatSet& A, Transform kind, Nat n) {
  const Nat N = A.horizon();
  std::vector<Nat> v;
  switch (kind) {
    case Transform::Div: {
      if (n < 1) throw std::invalid_argument("div: n >= 1");
      for (Nat a : A)
        if (a % n == 0) v.push_back(a / n);
      return NatSet(std::move(v), N / n, A.provenance() + "/" + std::to_string(n));
    }
    case Transform::Times:
      if (n < 1) throw std::invalid_argument("times: n >= 1");
      for (Nat a : A) v.push_back(checked_mul(a, n));
      return NatSet(std::move(v), checked_mul(N, n), std::to_string(n) + "*" + A.provenance());
    case Transform::Plus:
      for (Nat a : A) v.push_back(checked_add(a, n));
      return NatSet(std::move(v), checked_add(N, n), A.provenance() + "+" + std::to_string(n));
    case Transform::Minus:
      if (n >= N) return NatSet({}, 0, A.provenance() + "-" + std::to_string(n));
      for (Nat a : A)
        if (a > n) v.push_back(a - n);
      return NatSet(std::move(v), N - n, A.provenance() + "-" + std::to_string(n));
  }
  throw std::logic_error("set_transform");
}

// ---- configuration searches

const char* to_string(Pattern p) {
  switch (p) {
    case Pattern::Linear: return "linear";
    case Pattern::Power: return "power";
    case Pattern::SumProd: return "sumprod";
    case Pattern::GeoArith: return "geoarith";
    case Pattern::PolyGeo: return "polygeo";
  }
  return "";
}

std::vector<std::string> witness_fields(Pattern p) {
  switch (p) {
    case Pattern::Linear:
    case Pattern::Power: return {"a", "b", "c"};
    case Pattern::SumProd: return {"a", "b"};
    case Pattern::GeoArith: return {"q", "d", "a"};
    case Pattern::PolyGeo: return {"d", "a", "b"};
  }
  return {};
}

namespace {

// Runs body(idx, out) for idx in [0, outer) and concatenates in index order,
// stopping once `cap` witnesses are known (cap 0 = all).
template <class Body>
std::vector<Witness> ordered_search(std::size_t outer, std::size_t cap, Body&& body) {
  std::vector<Witness> out;
  const std::size_t chunk = cap ? 64 : outer;
  for (std::size_t lo = 0; lo < outer; lo += chunk) {
    const std::size_t hi = std::min(outer, lo + chunk);
    std::vector<std::vector<Witness>> part(hi - lo);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t idx = lo; idx < hi; ++idx) body(idx, part[idx - lo]);
    for (auto& p : part)
      for (auto& w : p) {
        out.push_back(std::move(w));
        if (cap && out.size() >= cap) return out;
      }
  }
  return out;
}

void guard(long double candidates) {
  if (candidates > static_cast<long double>(kMaxCandidates))
    throw std::length_error("config_search: " + std::to_string(static_cast<double>(candidates)) +
                            " candidates exceed the search guard");
}

std::vector<Nat> divisors_upto(const ExpVec& e, Nat limit) {
  std::vector<Nat> d{1};
  for (std::size_t i = 0; i < e.dim(); ++i) {
    const Nat p = nth_prime(i);
    const std::size_t base = d.size();
    for (std::size_t t = 0; t < base; ++t) {
      Nat v = d[t];
      for (std::uint32_t r = 1; r <= e[i]; ++r) {
        if (v > limit / p) break;
        v *= p;
        d.push_back(v);
      }
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

ExpVec scaled(const ExpVec& e, unsigned k) {
  std::vector<std::uint32_t> v(e.exps());
  for (auto& x : v) x *= k;
  return ExpVec(std::move(v));
}

}  // namespace

std::vector<Witness> power_solutions(const NatSet& B, unsigned k, std::size_t max_witnesses) {
  if (k < 1) throw std::invalid_argument("power: k >= 1");
  const Nat N = B.horizon();
  const auto in = bitmap(B);
  const long double N2 = static_cast<long double>(N) * static_cast<long double>(N);
  std::vector<Nat> cs;
  long double cand = 0;
  for (Nat c : B) {
    if (std::pow(static_cast<long double>(c), k) > N2) break;
    cs.push_back(c);
    long double d = 1;
    const ExpVec ec = nat_to_expvec(c);
    for (auto e : ec.exps()) d *= static_cast<long double>(k) * e + 1;
    cand += d;
  }
  guard(cand);
  return ordered_search(cs.size(), max_witnesses, [&](std::size_t idx, std::vector<Witness>& out) {
    const Nat c = cs[idx];
    const Nat ck = checked_pow(c, k);
    for (Nat a : divisors_upto(scaled(nat_to_expvec(c), k), N)) {
      const Nat b = ck / a;
      if (b <= N && in[a] && in[b]) out.push_back({{a, b, c}});
    }
  });
}

std::vector<Witness> config_search(const NatSet& A, Pattern p, const SearchBounds& bd) {
  const Nat N = A.horizon();
  const auto in = bitmap(A);
  const std::size_t W = bd.max_witnesses;
  auto has = [&](Nat m) { return m >= 1 && m <= N && in[m]; };
  switch (p) {
    case Pattern::Linear: {
      if (bd.coeffs.size() != 3 || bd.coeffs[0] < 1 || bd.coeffs[1] < 1 || bd.coeffs[2] < 1)
        throw std::invalid_argument("linear: three positive coefficients i,j,k");
      const Nat i = bd.coeffs[0], j = bd.coeffs[1], k = bd.coeffs[2];
      checked_mul(checked_add(i, j), N);
      guard(static_cast<long double>(A.size()) * A.size());
      const auto& el = A.elems();
      return ordered_search(el.size(), W, [&](std::size_t idx, std::vector<Witness>& out) {
        const Nat a = el[idx];
        for (Nat b : el) {
          const Nat s = i * a + j * b;
          if (s % k == 0 && has(s / k)) {
            out.push_back({{a, b, s / k}});
            if (W && out.size() >= W) return;
          }
        }
      });
    }
    case Pattern::Power:
      return power_solutions(A, bd.order, W);
    case Pattern::SumProd: {
      const Nat amax = std::min(bd.a_max, N);
      long double cand = 0;
      for (Nat a = 1; a <= amax; ++a) cand += static_cast<long double>(N / a);
      guard(cand);
      return ordered_search(amax, W, [&](std::size_t idx, std::vector<Witness>& out) {
        const Nat a = idx + 1;
        for (Nat b = 1; b <= N / a && a + b <= N; ++b)
          if (in[a + b] && in[a * b]) {
            out.push_back({{a, b}});
            if (W && out.size() >= W) return;
          }
      });
    }
    case Pattern::GeoArith:
    case Pattern::PolyGeo: {
      const unsigned n = bd.order;
      const bool geo = p == Pattern::GeoArith;
      // outer pairs (q, d) or (d, a), inner a or b
      const Nat o1 = geo ? (bd.q_max >= 2 ? bd.q_max - 1 : 0) : bd.d_max;
      const Nat o2 = geo ? bd.d_max : bd.a_max;
      const Nat inner = geo ? bd.a_max : bd.b_max;
      guard(static_cast<long double>(o1) * o2 * inner);
      auto member_all = [&](Nat x, Nat y, Nat z) {
        for (unsigned s = 0; s <= n; ++s)
          for (unsigned t = 0; t <= n; ++t) {
            // GeoArith: q^t (a + s d) with (x,y,z) = (q,d,a); PolyGeo: b (a + s d)^t with (x,y,z) = (d,a,b)
            Nat v;
            try {
              v = geo ? checked_mul(checked_pow(x, t), checked_add(z, checked_mul(s, y)))
                      : checked_mul(z, checked_pow(checked_add(y, checked_mul(s, x)), t));
            } catch (const std::overflow_error&) {
              return false;
            }
            if (!has(v)) return false;
          }
        return true;
      };
      return ordered_search(o1 * o2, W, [&](std::size_t idx, std::vector<Witness>& out) {
        const Nat x = idx / o2 + (geo ? 2 : 1), y = idx % o2 + 1;
        for (Nat z = 1; z <= inner; ++z)
          if (member_all(x, y, z)) {
            out.push_back({{x, y, z}});
            if (W && out.size() >= W) return;
          }
      });
    }
  }
  throw std::logic_error("config_search");
}

bool check_witness(const NatSet& A, Pattern p, const SearchBounds& bd, const Witness& w) {
  auto has = [&](Nat m) { return m >= 1 && m <= A.horizon() && A.contains(m); };
  const auto& v = w.v;
  switch (p) {
    case Pattern::Linear:
      return v.size() == 3 && has(v[0]) && has(v[1]) && has(v[2]) &&
             bd.coeffs[0] * v[0] + bd.coeffs[1] * v[1] == bd.coeffs[2] * v[2];
    case Pattern::Power:
      return v.size() == 3 && has(v[0]) && has(v[1]) && has(v[2]) &&
             static_cast<unsigned __int128>(v[0]) * v[1] == static_cast<unsigned __int128>(checked_pow(v[2], bd.order));
    case Pattern::SumProd:
      return v.size() == 2 && has(v[0] + v[1]) && has(v[0] * v[1]);
    case Pattern::GeoArith:
    case Pattern::PolyGeo:
      if (v.size() != 3) return false;
      for (unsigned s = 0; s <= bd.order; ++s)
        for (unsigned t = 0; t <= bd.order; ++t) {
          const Nat x = p == Pattern::GeoArith ? checked_pow(v[0], t) * (v[2] + s * v[1])
                                               : v[2] * checked_pow(v[1] + s * v[0], t);
          if (!has(x)) return false;
        }
      return true;
  }
  return false;
}

// ---- thick counterexample

bool runs_solve_linear(const std::vector<Interval>& runs, Nat i, Nat j, Nat k) {
  for (const auto& A : runs)
    for (const auto& B : runs)
      for (const auto& C : runs) {
        const Nat lo = std::max(i * A.lo + j * B.lo, k * C.lo), hi = std::min(i * A.hi + j * B.hi, k * C.hi);
        if (lo > hi) continue;
        for (Nat a = A.lo; a <= A.hi; ++a) {
          const Nat c_lo = std::max(C.lo, (i * a + j * B.lo + k - 1) / k);
          const Nat c_hi = std::min(C.hi, (i * a + j * B.hi) / k);
          for (Nat c = c_lo; c <= c_hi; ++c)
            if ((k * c - i * a) % j == 0) return true;
        }
      }
  return false;
}

namespace {

// k[1,1+d] misses i[1,1+2d], j[1,1+2d] and (i+j)[1,1+d] for d = 1/D
bool delta_separates(Nat i, Nat j, Nat k, Nat D) {
  const Nat klo = k * D, khi = k * (D + 1);
  auto apart = [&](Nat lo, Nat hi) { return khi < lo || klo > hi; };
  return apart(i * D, i * (D + 2)) && apart(j * D, j * (D + 2)) && apart((i + j) * D, (i + j) * (D + 1));
}

Nat ceil_div(Nat a, Nat b) { return (a + b - 1) / b; }

}  // namespace

ThickCounterexample thick_counterexample(Nat i, Nat j, Nat k, Nat N) {
  if (i < 1 || j < 1 || k < 1) throw std::invalid_argument("thick_counterexample: coefficients must be positive");
  if (k == i || k == j || k == i + j)
    throw std::invalid_argument("thick_counterexample: k in {i, j, i+j} makes the equation partition regular");
  // separation is monotone in delta: bisect on the exponent t of delta = 2^-t
  unsigned lo = 1, hi = 40;
  if (!delta_separates(i, j, k, Nat{1} << hi)) throw std::runtime_error("thick_counterexample: no dyadic delta found");
  while (lo < hi) {
    const unsigned mid = (lo + hi) / 2;
    if (delta_separates(i, j, k, Nat{1} << mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  const Nat D = Nat{1} << lo;
  const Nat mn = std::min(i, j);
  // R j delta >= i(1+delta), R i delta >= j(1+delta), R k > (i+j)(1+2 delta), R min(i,j) > k(1+delta), R >= 10(1+delta)
  Nat R = std::max({ceil_div(i * (D + 1), j), ceil_div(j * (D + 1), i), (i + j) * (D + 2) / (k * D) + 1,
                    k * (D + 1) / (mn * D) + 1, ceil_div(10 * (D + 1), D)});
  ThickCounterexample t;
  t.cert = {i, j, k, Ratio{1, D}, R, {}, 0, false};
  std::vector<Nat> v;
  for (Nat r = D; r <= N; r = checked_mul(r, R)) {
    const Interval I{r, std::min(N, r + r / D)};
    t.cert.blocks.push_back(I);
    t.cert.longest_interval = std::max(t.cert.longest_interval, I.hi - I.lo + 1);
    for (Nat m = I.lo; m <= I.hi; ++m) v.push_back(m);
    if (r > N / R) break;
  }
  t.A = NatSet(std::move(v), N, "thick(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
  t.cert.solution_free = !runs_solve_linear(t.cert.blocks, i, j, k);
  return t;
}

// ---- densities

std::vector<DensityPoint> intersection_density(const NatSet& A, const std::vector<Nat>& divs, const FolnerSpec& spec,
                                               const std::vector<std::size_t>& ns) {
  const auto in = bitmap(A);
  std::vector<DensityPoint> out;
  for (std::size_t n : ns) {
    const FiniteSet F = spec.set(n);
    for (Nat d : divs)
      if (d < 1 || (!F.empty() && checked_mul(d, F.max()) > A.horizon()))
        throw std::out_of_range("intersection_density: horizon does not cover n_i * max F_n");
    std::uint64_t hits = 0;
    for (Nat g : F) {
      bool all = true;
      for (Nat d : divs) all = all && in[d * g];
      hits += all;
    }
    out.push_back({n, F.size(), hits, F.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(F.size())});
  }
  return out;
}

IndependenceProfile independence_profile(const NatSet& A, const FiniteSet& K, const FolnerSpec& spec, std::size_t n) {
  if (K.empty() || K.size() > kMaxBlockSupport) throw std::invalid_argument("independence_profile: 1 <= |K| <= 20");
  const Semigroup s = spec.semigroup();
  const FiniteSet F = spec.set(n);
  if (!F.empty() && combine(s, K.max(), F.max()) > A.horizon())
    throw std::out_of_range("independence_profile: horizon does not cover K o F_n");
  const auto in = bitmap(A);
  IndependenceProfile r;
  r.table.k = K.size();
  r.table.counts.assign(std::size_t{1} << K.size(), 0);
  r.table.total = F.size();
  for (Nat g : F) {
    std::uint64_t pat = 0;
    for (std::size_t t = 0; t < K.size(); ++t) pat |= std::uint64_t{in[combine(s, K[t], g)]} << t;
    ++r.table.counts[pat];
  }
  r.defect = normality_defect(r.table);
  return r;
}

// ---- orto

namespace {

std::vector<Nat> leading_of(const FolnerSpec& spec) {
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

}  // namespace

bool OrtoSet::member(Nat g) const {
  const auto it = std::find_if(leading.begin(), leading.end(), [&](Nat L) { return L % g == 0; });
  if (it == leading.end()) return false;
  const std::size_t n0 = static_cast<std::size_t>(it - leading.begin()) + 1;
  if (n0 <= thresholds.front()) return true;
  for (const auto& st : stages)
    if (n0 >= st.first && n0 <= st.last) {
      Nat f = 1;
      for (unsigned t = 2; t <= st.m; ++t) f *= t;
      return g % f == 0;
    }
  return false;
}

double OrtoSet::mult_density(std::size_t n) const {
  const FiniteSet K = divisors(leading.at(n - 1));
  std::uint64_t c = 0;
  for (Nat g : K) c += member(g);
  return static_cast<double>(c) / static_cast<double>(K.size());
}

double OrtoSet::guaranteed(std::size_t n) const {
  if (n <= thresholds.front()) return 1.0;
  for (const auto& st : stages)
    if (n >= st.first && n <= st.last) return 1.0 - 1.0 / st.m;
  return 0.0;
}

double OrtoSet::additive_density() const {
  return A.horizon() ? static_cast<double>(A.size()) / static_cast<double>(A.horizon()) : 0.0;
}

OrtoSet orto_set(const FolnerSpec& spec, Nat N) {
  OrtoSet o;
  o.leading = leading_of(spec);
  const std::size_t nmax = o.leading.size();
  std::vector<ExpVec> E;
  for (Nat L : o.leading) E.push_back(nat_to_expvec(L));
  Nat fact = 1;
  for (unsigned m = 2; m < 64; ++m) {
    try {
      fact = checked_mul(fact, m);
    } catch (const std::overflow_error&) {
      break;
    }
    const ExpVec M = nat_to_expvec(fact);
    // fraction of multiples of m! among divisors of L_n exceeds 1 - 1/m
    auto good = [&](std::size_t n) {
      const ExpVec& e = E[n - 1];
      unsigned __int128 num = 1, den = 1;
      for (std::size_t t = 0; t < std::max(e.dim(), M.dim()); ++t) {
        if (M[t] > e[t]) return false;
        num *= e[t] - M[t] + 1;
        den *= e[t] + 1;
      }
      return num * m > den * (m - 1);
    };
    std::size_t n = nmax;
    while (n >= 1 && good(n)) --n;
    if (n == nmax) break;
    if (!o.thresholds.empty()) n = std::max(n, o.thresholds.back());
    o.thresholds.push_back(n);
  }
  if (o.thresholds.size() < 2) throw std::runtime_error("orto_set: horizon too small to exhibit two threshold stages");
  for (std::size_t t = 0; t < o.thresholds.size(); ++t) {
    const std::size_t first = o.thresholds[t] + 1;
    const std::size_t last = t + 1 < o.thresholds.size() ? o.thresholds[t + 1] : nmax;
    if (first <= last) o.stages.push_back({static_cast<unsigned>(t + 2), first, last});
  }
  o.A = NatSet::from_predicate(N, [&](Nat g) { return o.member(g); }, "orto(" + spec.describe() + ")");
  return o;
}

// ---- ex9

namespace {

bool leq(const ExpVec& a, const ExpVec& b, std::uint32_t s) {
  for (std::size_t t = 0; t < a.dim(); ++t)
    if (a[t] > s * b[t]) return false;
  return true;
}

}  // namespace

bool Ex9Set::member(Nat g) const {
  if (g < 1 || L.empty()) return false;
  std::size_t dims = 0;
  std::vector<ExpVec> E;
  for (Nat l : L) {
    E.push_back(nat_to_expvec(l));
    dims = std::max(dims, E.back().dim());
  }
  const auto pf = factor_partial(g, dims);
  if (pf.cofactor != 1) return false;
  const ExpVec e(pf.exps);
  for (const auto& en : E)
    if (leq(e, en, 3)) return !leq(e, en, 2);
  return false;
}

Ex9Set ex9_set(const std::vector<Nat>& L, Nat N) {
  if (L.empty()) throw std::invalid_argument("ex9_set: empty list");
  std::vector<ExpVec> E;
  for (Nat l : L) E.push_back(nat_to_expvec(l));
  for (std::size_t n = 0; n + 1 < E.size(); ++n)
    if (!leq(scaled(E[n], 5), E[n + 1], 1)) throw std::invalid_argument("ex9_set: L_n^5 must divide L_{n+1}");
  Ex9Set x;
  x.L = L;
  std::size_t dims = 0;
  for (const auto& e : E) dims = std::max(dims, e.dim());
  x.B = NatSet::from_predicate(N, [&](Nat g) {
    const auto pf = factor_partial(g, dims);
    if (pf.cofactor != 1) return false;
    const ExpVec e(pf.exps);
    for (const auto& en : E)
      if (leq(e, en, 3)) return !leq(e, en, 2);
    return false;
  }, "ex9");

  std::uint64_t earlier = 0;  // sum of |B_m| for m < n
  for (std::size_t n = 0; n < E.size(); ++n) {
    const auto& e = E[n];
    std::uint64_t card = 1, inner = 1;
    for (auto k : e.exps()) {
      card *= 3 * k + 1;
      inner *= 2 * k + 1;
    }
    if (card > kMaxDivisors) break;
    // odometer over the box of L_n^3
    std::vector<std::uint32_t> g(e.dim(), 0);
    std::uint64_t in_B = 0;
    for (std::uint64_t c = 0; c < card; ++c) {
      const ExpVec v(g);
      bool mem = false;
      for (const auto& em : E)
        if (leq(v, em, 3)) {
          mem = !leq(v, em, 2);
          break;
        }
      in_B += mem;
      for (std::size_t t = 0; t < g.size(); ++t) {
        if (++g[t] <= 3 * e[t]) break;
        g[t] = 0;
      }
    }
    Ex9Stage st;
    st.n = n + 1;
    st.exps = e.exps();
    st.card = card;
    st.in_B = in_B;
    st.fraction = Ratio{in_B, card};
    st.product_form = Ratio{card - inner + earlier, card};
    st.density_bound = 1.0 - std::pow(2.0 / 3.0, static_cast<double>(e.dim()));
    x.stages.push_back(st);
    earlier += card - inner;
  }
  const auto sols = power_solutions(x.B, 3, 1);
  x.solution_free = sols.empty();
  for (Nat c : x.B) {
    if (std::pow(static_cast<long double>(c), 3) > static_cast<long double>(N) * N) break;
    ++x.checked_c;
  }
  return x;
}

// ---- covers

std::vector<DensityPoint> cover_density(const NatSet& A, const std::vector<Nat>& B, const FolnerSpec& spec,
                                        const std::vector<std::size_t>& ns, CoverOp op) {
  const Nat N = A.horizon();
  const auto in = bitmap(A);
  if ((op == CoverOp::LinearSum || op == CoverOp::LinearDiff) && (B.size() != 2 || B[0] < 1 || B[1] < 1))
    throw std::invalid_argument("cover_density: nA +- mA needs coefficients n, m >= 1");
  std::vector<DensityPoint> out;
  for (std::size_t n : ns) {
    const FiniteSet F = spec.set(n);
    if (op == CoverOp::Sum && !F.empty() && !B.empty() && F.max() > N + *std::min_element(B.begin(), B.end()))
      throw std::out_of_range("cover_density: horizon does not cover F_n - B");
    if (op == CoverOp::Product && !F.empty() && F.max() > N)
      throw std::out_of_range("cover_density: horizon does not cover F_n");
    std::vector<std::uint8_t> hit(F.size(), 0);
#pragma omp parallel for schedule(static)
    for (std::size_t t = 0; t < F.size(); ++t) {
      const Nat g = F[t];
      bool h = false;
      switch (op) {
        case CoverOp::Sum:
          for (Nat b : B)
            if (b < g && g - b <= N && in[g - b]) {
              h = true;
              break;
            }
          break;
        case CoverOp::Product:
          for (Nat b : B)
            if (b >= 1 && g % b == 0 && g / b <= N && in[g / b]) {
              h = true;
              break;
            }
          break;
        case CoverOp::LinearSum:
          for (Nat a : A) {
            if (B[0] * a >= g) break;
            const Nat r = g - B[0] * a;
            if (r % B[1] == 0 && r / B[1] <= N && in[r / B[1]]) {
              h = true;
              break;
            }
          }
          break;
        case CoverOp::LinearDiff:
          for (Nat a2 : A) {
            const Nat s = g + B[1] * a2;
            if (s / B[0] > N) break;
            if (s % B[0] == 0 && in[s / B[0]]) {
              h = true;
              break;
            }
          }
          break;
      }
      hit[t] = h;
    }
    std::uint64_t hits = 0;
    for (auto h : hit) hits += h;
    out.push_back({n, F.size(), hits, F.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(F.size())});
  }
  return out;
}

}  // namespace normlab
