#include <gtest/gtest.h>

#include <random>
#include <set>

#include "normlab/folner.hpp"

using namespace normlab;

namespace {

// trial division oracle
std::vector<std::pair<Nat, unsigned>> trial_factor(Nat m) {
  std::vector<std::pair<Nat, unsigned>> f;
  for (Nat p = 2; p * p <= m; ++p) {
    unsigned e = 0;
    while (m % p == 0) m /= p, ++e;
    if (e) f.push_back({p, e});
  }
  if (m > 1) f.push_back({m, 1});
  return f;
}

std::vector<Nat> brute_divisors(Nat L) {
  std::vector<Nat> d;
  for (Nat i = 1; i <= L; ++i)
    if (L % i == 0) d.push_back(i);
  return d;
}

}  // namespace

TEST(ExpVec, PrimeTable) {
  const auto& P = prime_table();
  ASSERT_EQ(P.size(), kPrimeTableSize);
  EXPECT_EQ(P[0], 2u);
  EXPECT_EQ(P[9], 29u);
  EXPECT_EQ(P.back(), 104729u);
  EXPECT_EQ(prime_index(7), 3u);
  EXPECT_THROW(prime_index(9), std::out_of_range);
}

TEST(ExpVec, FactorisationMatchesTrialDivision) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 2000; ++t) {
    const Nat m = 1 + rng() % 5'000'000;
    const auto f = trial_factor(m);
    if (f.back().first > prime_table().back()) {
      EXPECT_THROW(nat_to_expvec(m), std::out_of_range) << m;
      continue;
    }
    const ExpVec e = nat_to_expvec(m);
    for (auto [p, k] : f) EXPECT_EQ(e[prime_index(p)], k) << m;
    EXPECT_EQ(expvec_to_nat(e), m);
  }
}

TEST(ExpVec, ArithmeticAndErrors) {
  EXPECT_EQ(nat_to_expvec(12) + nat_to_expvec(10), nat_to_expvec(120));
  EXPECT_TRUE(nat_to_expvec(6).divides(nat_to_expvec(36)));
  EXPECT_FALSE(nat_to_expvec(8).divides(nat_to_expvec(36)));
  EXPECT_EQ(ExpVec({1, 0, 0}), ExpVec({1}));
  EXPECT_THROW(nat_to_expvec(0), std::out_of_range);
  EXPECT_THROW(expvec_to_nat(ExpVec({64})), std::overflow_error);
  EXPECT_THROW(checked_mul(Nat{1} << 40, Nat{1} << 40), std::overflow_error);
  const auto pf = factor_partial(2 * 2 * 3 * 7 * 11, 2);
  EXPECT_EQ(pf.exps, (std::vector<std::uint32_t>{2, 1}));
  EXPECT_EQ(pf.cofactor, 77u);
}

TEST(FiniteSet, SetAlgebra) {
  const auto a = FiniteSet::from_unsorted({5, 1, 3, 3}), b = FiniteSet::range(2, 5);
  EXPECT_EQ(a.elems(), (std::vector<Nat>{1, 3, 5}));
  EXPECT_EQ(set_union(a, b).elems(), (std::vector<Nat>{1, 2, 3, 4, 5}));
  EXPECT_EQ(set_intersection(a, b).elems(), (std::vector<Nat>{3, 5}));
  EXPECT_EQ(symmetric_difference_size(a, b), 3u);
  EXPECT_THROW(FiniteSet::from_sorted({2, 1}), std::invalid_argument);
}

TEST(AnchoredBox, DivisorsAndColex) {
  for (Nat L : {1ull, 12ull, 360ull, 2310ull, 65536ull}) {
    EXPECT_EQ(divisors(L).elems(), brute_divisors(L)) << L;
  }
  const AnchoredBox b({2, 1, 1});
  EXPECT_EQ(b.cardinality(), 12u);
  EXPECT_EQ(b.leading_parameter(), 60u);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < b.cardinality(); ++i) {
    const ExpVec g = b.colex_point(i);
    EXPECT_TRUE(b.contains(g));
    EXPECT_EQ(b.colex_index(g), i);
    seen.insert(expvec_to_nat(g));
  }
  EXPECT_EQ(seen.size(), 12u);
  EXPECT_EQ(b.colex_point(1), ExpVec({1}));  // first coordinate fastest
  EXPECT_EQ(b.colex_point(3), ExpVec({0, 1}));
}

TEST(DirectionSchedule, StaircaseAndToeplitz) {
  const auto s = DirectionSchedule::staircase();
  const std::vector<std::uint32_t> expect{1, 1, 2, 1, 2, 3, 1, 2, 3, 4, 1};
  for (std::size_t n = 1; n <= expect.size(); ++n) EXPECT_EQ(s.at(n), expect[n - 1]);
  const auto t = DirectionSchedule::toeplitz();
  const std::vector<std::uint32_t> tex{1, 2, 1, 3, 1, 2, 1, 4};
  for (std::size_t n = 1; n <= tex.size(); ++n) EXPECT_EQ(t.at(n), tex[n - 1]);
  for (const auto& sch : {s, t})
    for (std::size_t N = 0; N < 300; ++N) {
      std::vector<std::uint32_t> c;
      for (std::size_t n = 1; n <= N; ++n) {
        const auto d = sch.at(n);
        if (c.size() < d) c.resize(d, 0);
        ++c[d - 1];
      }
      EXPECT_EQ(sch.counts(N), c) << sch.name() << " N=" << N;
    }
}

TEST(FolnerSpec, ConstructionAndValidation) {
  EXPECT_EQ(FolnerSpec::classical().set(4).elems(), (std::vector<Nat>{1, 2, 3, 4}));
  const auto iu = FolnerSpec::interval_union({{{1, 2}, {5, 6}}, {{3, 9}}});
  EXPECT_EQ(iu.set(1).elems(), (std::vector<Nat>{1, 2, 5, 6}));
  EXPECT_EQ(iu.cardinality(2), 7u);
  EXPECT_THROW(FolnerSpec::interval_union({{{1, 4}, {5, 6}}}), std::invalid_argument);  // touching
  EXPECT_EQ(FolnerSpec::interval_union({{{5, 6}, {1, 2}}}).set(1).elems(), (std::vector<Nat>{1, 2, 5, 6}));
  EXPECT_THROW(FolnerSpec::nice_boxes({4, 6}), std::invalid_argument);                  // 4 does not divide 6
  EXPECT_THROW(FolnerSpec::nice_boxes({4, 4}), std::invalid_argument);                  // not strict
  const auto nb = FolnerSpec::nice_boxes({2, 6, 12});
  EXPECT_EQ(nb.semigroup(), Semigroup::Multiplicative);
  EXPECT_EQ(nb.set(2).elems(), (std::vector<Nat>{1, 2, 3, 6}));
  const auto db = FolnerSpec::doubling(DirectionSchedule::staircase());
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(db.cardinality(n), std::uint64_t{1} << n);
  EXPECT_EQ(db.box(3).sizes(), (std::vector<std::uint32_t>{3, 1}));
}

TEST(Invariance, ClassicalDefectAndCores) {
  // |(K + [1,n]) triangle [1,n]| = 1 + max K for K = {1..k}, k < n
  for (Nat n = 5; n < 40; ++n)
    for (Nat k = 1; k < 4; ++k) {
      const auto d = invariance_defect(FiniteSet::range(1, n), FiniteSet::range(1, k), Semigroup::Additive);
      EXPECT_EQ(d, (Ratio{k + 1, n}));
    }
  // core oracle by definition
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Semigroup s = t % 2 ? Semigroup::Additive : Semigroup::Multiplicative;
    std::vector<Nat> fv, kv;
    for (int i = 0; i < 25; ++i) fv.push_back(1 + rng() % 60);
    for (int i = 0; i < 3; ++i) kv.push_back(1 + rng() % 5);
    const auto F = FiniteSet::from_unsorted(fv), K = FiniteSet::from_unsorted(kv);
    for (bool id : {false, true}) {
      std::vector<Nat> want;
      for (Nat h = (id && s == Semigroup::Additive) ? 0 : 1; h <= 60; ++h) {
        bool ok = true;
        for (Nat k : K) ok = ok && F.contains(combine(s, k, h));
        if (ok) want.push_back(h);
      }
      EXPECT_EQ(k_core(F, K, s, id).elems(), want);
    }
  }
}

TEST(Density, TailHalfEnvelope) {
  const auto t = density([](Nat x) { return x % 3 == 0; }, FolnerSpec::classical(), 1, 30);
  ASSERT_EQ(t.rows.size(), 30u);
  EXPECT_EQ(t.rows[29].count, 10u);
  EXPECT_NEAR(t.upper, 1.0 / 3, 0.05);
  EXPECT_LE(t.lower, 1.0 / 3);
  const auto e = equivalence_defect(FolnerSpec::classical(), FolnerSpec::interval_union({{{2, 3}}}), 1);
  EXPECT_EQ(e, (Ratio{3, 1}));
}
