#include <gtest/gtest.h>

#include <map>
#include <random>

#include "normlab/champernowne.hpp"
#include "normlab/grid.hpp"
#include "normlab/sampler.hpp"

using namespace normlab;

namespace {

std::string bits_of(const GridBlock& b) {
  std::string s;
  for (auto v : b.bits) s += v ? '1' : '0';
  return s;
}

}  // namespace

TEST(Classical, Prefixes) {
  EXPECT_EQ(classical_champernowne(1).to_string(), "1");
  EXPECT_EQ(classical_champernowne(6).to_string(), "110111");
  EXPECT_EQ(classical_champernowne(16).to_string(), "1101110010111011");
  std::string cat;
  for (unsigned v = 1; cat.size() < 5000; ++v) {
    std::string b;
    for (unsigned t = v; t; t >>= 1) b.insert(b.begin(), char('0' + (t & 1)));
    cat += b;
  }
  EXPECT_EQ(classical_champernowne(5000).to_string(), cat.substr(0, 5000));
}

TEST(Grid, CountsMatchBruteForce) {
  const AnchoredBox field_box({7, 3, 2});
  const GridBlock field = bernoulli_grid(3, field_box);
  const std::vector<ExpVec> K{ExpVec{}, ExpVec{1}, ExpVec{0, 1}};
  const auto core = grid_core(field_box, K);
  ASSERT_FALSE(core.empty);
  EXPECT_EQ(core.box.sizes(), (std::vector<std::uint32_t>{6, 2, 2}));
  const auto a = grid_counts_serial(field, core.box, K), b = grid_counts_parallel(field, core.box, K);
  EXPECT_EQ(a.counts, b.counts);
  std::vector<Nat> want(8, 0);
  for (std::uint64_t t = 0; t < core.box.cardinality(); ++t) {
    const ExpVec g = core.box.colex_point(t);
    std::uint64_t p = 0;
    for (std::size_t j = 0; j < K.size(); ++j) p |= std::uint64_t(field.at(g + K[j])) << j;
    ++want[p];
  }
  EXPECT_EQ(a.counts, want);
  EXPECT_TRUE(grid_core(AnchoredBox({1}), {ExpVec{2}}).empty);
  EXPECT_EQ(to_expvecs(FiniteSet::from_sorted({1, 2, 6})), (std::vector<ExpVec>{ExpVec{}, ExpVec{1}, ExpVec{1, 1}}));
}

TEST(Grid, KeNormal) {
  const DoublingScheme s;
  const auto p1 = package(1, s);
  EXPECT_EQ(p1.ones(), 4u);
  EXPECT_TRUE(ke_normal(p1, {ExpVec{}}, 0.0));
  const auto constant = GridBlock::zeros(AnchoredBox({3, 3}));
  EXPECT_FALSE(ke_normal(constant, {ExpVec{}}, 0.49));
  EXPECT_FALSE(ke_normal(constant, {ExpVec{}, ExpVec{1}}, 0.2));
  EXPECT_TRUE(ke_normal(BitSeq::from_string("0110"), FiniteSet::from_sorted({1}), 0.0));
  // order-3 package, K = divisors(2): exact count against the 0.05 window
  const auto p3 = package(3, s);
  const std::vector<ExpVec> K{ExpVec{}, ExpVec{1}};
  const auto core = grid_core(p3.box, K);
  const auto t = grid_counts(p3, core.box, K);
  bool inside = true;
  for (Nat c : t.counts)
    inside = inside && std::abs(double(c) / double(p3.box.cardinality()) - 0.25) <= 0.05;
  EXPECT_EQ(ke_normal(p3, K, 0.05), inside);
  EXPECT_TRUE(inside);
}

TEST(Bricks, OrderAndCount) {
  const DoublingScheme s;
  const auto b0 = bricks(0, s);
  ASSERT_EQ(b0.size(), 2u);
  EXPECT_EQ(bits_of(b0[0]), "0");
  EXPECT_EQ(bits_of(b0[1]), "1");
  const auto b1 = bricks(1, s);
  std::vector<std::string> got;
  for (const auto& b : b1) got.push_back(bits_of(b));
  EXPECT_EQ(got, (std::vector<std::string>{"00", "01", "10", "11"}));
  const auto b2 = bricks(2, s);
  ASSERT_EQ(b2.size(), 16u);
  for (std::uint64_t m = 0; m < 16; ++m) {
    std::string want;
    for (int i = 3; i >= 0; --i) want += char('0' + ((m >> i) & 1));
    EXPECT_EQ(bits_of(b2[m]), want);
  }
  EXPECT_THROW(bricks(5, s), std::invalid_argument);
}

TEST(Packages, EveryBrickExactlyOnce) {
  const DoublingScheme s;
  for (int k = 0; k <= 3; ++k) {
    const auto L = package_layout(k, s);
    const auto P = package(k, s);
    EXPECT_EQ(P.box.cardinality(), std::uint64_t{1} << DoublingScheme::r(k));
    std::map<std::string, int> seen;
    for (const auto& corner : L.slot_corners) {
      GridBlock piece = GridBlock::zeros(L.brick_box);
      for (std::uint64_t t = 0; t < L.brick_box.cardinality(); ++t) {
        const ExpVec o = L.brick_box.colex_point(t);
        piece.set(o, P.at(ExpVec(corner) + o));
      }
      ++seen[bits_of(piece)];
    }
    EXPECT_EQ(seen.size(), std::size_t{1} << (std::size_t{1} << k)) << k;
    for (const auto& [b, c] : seen) EXPECT_EQ(c, 1) << k << " " << b;
  }
}

TEST(Chains, NestingAndPositionalAgreement) {
  const DoublingScheme s;
  const ChainEvaluator ev(s, 4);
  for (int k = 0; k <= 3; ++k) {
    const auto C = chain(k, s);
    for (std::uint64_t t = 0; t < C.bits.size(); ++t) EXPECT_EQ(C.bits[t], ev.chain_bit(k, C.box.colex_point(t)));
    if (k) {
      const auto prev = chain(k - 1, s);
      for (std::uint64_t t = 0; t < prev.bits.size(); ++t) {
        const ExpVec g = prev.box.colex_point(t);
        EXPECT_EQ(C.at(g), prev.at(g));
      }
    }
  }
  EXPECT_EQ(render(chain(0, s)), (std::vector<std::string>{"0101", "0101"}));
}

TEST(MultChampernowne, FirstValuesAndGridAgreement) {
  const DoublingScheme s;
  const auto x = mult_champernowne(s, 1 << 12);
  EXPECT_FALSE(x[1]);
  EXPECT_TRUE(x[2]);
  const ChainEvaluator ev(s);
  for (Nat m = 1; m <= x.size(); ++m) {
    const ExpVec g = nat_to_expvec(m);
    if (ev.order(g) >= 0) EXPECT_EQ(x[m], ev.at(g)) << m;
  }
  // ones over F_{r(2)} within 2^-(2^1+1) of 1/2
  const auto box = s.box(DoublingScheme::r(2));
  const auto G = mult_champernowne_grid(ev, box);
  EXPECT_LE(std::abs(double(G.ones()) / double(box.cardinality()) - 0.5), 1.0 / 8);
}

TEST(Figure1, KnownBlocksAndTwoFlaggedRows) {
  const auto e = figure1_blocks();
  ASSERT_EQ(e.size(), 5u);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(e[i].diff_rows.empty()) << e[i].label;
  EXPECT_EQ(e[4].diff_rows.size(), 2u);
  EXPECT_EQ(render(e[0].generated), (std::vector<std::string>{"01"}));
}

TEST(NetNormal, TilesCarryTheirPackage) {
  const DoublingScheme s;
  const NetNormal nn(s);
  std::vector<GridBlock> P;
  for (int k = 0; k <= 3; ++k) P.push_back(package(k, s));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20000; ++t) {
    const ExpVec g{std::uint32_t(rng() % 40), std::uint32_t(rng() % 20), std::uint32_t(rng() % 8),
                   std::uint32_t(rng() % 4)};
    const auto tile = nn.tile(g);
    if (tile.order > 3) continue;
    std::vector<std::uint32_t> off(std::max(g.dim(), tile.corner.dim()));
    for (std::size_t i = 0; i < off.size(); ++i) {
      ASSERT_GE(g[i], tile.corner[i]);
      off[i] = g[i] - tile.corner[i];
    }
    const ExpVec o(off);
    ASSERT_TRUE(P[tile.order].box.contains(o)) << g.str();
    EXPECT_EQ(nn.at(g), P[tile.order].at(o));
    // tile corners sit on the standard grid of F_{r(order)}
    const auto& sides = nn.evaluator().sides_at_r(tile.order);
    for (std::size_t i = 0; i < sides.size(); ++i) EXPECT_EQ(tile.corner[i] % (1u << sides[i]), 0u);
  }
}

TEST(NetNormal, ZimplSlabsAreNotInvariant) {
  // a point of Z_impl(F_k, 1/k) with g_i < k s_i - 1 lies in the box [0, g]; that box fails
  // (F_k, 1/k)-invariance because the slab along direction i exceeds a 1/k fraction
  const DoublingScheme s;
  const NetNormal nn(s);
  for (int k = 1; k <= 3; ++k) {
    const auto Fk = s.box(k);
    const auto K = Fk.elements();
    std::mt19937_64 rng(k);
    for (int t = 0; t < 30; ++t) {
      std::vector<std::uint32_t> g(2);
      g[0] = rng() % 12;
      g[1] = rng() % 4;
      const ExpVec gv(g);
      if (!nn.in_zimpl(k, gv)) continue;
      const AnchoredBox box(g);
      if (box.leading_parameter() > 1'000'000) continue;
      const auto d = invariance_defect(box.elements(), K, Semigroup::Multiplicative);
      EXPECT_GT(d.value(), 1.0 / k) << gv.str() << " k=" << k;
    }
  }
}
