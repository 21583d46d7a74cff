#include <gtest/gtest.h>

#include <random>

#include "normlab/counting.hpp"
#include "normlab/sampler.hpp"

using namespace normlab;

namespace {

// direct definitions, no shared code with the library kernels
Nat brute_N(const Block& B, const BitSeq& x, const FiniteSet& F, Semigroup s) {
  Nat c = 0;
  for (Nat g = identity(s); g <= F.max(); ++g) {
    bool ok = true;
    for (std::size_t j = 0; j < B.size() && ok; ++j) {
      const Nat p = combine(s, B.support[j], g);
      ok = F.contains(p) && x[p] == B.at(j);
    }
    c += ok;
  }
  return c;
}

Nat brute_N_tilde(const Block& B, const BitSeq& x, const FiniteSet& F, Semigroup s) {
  Nat c = 0;
  for (Nat g : F) {
    bool ok = true;
    for (std::size_t j = 0; j < B.size() && ok; ++j) ok = x[combine(s, B.support[j], g)] == B.at(j);
    c += ok;
  }
  return c;
}

BitSeq random_bits(std::mt19937_64& rng, std::size_t n) {
  return BitSeq::generate(n, [&](std::size_t) { return rng() & 1; }, "test");
}

}  // namespace

TEST(BitSeq, AccessAndShift) {
  const auto x = BitSeq::from_string("1010101010");
  EXPECT_EQ(x.size(), 10u);
  EXPECT_TRUE(x.get(1));
  EXPECT_THROW(x.get(0), std::out_of_range);
  EXPECT_THROW(x.get(11), std::out_of_range);
  EXPECT_EQ(shift_mult(x, 2).to_string(), "00000");
  EXPECT_EQ(shift_mult(x, 1), x);
  EXPECT_THROW(shift_mult(x, 0), std::invalid_argument);
  const auto sq = BitSeq::generate(100, [](std::size_t i) {
    std::size_t r = 0;
    while ((r + 1) * (r + 1) <= i) ++r;
    return r * r == i;
  }, "squares");
  const auto s4 = shift_mult(sq, 4);
  ASSERT_EQ(s4.size(), 25u);
  for (std::size_t m = 1; m <= 25; ++m) EXPECT_EQ(s4[m], sq[4 * m]);
  EXPECT_EQ(s4.popcount(), 5u);
}

TEST(Counting, ZeroSequenceCounts) {
  const auto x = BitSeq::from_string(std::string(16, '0'));
  const auto F = FiniteSet::range(1, 3);
  const auto u = Block::word("0"), v = Block::word("01"), w = Block::word("000"), y = Block::word("001");
  EXPECT_EQ(count_N(u, x, F, Semigroup::Additive), 3u);
  EXPECT_EQ(count_N(v, x, F, Semigroup::Additive), 0u);
  EXPECT_EQ(count_N(w, x, F, Semigroup::Additive), 1u);
  EXPECT_EQ(count_N(y, x, F, Semigroup::Additive), 0u);
  // [u] contains [w] and [y], yet N is not additive
  EXPECT_NE(count_N(u, x, F, Semigroup::Additive),
            count_N(w, x, F, Semigroup::Additive) + count_N(y, x, F, Semigroup::Additive));
}

TEST(Counting, SpecExamples) {
  const auto zeros = BitSeq::from_string(std::string(16, '0'));
  const auto B00 = Block::word("00");
  EXPECT_EQ(count_N_tilde(B00, zeros, FiniteSet::range(1, 3), Semigroup::Additive), 3u);
  EXPECT_EQ(count_N(B00, zeros, FiniteSet::range(1, 3), Semigroup::Additive), 2u);
  EXPECT_EQ(count_N_tilde(B00, zeros, FiniteSet(), Semigroup::Additive), 0u);
  const auto ones = BitSeq::from_string(std::string(50, '1'));
  EXPECT_EQ(count_N(Block::word("1"), ones, FiniteSet::range(1, 40), Semigroup::Additive), 40u);
  const auto evens = BitSeq::generate(64, [](std::size_t i) { return i % 2 == 0; }, "evens");
  const auto B = Block::from_bits(FiniteSet::from_sorted({1, 2}), {1, 1});
  const auto F = divisors(8);
  EXPECT_EQ(count_N(B, evens, F, Semigroup::Multiplicative), brute_N(B, evens, F, Semigroup::Multiplicative));
  EXPECT_EQ(count_N(B, evens, F, Semigroup::Multiplicative), 2u);  // g = 2, 4
}

TEST(Counting, PrefixPreconditionIsLiteral) {
  const auto x = BitSeq::from_string(std::string(10, '0'));
  EXPECT_THROW(count_N_tilde(Block::word("0"), x, FiniteSet::range(1, 10), Semigroup::Additive), std::out_of_range);
  EXPECT_NO_THROW(count_N_tilde(Block::word("0"), x, FiniteSet::range(1, 9), Semigroup::Additive));
  EXPECT_THROW(count_N_tilde(Block::from_bits(FiniteSet::from_sorted({3}), {0}), x, FiniteSet::range(1, 4),
                             Semigroup::Multiplicative),
               std::out_of_range);
}

TEST(Counting, MatchesBruteForceAndCoreIdentity) {
  std::mt19937_64 rng(2024);
  for (Semigroup s : {Semigroup::Additive, Semigroup::Multiplicative})
    for (int t = 0; t < 300; ++t) {
      std::vector<Nat> fv, kv;
      const int fn = 1 + rng() % 30, kn = 1 + rng() % 4;
      for (int i = 0; i < fn; ++i) fv.push_back(1 + rng() % 40);
      for (int i = 0; i < kn; ++i) kv.push_back(1 + rng() % 6);
      const auto F = FiniteSet::from_unsorted(fv), K = FiniteSet::from_unsorted(kv);
      std::vector<int> bits;
      for (std::size_t j = 0; j < K.size(); ++j) bits.push_back(rng() & 1);
      const auto B = Block::from_bits(K, bits);
      const auto x = random_bits(rng, combine(s, K.max(), F.max()));
      const Nat n = count_N(B, x, F, s);
      EXPECT_EQ(n, brute_N(B, x, F, s));
      EXPECT_EQ(count_N_tilde(B, x, F, s), brute_N_tilde(B, x, F, s));
      const auto core = k_core(F, K, s, true);
      std::vector<Nat> cp;
      for (Nat g : core)
        if (g) cp.push_back(g);
      const auto core_pos = FiniteSet::from_sorted(cp);
      Nat from_identity = 0;
      if (s == Semigroup::Additive && core.contains(0)) {
        bool ok = true;
        for (std::size_t j = 0; j < K.size(); ++j) ok = ok && x[K[j]] == B.at(j);
        from_identity = ok;
      }
      EXPECT_EQ(n, count_N_tilde(B, x, core_pos, s) + from_identity);
    }
}

TEST(Counting, CylinderAdditivityOfNTilde) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    const Semigroup s = t % 2 ? Semigroup::Multiplicative : Semigroup::Additive;
    const auto F = FiniteSet::range(1, 20 + rng() % 50);
    const auto K0 = FiniteSet::from_unsorted({1 + rng() % 3});
    const auto K1 = set_union(K0, FiniteSet::from_unsorted({4 + rng() % 3, 7 + rng() % 3}));
    const auto x = random_bits(rng, combine(s, K1.max(), F.max()));
    const int b0 = rng() & 1;
    const auto B0 = Block::from_bits(K0, {b0});
    Nat sum = 0;
    for (std::uint64_t p = 0; p < (1u << K1.size()); ++p) {
      std::vector<int> bits;
      bool agrees = true;
      for (std::size_t j = 0; j < K1.size(); ++j) {
        bits.push_back((p >> j) & 1);
        if (K1[j] == K0[0]) agrees = bits.back() == b0;
      }
      if (agrees) sum += count_N_tilde(Block::from_bits(K1, bits), x, F, s);
    }
    EXPECT_EQ(sum, count_N_tilde(B0, x, F, s));
  }
}

TEST(Counting, SumOfNOverBlocksIsCoreSize) {
  std::mt19937_64 rng(9);
  for (Semigroup s : {Semigroup::Additive, Semigroup::Multiplicative}) {
    const auto F = FiniteSet::range(1, 60);
    const auto K = FiniteSet::from_sorted({1, 2, 3});
    const auto x = random_bits(rng, combine(s, 3, 60));
    Nat sum = 0;
    for (std::uint64_t p = 0; p < 8; ++p)
      sum += count_N(Block::from_bits(K, {int(p & 1), int((p >> 1) & 1), int((p >> 2) & 1)}), x, F, s);
    EXPECT_EQ(sum, k_core(F, K, s, true).size());
  }
}

TEST(BlockCounts, SerialEqualsParallelAndBruteForce) {
  const auto x = bernoulli_seq(5, 1 << 16);
  for (Semigroup s : {Semigroup::Additive, Semigroup::Multiplicative}) {
    const auto F = s == Semigroup::Additive ? FiniteSet::range(1, 60000) : divisors(720720);
    const auto K = s == Semigroup::Additive ? FiniteSet::from_sorted({1, 3, 4}) : FiniteSet::from_sorted({1, 2, 3});
    if (s == Semigroup::Multiplicative) {
      const auto xm = bernoulli_seq(5, 3 * 720720);
      const auto a = block_counts_serial(xm, F, K, s), b = block_counts_parallel(xm, F, K, s);
      EXPECT_EQ(a.counts, b.counts);
      for (std::uint64_t p = 0; p < 8; ++p)
        EXPECT_EQ(a.counts[p], brute_N_tilde(Block{K, p}, xm, F, s));
      continue;
    }
    const auto a = block_counts_serial(x, F, K, s), b = block_counts_parallel(x, F, K, s);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.total, F.size());
    EXPECT_EQ(window_counts(x, 60000, K, Exec::Serial).counts, a.counts);
    EXPECT_EQ(window_counts(x, 60000, K, Exec::Parallel).counts, a.counts);
    for (std::uint64_t p = 0; p < 8; ++p) EXPECT_EQ(a.counts[p], brute_N_tilde(Block{K, p}, x, F, s));
  }
}

TEST(BlockCounts, FrequenciesAndDefect) {
  const auto alt = BitSeq::generate(2001, [](std::size_t i) { return i % 2 == 0; }, "alt");
  const auto t = block_freqs(alt, FolnerSpec::classical(), 1999, FiniteSet::from_sorted({1, 2}));
  EXPECT_EQ(t.counts[0], 0u);
  EXPECT_EQ(t.counts[3], 0u);
  EXPECT_NEAR(t.freq(1), 0.5, 1e-3);
  EXPECT_NEAR(t.freq(2), 0.5, 1e-3);
  Nat total = 0;
  for (Nat c : t.counts) total += c;
  EXPECT_EQ(total, t.total);
  const auto zeros = BitSeq::from_string(std::string(100, '0'));
  EXPECT_DOUBLE_EQ(normality_defect(zeros, FolnerSpec::classical(), 50, FiniteSet::from_sorted({1})), 0.5);
  BlockTable uniform{2, {5, 5, 5, 5}, 20};
  EXPECT_DOUBLE_EQ(normality_defect(uniform), 0.0);
  EXPECT_THROW(block_counts(zeros, FiniteSet::range(1, 10), FiniteSet::range(1, 21), Semigroup::Additive),
               std::invalid_argument);
}
