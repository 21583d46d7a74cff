#include "normlab/sampler.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "normlab/counting.hpp"

namespace normlab {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
  for (auto& w : s_) w = splitmix64(seed);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

Xoshiro256ss::result_type Xoshiro256ss::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

BitSeq bernoulli_seq(std::uint64_t seed, std::size_t N) {
  if (N > (std::size_t{1} << 30)) throw std::invalid_argument("bernoulli_seq: N > 2^30");
  Xoshiro256ss rng(seed);
  std::vector<std::uint64_t> w((N + 63) / 64, 0);
  for (std::size_t i = 0; i < N; ++i) w[i >> 6] |= (rng() >> 63) << (i & 63);
  return BitSeq::from_words(std::move(w), N, "bernoulli(seed=" + std::to_string(seed) + ")");
}

GridBlock bernoulli_grid(std::uint64_t seed, const AnchoredBox& box) {
  GridBlock g = GridBlock::zeros(box);
  Xoshiro256ss rng(seed);
  for (auto& b : g.bits) b = static_cast<std::uint8_t>(rng() >> 63);
  return g;
}

SummabilityReport summability_check(const FolnerSpec& spec, const std::vector<double>& alphas, std::size_t n_max) {
  for (double a : alphas)
    if (!(a > 0 && a < 1)) throw std::invalid_argument("summability_check: alpha must lie in (0,1)");
  SummabilityReport r;
  r.alphas = alphas;
  std::vector<double> sums(alphas.size(), 0.0);
  std::uint64_t prev = 0;
  for (std::size_t n = spec.min_index(); n <= n_max; ++n) {
    const std::uint64_t c = spec.cardinality(n);
    if (n > spec.min_index() && c <= prev) r.strictly_increasing = false;
    prev = c;
    for (std::size_t j = 0; j < alphas.size(); ++j) sums[j] += std::pow(alphas[j], static_cast<double>(c));
    r.rows.push_back({n, c, sums});
  }
  return r;
}

namespace {

std::string set_label(const FiniteSet& K) {
  std::string s = "{";
  for (std::size_t i = 0; i < K.size(); ++i) s += (i ? "," : "") + std::to_string(K[i]);
  return s + "}";
}

void mark_trend(GenericityReport& r) {
  std::map<std::string, double> last;
  for (const auto& row : r.rows) {
    auto it = last.find(row.K);
    if (it != last.end() && row.defect > it->second) r.non_increasing = false;
    last[row.K] = row.defect;
  }
}

}  // namespace

GenericityReport empirical_genericity(const BitSeq& x, const FolnerSpec& spec,
                                      const std::vector<FiniteSet>& K_family, const std::vector<std::size_t>& ns) {
  GenericityReport r;
  for (const auto& K : K_family)
    for (std::size_t n : ns)
      r.rows.push_back({set_label(K), n, spec.cardinality(n), normality_defect(x, spec, n, K)});
  mark_trend(r);
  return r;
}

GenericityReport empirical_genericity(const GridBlock& field, const FolnerSpec& spec,
                                      const std::vector<FiniteSet>& K_family, const std::vector<std::size_t>& ns) {
  if (!spec.is_box()) throw std::invalid_argument("lattice genericity needs a box spec");
  GenericityReport r;
  for (const auto& K : K_family)
    for (std::size_t n : ns) {
      const AnchoredBox F = spec.box(n);
      r.rows.push_back({set_label(K), n, F.cardinality(), normality_defect(grid_counts(field, F, to_expvecs(K)))});
    }
  mark_trend(r);
  return r;
}

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Origin: return "origin";
    case StepKind::Staircase: return "staircase";
    case StepKind::Adversarial: return "adversarial";
    case StepKind::Fallback: return "fallback";
  }
  return "";
}

FolnerSpec AdversarialTrace::spec() const {
  std::vector<std::uint32_t> dirs;
  for (const auto& s : steps)
    if (s.kind != StepKind::Origin) dirs.push_back(s.direction);
  return FolnerSpec::doubling(DirectionSchedule::explicit_list(std::move(dirs)));
}

bool AdversarialTrace::ledger_consistent() const {
  std::uint64_t forced = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (i == 0) {
      if (s.card != 1 || s.zeros != s.added_zeros) return false;
    } else {
      const auto& p = steps[i - 1];
      if (s.card != 2 * p.card) return false;
      if (s.zeros != p.zeros + s.added_zeros) return false;
      if (s.kind == StepKind::Adversarial) {
        if (s.added_zeros != p.card) return false;
        forced += p.card;
      }
    }
    const double bound = static_cast<double>(forced) / static_cast<double>(s.card);
    if (bound != s.ledger_bound) return false;
    if (s.zero_fraction < bound) return false;
  }
  return true;
}

AdversarialTrace adversarial_doubling(const BitSeq& x, std::size_t steps) {
  const Nat horizon = x.size();
  if (horizon < 1) throw std::invalid_argument("adversarial_doubling: empty sequence");
  AdversarialTrace tr;
  std::vector<std::uint32_t> c;  // log2 of the side lengths
  Nat L = 1;
  std::uint64_t zeros = x[1] ? 0 : 1, forced = 0;
  tr.steps.push_back({1, StepKind::Origin, 0, c, L, 1, zeros, zeros, static_cast<double>(zeros), 0.0});
  const auto stair = DirectionSchedule::staircase();
  std::size_t stair_pos = 0;

  // multiplier p_i^{2^{c_i}} of a doubling in direction i, 0 if beyond the horizon
  auto factor = [&](std::uint32_t i) -> Nat {
    const std::uint32_t e = i <= c.size() ? c[i - 1] : 0;
    if (e >= 63 || i > prime_table().size()) return 0;
    try {
      const Nat f = checked_pow(nth_prime(i - 1), 1u << e);
      const Nat Lp = checked_mul(L, f);
      return Lp <= horizon ? f : 0;
    } catch (const std::overflow_error&) {
      return 0;
    }
  };

  for (std::size_t n = 2; n <= steps; ++n) {
    const FiniteSet F = divisors(L);
    std::uint32_t dir = 0;
    StepKind kind = StepKind::Staircase;
    if (n % 2 == 0) {
      for (std::uint32_t i = 1;; ++i) {
        const Nat f = factor(i);
        if (f == 0) {
          if (i > c.size()) break;  // new directions only get more expensive
          continue;
        }
        bool all_zero = true;
        for (Nat g : F)
          if (x[g * f]) {
            all_zero = false;
            break;
          }
        if (all_zero) {
          dir = i;
          kind = StepKind::Adversarial;
          break;
        }
      }
      if (dir == 0) kind = StepKind::Fallback;
    }
    if (dir == 0) {
      dir = stair.at(++stair_pos);
      if (factor(dir) == 0) {
        tr.horizon_exhausted = true;
        break;
      }
    }
    const Nat f = factor(dir);
    std::uint64_t added = 0;
    for (Nat g : F) added += !x[g * f];
    if (c.size() < dir) c.resize(dir, 0);
    ++c[dir - 1];
    L *= f;
    zeros += added;
    const std::uint64_t card = std::uint64_t{1} << (n - 1);
    if (kind == StepKind::Adversarial) {
      forced += card / 2;
      ++tr.successes;
    }
    if (kind == StepKind::Fallback) ++tr.fallbacks;
    tr.steps.push_back({n, kind, dir, c, L, card, zeros, added,
                        static_cast<double>(zeros) / static_cast<double>(card),
                        static_cast<double>(forced) / static_cast<double>(card)});
  }
  if (tr.steps.size() == 1 && steps > 1) throw std::runtime_error("adversarial_doubling: horizon exhausted before any doubling");
  return tr;
}

}  // namespace normlab
