#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "normlab/bitseq.hpp"
#include "normlab/folner.hpp"
#include "normlab/grid.hpp"

namespace normlab {

inline constexpr std::uint64_t kDefaultSeed = 1;

std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256**, usable as a UniformRandomBitGenerator.
class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;
  explicit Xoshiro256ss(std::uint64_t seed);
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::array<std::uint64_t, 4> s_;
};

BitSeq bernoulli_seq(std::uint64_t seed, std::size_t N);
// Bernoulli bits laid over a box in colex order (bit t of the stream -> cell t).
GridBlock bernoulli_grid(std::uint64_t seed, const AnchoredBox& box);

struct SummabilityRow {
  std::size_t n;
  std::uint64_t card;
  std::vector<double> partial;  // one per alpha
};
struct SummabilityReport {
  std::vector<double> alphas;
  std::vector<SummabilityRow> rows;
  bool strictly_increasing = true;
};
SummabilityReport summability_check(const FolnerSpec& spec, const std::vector<double>& alphas, std::size_t n_max);

struct GenericityRow {
  std::string K;
  std::size_t n;
  std::uint64_t card;
  double defect;
};
struct GenericityReport {
  std::vector<GenericityRow> rows;
  bool non_increasing = true;  // per K, along the n list
};
GenericityReport empirical_genericity(const BitSeq& x, const FolnerSpec& spec,
                                      const std::vector<FiniteSet>& K_family, const std::vector<std::size_t>& ns);
// Box specs read the sequence natively on the lattice; field must cover F_n + K.
GenericityReport empirical_genericity(const GridBlock& field, const FolnerSpec& spec,
                                      const std::vector<FiniteSet>& K_family, const std::vector<std::size_t>& ns);

enum class StepKind { Origin, Staircase, Adversarial, Fallback };
const char* to_string(StepKind k);

struct AdversarialStep {
  std::size_t n;            // F_n(x); F_1 is the origin
  StepKind kind;
  std::uint32_t direction;  // 1-based, 0 for the origin
  std::vector<std::uint32_t> log_sides;
  Nat leading;
  std::uint64_t card;
  std::uint64_t zeros;
  std::uint64_t added_zeros;
  double zero_fraction;
  double ledger_bound;  // zeros forced by the successful steps so far, over |F_n|
};

struct AdversarialTrace {
  std::vector<AdversarialStep> steps;
  std::size_t successes = 0;
  std::size_t fallbacks = 0;
  bool horizon_exhausted = false;
  FolnerSpec spec() const;  // the constructed doubling sequence (index shift: F_n(x) = spec F_{n-1})
  bool ledger_consistent() const;
};

AdversarialTrace adversarial_doubling(const BitSeq& x, std::size_t steps);

}  // namespace normlab
