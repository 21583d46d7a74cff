#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normlab/bitseq.hpp"
#include "normlab/folner.hpp"

namespace normlab {

// w_1 = u_1, w_k = w_{k-1}^{copies_k} u_k with copies_k >= k-1.
// copies may run one level past u: that level's copies are known
// before its filler word.
struct RepetitiveSpec {
  std::vector<BitSeq> u;               // u[0] = u_1
  std::vector<std::uint64_t> copies;   // copies[k-1] = copies_k; copies[0] unused
  std::vector<std::uint64_t> lengths() const;  // |w_k|, k = 1..u.size()
  std::uint64_t copies_at(std::size_t k) const { return k - 1 < copies.size() ? copies[k - 1] : 0; }
  void validate() const;
};

BitSeq build_repetitive(const RepetitiveSpec& spec, std::size_t N);

// Smallest p <= max_period such that the second half of x is p-periodic.
std::optional<std::size_t> eventual_period(const BitSeq& x, std::size_t max_period);

struct LiouvilleWitness {
  int k = 0;
  std::size_t level = 0;            // j: p/q is the periodic value of w_j
  std::uint64_t period = 0;         // |w_j|, q = 2^period - 1
  std::uint64_t agreement = 0;      // x starts with w_j^copies_{j+1}, this many bits
  std::string p, q;                 // decimal, or a symbolic form for long periods
  std::string method;               // "exact-rational" or "periodic-prefix"
  bool verified = false;
};

inline constexpr std::uint64_t kExactWitnessBits = std::uint64_t{1} << 24;

// Least level j with copies_{j+1} >= k.
LiouvilleWitness liouville_witness(const RepetitiveSpec& spec, int k);
// The exact |X/2^N - p/q| < q^-k test on both ends of the bracket [X, X+1]/2^N.
bool bracket_check(const BitSeq& prefix, const BitSeq& period_word, int k);

struct RefinedSpec {
  FolnerSpec spec;                         // interval unions, indices 1..n_hi
  std::vector<std::size_t> thresholds;     // n_ell for ell = 1, 2, ...
  std::vector<std::size_t> ell;            // ell_n, index n (0 below n_1)
  std::vector<Ratio> equivalence;          // |F_n triangle F'_n| / |F_n|
};

std::vector<Interval> components(const FolnerSpec& spec, std::size_t n);
Ratio interval_defect(const std::vector<Interval>& F, std::size_t ell);  // K = {1..ell}
RefinedSpec interval_folner_refine(const FolnerSpec& spec, std::size_t n_lo, std::size_t n_hi);

class HorizonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdditiveLiouville {
  BitSeq x;
  RepetitiveSpec spec;
  std::vector<std::uint64_t> v_len, v_reps;  // |v_k| and its repetitions inside u_k
  std::vector<double> delta, gamma, eps;     // per level k
  std::vector<std::uint64_t> t_applied;      // t_{|w_{k-1}|} used at level k
};

struct AdditiveOptions {
  std::size_t n_hi = 4096;       // Folner horizon for t_j
  std::size_t word_scale = 1;    // |v_k| = k * word_scale
  std::size_t min_levels = 7;
};

// Shortest component length of F_n for n = 1..n_hi (index 0 unused).
std::vector<std::uint64_t> shortest_components(const FolnerSpec& spec, std::size_t n_hi);
// t_j over the horizon; throws HorizonError if a tail-half F_n still has a component shorter than j.
std::uint64_t threshold_t(const FolnerSpec& spec, const std::vector<std::uint64_t>& ell, std::uint64_t j);

AdditiveLiouville additive_liouville_normal(const FolnerSpec& spec, const BitSeq& source, std::size_t N,
                                            const AdditiveOptions& opt = {});

struct CoverageReport {
  double min_fraction = 1.0;
  double eps = 0;
  std::uint64_t subwords = 0;
};
// Every subword W of w_{k+2} with |W| >= |w_k|: fraction covered by whole copies of v_k, v_{k+1}, v_{k+2}.
CoverageReport word_coverage(const AdditiveLiouville& a, std::size_t k);

Nat m_k_eps(unsigned k, Ratio eps);

struct ZoneSchedule {
  std::vector<Nat> m;                 // m_1, m_2, ...
  std::vector<unsigned> source_index; // k' whose candidate fills slot j
  Nat next_lower_bound = 0;           // every later m_j is at least this
  bool in_zone(Nat i) const;
  bool disjoint() const;
};

struct MultLiouville {
  BitSeq x;
  ZoneSchedule zones;
  RepetitiveSpec spec;
};

// 2, 4, 12, 36, 108, 324, then factors of 5 up to 324 * 5^8.
std::vector<Nat> desk_leading_list();

// Slot j uses the least k' >= j whose candidate LCM(m_{k',2^-k'}, L_{n_k'-1}) exceeds j m_{j-1}.
ZoneSchedule zone_schedule(const FolnerSpec& spec, Nat N);
MultLiouville mult_liouville_normal(const FolnerSpec& spec, const BitSeq& base, std::size_t N);

struct ZoneDensity {
  std::size_t n;
  std::uint64_t card;
  std::uint64_t in_zones;
  double fraction;
  double bound;  // |F_n|^{-1/3} + sum over the middle class of 2^-k
};
ZoneDensity zone_density(const ZoneSchedule& z, const FolnerSpec& spec, std::size_t n);

}  // namespace normlab
