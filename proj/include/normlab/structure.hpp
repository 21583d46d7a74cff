#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "normlab/bitseq.hpp"
#include "normlab/counting.hpp"
#include "normlab/folner.hpp"

namespace normlab {

// Sorted naturals in [1, horizon].
class NatSet {
 public:
  NatSet() = default;
  NatSet(std::vector<Nat> sorted, Nat horizon, std::string prov);  // validates
  static NatSet from_predicate(Nat horizon, const std::function<bool(Nat)>& in, std::string prov);
  static NatSet support(const BitSeq& x);  // {i : x_i = 1}
  static NatSet all(Nat horizon) { return from_predicate(horizon, [](Nat) { return true; }, "N"); }

  Nat horizon() const { return N_; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  const std::vector<Nat>& elems() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  bool contains(Nat m) const;  // m beyond the horizon is an error
  BitSeq indicator() const;
  const std::string& provenance() const { return prov_; }
  bool operator==(const NatSet& o) const { return v_ == o.v_ && N_ == o.N_; }

 private:
  std::vector<Nat> v_;
  Nat N_ = 0;
  std::string prov_;
};

enum class Transform { Div, Times, Plus, Minus };
NatSet set_transform(const NatSet& A, Transform kind, Nat n);

enum class Pattern { Linear, Power, SumProd, GeoArith, PolyGeo };
const char* to_string(Pattern p);

struct SearchBounds {
  std::vector<Nat> coeffs;       // Linear: i, j, k
  unsigned order = 2;            // Power: k; GeoArith / PolyGeo: n
  Nat q_max = 10, d_max = 100, a_max = 1000, b_max = 1000;
  std::size_t max_witnesses = 0;  // 0 = all
};

inline constexpr std::uint64_t kMaxCandidates = 1'000'000'000;

struct Witness {
  std::vector<Nat> v;
  bool operator==(const Witness&) const = default;
};
// Linear (a,b,c); Power (a,b,c); SumProd (a,b); GeoArith (q,d,a); PolyGeo (d,a,b)
std::vector<std::string> witness_fields(Pattern p);
// Witnesses in search order; the outer variable runs in parallel.
std::vector<Witness> config_search(const NatSet& A, Pattern p, const SearchBounds& b);
bool check_witness(const NatSet& A, Pattern p, const SearchBounds& b, const Witness& w);

struct ThickCertificate {
  Nat i, j, k;
  Ratio delta;
  Nat ratio;                      // r_{n+1} = ratio * r_n
  std::vector<Interval> blocks;   // I_n = [r_n, r_n (1 + delta)] within the horizon
  Nat longest_interval = 0;
  bool solution_free = false;     // run-based exhaustive check
};
struct ThickCounterexample {
  NatSet A;
  ThickCertificate cert;
};
// Refuses k in {i, j, i + j}.
ThickCounterexample thick_counterexample(Nat i, Nat j, Nat k, Nat N);
// Exact: does ia + jb = kc have a solution with a, b, c in the union of the runs?
bool runs_solve_linear(const std::vector<Interval>& runs, Nat i, Nat j, Nat k);

struct DensityPoint {
  std::size_t n;
  std::uint64_t card;
  std::uint64_t hits;
  double density;
};

// Density of A/n_1 cap ... cap A/n_k along the spec.
std::vector<DensityPoint> intersection_density(const NatSet& A, const std::vector<Nat>& divs, const FolnerSpec& spec,
                                               const std::vector<std::size_t>& ns);

struct IndependenceProfile {
  BlockTable table;                // counts per block, bit j <-> K[j]
  double defect;                   // max |density - 2^-|K||
};
IndependenceProfile independence_profile(const NatSet& A, const FiniteSet& K, const FolnerSpec& spec, std::size_t n);

struct OrtoStage {
  unsigned m;              // multiples of m! kept
  std::size_t first, last;  // spec indices n_m + 1 .. n_{m+1}
};
struct OrtoSet {
  NatSet A;
  std::vector<std::size_t> thresholds;  // n_m for m = 2, 3, ...
  std::vector<OrtoStage> stages;
  bool member(Nat g) const;             // exact rule, also beyond the horizon
  std::vector<Nat> leading;
  double mult_density(std::size_t n) const;   // |A cap K_n| / |K_n|
  double guaranteed(std::size_t n) const;     // 1 - 1/m for the stage holding n, 0 before n_2
  double additive_density() const;            // |A cap [1,N]| / N
};
OrtoSet orto_set(const FolnerSpec& spec, Nat N);

struct Ex9Stage {
  std::size_t n;
  std::vector<std::uint32_t> exps;  // exponents of L_n
  std::uint64_t card;               // |F_n|, F_n = divisors of L_n^3
  std::uint64_t in_B;               // |B cap F_n|, enumerated
  Ratio fraction;
  Ratio product_form;               // 1 - prod (2k+1)/(3k+1)  plus earlier stages
  double density_bound;               // 1 - (2/3)^d
};
struct Ex9Set {
  std::vector<Nat> L;
  NatSet B;
  bool member(Nat g) const;
  std::vector<Ex9Stage> stages;
  bool solution_free = false;  // no ab = c^3 in B up to the horizon
  std::uint64_t checked_c = 0;
};
Ex9Set ex9_set(const std::vector<Nat>& L, Nat N);
// Exhaustive: every c in B with c^3 <= N^2, every divisor a of c^3.
std::vector<Witness> power_solutions(const NatSet& B, unsigned k, std::size_t max_witnesses = 0);

enum class CoverOp { Sum, Product, LinearSum, LinearDiff };
// Sum / Product: density of B o A. LinearSum / LinearDiff: n A + m A and n A - m A with coefficients in B[0], B[1].
std::vector<DensityPoint> cover_density(const NatSet& A, const std::vector<Nat>& B, const FolnerSpec& spec,
                                        const std::vector<std::size_t>& ns, CoverOp op);

}  // namespace normlab
