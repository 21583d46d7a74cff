#pragma once

#include <cstdint>
#include <vector>

#include "normlab/bitseq.hpp"
#include "normlab/folner.hpp"

namespace normlab {

enum class Exec { Serial, Parallel };

// Reads NORMLAB_THREADS and caps the OpenMP team size accordingly.
void apply_thread_env();
int worker_count();

inline constexpr std::size_t kMaxBlockSupport = 20;

struct BlockTable {
  std::size_t k = 0;             // |K|
  std::vector<Nat> counts;       // indexed by pattern, bit j <-> K[j]
  Nat total = 0;                 // |F|
  double freq(std::uint64_t pattern) const {
    return total ? static_cast<double>(counts[pattern]) / static_cast<double>(total) : 0.0;
  }
};

// Throws std::out_of_range unless max(K) o max(F) <= x.size().
void require_prefix(const BitSeq& x, const FiniteSet& F, const FiniteSet& K, Semigroup s);

Nat count_N(const Block& B, const BitSeq& x, const FiniteSet& F, Semigroup s);
Nat count_N_tilde(const Block& B, const BitSeq& x, const FiniteSet& F, Semigroup s);

// Histogram of the K-patterns read at h o g for g in F (the N-tilde counts of every block).
BlockTable block_counts(const BitSeq& x, const FiniteSet& F, const FiniteSet& K, Semigroup s,
                        Exec exec = Exec::Parallel);
BlockTable block_counts_serial(const BitSeq& x, const FiniteSet& F, const FiniteSet& K, Semigroup s);
BlockTable block_counts_parallel(const BitSeq& x, const FiniteSet& F, const FiniteSet& K, Semigroup s);

// Classical window {1..n} without materialising F.
BlockTable window_counts(const BitSeq& x, std::size_t n, const FiniteSet& K, Exec exec = Exec::Parallel);

BlockTable block_freqs(const BitSeq& x, const FolnerSpec& spec, std::size_t n, const FiniteSet& K,
                       Exec exec = Exec::Parallel);

double normality_defect(const BlockTable& t);
double normality_defect(const BitSeq& x, const FolnerSpec& spec, std::size_t n, const FiniteSet& K);

}  // namespace normlab
