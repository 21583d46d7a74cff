#include "normlab/counting.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace normlab {

void apply_thread_env() {
  if (const char* env = std::getenv("NORMLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_num_procs()));
  }
}

int worker_count() { return omp_get_max_threads(); }

void require_prefix(const BitSeq& x, const FiniteSet& F, const FiniteSet& K, Semigroup s) {
  if (F.empty()) return;
  Nat need;
  bool overflow = s == Semigroup::Additive ? __builtin_add_overflow(K.max(), F.max(), &need)
                                           : __builtin_mul_overflow(K.max(), F.max(), &need);
  if (overflow || need > x.size())
    throw std::out_of_range("prefix too short: need x up to max(K)o max(F) = " +
                            (overflow ? std::string("overflow") : std::to_string(need)) + ", have " +
                            std::to_string(x.size()));
}

namespace {

void check_support(const FiniteSet& K) {
  if (K.empty()) throw std::invalid_argument("block support must be nonempty");
  if (K.min() == 0) throw std::invalid_argument("block support lives in N (>= 1)");
  if (K.size() > kMaxBlockSupport) throw std::invalid_argument("|K| > 20: frequency table too large");
}

inline Nat op(Semigroup s, Nat a, Nat b) { return s == Semigroup::Additive ? a + b : a * b; }

inline std::uint64_t pattern_at(const BitSeq& x, const FiniteSet& K, Nat g, Semigroup s) {
  std::uint64_t p = 0;
  for (std::size_t j = 0; j < K.size(); ++j) p |= std::uint64_t{x[op(s, K[j], g)]} << j;
  return p;
}

// Membership oracle for F: bitmap when max(F) is moderate, binary search otherwise.
class Member {
 public:
  explicit Member(const FiniteSet& F) : F_(F) {
    if (!F.empty() && F.max() <= (Nat{1} << 26)) {
      map_.assign(F.max() + 1, 0);
      for (Nat f : F) map_[f] = 1;
    }
  }
  bool operator()(Nat v) const {
    if (!map_.empty()) return v < map_.size() && map_[v];
    return F_.contains(v);
  }

 private:
  const FiniteSet& F_;
  std::vector<std::uint8_t> map_;
};

}  // namespace

Nat count_N(const Block& B, const BitSeq& x, const FiniteSet& F, Semigroup s) {
  const FiniteSet& K = B.support;
  require_prefix(x, F, K, s);
  const Member inF(F);
  const Nat k0 = K.min();
  Nat count = 0;
  // every admissible g satisfies k0 o g in F, so it is reached from some f in F
  for (Nat f : F) {
    Nat g;
    if (s == Semigroup::Additive) {
      if (f < k0) continue;
      g = f - k0;
    } else {
      if (f % k0) continue;
      g = f / k0;
    }
    bool ok = true;
    for (std::size_t j = 0; j < K.size() && ok; ++j) {
      const Nat pos = op(s, K[j], g);
      ok = inF(pos) && x[pos] == B.at(j);
    }
    count += ok;
  }
  return count;
}

Nat count_N_tilde(const Block& B, const BitSeq& x, const FiniteSet& F, Semigroup s) {
  const FiniteSet& K = B.support;
  require_prefix(x, F, K, s);
  Nat count = 0;
  for (Nat g : F) {
    bool ok = true;
    for (std::size_t j = 0; j < K.size() && ok; ++j) ok = x[op(s, K[j], g)] == B.at(j);
    count += ok;
  }
  return count;
}

BlockTable block_counts_serial(const BitSeq& x, const FiniteSet& F, const FiniteSet& K, Semigroup s) {
  check_support(K);
  require_prefix(x, F, K, s);
  BlockTable t{K.size(), std::vector<Nat>(std::size_t{1} << K.size(), 0), F.size()};
  for (Nat g : F) ++t.counts[pattern_at(x, K, g, s)];
  return t;
}

BlockTable block_counts_parallel(const BitSeq& x, const FiniteSet& F, const FiniteSet& K, Semigroup s) {
  check_support(K);
  require_prefix(x, F, K, s);
  const std::size_t cells = std::size_t{1} << K.size();
  BlockTable t{K.size(), std::vector<Nat>(cells, 0), F.size()};
  const auto& v = F.elems();
  const std::int64_t n = static_cast<std::int64_t>(v.size());
#pragma omp parallel
  {
    std::vector<Nat> local(cells, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) ++local[pattern_at(x, K, v[i], s)];
#pragma omp critical
    for (std::size_t c = 0; c < cells; ++c) t.counts[c] += local[c];
  }
  return t;
}

BlockTable block_counts(const BitSeq& x, const FiniteSet& F, const FiniteSet& K, Semigroup s, Exec exec) {
  return exec == Exec::Serial ? block_counts_serial(x, F, K, s) : block_counts_parallel(x, F, K, s);
}

BlockTable window_counts(const BitSeq& x, std::size_t n, const FiniteSet& K, Exec exec) {
  check_support(K);
  if (n && K.max() + n > x.size())
    throw std::out_of_range("prefix too short: need x up to " + std::to_string(K.max() + n) + ", have " +
                            std::to_string(x.size()));
  const std::size_t cells = std::size_t{1} << K.size();
  BlockTable t{K.size(), std::vector<Nat>(cells, 0), n};
  const std::int64_t m = static_cast<std::int64_t>(n);
  if (exec == Exec::Serial) {
    for (std::int64_t g = 1; g <= m; ++g) ++t.counts[pattern_at(x, K, g, Semigroup::Additive)];
    return t;
  }
#pragma omp parallel
  {
    std::vector<Nat> local(cells, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t g = 1; g <= m; ++g) ++local[pattern_at(x, K, g, Semigroup::Additive)];
#pragma omp critical
    for (std::size_t c = 0; c < cells; ++c) t.counts[c] += local[c];
  }
  return t;
}

BlockTable block_freqs(const BitSeq& x, const FolnerSpec& spec, std::size_t n, const FiniteSet& K, Exec exec) {
  if (spec.kind() == FolnerSpec::Kind::Classical) return window_counts(x, n, K, exec);
  return block_counts(x, spec.set(n), K, spec.semigroup(), exec);
}

double normality_defect(const BlockTable& t) {
  const double target = std::ldexp(1.0, -static_cast<int>(t.k));
  double d = 0;
  for (std::size_t p = 0; p < t.counts.size(); ++p) d = std::max(d, std::fabs(t.freq(p) - target));
  return d;
}

double normality_defect(const BitSeq& x, const FolnerSpec& spec, std::size_t n, const FiniteSet& K) {
  return normality_defect(block_freqs(x, spec, n, K));
}

}  // namespace normlab
