#include "normlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

namespace normlab {

GridBlock GridBlock::zeros(AnchoredBox b) {
  GridBlock g{std::move(b), {}};
  g.bits.assign(g.box.cardinality(), 0);
  return g;
}

std::size_t GridBlock::ones() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
}

CoreBox grid_core(const AnchoredBox& outer, const std::vector<ExpVec>& K) {
  std::vector<std::uint32_t> s = outer.sizes();
  std::size_t dim = s.size();
  for (const auto& h : K) dim = std::max(dim, h.dim());
  s.resize(dim, 0);
  for (const auto& h : K)
    for (std::size_t i = 0; i < h.dim(); ++i) {
      if (h[i] > s[i]) return {AnchoredBox(), true};
    }
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint32_t m = 0;
    for (const auto& h : K) m = std::max(m, h[i]);
    s[i] -= m;
  }
  return {AnchoredBox(std::move(s)), false};
}

namespace {

struct Plan {
  std::vector<std::uint64_t> stride;   // field strides
  std::vector<std::uint64_t> offset;   // colex offset of each h
  std::vector<std::uint32_t> ext;      // extents of F
};

Plan make_plan(const GridBlock& field, const AnchoredBox& F, const std::vector<ExpVec>& K) {
  if (K.empty()) throw std::invalid_argument("grid_counts: empty K");
  if (K.size() > kMaxBlockSupport) throw std::invalid_argument("|K| > 20: frequency table too large");
  Plan p;
  const std::size_t fd = field.box.dim();
  for (const auto& h : K) {
    for (std::size_t i = 0; i < std::max(F.dim(), h.dim()); ++i)
      if (std::uint64_t{F.extent(i)} - 1 + h[i] >= field.box.extent(i))
        throw std::out_of_range("grid_counts: F + K leaves the field");
  }
  std::uint64_t st = 1;
  for (std::size_t i = 0; i < fd; ++i) {
    p.stride.push_back(st);
    st *= field.box.extent(i);
  }
  for (const auto& h : K) p.offset.push_back(field.box.colex_index(h));
  for (std::size_t i = 0; i < F.dim(); ++i) p.ext.push_back(F.extent(i));
  return p;
}

void count_range(const GridBlock& field, const Plan& p, std::uint64_t begin, std::uint64_t end,
                 std::vector<Nat>& local) {
  const std::size_t d = p.ext.size();
  std::vector<std::uint32_t> g(d, 0);
  std::uint64_t rem = begin, base = 0;
  for (std::size_t i = 0; i < d; ++i) {
    g[i] = static_cast<std::uint32_t>(rem % p.ext[i]);
    rem /= p.ext[i];
    base += g[i] * p.stride[i];
  }
  const std::uint8_t* bits = field.bits.data();
  const std::size_t k = p.offset.size();
  for (std::uint64_t t = begin; t < end; ++t) {
    std::uint64_t pat = 0;
    for (std::size_t j = 0; j < k; ++j) pat |= std::uint64_t{bits[base + p.offset[j]]} << j;
    ++local[pat];
    // odometer step in colex order
    for (std::size_t i = 0; i < d; ++i) {
      if (++g[i] < p.ext[i]) {
        base += p.stride[i];
        break;
      }
      base -= std::uint64_t{g[i] - 1} * p.stride[i];
      g[i] = 0;
    }
  }
}

}  // namespace

BlockTable grid_counts_serial(const GridBlock& field, const AnchoredBox& F, const std::vector<ExpVec>& K) {
  const Plan p = make_plan(field, F, K);
  BlockTable t{K.size(), std::vector<Nat>(std::size_t{1} << K.size(), 0), F.cardinality()};
  count_range(field, p, 0, t.total, t.counts);
  return t;
}

BlockTable grid_counts_parallel(const GridBlock& field, const AnchoredBox& F, const std::vector<ExpVec>& K) {
  const Plan p = make_plan(field, F, K);
  const std::size_t cells = std::size_t{1} << K.size();
  BlockTable t{K.size(), std::vector<Nat>(cells, 0), F.cardinality()};
  const std::uint64_t total = t.total;
#pragma omp parallel
  {
    const std::uint64_t T = omp_get_num_threads(), id = omp_get_thread_num();
    const std::uint64_t lo = total * id / T, hi = total * (id + 1) / T;
    std::vector<Nat> local(cells, 0);
    count_range(field, p, lo, hi, local);
#pragma omp critical
    for (std::size_t c = 0; c < cells; ++c) t.counts[c] += local[c];
  }
  return t;
}

BlockTable grid_counts(const GridBlock& field, const AnchoredBox& F, const std::vector<ExpVec>& K, Exec exec) {
  return exec == Exec::Serial ? grid_counts_serial(field, F, K) : grid_counts_parallel(field, F, K);
}

bool within_eps(const BlockTable& t, std::uint64_t card, double eps) {
  const long double target = std::ldexp(1.0L, -static_cast<int>(t.k)) * card;
  const long double slack = static_cast<long double>(eps) * card;
  for (Nat c : t.counts)
    if (std::fabs(static_cast<long double>(c) - target) > slack) return false;
  return true;
}

bool ke_normal(const GridBlock& C, const std::vector<ExpVec>& K, double eps) {
  const CoreBox core = grid_core(C.box, K);
  const std::uint64_t card = C.box.cardinality();
  if (core.empty) return within_eps(BlockTable{K.size(), std::vector<Nat>(std::size_t{1} << K.size(), 0), 0}, card, eps);
  return within_eps(grid_counts(C, core.box, K), card, eps);
}

bool ke_normal(const BitSeq& C, const FiniteSet& K, double eps) {
  if (K.empty() || K.size() > kMaxBlockSupport) throw std::invalid_argument("ke_normal: bad K");
  BlockTable t{K.size(), std::vector<Nat>(std::size_t{1} << K.size(), 0), 0};
  // shifts g >= 0 with g + K inside {1..|C|}
  for (Nat g = 0; g + K.max() <= C.size(); ++g) {
    std::uint64_t p = 0;
    for (std::size_t j = 0; j < K.size(); ++j) p |= std::uint64_t{C[g + K[j]]} << j;
    ++t.counts[p];
    ++t.total;
  }
  return within_eps(t, C.size(), eps);
}

std::vector<ExpVec> to_expvecs(const FiniteSet& K) {
  std::vector<ExpVec> out;
  for (Nat k : K) out.push_back(nat_to_expvec(k));
  return out;
}

}  // namespace normlab
