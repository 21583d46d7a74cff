#include "normlab/champernowne.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace normlab {

BitSeq classical_champernowne(std::size_t N) {
  if (N > (std::size_t{1} << 31)) throw std::invalid_argument("classical_champernowne: N > 2^31");
  BitSeqBuilder b;
  b.reserve(N);
  for (std::uint64_t v = 1; b.size() < N; ++v) {
    const int len = 64 - __builtin_clzll(v);
    for (int i = len - 1; i >= 0 && b.size() < N; --i) b.push_back((v >> i) & 1);
  }
  return std::move(b).build("classical-champernowne");
}

AnchoredBox DoublingScheme::box(std::size_t n) const {
  auto c = log_sides(n);
  for (auto& v : c) {
    if (v >= 32) throw std::overflow_error("doubling box side beyond 32 bits");
    v = (std::uint32_t{1} << v) - 1;
  }
  return AnchoredBox(std::move(c));
}

namespace {

inline std::uint64_t low_bits(std::uint64_t v, std::uint32_t b) { return b >= 64 ? v : v & ((std::uint64_t{1} << b) - 1); }
inline std::uint64_t high_bits(std::uint64_t v, std::uint32_t b) { return b >= 64 ? 0 : v >> b; }

std::vector<std::uint32_t> padded(std::vector<std::uint32_t> v, std::size_t d) {
  v.resize(std::max(v.size(), d), 0);
  return v;
}

}  // namespace

// ---- materialised blocks

GridBlock brick(int k, std::uint64_t m, const DoublingScheme& s) {
  if (k < 0 || k > kMaxPositionalOrder) throw std::invalid_argument("brick order out of range");
  const std::uint64_t positions = std::uint64_t{1} << k;
  if (positions < 64 && m >> positions) throw std::invalid_argument("brick index too large for its order");
  GridBlock b = GridBlock::zeros(s.box(k));
  for (std::uint64_t p = 0; p < positions; ++p) b.bits[p] = (m >> (positions - 1 - p)) & 1;
  return b;
}

std::vector<GridBlock> bricks(int k, const DoublingScheme& s) {
  if (k < 0 || k > kMaxBrickEnumeration) throw std::invalid_argument("bricks: order too large to enumerate");
  std::vector<GridBlock> out;
  const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << k);
  out.reserve(count);
  for (std::uint64_t m = 0; m < count; ++m) out.push_back(brick(k, m, s));
  return out;
}

PackageLayout package_layout(int k, const DoublingScheme& s) {
  if (k < 0 || k > kMaxPackageOrder) throw std::invalid_argument("package order out of range");
  PackageLayout L{k, s.box(DoublingScheme::r(k)), s.box(k), {}, {}};
  const auto b = s.log_sides(DoublingScheme::r(k));
  const auto c = padded(s.log_sides(k), b.size());
  std::vector<std::uint32_t> grid(b.size());
  std::uint64_t slots = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    grid[i] = std::uint32_t{1} << (b[i] - c[i]);
    slots *= grid[i];
  }
  for (std::uint64_t j = 0; j < slots; ++j) {
    std::vector<std::uint32_t> corner(b.size());
    std::uint64_t rem = j;
    for (std::size_t i = 0; i < b.size(); ++i) {
      corner[i] = static_cast<std::uint32_t>(rem % grid[i]) << c[i];
      rem /= grid[i];
    }
    L.slot_corners.push_back(std::move(corner));
    L.brick_of_slot.push_back(j);
  }
  return L;
}

GridBlock package(int k, const DoublingScheme& s) {
  const PackageLayout L = package_layout(k, s);
  GridBlock out = GridBlock::zeros(L.domain);
  const std::uint64_t cells = L.brick_box.cardinality();
  for (std::size_t j = 0; j < L.slot_corners.size(); ++j) {
    const GridBlock br = brick(k, L.brick_of_slot[j], s);
    const ExpVec corner(L.slot_corners[j]);
    for (std::uint64_t t = 0; t < cells; ++t) out.set(corner + L.brick_box.colex_point(t), br.bits[t]);
  }
  return out;
}

GridBlock chain(int k, const DoublingScheme& s) {
  if (k < 0 || k > kMaxChainMaterialise) throw std::invalid_argument("chain: order beyond the materialisation budget");
  const ChainEvaluator ev(s, std::max(k, 1));
  GridBlock out = GridBlock::zeros(s.box(DoublingScheme::r(k + 1)));
  for (std::uint64_t t = 0; t < out.bits.size(); ++t) out.bits[t] = ev.chain_bit(k, out.box.colex_point(t));
  return out;
}

// ---- positional evaluation

ChainEvaluator::ChainEvaluator(DoublingScheme s, int kmax) : s_(std::move(s)), kmax_(kmax) {
  if (kmax < 0 || kmax > kMaxPositionalOrder) throw std::invalid_argument("ChainEvaluator: kmax must lie in 0..6");
  for (int k = 0; k <= kmax + 1; ++k) rs_.push_back(s_.log_sides(DoublingScheme::r(k)));
  for (int k = 0; k <= kmax + 1; ++k) ks_.push_back(s_.log_sides(static_cast<std::size_t>(k)));
}

bool ChainEvaluator::package_bit(int k, const ExpVec& o) const {
  const auto& b = rs_[k];
  const auto& c = ks_[k];
  std::uint64_t slot = 0, pos = 0;
  std::uint32_t slot_shift = 0, pos_shift = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::uint32_t ci = i < c.size() ? c[i] : 0;
    const std::uint64_t oi = o[i];
    if (slot_shift < 64) slot |= high_bits(oi, ci) << slot_shift;
    pos |= low_bits(oi, ci) << pos_shift;
    slot_shift += b[i] - ci;
    pos_shift += ci;
  }
  const std::uint64_t width = std::uint64_t{1} << k;
  return (slot >> (width - 1 - pos)) & 1;
}

bool ChainEvaluator::in_box(const ExpVec& g, std::size_t n) const {
  const auto a = s_.log_sides(n);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const std::uint32_t ai = i < a.size() ? a[i] : 0;
    if (high_bits(g[i], ai)) return false;
  }
  return true;
}

bool ChainEvaluator::chain_bit(int k, const ExpVec& g) const {
  for (;;) {
    const auto& b = rs_[k];
    bool origin_tile = true;
    for (std::size_t i = 0; i < g.dim() && origin_tile; ++i) {
      const std::uint32_t bi = i < b.size() ? b[i] : 0;
      origin_tile = high_bits(g[i], bi) == 0;
    }
    if (origin_tile && k > 0) {
      --k;
      continue;
    }
    std::vector<std::uint32_t> off(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) off[i] = static_cast<std::uint32_t>(low_bits(g[i], b[i]));
    return package_bit(k, ExpVec(std::move(off)));
  }
}

int ChainEvaluator::order(const ExpVec& g) const {
  for (int k = 0; k <= kmax_; ++k) {
    const auto& a = rs_[k + 1];
    bool inside = g.dim() <= a.size();
    for (std::size_t i = 0; i < g.dim() && inside; ++i) inside = high_bits(g[i], a[i]) == 0;
    if (inside) return k;
  }
  return -1;
}

bool ChainEvaluator::at(const ExpVec& g) const {
  const int k = order(g);
  return k >= 0 && chain_bit(k, g);
}

namespace {

// Exponent vector over the first `dims` primes; a leftover cofactor is
// recorded as a unit exponent in coordinate `dims`, which every box of
// dimension <= dims excludes.
ExpVec truncated_expvec(Nat m, std::size_t dims) {
  PartialFactor f = factor_partial(m, dims);
  if (f.cofactor > 1) f.exps.push_back(1);
  return ExpVec(std::move(f.exps));
}

}  // namespace

BitSeq mult_champernowne(const DoublingScheme& s, std::size_t N) {
  if (N > (std::size_t{1} << 26)) throw std::invalid_argument("mult_champernowne: N > 2^26");
  const ChainEvaluator ev(s);
  const std::size_t dims = ev.sides_at_r(ev.kmax() + 1).size();
  std::vector<std::uint8_t> bits(N + 1, 0);
  const std::int64_t n = static_cast<std::int64_t>(N);
#pragma omp parallel for schedule(dynamic, 4096)
  for (std::int64_t m = 1; m <= n; ++m) bits[m] = ev.at(truncated_expvec(static_cast<Nat>(m), dims));
  return BitSeq::generate(N, [&](std::size_t i) { return bits[i] != 0; },
                          "mult-champernowne(" + s.schedule().name() + ")");
}

GridBlock mult_champernowne_grid(const ChainEvaluator& ev, const AnchoredBox& box) {
  GridBlock out = GridBlock::zeros(box);
  const std::int64_t cells = static_cast<std::int64_t>(out.bits.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < cells; ++t) out.bits[t] = ev.at(box.colex_point(static_cast<std::uint64_t>(t)));
  return out;
}

// ---- net-normal tiling

NetNormal::NetNormal(DoublingScheme s, int kmax) : ev_(std::move(s), kmax) {}

bool NetNormal::in_zimpl(int k, const ExpVec& g) const {
  if (k < 1) return false;
  const auto& c = ev_.brick_sides(k);  // F_k
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t side = (std::int64_t{1} << c[i]) - 1;
    if (static_cast<std::int64_t>(g[i]) < k * side - 1) return true;
  }
  return false;
}

ExpVec NetNormal::corner(const std::vector<std::uint32_t>& a, const ExpVec& g) const {
  std::vector<std::uint32_t> e(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    const std::uint32_t ai = i < a.size() ? a[i] : 0;
    e[i] = static_cast<std::uint32_t>(g[i] - low_bits(g[i], ai));
  }
  return ExpVec(std::move(e));
}

NetNormal::Tile NetNormal::tile(const ExpVec& g) const {
  if (ev_.in_box(g, DoublingScheme::r(1))) return {0, corner(ev_.sides_at_r(0), g)};
  for (int k = 1; k <= ev_.kmax(); ++k) {
    const ExpVec big = corner(ev_.sides_at_r(k + 1), g);
    if (big.dim() == 0 || in_zimpl(k, big)) return {k, corner(ev_.sides_at_r(k), g)};
  }
  return {0, corner(ev_.sides_at_r(0), g)};
}

bool NetNormal::at(const ExpVec& g) const {
  const Tile t = tile(g);
  std::vector<std::uint32_t> off(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) off[i] = g[i] - t.corner[i];
  return ev_.package_bit(t.order, ExpVec(std::move(off)));
}

BitSeq net_normal(const DoublingScheme& s, std::size_t N) {
  if (N > (std::size_t{1} << 24)) throw std::invalid_argument("net_normal: N > 2^24");
  const NetNormal nn(s);
  const std::size_t dims = nn.evaluator().sides_at_r(nn.evaluator().kmax() + 1).size();
  std::vector<std::uint8_t> bits(N + 1, 0);
  const std::int64_t n = static_cast<std::int64_t>(N);
#pragma omp parallel for schedule(dynamic, 4096)
  for (std::int64_t m = 1; m <= n; ++m) bits[m] = nn.at(truncated_expvec(static_cast<Nat>(m), dims));
  return BitSeq::generate(N, [&](std::size_t i) { return bits[i] != 0; }, "net-normal(" + s.schedule().name() + ")");
}

TileCensus net_normal_census(const NetNormal& nn, std::size_t N) {
  const std::size_t dims = nn.evaluator().sides_at_r(nn.evaluator().kmax() + 1).size();
  TileCensus c;
  c.tiles_per_order.assign(nn.evaluator().kmax() + 1, 0);
  // every tile meeting [1,N] has its corner, a divisor of its cells, in [1,N]
  for (Nat m = 1; m <= N; ++m) {
    const ExpVec g = truncated_expvec(m, dims);
    const auto t = nn.tile(g);
    if (t.corner == g) ++c.tiles_per_order[t.order];
  }
  return c;
}

// ---- Figure rendering

std::vector<std::string> render(const GridBlock& b) {
  const std::size_t d = b.box.dim();
  if (d > 3) throw std::invalid_argument("render: at most three dimensions");
  const std::uint32_t X = b.box.extent(0), Y = b.box.extent(1), Z = b.box.extent(2);
  std::vector<std::string> rows;
  for (std::uint32_t z = Z; z-- > 0;) {
    for (std::uint32_t y = Y; y-- > 0;) {
      std::string row;
      for (std::uint32_t x = 0; x < X; ++x) row += b.at(ExpVec{x, y, z}) ? '1' : '0';
      rows.push_back(row);
    }
    if (z) rows.emplace_back();
  }
  return rows;
}

std::vector<FigureEntry> figure1_blocks() {
  const DoublingScheme s;
  std::vector<FigureEntry> e;
  e.push_back({"0th package", package(0, s), {"01"}, {}});
  e.push_back({"0th chain", chain(0, s), {"0101", "0101"}, {}});
  e.push_back({"1st package", package(1, s), {"1011", "0001"}, {}});
  e.push_back({"1st chain", chain(1, s),
               {"10111011", "00010001", "10111011", "00010001", "",
                "10111011", "00010001", "01011011", "01010001"},
               {}});
  e.push_back({"2nd package", package(2, s),
               {"11101111", "11011110", "10101011", "10001001", "",
                "01100111", "01010110", "00100011", "00000001"},
               {}});
  for (auto& f : e) {
    const auto rows = render(f.generated);
    const std::size_t n = std::max(rows.size(), f.figure.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::string a = i < rows.size() ? rows[i] : "", b = i < f.figure.size() ? f.figure[i] : "";
      if (a != b) f.diff_rows.push_back(i);
    }
  }
  return e;
}

std::string figure1_report(const std::vector<FigureEntry>& entries) {
  std::ostringstream os;
  for (const auto& f : entries) {
    os << "== " << f.label << " (" << f.generated.box.cardinality() << " cells, box";
    for (std::size_t i = 0; i < f.generated.box.dim(); ++i) os << (i ? "x" : " ") << f.generated.box.extent(i);
    os << ")\n";
    const auto rows = render(f.generated);
    for (const auto& r : rows) os << r << "\n";
    if (f.diff_rows.empty()) {
      os << "figure: match\n";
    } else {
      os << "figure: " << f.diff_rows.size() << " row(s) differ\n";
      for (auto i : f.diff_rows)
        os << "  row " << i << ": generated " << (i < rows.size() ? rows[i] : "") << "  figure "
           << (i < f.figure.size() ? f.figure[i] : "") << "\n";
    }
  }
  return os.str();
}

}  // namespace normlab
