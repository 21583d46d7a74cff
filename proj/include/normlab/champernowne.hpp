#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normlab/bitseq.hpp"
#include "normlab/folner.hpp"
#include "normlab/grid.hpp"

namespace normlab {

BitSeq classical_champernowne(std::size_t N);

// Doubling Folner sequence F_0 = {0}, F_{n} = F_{n-1} doubled in direction i_n.
class DoublingScheme {
 public:
  explicit DoublingScheme(DirectionSchedule s = DirectionSchedule::staircase()) : sched_(std::move(s)) {}
  static std::size_t r(int k) { return (std::size_t{1} << k) + static_cast<std::size_t>(k); }

  const DirectionSchedule& schedule() const { return sched_; }
  std::vector<std::uint32_t> log_sides(std::size_t n) const { return n ? sched_.counts(n) : std::vector<std::uint32_t>{}; }
  AnchoredBox box(std::size_t n) const;  // throws once a side needs 32 bits
  FolnerSpec spec() const { return FolnerSpec::doubling(sched_); }

 private:
  DirectionSchedule sched_;
};

inline constexpr int kMaxBrickEnumeration = 4;
inline constexpr int kMaxPackageOrder = 4;
inline constexpr int kMaxChainMaterialise = 3;
inline constexpr int kMaxPositionalOrder = 6;

GridBlock brick(int k, std::uint64_t m, const DoublingScheme& s);
std::vector<GridBlock> bricks(int k, const DoublingScheme& s);
GridBlock package(int k, const DoublingScheme& s);
GridBlock chain(int k, const DoublingScheme& s);

// Slot decomposition of F_{r(k)} into translates of F_k.
struct PackageLayout {
  int order;
  AnchoredBox domain;
  AnchoredBox brick_box;
  std::vector<std::vector<std::uint32_t>> slot_corners;  // colex slot order
  std::vector<std::uint64_t> brick_of_slot;
};
PackageLayout package_layout(int k, const DoublingScheme& s);

// Positional evaluation of the chains, no materialisation.
class ChainEvaluator {
 public:
  explicit ChainEvaluator(DoublingScheme s, int kmax = kMaxPositionalOrder);

  const DoublingScheme& scheme() const { return s_; }
  int kmax() const { return kmax_; }
  // bit of package(k) at offset o inside F_{r(k)}
  bool package_bit(int k, const ExpVec& o) const;
  // bit of chain(k) at g inside F_{r(k+1)}
  bool chain_bit(int k, const ExpVec& g) const;
  // least k with g inside F_{r(k+1)}, -1 past kmax
  int order(const ExpVec& g) const;
  bool at(const ExpVec& g) const;
  bool in_box(const ExpVec& g, std::size_t n) const;  // g inside F_n (for n = r(.) tabulated)
  const std::vector<std::uint32_t>& sides_at_r(int k) const { return rs_[k]; }
  const std::vector<std::uint32_t>& brick_sides(int k) const { return ks_[k]; }

 private:
  DoublingScheme s_;
  int kmax_;
  std::vector<std::vector<std::uint32_t>> rs_;  // log sides of F_{r(k)}, k = 0..kmax+1
  std::vector<std::vector<std::uint32_t>> ks_;  // log sides of F_k
};

BitSeq mult_champernowne(const DoublingScheme& s, std::size_t N);
GridBlock mult_champernowne_grid(const ChainEvaluator& ev, const AnchoredBox& box);

// Mixed tiling built over the slabs Z_impl(F_k, 1/k).
class NetNormal {
 public:
  explicit NetNormal(DoublingScheme s, int kmax = kMaxPositionalOrder);

  struct Tile {
    int order;
    ExpVec corner;
  };
  bool in_zimpl(int k, const ExpVec& g) const;
  Tile tile(const ExpVec& g) const;
  bool at(const ExpVec& g) const;
  const ChainEvaluator& evaluator() const { return ev_; }

 private:
  ExpVec corner(const std::vector<std::uint32_t>& log_sides, const ExpVec& g) const;
  ChainEvaluator ev_;
};

BitSeq net_normal(const DoublingScheme& s, std::size_t N);

struct TileCensus {
  std::vector<std::uint64_t> tiles_per_order;  // complete or partial tiles meeting [1, N]
  std::uint64_t uncovered = 0;
};
TileCensus net_normal_census(const NetNormal& nn, std::size_t N);

// Rows top to bottom, layers from the last coordinate down, blank line between layers.
std::vector<std::string> render(const GridBlock& b);

struct FigureEntry {
  std::string label;
  GridBlock generated;
  std::vector<std::string> figure;   // rows as printed in the figure
  std::vector<std::size_t> diff_rows;  // indices into the rendered rows that differ
};
std::vector<FigureEntry> figure1_blocks();
std::string figure1_report(const std::vector<FigureEntry>& entries);

}  // namespace normlab
