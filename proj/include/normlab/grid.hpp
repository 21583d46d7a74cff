#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "normlab/counting.hpp"
#include "normlab/expvec.hpp"
#include "normlab/folner.hpp"

namespace normlab {

// A 0-1 block over an anchored box of the exponent lattice, cells in colex order.
struct GridBlock {
  AnchoredBox box;
  std::vector<std::uint8_t> bits;

  static GridBlock zeros(AnchoredBox b);
  bool at(const ExpVec& g) const { return bits[box.colex_index(g)]; }
  void set(const ExpVec& g, bool v) { bits[box.colex_index(g)] = v; }
  std::size_t ones() const;
  bool operator==(const GridBlock&) const = default;
};

// Box of g with g + h inside `outer` for every h in K (empty sizes with
// `empty` set when no such g exists).
struct CoreBox {
  AnchoredBox box;
  bool empty = false;
};
CoreBox grid_core(const AnchoredBox& outer, const std::vector<ExpVec>& K);

// Pattern histogram of field(g + K[j]) over g in F. Needs F + K inside field.box.
BlockTable grid_counts(const GridBlock& field, const AnchoredBox& F, const std::vector<ExpVec>& K,
                       Exec exec = Exec::Parallel);
BlockTable grid_counts_serial(const GridBlock& field, const AnchoredBox& F, const std::vector<ExpVec>& K);
BlockTable grid_counts_parallel(const GridBlock& field, const AnchoredBox& F, const std::vector<ExpVec>& K);

// (K,eps)-normality of a block over a box: every K-pattern occurs
// (2^-|K| +- eps)|F| times among shifts g with g + K inside the box.
bool ke_normal(const GridBlock& C, const std::vector<ExpVec>& K, double eps);
// Same notion for a word over {1..|C|} in (N,+).
bool ke_normal(const BitSeq& C, const FiniteSet& K, double eps);
bool within_eps(const BlockTable& t, std::uint64_t card, double eps);

std::vector<ExpVec> to_expvecs(const FiniteSet& K);  // multiplicative supports as lattice offsets

}  // namespace normlab
