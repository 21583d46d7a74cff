#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "normlab/folner.hpp"

namespace normlab {

// Finite prefix x_1..x_N of a binary sequence. Immutable once built.
class BitSeq {
 public:
  BitSeq() = default;

  std::size_t size() const { return n_; }
  const std::string& provenance() const { return prov_; }

  bool get(std::size_t i) const;  // checked, 1-based
  bool operator[](std::size_t i) const {
    --i;
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  const std::vector<std::uint64_t>& words() const { return w_; }
  std::size_t popcount() const;
  std::string to_string() const;
  bool operator==(const BitSeq& o) const { return n_ == o.n_ && w_ == o.w_; }

  static BitSeq from_string(std::string_view bits, std::string prov = "literal");
  // bits[0] is x_1; words must have trailing bits cleared or will be cleared.
  static BitSeq from_words(std::vector<std::uint64_t> words, std::size_t n, std::string prov);

  template <class F>
  static BitSeq generate(std::size_t n, F&& f, std::string prov) {
    std::vector<std::uint64_t> w((n + 63) / 64, 0);
    for (std::size_t i = 1; i <= n; ++i)
      if (f(i)) w[(i - 1) >> 6] |= std::uint64_t{1} << ((i - 1) & 63);
    return from_words(std::move(w), n, std::move(prov));
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
  std::string prov_;
};

class BitSeqBuilder {
 public:
  void reserve(std::size_t n) { w_.reserve((n + 63) / 64); }
  void push_back(bool b) {
    if ((n_ & 63) == 0) w_.push_back(0);
    if (b) w_.back() |= std::uint64_t{1} << (n_ & 63);
    ++n_;
  }
  void set(std::size_t i, bool b);  // 1-based, i <= size()
  bool get(std::size_t i) const {
    --i;
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  std::size_t size() const { return n_; }
  BitSeq build(std::string prov) &&;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Pattern B on support K; bit j of `pattern` is B(K[j]).
struct Block {
  FiniteSet support;
  std::uint64_t pattern = 0;

  static Block from_bits(FiniteSet support, const std::vector<int>& bits);
  static Block word(std::string_view bits);  // support {1..|bits|}
  bool at(std::size_t j) const { return (pattern >> j) & 1; }
  std::size_t size() const { return support.size(); }
  std::string str() const;
};

BitSeq shift_mult(const BitSeq& x, Nat n);

}  // namespace normlab
