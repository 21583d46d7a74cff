#include "normlab/bitseq.hpp"

#include <bit>
#include <stdexcept>

namespace normlab {

bool BitSeq::get(std::size_t i) const {
  if (i == 0 || i > n_) throw std::out_of_range("BitSeq::get: position " + std::to_string(i) + " outside 1.." + std::to_string(n_));
  return (*this)[i];
}

std::size_t BitSeq::popcount() const {
  std::size_t c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

std::string BitSeq::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 1; i <= n_; ++i)
    if ((*this)[i]) s[i - 1] = '1';
  return s;
}

BitSeq BitSeq::from_string(std::string_view bits, std::string prov) {
  BitSeqBuilder b;
  b.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may only contain 0 and 1");
    b.push_back(c == '1');
  }
  return std::move(b).build(std::move(prov));
}

BitSeq BitSeq::from_words(std::vector<std::uint64_t> words, std::size_t n, std::string prov) {
  if (words.size() != (n + 63) / 64) throw std::invalid_argument("word count does not match bit length");
  if (n & 63) words.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  BitSeq s;
  s.n_ = n;
  s.w_ = std::move(words);
  s.prov_ = std::move(prov);
  return s;
}

void BitSeqBuilder::set(std::size_t i, bool b) {
  if (i == 0 || i > n_) throw std::out_of_range("BitSeqBuilder::set");
  --i;
  const std::uint64_t m = std::uint64_t{1} << (i & 63);
  if (b)
    w_[i >> 6] |= m;
  else
    w_[i >> 6] &= ~m;
}

BitSeq BitSeqBuilder::build(std::string prov) && {
  return BitSeq::from_words(std::move(w_), n_, std::move(prov));
}

Block Block::from_bits(FiniteSet support, const std::vector<int>& bits) {
  if (support.empty()) throw std::invalid_argument("block support must be nonempty");
  if (support.min() == 0) throw std::invalid_argument("block support lives in N (>= 1)");
  if (bits.size() != support.size()) throw std::invalid_argument("block: one bit per support element");
  if (support.size() > 64) throw std::invalid_argument("block support larger than 64");
  Block b{std::move(support), 0};
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j]) b.pattern |= std::uint64_t{1} << j;
  return b;
}

Block Block::word(std::string_view bits) {
  std::vector<int> v;
  for (char c : bits) v.push_back(c == '1');
  return from_bits(FiniteSet::range(1, bits.size()), v);
}

std::string Block::str() const {
  std::string s;
  for (std::size_t j = 0; j < support.size(); ++j) s += at(j) ? '1' : '0';
  return s;
}

BitSeq shift_mult(const BitSeq& x, Nat n) {
  if (n == 0) throw std::invalid_argument("shift_mult: n must be >= 1");
  const std::size_t m = x.size() / n;
  return BitSeq::generate(m, [&](std::size_t j) { return x[j * n]; },
                          x.provenance() + "|every" + std::to_string(n));
}

}  // namespace normlab
