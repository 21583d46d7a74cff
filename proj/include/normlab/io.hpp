#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "normlab/bitseq.hpp"

namespace normlab {

enum class BitFormat { Ascii, Packed };

inline constexpr std::size_t kAsciiLineWidth = 4096;
inline constexpr char kPackedMagic[8] = {'F', 'N', 'R', 'M', 'P', 'K', '1', '\0'};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "#FNORM-BITS v1 n=<N> base=1", "# provenance: ..." comment lines, then rows of '0'/'1'.
void write_ascii(std::ostream& os, const BitSeq& x);
BitSeq read_ascii(std::istream& is);
// magic, 8-byte little-endian length, bits least significant first in each byte.
void write_packed(std::ostream& os, const BitSeq& x);
BitSeq read_packed(std::istream& is);

void save_bits(const std::string& path, const BitSeq& x, BitFormat f);
BitSeq load_bits(const std::string& path);  // format detected from the first bytes

struct GeneratorConfig {
  std::string kind;  // classical-champernowne, mult-champernowne, net-normal, bernoulli, zeros, ones,
                     // additive-liouville, mult-liouville
  std::uint64_t bits = 0;
  std::uint64_t seed = 1;
  std::string directions = "staircase";
  std::vector<std::uint32_t> direction_list;
  std::vector<std::uint64_t> leading;
};

struct FolnerConfig {
  std::string kind = "classical";  // classical, nice, doubling, intervals
  std::string directions = "staircase";
  std::vector<std::uint32_t> direction_list;
  std::vector<std::uint64_t> leading;
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> intervals;
};

struct AnalysisConfig {
  std::vector<std::vector<std::uint64_t>> K;
  std::vector<std::uint64_t> n;
  std::string exec = "parallel";
};

struct SearchConfig {
  std::string pattern;
  std::vector<std::uint64_t> coeffs;
  unsigned order = 2;
  std::uint64_t q_max = 10, d_max = 100, a_max = 1000, b_max = 1000;
  std::uint64_t max_witnesses = 0;
  std::string set;
  std::uint64_t bound = 0;
};

struct RunConfig {
  std::optional<GeneratorConfig> generator;
  std::optional<FolnerConfig> folner;
  std::optional<AnalysisConfig> analysis;
  std::optional<SearchConfig> search;
};

// JSON text; unknown keys anywhere are errors.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace normlab
