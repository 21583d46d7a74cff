#include "normlab/io.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace normlab {

void write_ascii(std::ostream& os, const BitSeq& x) {
  os << "#FNORM-BITS v1 n=" << x.size() << " base=1\n";
  if (!x.provenance().empty()) os << "# provenance: " << x.provenance() << "\n";
  std::string line;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    line.push_back(x[i] ? '1' : '0');
    if (line.size() == kAsciiLineWidth || i == x.size()) {
      os << line << "\n";
      line.clear();
    }
  }
}

BitSeq read_ascii(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty bit file");
  std::size_t n = 0;
  {
    std::istringstream h(line);
    std::string tag, ver, nf, bf;
    h >> tag >> ver >> nf >> bf;
    if (tag != "#FNORM-BITS" || ver != "v1" || nf.rfind("n=", 0) != 0 || bf != "base=1")
      throw FormatError("bad header: " + line);
    try {
      n = std::stoull(nf.substr(2));
    } catch (const std::exception&) {
      throw FormatError("bad length in header: " + line);
    }
  }
  std::string prov = "file", bits;
  bits.reserve(n);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') {
      if (line.rfind("# provenance: ", 0) == 0) prov = line.substr(14);
      continue;
    }
    if (line.size() > kAsciiLineWidth) throw FormatError("line longer than 4096 characters");
    for (char c : line)
      if (c != '0' && c != '1') throw FormatError(std::string("unexpected character '") + c + "'");
    bits += line;
  }
  if (bits.size() != n)
    throw FormatError("header declares " + std::to_string(n) + " bits, file holds " + std::to_string(bits.size()));
  return BitSeq::from_string(bits, prov);
}

void write_packed(std::ostream& os, const BitSeq& x) {
  os.write(kPackedMagic, 8);
  std::uint64_t n = x.size();
  for (int b = 0; b < 8; ++b) os.put(static_cast<char>((n >> (8 * b)) & 0xff));
  for (std::size_t byte = 0; byte < (n + 7) / 8; ++byte) {
    const std::uint64_t w = x.words()[byte / 8];
    os.put(static_cast<char>((w >> (8 * (byte % 8))) & 0xff));
  }
}

BitSeq read_packed(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kPackedMagic, 8) != 0) throw FormatError("bad packed magic");
  unsigned char len[8];
  if (!is.read(reinterpret_cast<char*>(len), 8)) throw FormatError("truncated packed header");
  std::uint64_t n = 0;
  for (int b = 0; b < 8; ++b) n |= std::uint64_t{len[b]} << (8 * b);
  std::vector<std::uint64_t> w((n + 63) / 64, 0);
  for (std::size_t byte = 0; byte < (n + 7) / 8; ++byte) {
    const int c = is.get();
    if (c == EOF) throw FormatError("truncated packed payload");
    w[byte / 8] |= std::uint64_t(static_cast<unsigned char>(c)) << (8 * (byte % 8));
  }
  return BitSeq::from_words(std::move(w), n, "file");
}

void save_bits(const std::string& path, const BitSeq& x, BitFormat f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  if (f == BitFormat::Ascii)
    write_ascii(os, x);
  else
    write_packed(os, x);
  if (!os) throw std::runtime_error("write failed: " + path);
}

BitSeq load_bits(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  const int c = is.peek();
  if (c == 'F') return read_packed(is);
  return read_ascii(is);
}

// ---- run configs

namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw FormatError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void take_directions(const json& j, std::string& name, std::vector<std::uint32_t>& list) {
  if (!j.contains("directions")) return;
  const auto& d = j.at("directions");
  if (d.is_string())
    name = d.get<std::string>();
  else {
    name = "explicit";
    list = d.get<std::vector<std::uint32_t>>();
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  only_keys(j, "config", {"generator", "folner", "analysis", "search"});
  RunConfig c;
  try {
    if (j.contains("generator")) {
      const auto& g = j.at("generator");
      only_keys(g, "generator", {"kind", "bits", "seed", "directions", "leading"});
      GeneratorConfig gc;
      take(g, "kind", gc.kind);
      take(g, "bits", gc.bits);
      take(g, "seed", gc.seed);
      take(g, "leading", gc.leading);
      take_directions(g, gc.directions, gc.direction_list);
      c.generator = gc;
    }
    if (j.contains("folner")) {
      const auto& f = j.at("folner");
      only_keys(f, "folner", {"kind", "directions", "leading", "intervals"});
      FolnerConfig fc;
      take(f, "kind", fc.kind);
      take(f, "leading", fc.leading);
      take(f, "intervals", fc.intervals);
      take_directions(f, fc.directions, fc.direction_list);
      c.folner = fc;
    }
    if (j.contains("analysis")) {
      const auto& a = j.at("analysis");
      only_keys(a, "analysis", {"K", "n", "exec"});
      AnalysisConfig ac;
      take(a, "K", ac.K);
      take(a, "n", ac.n);
      take(a, "exec", ac.exec);
      c.analysis = ac;
    }
    if (j.contains("search")) {
      const auto& s = j.at("search");
      only_keys(s, "search",
                {"pattern", "coeffs", "order", "q_max", "d_max", "a_max", "b_max", "max_witnesses", "set", "bound"});
      SearchConfig sc;
      take(s, "pattern", sc.pattern);
      take(s, "coeffs", sc.coeffs);
      take(s, "order", sc.order);
      take(s, "q_max", sc.q_max);
      take(s, "d_max", sc.d_max);
      take(s, "a_max", sc.a_max);
      take(s, "b_max", sc.b_max);
      take(s, "max_witnesses", sc.max_witnesses);
      take(s, "set", sc.set);
      take(s, "bound", sc.bound);
      c.search = sc;
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

}  // namespace normlab
