#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "normlab/champernowne.hpp"
#include "normlab/counting.hpp"
#include "normlab/io.hpp"
#include "normlab/liouville.hpp"
#include "normlab/sampler.hpp"
#include "normlab/structure.hpp"

using namespace normlab;

namespace {

constexpr int kOk = 0, kUsage = 1, kVerify = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
std::vector<T> parse_list(const std::string& s, char sep = ',') {
  std::vector<T> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    if (tok.empty()) continue;
    try {
      v.push_back(static_cast<T>(std::stoull(tok)));
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + tok + "'");
    }
  }
  return v;
}

DirectionSchedule schedule_of(const std::string& name, const std::vector<std::uint32_t>& list) {
  if (name == "staircase") return DirectionSchedule::staircase();
  if (name == "toeplitz") return DirectionSchedule::toeplitz();
  if (name == "explicit") return DirectionSchedule::explicit_list(list);
  return DirectionSchedule::explicit_list(parse_list<std::uint32_t>(name));
}

FolnerSpec spec_of(const FolnerConfig& f) {
  if (f.kind == "classical") return FolnerSpec::classical();
  if (f.kind == "nice")
    return f.leading.empty() ? FolnerSpec::nice_boxes(schedule_of(f.directions, f.direction_list))
                             : FolnerSpec::nice_boxes(f.leading);
  if (f.kind == "doubling") return FolnerSpec::doubling(schedule_of(f.directions, f.direction_list));
  if (f.kind == "intervals") {
    std::vector<std::vector<Interval>> per;
    for (const auto& row : f.intervals) {
      per.emplace_back();
      for (auto [lo, hi] : row) per.back().push_back({lo, hi});
    }
    return FolnerSpec::interval_union(std::move(per));
  }
  throw UsageError("unknown folner kind '" + f.kind + "'");
}

BitSeq generate(const GeneratorConfig& g) {
  const std::size_t N = g.bits;
  if (g.kind == "classical-champernowne") return classical_champernowne(N);
  if (g.kind == "mult-champernowne") return mult_champernowne(DoublingScheme(schedule_of(g.directions, g.direction_list)), N);
  if (g.kind == "net-normal") return net_normal(DoublingScheme(schedule_of(g.directions, g.direction_list)), N);
  if (g.kind == "bernoulli") return bernoulli_seq(g.seed, N);
  if (g.kind == "zeros") return BitSeq::generate(N, [](std::size_t) { return false; }, "zeros");
  if (g.kind == "ones") return BitSeq::generate(N, [](std::size_t) { return true; }, "ones");
  if (g.kind == "additive-liouville") {
    AdditiveOptions opt;
    opt.n_hi = std::size_t{1} << 21;
    return additive_liouville_normal(FolnerSpec::classical(), classical_champernowne(4096), N, opt).x;
  }
  if (g.kind == "mult-liouville") {
    const auto L = g.leading.empty() ? desk_leading_list() : g.leading;
    return mult_liouville_normal(FolnerSpec::nice_boxes(L), bernoulli_seq(g.seed, N), N).x;
  }
  throw UsageError("unknown generator kind '" + g.kind + "'");
}

std::string label(const FiniteSet& K) {
  std::string s;
  for (std::size_t i = 0; i < K.size(); ++i) s += (i ? ";" : "") + std::to_string(K[i]);
  return s;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void add_folner_flags(CLI::App* c, FolnerConfig& f, std::string& dirs, std::string& leading) {
  c->add_option("--folner", f.kind, "classical | nice | doubling | intervals");
  c->add_option("--directions", dirs, "staircase | toeplitz | comma list of directions");
  c->add_option("--leading", leading, "comma list of leading parameters (nice)");
}

void finish_folner(FolnerConfig& f, const std::string& dirs, const std::string& leading) {
  if (!dirs.empty()) f.directions = dirs;
  if (!leading.empty()) f.leading = parse_list<std::uint64_t>(leading);
}

NatSet named_set(const std::string& name, const SearchConfig& s) {
  const Nat N = s.bound;
  if (N == 0) throw UsageError("--bound is required");
  if (name == "thick-counterexample") {
    if (s.coeffs.size() != 3) throw UsageError("thick-counterexample needs --coeffs i,j,k");
    return thick_counterexample(s.coeffs[0], s.coeffs[1], s.coeffs[2], N).A;
  }
  if (name == "ex9") {
    const Nat L2 = 7776 * 5;
    return ex9_set({6, L2}, N).B;
  }
  if (name == "all") return NatSet::all(N);
  if (name == "odd") return NatSet::from_predicate(N, [](Nat m) { return m % 2 == 1; }, "odd");
  if (name == "champernowne") return NatSet::support(classical_champernowne(N));
  if (name == "bernoulli") return NatSet::support(bernoulli_seq(kDefaultSeed, N));
  if (name.rfind("file:", 0) == 0) {
    const BitSeq x = load_bits(name.substr(5));
    return NatSet::support(BitSeq::generate(std::min<std::size_t>(N, x.size()), [&](std::size_t i) { return x[i]; },
                                            x.provenance()));
  }
  throw UsageError("unknown set '" + name + "'");
}

Pattern pattern_of(const std::string& p) {
  if (p == "linear") return Pattern::Linear;
  if (p == "power") return Pattern::Power;
  if (p == "sumprod") return Pattern::SumProd;
  if (p == "geoarith") return Pattern::GeoArith;
  if (p == "polygeo") return Pattern::PolyGeo;
  throw UsageError("unknown pattern '" + p + "'");
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"normlab: normal sequences along Folner sequences"};
  app.require_subcommand(1);

  std::string config_path;
  auto with_config = [&](CLI::App* c) { c->add_option("--config", config_path, "JSON run config"); };

  // gen
  GeneratorConfig gen;
  std::string gen_out, gen_format = "ascii", gen_dirs, gen_leading;
  auto* c_gen = app.add_subcommand("gen", "generate a sequence file");
  with_config(c_gen);
  c_gen->add_option("--kind", gen.kind);
  c_gen->add_option("--bits", gen.bits);
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--directions", gen_dirs);
  c_gen->add_option("--leading", gen_leading);
  c_gen->add_option("--format", gen_format)->check(CLI::IsMember({"ascii", "packed"}));
  c_gen->add_option("-o,--output", gen_out);

  // analyze
  FolnerConfig an_f;
  std::string an_in, an_K = "1", an_n, an_dirs, an_leading, an_exec = "parallel";
  auto* c_an = app.add_subcommand("analyze", "block counts and normality defects as CSV");
  with_config(c_an);
  c_an->add_option("-i,--input", an_in)->required();
  add_folner_flags(c_an, an_f, an_dirs, an_leading);
  c_an->add_option("--K", an_K, "sets separated by '/', elements by ','");
  c_an->add_option("--n", an_n, "comma list of indices");
  c_an->add_option("--exec", an_exec)->check(CLI::IsMember({"serial", "parallel"}));

  // density
  FolnerConfig de_f;
  std::string de_in, de_n, de_dirs, de_leading, de_divs, de_cover, de_B;
  auto* c_de = app.add_subcommand("density", "density of the support along a Folner sequence");
  with_config(c_de);
  c_de->add_option("-i,--input", de_in)->required();
  add_folner_flags(c_de, de_f, de_dirs, de_leading);
  c_de->add_option("--n", de_n)->required();
  c_de->add_option("--divisors", de_divs, "density of A/n_1 cap ... cap A/n_k");
  c_de->add_option("--cover", de_cover, "sum | product | linear-sum | linear-diff")
      ->check(CLI::IsMember({"sum", "product", "linear-sum", "linear-diff"}));
  c_de->add_option("--B", de_B, "translators, or n,m for the linear covers");

  // solve
  SearchConfig so;
  std::string so_coeffs;
  bool so_verify = false;
  auto* c_so = app.add_subcommand("solve", "bounded configuration search");
  with_config(c_so);
  c_so->add_option("--pattern", so.pattern);
  c_so->add_option("--coeffs", so_coeffs);
  c_so->add_option("--order", so.order);
  c_so->add_option("--set", so.set);
  c_so->add_option("--bound", so.bound);
  c_so->add_option("--q-max", so.q_max);
  c_so->add_option("--d-max", so.d_max);
  c_so->add_option("--a-max", so.a_max);
  c_so->add_option("--b-max", so.b_max);
  c_so->add_option("--max-witnesses", so.max_witnesses);
  c_so->add_flag("--verify", so_verify);

  // liouville
  std::string li_mode = "add";
  int li_k = 4;
  bool li_verify = false;
  std::uint64_t li_seed = kDefaultSeed, li_bits = 1 << 20;
  auto* c_li = app.add_subcommand("liouville", "Liouville witnesses for the normal constructions");
  c_li->add_option("--mode", li_mode)->check(CLI::IsMember({"add", "mult"}));
  c_li->add_option("--k", li_k)->check(CLI::Range(2, 64));
  c_li->add_option("--seed", li_seed);
  c_li->add_option("--bits", li_bits);
  c_li->add_flag("--verify", li_verify);

  // figure1
  std::string fig_golden;
  auto* c_fig = app.add_subcommand("figure1", "bricks, packages and chains of orders 0..2");
  c_fig->add_option("--golden", fig_golden, "compare the report with this file");

  // adversarial
  std::string ad_in, ad_kind = "bernoulli";
  std::uint64_t ad_seed = kDefaultSeed, ad_bits = 1 << 24;
  std::size_t ad_steps = 64;
  auto* c_ad = app.add_subcommand("adversarial", "adaptive doubling sequence with a zero-heavy trace");
  c_ad->add_option("-i,--input", ad_in);
  c_ad->add_option("--kind", ad_kind)->check(CLI::IsMember({"bernoulli", "zeros", "ones"}));
  c_ad->add_option("--seed", ad_seed);
  c_ad->add_option("--bits", ad_bits);
  c_ad->add_option("--steps", ad_steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);

    if (*c_gen) {
      GeneratorConfig g = cfg.generator.value_or(GeneratorConfig{});
      if (!gen.kind.empty()) g.kind = gen.kind;
      if (gen.bits) g.bits = gen.bits;
      if (c_gen->count("--seed")) g.seed = gen.seed;
      if (!gen_dirs.empty()) g.directions = gen_dirs;
      if (!gen_leading.empty()) g.leading = parse_list<std::uint64_t>(gen_leading);
      if (g.kind.empty() || g.bits == 0) throw UsageError("gen needs --kind and --bits");
      const BitSeq x = generate(g);
      const BitFormat f = gen_format == "packed" ? BitFormat::Packed : BitFormat::Ascii;
      if (gen_out.empty()) {
        if (f == BitFormat::Packed) throw UsageError("packed output needs -o");
        write_ascii(std::cout, x);
      } else {
        save_bits(gen_out, x, f);
      }
      return kOk;
    }

    if (*c_an) {
      FolnerConfig f = cfg.folner.value_or(an_f);
      if (c_an->count("--folner")) f.kind = an_f.kind;
      finish_folner(f, an_dirs, an_leading);
      const FolnerSpec spec = spec_of(f);
      std::vector<FiniteSet> Ks;
      std::vector<std::size_t> ns;
      if (cfg.analysis) {
        for (const auto& k : cfg.analysis->K) Ks.push_back(FiniteSet::from_unsorted(k));
        for (auto n : cfg.analysis->n) ns.push_back(n);
        if (!c_an->count("--exec")) an_exec = cfg.analysis->exec;
      }
      if (c_an->count("--K") || Ks.empty()) {
        Ks.clear();
        std::stringstream ss(an_K);
        std::string part;
        while (std::getline(ss, part, '/')) Ks.push_back(FiniteSet::from_unsorted(parse_list<Nat>(part)));
      }
      if (c_an->count("--n")) ns = parse_list<std::size_t>(an_n);
      if (ns.empty()) throw UsageError("analyze needs --n");
      const BitSeq x = load_bits(an_in);
      const Exec ex = an_exec == "serial" ? Exec::Serial : Exec::Parallel;
      std::cout << "n,|F_n|,K,block,count,freq,defect\n";
      for (std::size_t n : ns)
        for (const auto& K : Ks) {
          try {
            const BlockTable t = block_freqs(x, spec, n, K, ex);
            const double d = normality_defect(t);
            for (std::size_t p = 0; p < t.counts.size(); ++p) {
              std::string b;
              for (std::size_t j = 0; j < K.size(); ++j) b.push_back((p >> j) & 1 ? '1' : '0');
              std::cout << n << ',' << t.total << ',' << label(K) << ',' << b << ',' << t.counts[p] << ','
                        << fmt(t.freq(p)) << ',' << fmt(d) << '\n';
            }
          } catch (const std::exception& e) {
            std::cout << n << ",," << label(K) << ",,,,error: " << e.what() << '\n';
          }
        }
      return kOk;
    }

    if (*c_de) {
      FolnerConfig f = cfg.folner.value_or(de_f);
      if (c_de->count("--folner")) f.kind = de_f.kind;
      finish_folner(f, de_dirs, de_leading);
      const FolnerSpec spec = spec_of(f);
      const BitSeq x = load_bits(de_in);
      const NatSet A = NatSet::support(x);
      const auto ns = parse_list<std::size_t>(de_n);
      std::vector<DensityPoint> rows;
      if (!de_divs.empty()) {
        rows = intersection_density(A, parse_list<Nat>(de_divs), spec, ns);
      } else if (!de_cover.empty()) {
        const CoverOp op = de_cover == "sum"          ? CoverOp::Sum
                           : de_cover == "product"    ? CoverOp::Product
                           : de_cover == "linear-sum" ? CoverOp::LinearSum
                                                      : CoverOp::LinearDiff;
        rows = cover_density(A, parse_list<Nat>(de_B), spec, ns, op);
      } else {
        rows = intersection_density(A, {1}, spec, ns);
      }
      std::cout << "n,|F_n|,count,density\n";
      for (const auto& r : rows) std::cout << r.n << ',' << r.card << ',' << r.hits << ',' << fmt(r.density) << '\n';
      return kOk;
    }

    if (*c_so) {
      SearchConfig s = cfg.search.value_or(SearchConfig{});
      if (!so.pattern.empty()) s.pattern = so.pattern;
      if (!so_coeffs.empty()) s.coeffs = parse_list<std::uint64_t>(so_coeffs);
      if (c_so->count("--order")) s.order = so.order;
      if (!so.set.empty()) s.set = so.set;
      if (so.bound) s.bound = so.bound;
      if (c_so->count("--q-max")) s.q_max = so.q_max;
      if (c_so->count("--d-max")) s.d_max = so.d_max;
      if (c_so->count("--a-max")) s.a_max = so.a_max;
      if (c_so->count("--b-max")) s.b_max = so.b_max;
      if (c_so->count("--max-witnesses")) s.max_witnesses = so.max_witnesses;
      if (s.pattern.empty() || s.set.empty()) throw UsageError("solve needs --pattern and --set");
      const Pattern p = pattern_of(s.pattern);
      const NatSet A = named_set(s.set, s);
      SearchBounds b;
      b.coeffs = s.coeffs;
      b.order = s.order;
      b.q_max = s.q_max;
      b.d_max = s.d_max;
      b.a_max = s.a_max;
      b.b_max = s.b_max;
      b.max_witnesses = s.max_witnesses;
      const auto ws = config_search(A, p, b);
      const auto fields = witness_fields(p);
      for (std::size_t i = 0; i < fields.size(); ++i) std::cout << (i ? "," : "") << fields[i];
      std::cout << '\n';
      bool ok = true;
      for (const auto& w : ws) {
        for (std::size_t i = 0; i < w.v.size(); ++i) std::cout << (i ? "," : "") << w.v[i];
        std::cout << '\n';
        if (so_verify) ok = ok && check_witness(A, p, b, w);
      }
      std::cerr << "# " << ws.size() << " witness(es) in " << A.provenance() << " up to " << A.horizon() << '\n';
      return ok ? kOk : kVerify;
    }

    if (*c_li) {
      RepetitiveSpec spec;
      if (li_mode == "add") {
        AdditiveOptions opt;
        opt.n_hi = std::size_t{1} << 21;
        opt.min_levels = std::max<std::size_t>(opt.min_levels, li_k);
        spec = additive_liouville_normal(FolnerSpec::classical(), classical_champernowne(4096), li_bits, opt).spec;
      } else {
        const FolnerSpec nice = FolnerSpec::nice_boxes(desk_leading_list());
        const ZoneSchedule z = zone_schedule(nice, li_bits);
        Nat need = li_bits;
        for (std::size_t j = 1; j <= z.m.size() && j + 1 <= static_cast<std::size_t>(li_k); ++j)
          need = std::max(need, z.m[j - 1]);
        spec = mult_liouville_normal(nice, bernoulli_seq(li_seed, need), li_bits).spec;
      }
      std::cout << "k,level,period,agreement,method,verified,p,q\n";
      bool all = true;
      for (int k = 2; k <= li_k; ++k) {
        try {
          const auto w = liouville_witness(spec, k);
          std::cout << k << ',' << w.level << ',' << w.period << ',' << w.agreement << ',' << w.method << ','
                    << (w.verified ? "yes" : "no") << ",\"" << w.p << "\",\"" << w.q << "\"\n";
          all = all && w.verified;
        } catch (const std::invalid_argument& e) {
          std::cout << k << ",,,,none,no,,\n";
          std::cerr << "k=" << k << ": " << e.what() << '\n';
          all = false;
        }
      }
      return li_verify && !all ? kVerify : kOk;
    }

    if (*c_fig) {
      const std::string report = figure1_report(figure1_blocks());
      std::cout << report;
      if (!fig_golden.empty()) {
        std::ifstream is(fig_golden);
        if (!is) throw UsageError("cannot open " + fig_golden);
        std::stringstream ss;
        ss << is.rdbuf();
        if (ss.str() != report) {
          std::cerr << "figure1: report differs from " << fig_golden << '\n';
          return kVerify;
        }
      }
      return kOk;
    }

    if (*c_ad) {
      BitSeq x;
      if (!ad_in.empty())
        x = load_bits(ad_in);
      else if (ad_kind == "bernoulli")
        x = bernoulli_seq(ad_seed, ad_bits);
      else
        x = BitSeq::generate(ad_bits, [&](std::size_t) { return ad_kind == "ones"; }, ad_kind);
      const auto tr = adversarial_doubling(x, ad_steps);
      std::cout << "n,kind,direction,log_sides,leading,card,zeros,added_zeros,zero_fraction,ledger_bound\n";
      for (const auto& s : tr.steps) {
        std::string sides;
        for (std::size_t i = 0; i < s.log_sides.size(); ++i) sides += (i ? ";" : "") + std::to_string(s.log_sides[i]);
        std::cout << s.n << ',' << to_string(s.kind) << ',' << s.direction << ',' << sides << ',' << s.leading << ','
                  << s.card << ',' << s.zeros << ',' << s.added_zeros << ',' << fmt(s.zero_fraction) << ','
                  << fmt(s.ledger_bound) << '\n';
      }
      const bool ok = tr.ledger_consistent();
      std::cout << "# successes=" << tr.successes << " fallbacks=" << tr.fallbacks
                << " horizon_exhausted=" << (tr.horizon_exhausted ? "yes" : "no")
                << " ledger=" << (ok ? "consistent" : "inconsistent") << '\n';
      return ok ? kOk : kVerify;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
