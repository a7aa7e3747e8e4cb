// lparity: analyze Latin squares, verify claim suites, run residue searches.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lparity/algebra.hpp"
#include "lparity/claims.hpp"
#include "lparity/errors.hpp"
#include "lparity/search.hpp"
#include "lparity/spectrum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lparity;

namespace {

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("LPARITY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct AnalyzeFlags {
  std::string file;
  bool spectrum = false, signed_count = false, types = false, depleted = false, ev = false, rseq = false;
  bool json = false;
  unsigned threads = 0;
};

std::string spectrum_text(const DiagonalSpectrum& s) {
  std::string out;
  for (std::size_t i = 0; i < s.counts.size(); ++i) out += (i ? " " : "") + s.counts[i].str();
  return out;
}

int analyze(const AnalyzeFlags& f) {
  ParsedStructure parsed = [&] {
    try {
      return parse_square(read_text(f.file));
    } catch (const ParseError& e) {
      throw std::runtime_error(f.file + ":" + std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + e.reason);
    }
  }();
  const SymbolGrid& g = parsed.grid();
  ExecOptions exec{resolve_threads(f.threads)};
  SpectrumReport rep;
  rep.order = g.rows();
  rep.transversals = count_transversals(g);
  json skipped = json::object();
  std::vector<std::string> lines;
  lines.push_back("kind: " + std::string(kind_name(parsed.kind)));
  lines.push_back("size: " + std::to_string(g.rows()) + " x " + std::to_string(g.cols()) + " over " +
                  std::to_string(g.symbols()) + " symbols");
  lines.push_back("transversals: " + std::to_string(*rep.transversals));

  auto guarded = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const CostGuardError& e) {
      skipped[what] = e.what();
      lines.push_back(std::string(what) + ": skipped-cost (" + e.what() + ")");
    }
  };
  auto unavailable = [&](const char* what) {
    skipped[what] = "requires a Latin square";
    lines.push_back(std::string(what) + ": not available for " + std::string(kind_name(parsed.kind)));
  };

  const LatinSquare* l = std::get_if<LatinSquare>(&parsed.value);
  if (f.signed_count) {
    if (!l) {
      unavailable("signed");
    } else {
      rep.signed_count = signed_count(*l);
      lines.push_back("signed: " + std::to_string(*rep.signed_count));
    }
  }
  if (f.types) {
    if (!l) {
      unavailable("types");
    } else {
      rep.types = parity_type_counts(*l);
      const auto p = square_parities(*l);
      lines.push_back("types: w=" + std::to_string(rep.types->w) + " x=" + std::to_string(rep.types->x) +
                      " y=" + std::to_string(rep.types->y) + " z=" + std::to_string(rep.types->z));
      lines.push_back("parities: pi_r=" + std::to_string(p.row) + " pi_c=" + std::to_string(p.column) +
                      " pi_s=" + std::to_string(p.symbol));
    }
  }
  if (f.rseq || f.spectrum || f.ev) {
    if (!l) {
      if (f.rseq) unavailable("R");
      if (f.spectrum) unavailable("E");
      if (f.ev) unavailable("E_even");
    } else {
      if (f.rseq) guarded("R", [&] {
        rep.R = r_sequence(*l);
        std::string s;
        for (int i = 1; i <= rep.R->order; ++i) s += (i > 1 ? " " : "") + rep.R->R(i).str();
        lines.push_back("R: " + s);
      });
      if (f.spectrum) guarded("E", [&] {
        rep.E = l->order() <= kSpectrumMaxOrder ? spectrum_enumerate(*l, exec) : spectrum_from_r(r_sequence(*l));
        lines.push_back("E: " + spectrum_text(*rep.E));
      });
      if (f.ev) guarded("E_even", [&] {
        rep.E_even = l->order() <= kSpectrumMaxOrder ? ev_spectrum(*l, exec)
                                                      : spectrum_from_r(r_sequence(*l, PermanentMode::even_per));
        lines.push_back("E_even: " + spectrum_text(*rep.E_even));
      });
    }
  }
  if (f.depleted) {
    if (!l) {
      unavailable("depleted");
    } else {
      guarded("depleted", [&] {
        rep.depleted = depleted_counts(*l, l->order() <= kSpectrumMaxOrder ? NrMethod::enumerate : NrMethod::identity);
        for (int i = 0; i < l->order(); ++i) {
          std::string row;
          for (int j = 0; j < l->order(); ++j) {
            const auto v = rep.depleted->t[i][j];
            row += (j ? " " : "") + std::to_string(v);
            if (i == 0 && j == 0) lines.push_back("t_11 = " + std::to_string(v));
          }
          lines.push_back("t row " + std::to_string(i + 1) + ": " + row);
        }
        std::string n;
        for (auto v : rep.depleted->N) n += (n.empty() ? "" : " ") + std::to_string(v);
        lines.push_back("N: " + n);
      });
    }
  }

  if (f.json) {
    json j = to_json(rep);
    j["kind"] = kind_name(parsed.kind);
    if (!skipped.empty()) j["skipped"] = skipped;
    std::cout << j.dump() << '\n';
  } else {
    for (const auto& line : lines) std::cout << line << '\n';
  }
  return 0;
}

struct VerifyFlags {
  int exhaustive = 0;
  std::vector<std::uint64_t> random;  // n count seed
  std::vector<std::uint64_t> matrices;  // n k count seed
  bool fixtures = false;
  std::string claims;
  bool all_theorems = false, conjectures = false, all = false;
  std::string report;
  std::string counterexample_dir = "counterexamples";
  bool halt = false;
  unsigned threads = 0;
};

int verify(const VerifyFlags& f) {
  std::vector<std::string> keys;
  if (!f.claims.empty()) keys = parse_claim_list(f.claims);
  auto add_kind = [&](ClaimKind k) {
    for (auto& key : claims_of_kind(k))
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  };
  if (f.all_theorems || f.all) {
    add_kind(ClaimKind::theorem);
    add_kind(ClaimKind::external);
  }
  if (f.conjectures || f.all) add_kind(ClaimKind::conjecture);
  if (f.all) add_kind(ClaimKind::documentation);
  if (keys.empty()) throw CLI::ValidationError("verify", "no claims selected (use --claims, --all-theorems, --conjectures or --all)");

  // Corpus producers, consumed lazily in order.
  std::vector<std::function<std::optional<Subject>()>> sources;
  if (f.exhaustive > 0) {
    if (f.exhaustive > 6)
      throw CLI::ValidationError("--exhaustive", "exhaustive corpora are limited to order 6 here");
    auto squares = std::make_shared<std::vector<LatinSquare>>(exhaustive_reduced(f.exhaustive));
    auto i = std::make_shared<std::size_t>(0);
    sources.push_back([squares, i]() -> std::optional<Subject> {
      if (*i >= squares->size()) return std::nullopt;
      return Subject::of((*squares)[(*i)++]);
    });
  }
  if (!f.random.empty()) {
    const int n = static_cast<int>(f.random[0]);
    const std::uint64_t count = f.random[1], seed = f.random[2];
    auto i = std::make_shared<std::uint64_t>(0);
    sources.push_back([=]() -> std::optional<Subject> {
      if (*i >= count) return std::nullopt;
      return Subject::of(random_square(n, mix_seed(seed, (*i)++)));
    });
  }
  if (!f.matrices.empty()) {
    const int n = static_cast<int>(f.matrices[0]), k = static_cast<int>(f.matrices[1]);
    const std::uint64_t count = f.matrices[2], seed = f.matrices[3];
    auto i = std::make_shared<std::uint64_t>(0);
    sources.push_back([=]() -> std::optional<Subject> {
      if (*i >= count) return std::nullopt;
      const std::uint64_t s = mix_seed(seed, (*i)++);
      return Subject::of(sample_regular(n, k, s).matrix(), "lambda" + std::to_string(n) + "_" + std::to_string(k) +
                                                               "-seed" + std::to_string(s));
    });
  }
  if (f.fixtures) {
    auto i = std::make_shared<std::size_t>(0);
    sources.push_back([i]() -> std::optional<Subject> {
      while (*i < fixtures().size()) {
        const Fixture& fx = fixtures()[(*i)++];
        if (fx.grid.columns_repeat_free()) return Subject::of(LatinSquare(fx.grid));
        return Subject::of(RowLatinSquare(fx.grid));
      }
      return std::nullopt;
    });
  }
  if (sources.empty()) throw CLI::ValidationError("verify", "no corpus selected (use --exhaustive, --random, --matrices or --fixtures)");

  std::size_t current = 0;
  auto next = [&]() -> std::optional<Subject> {
    while (current < sources.size()) {
      if (auto s = sources[current]()) return s;
      ++current;
    }
    return std::nullopt;
  };

  std::ofstream report;
  if (!f.report.empty()) {
    report.open(f.report);
    if (!report) throw std::runtime_error("cannot write " + f.report);
  }
  SuiteOptions opt;
  opt.threads = resolve_threads(f.threads);
  opt.halt_on_failure = f.halt;
  if (report.is_open()) opt.sink = [&](const ClaimReport& r) { report << to_json(r).dump() << '\n'; };

  const SuiteReport rep = run_suite(next, keys, opt);
  std::cout << rep.summary_table();

  for (const auto& c : rep.failures) {
    const bool conjecture = c.kind == ClaimKind::conjecture;
    std::cout << (conjecture ? "\n*** CONJECTURE COUNTEREXAMPLE ***\n" : "\n!!! THEOREM FAILURE !!!\n");
    std::cout << "claim " << c.claim << " on " << c.subject << "\n" << c.serialized << "witness " << c.witness.dump() << '\n';
    fs::create_directories(f.counterexample_dir);
    const fs::path out = fs::path(f.counterexample_dir) / (c.claim + "-" + c.subject + ".lsq");
    std::ofstream(out) << c.serialized;
    std::cout << "saved " << out.string() << '\n';
  }
  return rep.theorem_failure() ? 1 : 0;
}

struct SearchFlags {
  int order_fixture = 0;
  std::string input;
  int target = -1, mod = 0;
  std::uint64_t budget = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::uint64_t stagnation = 0;
  std::string replay;
  bool sixteen = false;
  int order = 8;
};

int search(const SearchFlags& f) {
  if (!f.replay.empty()) {
    const json j = json::parse(read_text(f.replay));
    const LatinSquare start = std::get<LatinSquare>(parse_square(j.at("start").get<std::string>()).value);
    std::vector<Intercalate> turns;
    for (const auto& t : j.at("turns")) {
      Intercalate ic;
      ic.r1 = t[0].get<int>() - 1;
      ic.r2 = t[1].get<int>() - 1;
      ic.c1 = t[2].get<int>() - 1;
      ic.c2 = t[3].get<int>() - 1;
      ic.a = static_cast<Symbol>(t[4].get<int>() - 1);
      ic.b = static_cast<Symbol>(t[5].get<int>() - 1);
      turns.push_back(ic);
    }
    const LatinSquare end = replay(start, turns);
    const std::uint64_t count = count_transversals(end);
    const bool ok = to_lsq(end) == j.value("square", std::string()) && count == j.value("transversals", std::uint64_t{0});
    std::cout << json{{"replayed", ok}, {"transversals", count}, {"square", to_lsq(end)}}.dump() << '\n';
    return ok ? 0 : 1;
  }
  if (!f.seed) throw CLI::ValidationError("--seed", "randomized commands need an explicit --seed");
  if (f.sixteen) {
    const auto res = sixteen_class_search(f.order, *f.seed, f.budget);
    json classes = json::array();
    for (int c = 0; c < 16; ++c) {
      json e = {{"class", c}, {"w", c & 1}, {"e_half", (c >> 1) & 1}, {"pi_r", (c >> 2) & 1}, {"pi_c", (c >> 3) & 1}};
      if (const auto& w = res.witnesses[c]) {
        e["sample"] = w->sample;
        e["E_n-1"] = w->e_n_minus_1;
        e["square"] = to_lsq(w->square);
      }
      classes.push_back(e);
    }
    std::cout << json{{"order", f.order}, {"samples", res.samples}, {"covered", res.covered()}, {"classes", classes}}.dump()
              << '\n';
    return 0;
  }
  LatinSquare start = [&] {
    if (f.order_fixture) return fixture_square("order" + std::to_string(f.order_fixture));
    if (f.input.empty()) throw CLI::ValidationError("search", "need --order-fixture or --input");
    auto parsed = parse_square(read_text(f.input));
    if (parsed.kind != StructureKind::latin_square) throw CLI::ValidationError("--input", "input must be a Latin square");
    return std::get<LatinSquare>(parsed.value);
  }();
  if (f.mod < 2 || f.target < 0 || f.target >= f.mod)
    throw CLI::ValidationError("search", "need --mod m >= 2 and 0 <= --target k < m");
  ResidueSearchConfig cfg{f.budget, *f.seed, f.stagnation};
  const SearchResult res = residue_search(start, f.target, f.mod, cfg);
  json j = to_json(res);
  j["start"] = to_lsq(start);
  j["seed"] = *f.seed;
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact transversal counting and congruence verification for Latin squares"};
  app.require_subcommand(1);

  AnalyzeFlags af;
  auto* a = app.add_subcommand("analyze", "Counts for one .lsq file");
  a->add_option("file", af.file, "Input .lsq file")->required()->check(CLI::ExistingFile);
  a->add_flag("--spectrum", af.spectrum, "E_1..E_n");
  a->add_flag("--signed", af.signed_count, "Even minus odd transversals");
  a->add_flag("--types", af.types, "Transversal parity types and square parities");
  a->add_flag("--depleted", af.depleted, "t_ij and N_r");
  a->add_flag("--ev", af.ev, "Even-diagonal spectrum");
  a->add_flag("--r-seq", af.rseq, "Subset permanent sums R_1..R_n");
  a->add_flag("--json", af.json, "Emit the JSON report");
  a->add_option("--threads", af.threads, "Worker threads (default: LPARITY_THREADS or 1)");

  VerifyFlags vf;
  auto* v = app.add_subcommand("verify", "Run claim checks over a corpus");
  v->add_option("--exhaustive", vf.exhaustive, "All reduced squares of order n");
  v->add_option("--random", vf.random, "n count seed")->expected(3);
  v->add_option("--matrices", vf.matrices, "Sampled Lambda_n^k matrices: n k count seed")->expected(4);
  v->add_flag("--fixtures", vf.fixtures, "The built-in fixture squares");
  v->add_option("--claims", vf.claims, "Comma-separated claim keys");
  v->add_flag("--all-theorems", vf.all_theorems, "Every theorem and imported result");
  v->add_flag("--conjectures", vf.conjectures, "Every conjecture");
  v->add_flag("--all", vf.all, "Everything in the registry");
  v->add_option("--report", vf.report, "Write one JSON report per line to this file");
  v->add_option("--counterexample-dir", vf.counterexample_dir, "Where failing squares are saved");
  v->add_flag("--halt-on-failure", vf.halt, "Stop at the first failing subject");
  v->add_option("--threads", vf.threads, "Worker threads (default: LPARITY_THREADS or 1)");

  SearchFlags sf;
  std::uint64_t seed = 0;
  auto* s = app.add_subcommand("search", "Intercalate-turning residue search or the sixteen-class experiment");
  s->add_option("--order-fixture", sf.order_fixture, "Start from the order 9, 10 or 11 fixture")->check(CLI::IsMember({9, 10, 11}));
  s->add_option("--input", sf.input, "Start from this .lsq file")->check(CLI::ExistingFile);
  s->add_option("--target", sf.target, "Residue k");
  s->add_option("--mod", sf.mod, "Modulus m");
  s->add_option("--budget", sf.budget, "Step budget (squares sampled with --sixteen)");
  s->add_option("--stagnation", sf.stagnation, "Steps without a new residue before restarting (default budget/10)");
  auto* seed_opt = s->add_option("--seed", seed, "RNG seed");
  s->add_option("--replay", sf.replay, "Re-apply the turns of a saved search result")->check(CLI::ExistingFile);
  s->add_flag("--sixteen", sf.sixteen, "Sample until all 16 (w, E_(n-1)/2, pi_r, pi_c) classes appear");
  s->add_option("--order", sf.order, "Order for --sixteen");

  int gen_order = 0;
  std::uint64_t gen_seed = 0, gen_count = 1;
  std::string gen_out;
  auto* g = app.add_subcommand("gen", "Random Latin squares");
  g->add_option("--order", gen_order, "Order")->required()->check(CLI::Range(1, kMaxOrder));
  g->add_option("--seed", gen_seed, "RNG seed")->required();
  g->add_option("--count", gen_count, "Number of squares");
  g->add_option("--out", gen_out, "Directory for one .lsq file per square");

  bool fx_list = false;
  std::string fx_emit;
  auto* fx = app.add_subcommand("fixtures", "List or write the built-in fixture squares");
  fx->add_flag("--list", fx_list, "Print fixture names");
  fx->add_option("--emit", fx_emit, "Write one .lsq file per fixture into this directory");

  std::string per_file;
  std::uint64_t per_mod = 0;
  unsigned per_threads = 0;
  auto* p = app.add_subcommand("per", "Permanent of an integer matrix file ('rows cols' then rows)");
  p->add_option("file", per_file, "Matrix file")->required()->check(CLI::ExistingFile);
  p->add_option("--mod", per_mod, "Only the residue modulo m");
  p->add_option("--threads", per_threads, "Worker threads (default: LPARITY_THREADS or 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*a) return analyze(af);
    if (*v) {
      if (!vf.random.empty() && (vf.random[0] < 1 || vf.random[0] > kMaxOrder))
        throw CLI::ValidationError("--random", "order out of range");
      return verify(vf);
    }
    if (*s) {
      if (seed_opt->count()) sf.seed = seed;
      return search(sf);
    }
    if (*g) {
      if (!gen_out.empty()) fs::create_directories(gen_out);
      for (std::uint64_t i = 0; i < gen_count; ++i) {
        const LatinSquare l = random_square(gen_order, gen_count == 1 ? gen_seed : mix_seed(gen_seed, i));
        if (gen_out.empty()) {
          std::cout << (i ? "\n" : "") << to_lsq(l);
        } else {
          const fs::path out = fs::path(gen_out) / ("order" + std::to_string(gen_order) + "-seed" +
                                                    std::to_string(gen_seed) + "-" + std::to_string(i) + ".lsq");
          std::ofstream(out) << to_lsq(l);
        }
      }
      return 0;
    }
    if (*fx) {
      if (!fx_list && fx_emit.empty()) throw CLI::ValidationError("fixtures", "use --list or --emit DIR");
      if (fx_list)
        for (const auto& f : fixtures()) std::cout << f.name << '\n';
      if (!fx_emit.empty()) {
        fs::create_directories(fx_emit);
        for (const auto& f : fixtures()) std::ofstream(fs::path(fx_emit) / (f.name + ".lsq")) << to_lsq(f.grid);
      }
      return 0;
    }
    if (*p) {
      const IntMatrix m = parse_matrix(read_text(per_file));
      const ExecOptions exec{resolve_threads(per_threads)};
      if (per_mod)
        std::cout << permanent_mod(m, per_mod, exec) << '\n';
      else
        std::cout << permanent(m, exec) << '\n';
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\nRun with --help for more information.\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
