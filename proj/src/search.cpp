#include "lparity/search.hpp"

#include <algorithm>
#include <numeric>
#include <bit>
#include <set>
#include <stdexcept>

#include "lparity/integer.hpp"
#include "lparity/spectrum.hpp"

namespace lparity {

namespace {

class ReducedGenerator {
 public:
  ReducedGenerator(int n, const std::function<bool(const LatinSquare&)>& visit)
      : n_(n), visit_(visit), grid_(n, n, n), row_used_(n, 0), col_used_(n, 0) {
    for (int i = 0; i < n; ++i) {
      grid_.set(0, i, static_cast<Symbol>(i));
      grid_.set(i, 0, static_cast<Symbol>(i));
      row_used_[i] |= bit(i);
      col_used_[i] |= bit(i);
      if (i > 0) {
        row_used_[0] |= bit(i);
        col_used_[0] |= bit(i);
      }
    }
  }

  void run() {
    if (n_ <= 1) {
      visit_(LatinSquare(grid_));
      return;
    }
    fill(1, 1);
  }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

  // Returns false once the visitor asks to stop.
  bool fill(int r, int c) {
    if (r == n_) return visit_(LatinSquare(grid_));
    const int nr = c + 1 == n_ ? r + 1 : r;
    const int nc = c + 1 == n_ ? 1 : c + 1;
    std::uint64_t cand = ~(row_used_[r] | col_used_[c]) & (bit(n_) - 1);
    while (cand) {
      const int s = std::countr_zero(cand);
      cand &= cand - 1;
      grid_.set(r, c, static_cast<Symbol>(s));
      row_used_[r] |= bit(s);
      col_used_[c] |= bit(s);
      const bool go_on = fill(nr, nc);
      row_used_[r] &= ~bit(s);
      col_used_[c] &= ~bit(s);
      if (!go_on) return false;
    }
    return true;
  }

  int n_;
  const std::function<bool(const LatinSquare&)>& visit_;
  SymbolGrid grid_;
  std::vector<std::uint64_t> row_used_, col_used_;
};

// Incidence cube with entries in {-1, 0, 1}; at most one -1 (improper state).
class JacobsonMatthews {
 public:
  explicit JacobsonMatthews(int n) : n_(n), cube_(static_cast<std::size_t>(n) * n * n, 0) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) at(r, c, (r + c) % n) = 1;
  }

  bool proper() const { return proper_; }

  void step(Rng& rng) {
    int r, c, s, r2, c2, s2;
    if (proper_) {
      do {
        r = static_cast<int>(uniform_below(rng, n_));
        c = static_cast<int>(uniform_below(rng, n_));
        s = static_cast<int>(uniform_below(rng, n_));
      } while (at(r, c, s) != 0);
      r2 = pick([&](int i) { return at(i, c, s); }, rng);
      c2 = pick([&](int i) { return at(r, i, s); }, rng);
      s2 = pick([&](int i) { return at(r, c, i); }, rng);
    } else {
      r = bad_[0];
      c = bad_[1];
      s = bad_[2];
      r2 = pick([&](int i) { return at(i, c, s); }, rng);
      c2 = pick([&](int i) { return at(r, i, s); }, rng);
      s2 = pick([&](int i) { return at(r, c, i); }, rng);
    }
    ++at(r, c, s);
    ++at(r, c2, s2);
    ++at(r2, c, s2);
    ++at(r2, c2, s);
    --at(r, c, s2);
    --at(r, c2, s);
    --at(r2, c, s);
    --at(r2, c2, s2);
    proper_ = at(r2, c2, s2) >= 0;
    if (!proper_) bad_ = {r2, c2, s2};
  }

  LatinSquare square() const {
    SymbolGrid g(n_, n_, n_);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c)
        for (int s = 0; s < n_; ++s)
          if (cube_[index(r, c, s)] == 1) g.set(r, c, static_cast<Symbol>(s));
    return LatinSquare(std::move(g));
  }

 private:
  std::size_t index(int r, int c, int s) const { return (static_cast<std::size_t>(r) * n_ + c) * n_ + s; }
  std::int8_t& at(int r, int c, int s) { return cube_[index(r, c, s)]; }

  // One of the (one or two) positions along a line holding 1.
  template <typename Line>
  int pick(Line line, Rng& rng) const {
    int found[2] = {-1, -1};
    int k = 0;
    for (int i = 0; i < n_ && k < 2; ++i)
      if (line(i) == 1) found[k++] = i;
    if (k == 0) throw std::logic_error("Jacobson-Matthews line without a 1");
    return k == 1 || proper_ ? found[0] : found[uniform_below(rng, 2)];
  }

  int n_;
  std::vector<std::int8_t> cube_;
  bool proper_ = true;
  std::array<int, 3> bad_{};
};

}  // namespace

void for_each_reduced(int n, const std::function<bool(const LatinSquare&)>& visit) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  if (n > kExhaustiveMaxOrder) throw CostGuardError("exhaustive_reduced", n, kExhaustiveMaxOrder);
  ReducedGenerator(n, visit).run();
}

std::vector<LatinSquare> exhaustive_reduced(int n) {
  std::vector<LatinSquare> out;
  for_each_reduced(n, [&](const LatinSquare& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

std::uint64_t count_reduced(int n) {
  std::uint64_t count = 0;
  for_each_reduced(n, [&](const LatinSquare&) {
    ++count;
    return true;
  });
  return count;
}

LatinSquare random_square(int n, std::uint64_t seed, const RandomSquareConfig& cfg) {
  if (n < 1 || n > kMaxOrder) throw std::invalid_argument("order out of range");
  if (n == 1) return LatinSquare::cyclic(1);
  Rng rng(seed);
  JacobsonMatthews walk(n);
  const long burn_in = cfg.burn_in >= 0 ? cfg.burn_in : 10L * n * n * n;
  for (long i = 0; i < burn_in; ++i) walk.step(rng);
  while (!walk.proper()) walk.step(rng);
  return walk.square();
}

std::vector<LatinSquare> random_corpus(int n, std::size_t count, std::uint64_t seed, const RandomSquareConfig& cfg) {
  std::vector<LatinSquare> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_square(n, mix_seed(seed, i), cfg));
  return out;
}

std::string_view status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::excluded: return "excluded";
  }
  return "?";
}

std::optional<std::string> residue_exclusion(int n, int k, int m) {
  if (n % 4 == 2 && k % std::gcd(m, 4) != 0)
    return "order " + std::to_string(n) + " forces a transversal count divisible by 4";
  if (n % 2 == 0 && k % std::gcd(m, 2) != 0)
    return "order " + std::to_string(n) + " forces an even transversal count";
  return std::nullopt;
}

LatinSquare replay(const LatinSquare& start, const std::vector<Intercalate>& turns) {
  LatinSquare cur = start;
  for (const auto& ic : turns) cur = turn_intercalate(cur, ic);
  return cur;
}

SearchResult residue_search(const LatinSquare& start, int k, int m, const ResidueSearchConfig& cfg) {
  if (m < 2 || k < 0 || k >= m) throw std::invalid_argument("need m >= 2 and 0 <= k < m");
  if (cfg.budget == 0) throw std::invalid_argument("budget must be positive");
  SearchResult res;
  res.k = k;
  res.m = m;
  if (auto why = residue_exclusion(start.order(), k, m)) {
    res.status = SearchStatus::excluded;
    res.exclusion = *why;
    return res;
  }
  const std::uint64_t stagnation = cfg.stagnation ? cfg.stagnation : std::max<std::uint64_t>(1, cfg.budget / 10);
  Rng rng(cfg.seed);
  LatinSquare cur = start;
  std::uint64_t count = count_transversals(cur);
  std::set<std::uint64_t> seen{count % m};
  std::uint64_t since_new = 0;

  auto accept = [&]() {
    // Independent re-verification: replay the turns from scratch and recount.
    const LatinSquare again = replay(start, res.turns);
    if (!(again == cur) || count_transversals(again) != count) throw std::logic_error("search replay mismatch");
    res.status = SearchStatus::found;
    res.found = cur;
    res.transversals = count;
  };

  if (count % m == static_cast<std::uint64_t>(k)) {
    accept();
    return res;
  }
  while (res.steps < cfg.budget) {
    auto ics = find_intercalates(cur);
    if (ics.empty() || since_new >= stagnation) {
      if (res.turns.empty()) break;  // the start square itself is stuck
      cur = start;
      count = count_transversals(cur);
      res.turns.clear();
      seen = {count % m};
      since_new = 0;
      ++res.restarts;
      continue;
    }
    const Intercalate ic = ics[uniform_below(rng, ics.size())];
    cur = turn_intercalate(cur, ic);
    res.turns.push_back(ic);
    ++res.steps;
    count = count_transversals(cur);
    if (seen.insert(count % m).second)
      since_new = 0;
    else
      ++since_new;
    if (count % m == static_cast<std::uint64_t>(k)) {
      accept();
      return res;
    }
  }
  res.status = SearchStatus::exhausted;
  res.turns.clear();
  return res;
}

nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["m"] = r.m;
  j["status"] = status_name(r.status);
  j["steps"] = r.steps;
  j["restarts"] = r.restarts;
  if (r.status == SearchStatus::excluded) j["exclusion"] = r.exclusion;
  if (r.found) {
    j["transversals"] = r.transversals;
    j["square"] = to_lsq(*r.found);
    nlohmann::json turns = nlohmann::json::array();
    for (const auto& ic : r.turns)
      turns.push_back({ic.r1 + 1, ic.r2 + 1, ic.c1 + 1, ic.c2 + 1, ic.a + 1, ic.b + 1});
    j["turns"] = turns;
  }
  return j;
}

int class_index(std::uint64_t w, std::uint64_t e_n_minus_1, int pi_r, int pi_c) {
  return static_cast<int>((w & 1u) | (((e_n_minus_1 / 2) & 1u) << 1)) | ((pi_r & 1) << 2) | ((pi_c & 1) << 3);
}

ClassWitness classify(const LatinSquare& l) {
  ClassWitness cw;
  cw.square = l;
  const auto types = parity_type_counts(l);
  cw.w = types.w;
  cw.e_n_minus_1 = e_n_minus_1_from_depleted(depleted_transversals(l), types.total());
  const auto p = square_parities(l);
  cw.pi_r = p.row;
  cw.pi_c = p.column;
  cw.index = class_index(cw.w, cw.e_n_minus_1, cw.pi_r, cw.pi_c);
  return cw;
}

int SixteenClassResult::covered() const {
  return static_cast<int>(std::count_if(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.has_value(); }));
}

SixteenClassResult sixteen_class_search(int n, std::uint64_t seed, std::uint64_t budget,
                                        const RandomSquareConfig& cfg) {
  if (n < 2 || n % 2) throw std::invalid_argument("sixteen-class search needs an even order");
  SixteenClassResult res;
  res.order = n;
  for (std::uint64_t i = 0; i < budget && res.covered() < 16; ++i) {
    ClassWitness cw = classify(random_square(n, mix_seed(seed, i), cfg));
    cw.sample = i;
    ++res.samples;
    if (!res.witnesses[cw.index]) res.witnesses[cw.index] = std::move(cw);
  }
  return res;
}

namespace {

SymbolGrid latin_grid(const std::vector<std::vector<int>>& rows) { return LatinSquare::from_rows(rows).grid(); }
SymbolGrid row_latin_grid(const std::vector<std::vector<int>>& rows) { return RowLatinSquare::from_rows(rows).grid(); }

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = {
      {"order9", latin_grid({{1, 2, 3, 4, 5, 6, 7, 8, 9},
                             {2, 1, 4, 3, 6, 5, 9, 7, 8},
                             {3, 6, 1, 8, 7, 9, 5, 2, 4},
                             {4, 3, 5, 6, 9, 7, 8, 1, 2},
                             {5, 4, 2, 9, 8, 1, 6, 3, 7},
                             {6, 9, 7, 5, 3, 8, 2, 4, 1},
                             {7, 8, 9, 1, 2, 3, 4, 5, 6},
                             {8, 5, 6, 7, 4, 2, 1, 9, 3},
                             {9, 7, 8, 2, 1, 4, 3, 6, 5}})},
      {"order10", latin_grid({{1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
                              {2, 1, 4, 3, 6, 5, 8, 7, 10, 9},
                              {3, 6, 5, 7, 2, 8, 10, 9, 4, 1},
                              {4, 5, 6, 8, 7, 9, 2, 10, 1, 3},
                              {5, 8, 7, 9, 1, 10, 4, 3, 2, 6},
                              {6, 4, 8, 10, 9, 7, 1, 2, 3, 5},
                              {7, 3, 10, 5, 8, 1, 9, 4, 6, 2},
                              {8, 7, 9, 6, 10, 2, 3, 1, 5, 4},
                              {9, 10, 1, 2, 3, 4, 5, 6, 7, 8},
                              {10, 9, 2, 1, 4, 3, 6, 5, 8, 7}})},
      {"order11", latin_grid({{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11},
                              {2, 1, 4, 3, 6, 5, 8, 7, 11, 9, 10},
                              {3, 8, 1, 6, 7, 10, 11, 9, 4, 5, 2},
                              {4, 11, 2, 8, 9, 7, 5, 10, 1, 3, 6},
                              {5, 3, 6, 10, 8, 9, 1, 2, 7, 11, 4},
                              {6, 4, 7, 9, 10, 11, 2, 3, 8, 1, 5},
                              {7, 5, 8, 11, 4, 2, 10, 1, 3, 6, 9},
                              {8, 7, 9, 5, 11, 1, 6, 4, 10, 2, 3},
                              {9, 10, 11, 1, 2, 3, 4, 5, 6, 7, 8},
                              {10, 6, 5, 7, 3, 8, 9, 11, 2, 4, 1},
                              {11, 9, 10, 2, 1, 4, 3, 6, 5, 8, 7}})},
      {"L5", latin_grid({{1, 2, 3, 4, 5}, {2, 1, 4, 5, 3}, {3, 4, 5, 1, 2}, {4, 5, 2, 3, 1}, {5, 3, 1, 2, 4}})},
      {"rowlatin2", row_latin_grid({{1, 2}, {1, 2}})},
      {"rowlatin6", row_latin_grid({{1, 3, 6, 2, 5, 4},
                                    {2, 1, 5, 6, 4, 3},
                                    {3, 2, 4, 1, 5, 6},
                                    {4, 2, 1, 5, 6, 3},
                                    {5, 2, 3, 6, 1, 4},
                                    {6, 5, 2, 3, 4, 1}})},
  };
  return all;
}

const Fixture& fixture(std::string_view name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

LatinSquare fixture_square(std::string_view name) { return LatinSquare(fixture(name).grid); }

}  // namespace lparity
