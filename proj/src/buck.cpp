#include "equidist/buck.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>

#include "equidist/numutil.hpp"

namespace equidist {

namespace {

struct Bitset {
  std::vector<std::uint64_t> words;
  size_t bits = 0;

  explicit Bitset(size_t n) : words((n + 63) / 64, 0), bits(n) {}
  void set(size_t i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool test(size_t i) const {
    return (words[i >> 6] >> (i & 63)) & 1;
  }
  size_t count() const {
    size_t c = 0;
    for (std::uint64_t w : words) c += static_cast<size_t>(std::popcount(w));
    return c;
  }
  void or_with(const Bitset& o) {
    for (size_t i = 0; i < words.size(); ++i) words[i] |= o.words[i];
  }
  bool covers_all() const {
    size_t full = bits / 64;
    for (size_t i = 0; i < full; ++i)
      if (~words[i] != 0) return false;
    if (bits % 64) {
      const std::uint64_t mask = (std::uint64_t(1) << (bits % 64)) - 1;
      if ((words[full] & mask) != mask) return false;
    }
    return true;
  }
  // Number of set bits of `o` not yet set here.
  size_t uncovered_overlap(const Bitset& o) const {
    size_t c = 0;
    for (size_t i = 0; i < words.size(); ++i)
      c += static_cast<size_t>(std::popcount(o.words[i] & ~words[i]));
    return c;
  }
  long long first_clear() const {
    for (size_t i = 0; i < words.size(); ++i) {
      if (~words[i] == 0) continue;
      const size_t bit = i * 64 + static_cast<size_t>(std::countr_one(words[i]));
      if (bit < bits) return static_cast<long long>(bit);
    }
    return -1;
  }
};

bool cover_lex_less(const std::vector<ArithProg>& a,
                    const std::vector<ArithProg>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      prog_less);
}

Rational covering_cost(const std::vector<ArithProg>& progs) {
  Rational cost(0);
  for (const auto& p : progs) cost += Rational(1, p.m);
  return cost;
}

}  // namespace

SetWindow::SetWindow(long long horizon, std::vector<bool> membership)
    : horizon_(horizon), bits_(std::move(membership)) {
  if (horizon < 1) throw Error(errc::invalid_spec, "window horizon must be >= 1");
  if (static_cast<long long>(bits_.size()) != horizon)
    throw Error(errc::invalid_spec, "membership size must equal the horizon");
}

SetWindow SetWindow::from_predicate(long long horizon,
                                    const std::function<bool(long long)>& pred) {
  std::vector<bool> bits(static_cast<size_t>(horizon), false);
  for (long long n = 1; n <= horizon; ++n)
    bits[static_cast<size_t>(n - 1)] = pred(n);
  return SetWindow(horizon, std::move(bits));
}

SetWindow SetWindow::from_integers(long long horizon,
                                   const std::vector<long long>& elems) {
  std::vector<bool> bits(static_cast<size_t>(horizon), false);
  for (long long n : elems) {
    if (n < 1) throw Error(errc::invalid_spec, "set elements must be positive");
    if (n <= horizon) bits[static_cast<size_t>(n - 1)] = true;
  }
  return SetWindow(horizon, std::move(bits));
}

SetWindow SetWindow::from_progressions(long long horizon,
                                       const std::vector<ArithProg>& progs) {
  std::vector<bool> bits(static_cast<size_t>(horizon), false);
  for (const auto& p : progs) {
    if (p.m < 1 || p.r < 0 || p.r >= p.m)
      throw Error(errc::invalid_spec,
                  "progression needs 0 <= r < m, got " + std::to_string(p.r) +
                      "+(" + std::to_string(p.m) + ")");
    for (long long n = 1; n <= horizon; ++n)
      if (n % p.m == p.r) bits[static_cast<size_t>(n - 1)] = true;
  }
  return SetWindow(horizon, std::move(bits));
}

SetWindow SetWindow::named_builtin(const std::string& name, long long horizon) {
  if (name == "evens")
    return from_predicate(horizon, [](long long n) { return n % 2 == 0; });
  if (name == "squarefree") {
    std::vector<bool> bits(static_cast<size_t>(horizon), true);
    for (long long p = 2; p * p <= horizon; ++p)
      for (long long q = p * p; q <= horizon; q += p * p)
        bits[static_cast<size_t>(q - 1)] = false;
    return SetWindow(horizon, std::move(bits));
  }
  if (name == "primes" || name == "primes-in-window") {
    std::vector<bool> bits(static_cast<size_t>(horizon), false);
    for (long long p : primes_upto(horizon)) bits[static_cast<size_t>(p - 1)] = true;
    return SetWindow(horizon, std::move(bits));
  }
  throw Error(errc::invalid_spec, "unknown builtin set '" + name + "'");
}

bool SetWindow::contains(long long n) const {
  if (n < 1 || n > horizon_)
    throw Error(errc::out_of_window, "index " + std::to_string(n) + " outside window");
  return bits_[static_cast<size_t>(n - 1)];
}

long long SetWindow::size() const {
  long long c = 0;
  for (bool b : bits_) c += b;
  return c;
}

long long SetWindow::count_prefix(long long N) const {
  if (N < 1 || N > horizon_)
    throw Error(errc::out_of_window,
                "horizon " + std::to_string(N) + " outside window of " +
                    std::to_string(horizon_));
  long long c = 0;
  for (long long n = 1; n <= N; ++n) c += bits_[static_cast<size_t>(n - 1)];
  return c;
}

SetWindow SetWindow::complement() const {
  std::vector<bool> bits(bits_.size());
  for (size_t i = 0; i < bits_.size(); ++i) bits[i] = !bits_[i];
  return SetWindow(horizon_, std::move(bits));
}

std::vector<ArithProg> parse_progression_union(std::string_view text) {
  std::vector<ArithProg> progs;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_int = [&]() -> long long {
    skip_ws();
    long long value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc())
      throw Error(errc::parse, "expected integer in progression expression");
    pos = static_cast<size_t>(ptr - text.data());
    return value;
  };
  while (true) {
    skip_ws();
    long long r = 0;
    if (pos < text.size() && text[pos] != '(') {
      r = parse_int();
      skip_ws();
      if (pos >= text.size() || text[pos] != '+')
        throw Error(errc::parse, "expected '+' after residue");
      ++pos;
      skip_ws();
    }
    if (pos >= text.size() || text[pos] != '(')
      throw Error(errc::parse, "expected '(modulus)' in progression expression");
    ++pos;
    const long long m = parse_int();
    skip_ws();
    if (pos >= text.size() || text[pos] != ')')
      throw Error(errc::parse, "expected ')' after modulus");
    ++pos;
    if (m < 1) throw Error(errc::parse, "modulus must be >= 1");
    if (r < 0) throw Error(errc::parse, "residue must be >= 0");
    progs.push_back({r % m, m});
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != '|')
      throw Error(errc::parse, "expected '|' between progressions");
    ++pos;
  }
  if (progs.empty()) throw Error(errc::parse, "empty progression expression");
  return progs;
}

ConvergenceTable asymptotic_density_estimate(
    const SetWindow& a, const std::vector<long long>& horizons) {
  if (horizons.empty()) throw Error(errc::empty_input, "empty horizon list");
  for (size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1]))
      throw Error(errc::invalid_spec, "horizons must be strictly increasing positive integers");
    if (horizons[i] > a.horizon())
      throw Error(errc::out_of_window,
                  "horizon " + std::to_string(horizons[i]) + " beyond window");
  }
  ConvergenceTable table;
  table.label = "density";
  table.rows.reserve(horizons.size());
  long long count = 0;
  long long n = 0;
  for (long long h : horizons) {
    while (n < h) {
      ++n;
      count += a.contains(n);
    }
    table.rows.push_back(
        {h, static_cast<double>(count) / static_cast<double>(h)});
  }
  return table;
}

bool verify_cover(const Covering& c, const SetWindow& a) {
  for (long long n = 1; n <= a.horizon(); ++n) {
    if (!a.contains(n)) continue;
    bool hit = false;
    for (const auto& p : c.progressions) {
      if (n % p.m == p.r) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

namespace {

struct Candidate {
  ArithProg prog;
  Bitset mask;
  size_t covered = 0;
};

std::vector<long long> universe_of(const SetWindow& a) {
  std::vector<long long> elems;
  for (long long n = 1; n <= a.horizon(); ++n)
    if (a.contains(n)) elems.push_back(n);
  return elems;
}

std::vector<Candidate> build_candidates(const std::vector<long long>& elems,
                                        long long bound) {
  std::vector<Candidate> cands;
  for (long long m = 1; m <= bound; ++m) {
    std::vector<Bitset> by_r(static_cast<size_t>(m), Bitset(elems.size()));
    std::vector<size_t> counts(static_cast<size_t>(m), 0);
    for (size_t i = 0; i < elems.size(); ++i) {
      const size_t r = static_cast<size_t>(elems[i] % m);
      by_r[r].set(i);
      ++counts[r];
    }
    for (long long r = 0; r < m; ++r) {
      if (counts[static_cast<size_t>(r)] == 0) continue;
      cands.push_back(
          {{r, m}, std::move(by_r[static_cast<size_t>(r)]), counts[static_cast<size_t>(r)]});
    }
  }
  return cands;
}

std::vector<ArithProg> greedy_cover(const std::vector<long long>& elems,
                                    long long bound) {
  const size_t n = elems.size();
  std::vector<bool> covered(n, false);
  size_t covered_count = 0;
  std::vector<ArithProg> picks;
  while (covered_count < n) {
    long long best_score = 0;
    ArithProg best{0, 1};
    for (long long m = 1; m <= bound; ++m) {
      std::vector<long long> tally(static_cast<size_t>(m), 0);
      for (size_t i = 0; i < n; ++i)
        if (!covered[i]) ++tally[static_cast<size_t>(elems[i] % m)];
      for (long long r = 0; r < m; ++r) {
        const long long score = tally[static_cast<size_t>(r)] * m;
        if (score > best_score) {
          best_score = score;
          best = {r, m};
        }
      }
    }
    picks.push_back(best);
    for (size_t i = 0; i < n; ++i) {
      if (!covered[i] && elems[i] % best.m == best.r) {
        covered[i] = true;
        ++covered_count;
      }
    }
  }
  // Drop picks whose removal keeps the cover, in reverse pick order.
  std::vector<long long> cover_count(n, 0);
  for (const auto& p : picks)
    for (size_t i = 0; i < n; ++i)
      if (elems[i] % p.m == p.r) ++cover_count[i];
  std::vector<bool> removed(picks.size(), false);
  for (size_t pi = picks.size(); pi-- > 0;) {
    const auto& p = picks[pi];
    bool redundant = true;
    for (size_t i = 0; i < n; ++i) {
      if (elems[i] % p.m == p.r && cover_count[i] < 2) {
        redundant = false;
        break;
      }
    }
    if (redundant) {
      removed[pi] = true;
      for (size_t i = 0; i < n; ++i)
        if (elems[i] % p.m == p.r) --cover_count[i];
    }
  }
  std::vector<ArithProg> kept;
  for (size_t pi = 0; pi < picks.size(); ++pi)
    if (!removed[pi]) kept.push_back(picks[pi]);
  std::sort(kept.begin(), kept.end(), prog_less);
  return kept;
}

struct ExactSearch {
  const std::vector<long long>& elems;
  const std::vector<Candidate>& cands;
  // cand_of[m-1][r]: index into cands, or -1 when the progression misses A.
  std::vector<std::vector<int>> cand_of;
  Rational best_cost;
  std::vector<ArithProg> best_cover;
  long long nodes = 0;

  ExactSearch(const std::vector<long long>& elems_,
              const std::vector<Candidate>& cands_, long long bound,
              Rational init_cost, std::vector<ArithProg> init_cover)
      : elems(elems_),
        cands(cands_),
        best_cost(std::move(init_cost)),
        best_cover(std::move(init_cover)) {
    cand_of.resize(static_cast<size_t>(bound));
    for (long long m = 1; m <= bound; ++m)
      cand_of[static_cast<size_t>(m - 1)].assign(static_cast<size_t>(m), -1);
    for (size_t ci = 0; ci < cands.size(); ++ci)
      cand_of[static_cast<size_t>(cands[ci].prog.m - 1)]
             [static_cast<size_t>(cands[ci].prog.r)] = static_cast<int>(ci);
  }

  // Admissible bound: any progression covers at most max(m * overlap)
  // residual elements per unit of cost.
  Rational residual_bound(const Bitset& covered, size_t residual) const {
    size_t best = 0;
    for (const auto& c : cands) {
      const size_t overlap = covered.uncovered_overlap(c.mask);
      best = std::max(best, overlap * static_cast<size_t>(c.prog.m));
    }
    return Rational(static_cast<long long>(residual), static_cast<long long>(best));
  }

  void run(Bitset& covered, std::vector<ArithProg>& chosen, const Rational& cost) {
    if (++nodes > kExactNodeCap)
      throw Error(errc::strategy_unavailable,
                  "exact covering search exceeded the node budget; use the greedy strategy");
    const size_t residual = covered.bits - covered.count();
    if (residual == 0) {
      std::vector<ArithProg> canon = chosen;
      std::sort(canon.begin(), canon.end(), prog_less);
      if (cost < best_cost ||
          (cost == best_cost && cover_lex_less(canon, best_cover))) {
        best_cost = cost;
        best_cover = std::move(canon);
      }
      return;
    }
    if (cost + residual_bound(covered, residual) > best_cost) return;
    const long long pos = covered.first_clear();
    const long long elem = elems[static_cast<size_t>(pos)];
    for (size_t mi = 0; mi < cand_of.size(); ++mi) {
      const long long m = static_cast<long long>(mi) + 1;
      const int ci = cand_of[mi][static_cast<size_t>(elem % m)];
      if (ci < 0) continue;
      const Candidate& c = cands[static_cast<size_t>(ci)];
      Bitset next = covered;
      next.or_with(c.mask);
      chosen.push_back(c.prog);
      run(next, chosen, cost + Rational(1, m));
      chosen.pop_back();
    }
  }
};

}  // namespace

std::pair<Rational, Covering> mu_upper_bound(const SetWindow& a,
                                             long long modulus_bound,
                                             CoverStrategy strategy) {
  if (modulus_bound < 1)
    throw Error(errc::invalid_spec, "modulus bound must be >= 1");
  const std::vector<long long> elems = universe_of(a);
  if (elems.empty()) {
    Covering empty;
    empty.cost = Rational(0);
    return {Rational(0), empty};
  }

  if (strategy == CoverStrategy::greedy) {
    Covering cover;
    cover.progressions = greedy_cover(elems, modulus_bound);
    cover.cost = covering_cost(cover.progressions);
    return {cover.cost, cover};
  }

  const long long candidate_count = modulus_bound * (modulus_bound + 1) / 2;
  if (candidate_count > kExactCandidateCap)
    throw Error(errc::strategy_unavailable,
                "modulus bound " + std::to_string(modulus_bound) +
                    " yields " + std::to_string(candidate_count) +
                    " candidate progressions (cap " +
                    std::to_string(kExactCandidateCap) +
                    "); use the greedy strategy");

  const std::vector<Candidate> cands = build_candidates(elems, modulus_bound);
  std::vector<ArithProg> init = greedy_cover(elems, modulus_bound);
  Rational init_cost = covering_cost(init);
  ExactSearch search(elems, cands, modulus_bound, std::move(init_cost),
                     std::move(init));
  Bitset covered(elems.size());
  std::vector<ArithProg> chosen;
  search.run(covered, chosen, Rational(0));

  Covering cover;
  cover.progressions = std::move(search.best_cover);
  cover.cost = search.best_cost;
  return {cover.cost, cover};
}

Rational measurability_gap(const SetWindow& a, long long modulus_bound) {
  const Rational direct = mu_upper_bound(a, modulus_bound, CoverStrategy::exact).first;
  const Rational co =
      mu_upper_bound(a.complement(), modulus_bound, CoverStrategy::exact).first;
  return direct + co - Rational(1);
}

}  // namespace equidist
