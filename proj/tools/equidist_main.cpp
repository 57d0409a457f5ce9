#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "equidist/json_io.hpp"
#include "equidist/numutil.hpp"
#include "equidist/reduce.hpp"

namespace {

using nlohmann::json;
using namespace equidist;

struct CommonOpts {
  std::string output = "-";
  std::string format = "csv";
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--output", opts.output, "Output path ('-' for stdout)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", opts.jobs, "Worker count")->check(CLI::PositiveNumber);
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(opts.output, std::ios::binary);
  if (!f) throw Error(errc::invalid_spec, "cannot open output file " + opts.output);
  f << text;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json load_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(errc::parse, "cannot open input file " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw Error(errc::parse, e.what());
  }
}

std::vector<long long> parse_ll_list(const std::string& text, const char* what) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      const long long v = std::stoll(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(errc::parse, std::string("malformed ") + what + " list: '" + item + "'");
    }
  }
  if (out.empty()) throw Error(errc::parse, std::string("empty ") + what + " list");
  return out;
}

std::vector<long long> parse_horizons(const std::string& text, const char* what) {
  std::vector<long long> out = parse_ll_list(text, what);
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i] < 1 || (i > 0 && out[i] <= out[i - 1]))
      throw Error(errc::invalid_spec,
                  std::string(what) + "s must be strictly increasing positive integers");
  return out;
}

std::vector<double> grid_points(long long grid_size) {
  if (grid_size < 1) throw Error(errc::invalid_spec, "grid size must be >= 1");
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(grid_size) + 1);
  for (long long i = 0; i <= grid_size; ++i)
    grid.push_back(static_cast<double>(i) / static_cast<double>(grid_size));
  return grid;
}

bool is_index_kind(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) return false;
  const std::string kind = j["kind"].get<std::string>();
  return kind == "identity" || kind == "block_shuffle";
}

std::string tables_to_text(const CommonOpts& opts,
                           const std::vector<ConvergenceTable>& tables,
                           bool label_column) {
  if (opts.format == "json") {
    if (tables.size() == 1 && !label_column) return dump_json(table_to_json(tables[0]));
    json arr = json::array();
    for (const auto& t : tables) arr.push_back(table_to_json(t));
    return dump_json(arr);
  }
  std::ostringstream os;
  write_tables_csv(os, tables, label_column);
  return os.str();
}

// ---- subcommand actions ----

struct GenOpts {
  CommonOpts common;
  std::string input;
  long long count = 16;
};

void run_gen(const GenOpts& o) {
  const json j = load_json(o.input);
  if (o.count < 1) throw Error(errc::invalid_spec, "count must be >= 1");
  if (is_index_kind(j)) {
    const IndexSeqSpec spec = index_spec_from_json(j);
    if (o.common.format == "json") {
      json rows = json::array();
      for (long long n = 1; n <= o.count; ++n)
        rows.push_back(json{{"n", n}, {"k", index_eval(spec, n)}});
      emit(o.common, dump_json(json{{"kind", "gen"}, {"rows", rows}}));
      return;
    }
    std::ostringstream os;
    os << "n,k\n";
    for (long long n = 1; n <= o.count; ++n)
      os << n << ',' << index_eval(spec, n) << '\n';
    emit(o.common, os.str());
    return;
  }
  const SequenceSpec spec = sequence_spec_from_json(j);
  if (o.common.format == "json") {
    json rows = json::array();
    for (long long n = 1; n <= o.count; ++n) {
      const UnitValue v = eval(spec, n);
      json row{{"n", n}, {"value", v.value()}};
      if (v.is_exact()) row["exact"] = v.exact()->str();
      rows.push_back(std::move(row));
    }
    emit(o.common, dump_json(json{{"kind", "gen"}, {"rows", rows}}));
    return;
  }
  std::ostringstream os;
  os << "n,value,exact\n";
  for (long long n = 1; n <= o.count; ++n) {
    const UnitValue v = eval(spec, n);
    os << n << ',' << fmt_double(v.value()) << ','
       << (v.is_exact() ? v.exact()->str() : "") << '\n';
  }
  emit(o.common, os.str());
}

struct MeanOpts {
  CommonOpts common;
  std::string input;
  std::string horizons = "1000,10000";
  int monomial = 1;
  std::string function_path;
  std::string index_path;
};

void run_mean(const MeanOpts& o) {
  const SequenceSpec spec = sequence_spec_from_json(load_json(o.input));
  TestFunctionSpec g = Monomial{o.monomial};
  if (!o.function_path.empty()) g = function_from_json(load_json(o.function_path));
  validate(g);
  const std::vector<long long> horizons = parse_horizons(o.horizons, "horizon");

  if (!o.index_path.empty()) {
    const IndexSeqSpec k = index_spec_from_json(load_json(o.index_path));
    const ConvergenceTable t =
        subsequence_mean_test(spec, k, g, horizons, o.common.jobs);
    emit(o.common, tables_to_text(o.common, {t}, false));
    return;
  }

  ConvergenceTable table;
  table.label = "partial_mean(" + label(g) + ")";
  std::optional<Rational> exact_target;
  if (const auto* p = std::get_if<PeriodicList>(&spec)) {
    try {
      exact_target = periodic_mean_exact(*p, g);
      table.target = exact_target->to_double();
    } catch (const Error& e) {
      if (e.code() != errc::exactness_unavailable) throw;
    }
  }
  table.rows.resize(horizons.size());
  parallel_for(static_cast<std::int64_t>(horizons.size()), o.common.jobs,
               [&](std::int64_t i) {
                 const long long n = horizons[static_cast<size_t>(i)];
                 table.rows[static_cast<size_t>(i)] = {n, partial_mean(spec, n, g)};
               });
  if (o.common.format == "json") {
    json j = table_to_json(table);
    if (exact_target) j["target_exact"] = exact_target->str();
    emit(o.common, dump_json(j));
    return;
  }
  emit(o.common, tables_to_text(o.common, {table}, false));
}

struct UdTestOpts {
  CommonOpts common;
  std::string input;
  std::string horizons = "1024,16384,65536";
  long long grid_size = 64;
  std::string moduli = "2,3,4,8";
};

void run_udtest(const UdTestOpts& o) {
  const json j = load_json(o.input);
  const std::vector<long long> horizons = parse_horizons(o.horizons, "horizon");
  if (is_index_kind(j)) {
    const IndexSeqSpec spec = index_spec_from_json(j);
    const std::vector<long long> moduli = parse_ll_list(o.moduli, "modulus");
    std::vector<ConvergenceTable> tables;
    for (long long m : moduli) {
      ConvergenceTable t;
      t.label = "m=" + std::to_string(m);
      t.target = 0.0;
      t.rows.resize(horizons.size());
      tables.push_back(std::move(t));
    }
    parallel_for(static_cast<std::int64_t>(moduli.size() * horizons.size()),
                 o.common.jobs, [&](std::int64_t idx) {
                   const size_t mi = static_cast<size_t>(idx) / horizons.size();
                   const size_t hi = static_cast<size_t>(idx) % horizons.size();
                   tables[mi].rows[hi] = {
                       horizons[hi], ud_in_Z_stat(spec, moduli[mi], horizons[hi])};
                 });
    emit(o.common, tables_to_text(o.common, tables, true));
    return;
  }
  const SequenceSpec spec = sequence_spec_from_json(j);
  const ConvergenceTable t =
      ud_test(spec, horizons, grid_points(o.grid_size), o.common.jobs);
  emit(o.common, tables_to_text(o.common, {t}, false));
}

struct DiscrepancyOpts {
  CommonOpts common;
  std::string input;
  std::string horizons = "1024,16384,65536";
};

void run_discrepancy(const DiscrepancyOpts& o) {
  const SequenceSpec spec = sequence_spec_from_json(load_json(o.input));
  const std::vector<long long> horizons = parse_horizons(o.horizons, "horizon");
  ConvergenceTable table;
  table.label = "star_discrepancy";
  table.target = 0.0;
  table.rows.resize(horizons.size());
  parallel_for(static_cast<std::int64_t>(horizons.size()), o.common.jobs,
               [&](std::int64_t i) {
                 const long long n = horizons[static_cast<size_t>(i)];
                 std::vector<double> values(static_cast<size_t>(n));
                 for (long long j2 = 1; j2 <= n; ++j2)
                   values[static_cast<size_t>(j2 - 1)] = eval_value(spec, j2);
                 table.rows[static_cast<size_t>(i)] = {
                     n, star_discrepancy(std::move(values))};
               });
  emit(o.common, tables_to_text(o.common, {table}, false));
}

struct BuckOpts {
  CommonOpts common;
  std::string set_expr;
  std::string set_file;
  std::string set_builtin;
  long long window = 10000;
  std::string mode = "cover";
  std::string strategy = "exact";
  long long modulus_bound = -1;
  std::string horizons;
};

SetWindow load_set(const BuckOpts& o) {
  const int sources = (!o.set_expr.empty()) + (!o.set_file.empty()) +
                      (!o.set_builtin.empty());
  if (sources != 1)
    throw Error(errc::invalid_spec,
                "exactly one of --set, --set-file, --set-builtin required");
  if (!o.set_expr.empty())
    return SetWindow::from_progressions(o.window,
                                        parse_progression_union(o.set_expr));
  if (!o.set_builtin.empty()) return SetWindow::named_builtin(o.set_builtin, o.window);
  std::ifstream f(o.set_file, std::ios::binary);
  if (!f) throw Error(errc::parse, "cannot open set file " + o.set_file);
  std::vector<long long> elems;
  std::string line;
  long long lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      elems.push_back(std::stoll(line));
    } catch (const std::exception&) {
      throw Error(errc::parse, "bad integer at line " + std::to_string(lineno) +
                                   " of " + o.set_file);
    }
  }
  return SetWindow::from_integers(o.window, elems);
}

void run_buck(const BuckOpts& o) {
  const SetWindow a = load_set(o);
  const CoverStrategy strategy =
      o.strategy == "greedy" ? CoverStrategy::greedy : CoverStrategy::exact;
  const long long bound =
      o.modulus_bound > 0 ? o.modulus_bound
                          : (strategy == CoverStrategy::exact ? 12 : 1000);

  if (o.mode == "density") {
    const std::vector<long long> horizons = parse_ll_list(
        o.horizons.empty() ? std::to_string(a.horizon()) : o.horizons, "horizon");
    emit(o.common,
         tables_to_text(o.common, {asymptotic_density_estimate(a, horizons)}, false));
    return;
  }

  if (o.mode == "gap") {
    const Rational direct = mu_upper_bound(a, bound, strategy).first;
    const Rational co = mu_upper_bound(a.complement(), bound, strategy).first;
    const Rational gap = direct + co - Rational(1);
    if (o.common.format == "json") {
      emit(o.common, dump_json(json{{"window", a.horizon()},
                                    {"modulus_bound", bound},
                                    {"strategy", o.strategy},
                                    {"mu_upper", direct.str()},
                                    {"mu_complement_upper", co.str()},
                                    {"gap", gap.str()},
                                    {"gap_value", gap.to_double()}}));
      return;
    }
    std::ostringstream os;
    os << "quantity,value\n";
    os << "mu_upper," << direct.str() << '\n';
    os << "mu_complement_upper," << co.str() << '\n';
    os << "gap," << gap.str() << '\n';
    emit(o.common, os.str());
    return;
  }

  if (o.mode != "cover")
    throw Error(errc::invalid_spec, "unknown buck mode '" + o.mode + "'");
  const auto [cost, cover] = mu_upper_bound(a, bound, strategy);
  if (o.common.format == "json") {
    json j = covering_to_json(cover);
    j["window"] = a.horizon();
    j["modulus_bound"] = bound;
    j["strategy"] = o.strategy;
    emit(o.common, dump_json(j));
    return;
  }
  std::ostringstream os;
  os << "r,m,cost\n";
  for (const auto& p : cover.progressions)
    os << p.r << ',' << p.m << ',' << cost.str() << '\n';
  emit(o.common, os.str());
}

struct OscOpts {
  CommonOpts common;
  std::string input;
  std::string moduli;
  std::string horizons = "1000";
  double epsilon = 0.0;
  std::string prime_set;
  long long modulus_cap = 64;
  bool search = false;
  long long depth = 0;
};

void run_osc(const OscOpts& o) {
  const json j = load_json(o.input);
  const std::vector<long long> horizons = parse_horizons(o.horizons, "horizon");

  if (j.is_object() && j.contains("kind") && j["kind"] == "sequence_system") {
    const SequenceSystem system = sequence_system_from_json(j);
    const long long depth =
        o.depth > 0 ? o.depth
                    : static_cast<long long>(system.levels.size()) - 1;
    const auto rows = uniform_limit_check(system, depth, horizons.back());
    if (o.common.format == "json") {
      json out = json::array();
      for (const auto& r : rows) {
        json row{{"level", r.level}, {"sup_difference", r.sup_difference}};
        if (r.bound) {
          row["bound"] = *r.bound;
          row["within_bound"] = r.within_bound;
        }
        out.push_back(std::move(row));
      }
      emit(o.common, dump_json(out));
      return;
    }
    std::ostringstream os;
    os << "level,sup_difference,bound,within_bound\n";
    for (const auto& r : rows) {
      os << r.level << ',' << fmt_double(r.sup_difference) << ',';
      if (r.bound)
        os << fmt_double(*r.bound) << ',' << (r.within_bound ? "true" : "false");
      else
        os << ',';
      os << '\n';
    }
    emit(o.common, os.str());
    return;
  }

  const SequenceSpec spec = sequence_spec_from_json(j);
  std::vector<long long> moduli;
  if (!o.prime_set.empty())
    moduli = semigroup_moduli(parse_ll_list(o.prime_set, "prime"), o.modulus_cap);
  else
    moduli = parse_ll_list(o.moduli.empty() ? "2,4,8,16" : o.moduli, "modulus");

  if (o.search) {
    if (!(o.epsilon > 0.0))
      throw Error(errc::invalid_spec, "--search requires --epsilon > 0");
    if (o.common.format == "json") {
      json out = json::array();
      for (long long n : horizons) {
        const auto found = polyadic_modulus_search(spec, o.epsilon, moduli, n);
        out.push_back(json{{"horizon", n},
                           {"modulus", found ? json(*found) : json(nullptr)}});
      }
      emit(o.common, dump_json(out));
      return;
    }
    std::ostringstream os;
    os << "horizon,modulus\n";
    for (long long n : horizons) {
      const auto found = polyadic_modulus_search(spec, o.epsilon, moduli, n);
      os << n << ',' << (found ? std::to_string(*found) : "not-found") << '\n';
    }
    emit(o.common, os.str());
    return;
  }

  std::optional<double> eps;
  if (o.epsilon > 0.0) eps = o.epsilon;
  const OscillationProfile profile =
      oscillation_profile(spec, moduli, horizons, eps, o.common.jobs);
  if (o.common.format == "json") {
    json out = json::array();
    for (const auto& r : profile.rows) {
      json row{{"modulus", r.modulus},
               {"horizon", r.horizon},
               {"oscillation", r.oscillation}};
      if (r.exception_fraction) row["exception_fraction"] = *r.exception_fraction;
      out.push_back(std::move(row));
    }
    emit(o.common, dump_json(out));
    return;
  }
  std::ostringstream os;
  os << (eps ? "modulus,horizon,oscillation,exception_fraction\n"
             : "modulus,horizon,oscillation\n");
  for (const auto& r : profile.rows) {
    os << r.modulus << ',' << r.horizon << ',' << fmt_double(r.oscillation);
    if (r.exception_fraction) os << ',' << fmt_double(*r.exception_fraction);
    os << '\n';
  }
  emit(o.common, os.str());
}

struct IndepOpts {
  CommonOpts common;
  std::string input;
  std::string horizons;
  bool exact_crt = false;
};

void run_indep(const IndepOpts& o) {
  const json j = load_json(o.input);
  if (!j.is_object() || !j.contains("specs") || !j["specs"].is_array())
    throw Error(errc::parse, "independence config needs a 'specs' array", "specs");
  std::vector<SequenceSpec> specs;
  for (const auto& s : j["specs"]) specs.push_back(sequence_spec_from_json(s));
  std::vector<TestFunctionSpec> family;
  if (j.contains("functions")) {
    if (!j["functions"].is_array())
      throw Error(errc::parse, "'functions' must be an array", "functions");
    for (const auto& g : j["functions"]) family.push_back(function_from_json(g));
  } else {
    for (int d = 1; d <= 4; ++d) family.push_back(Monomial{d});
  }
  std::vector<long long> horizons;
  if (!o.horizons.empty()) {
    horizons = parse_horizons(o.horizons, "horizon");
  } else if (j.contains("horizons") && j["horizons"].is_array()) {
    for (const auto& h : j["horizons"]) {
      if (!h.is_number_integer() && !h.is_number_unsigned())
        throw Error(errc::parse, "'horizons' must hold integers", "horizons");
      horizons.push_back(h.get<long long>());
    }
  } else {
    horizons = {1000, 10000, 100000};
  }
  const IndependenceReport report =
      independence_suite(specs, family, horizons, o.common.jobs);
  if (o.exact_crt) {
    if (o.common.format != "json")
      throw Error(errc::invalid_spec, "--exact-crt needs --format json");
    if (specs.size() != 2)
      throw Error(errc::arity, "--exact-crt needs exactly two sequences");
    const auto* v1 = std::get_if<PeriodicList>(&specs[0]);
    const auto* v2 = std::get_if<PeriodicList>(&specs[1]);
    if (!v1 || !v2)
      throw Error(errc::invalid_spec, "--exact-crt needs two periodic lists");
    const CrtMeans m = crt_product_mean_exact(*v1, *v2);
    json j = report_to_json(report);
    j["crt"] = json{{"product_mean", m.product_mean.str()},
                    {"mean1", m.mean1.str()},
                    {"mean2", m.mean2.str()}};
    emit(o.common, dump_json(j));
    return;
  }
  if (o.common.format == "json") {
    emit(o.common, dump_json(report_to_json(report)));
    return;
  }
  emit(o.common, tables_to_text(o.common, {report_to_table(report)}, false));
}

struct PartitionOpts {
  CommonOpts common;
  std::string input;
  std::string horizons = "4,16,64,256";
  std::string cuts = "singleton";
  long long scale = 0;
  long long every = 2;
  long long grid_size = 64;
  std::string checks = "all";
  long long seed = -1;
};

void run_partition_check(const PartitionOpts& o) {
  PartitionSystem system = partition_system_from_json(load_json(o.input));
  if (o.seed >= 0 && system.kind() == PartitionSystem::Kind::ragged)
    system = PartitionSystem::ragged(static_cast<std::uint64_t>(o.seed));
  const std::vector<long long> levels = parse_horizons(o.horizons, "level");

  CutRule rule = SingletonCuts{};
  if (o.cuts == "dyadic")
    rule = DyadicCuts{o.scale};
  else if (o.cuts == "every")
    rule = EveryCth{o.every};
  else if (o.cuts == "whole")
    rule = EveryCth{std::numeric_limits<long long>::max() / 2};
  else if (o.cuts != "singleton")
    throw Error(errc::invalid_spec, "unknown cut rule '" + o.cuts + "'");

  const bool do_uniformity = o.checks == "all" || o.checks == "uniformity";
  const bool do_ratio = o.checks == "all" || o.checks == "ratio";
  const bool do_ud = o.checks == "all" || o.checks == "ud";
  if (!do_uniformity && !do_ratio && !do_ud)
    throw Error(errc::invalid_spec, "unknown check selection '" + o.checks + "'");

  std::vector<ConvergenceTable> tables;
  if (do_uniformity) {
    BlockUniformityTables un =
        block_uniformity_check(system, rule, levels, o.common.jobs);
    ConvergenceTable degenerate;
    degenerate.label = "degenerate_blocks";
    degenerate.target = 0.0;
    for (size_t i = 0; i < levels.size(); ++i)
      degenerate.rows.push_back(
          {levels[i], static_cast<double>(un.degenerate_per_level[i])});
    tables.push_back(std::move(un.max_block_length));
    tables.push_back(std::move(un.count_ratio_deviation));
    tables.push_back(std::move(degenerate));
  }
  if (do_ratio) {
    ExtremalRatioTables lim = extremal_ratio_check(system, rule, levels, o.common.jobs);
    if (!do_uniformity) tables.push_back(std::move(lim.max_block_length));
    tables.push_back(std::move(lim.extremal_ratio));
  }
  if (do_ud)
    tables.push_back(
        system_ud_test(system, levels, grid_points(o.grid_size), o.common.jobs));
  emit(o.common, tables_to_text(o.common, tables, true));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-horizon toolkit for uniform distribution, Buck measure "
               "density, and statistical independence of sequences"};
  app.require_subcommand(1);

  GenOpts gen;
  auto* gen_cmd = app.add_subcommand("gen", "Evaluate a sequence spec");
  add_common(gen_cmd, gen.common);
  gen_cmd->add_option("--input", gen.input, "Spec JSON path")->required();
  gen_cmd->add_option("--count", gen.count, "Number of terms");
  gen_cmd->callback([&] { run_gen(gen); });

  MeanOpts mean;
  auto* mean_cmd = app.add_subcommand("mean", "Partial means (Cesaro averages)");
  add_common(mean_cmd, mean.common);
  mean_cmd->add_option("--input", mean.input, "Spec JSON path")->required();
  mean_cmd->add_option("--horizons", mean.horizons, "Comma-separated horizons");
  mean_cmd->add_option("--monomial", mean.monomial, "Monomial degree test function");
  mean_cmd->add_option("--function", mean.function_path, "Test function JSON path");
  mean_cmd->add_option("--index-spec", mean.index_path,
                       "Index sequence JSON path (subsequence mean mode)");
  mean_cmd->callback([&] { run_mean(mean); });

  UdTestOpts ud;
  auto* ud_cmd = app.add_subcommand(
      "udtest", "Uniform distribution test (CDF deviation / residue counts)");
  add_common(ud_cmd, ud.common);
  ud_cmd->add_option("--input", ud.input, "Spec JSON path")->required();
  ud_cmd->add_option("--horizons", ud.horizons, "Comma-separated horizons");
  ud_cmd->add_option("--grid-size", ud.grid_size, "Grid {i/G : 0 <= i <= G}");
  ud_cmd->add_option("--moduli", ud.moduli, "Moduli for index sequence inputs");
  ud_cmd->callback([&] { run_udtest(ud); });

  DiscrepancyOpts disc;
  auto* disc_cmd = app.add_subcommand("discrepancy", "Star discrepancy per horizon");
  add_common(disc_cmd, disc.common);
  disc_cmd->add_option("--input", disc.input, "Spec JSON path")->required();
  disc_cmd->add_option("--horizons", disc.horizons, "Comma-separated horizons");
  disc_cmd->callback([&] { run_discrepancy(disc); });

  BuckOpts buck;
  auto* buck_cmd = app.add_subcommand(
      "buck", "Buck measure density bounds via covering optimization");
  add_common(buck_cmd, buck.common);
  buck_cmd->add_option("--set", buck.set_expr, "Progression union, e.g. '0+(2) | 1+(4)'");
  buck_cmd->add_option("--set-file", buck.set_file, "File with one integer per line");
  buck_cmd->add_option("--set-builtin", buck.set_builtin,
                       "Builtin set: evens, squarefree, primes");
  buck_cmd->add_option("--window", buck.window, "Window horizon");
  buck_cmd->add_option("--mode", buck.mode, "cover, gap, or density")
      ->check(CLI::IsMember({"cover", "gap", "density"}));
  buck_cmd->add_option("--strategy", buck.strategy, "Covering strategy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  buck_cmd->add_option("--modulus-bound", buck.modulus_bound,
                       "Max modulus (default 12 exact, 1000 greedy)");
  buck_cmd->add_option("--horizons", buck.horizons, "Horizons for density mode");
  buck_cmd->callback([&] { run_buck(buck); });

  OscOpts osc;
  auto* osc_cmd = app.add_subcommand(
      "osc", "Oscillation within residue classes / uniform limit diagnostics");
  add_common(osc_cmd, osc.common);
  osc_cmd->add_option("--input", osc.input, "Spec or sequence-system JSON path")
      ->required();
  osc_cmd->add_option("--moduli", osc.moduli, "Comma-separated moduli");
  osc_cmd->add_option("--horizons", osc.horizons, "Comma-separated horizons");
  osc_cmd->add_option("--epsilon", osc.epsilon, "Oscillation threshold");
  osc_cmd->add_option("--prime-set", osc.prime_set,
                      "Primes generating the candidate modulus semigroup");
  osc_cmd->add_option("--modulus-cap", osc.modulus_cap, "Semigroup enumeration cap");
  osc_cmd->add_flag("--search", osc.search, "Report least modulus with oscillation < epsilon");
  osc_cmd->add_option("--depth", osc.depth, "Levels to compare (sequence systems)");
  osc_cmd->callback([&] { run_osc(osc); });

  IndepOpts indep;
  auto* indep_cmd = app.add_subcommand("indep", "Statistical independence gaps");
  add_common(indep_cmd, indep.common);
  indep_cmd->add_option("--input", indep.input, "Suite config JSON path")->required();
  indep_cmd->add_option("--horizons", indep.horizons, "Comma-separated horizons");
  indep_cmd->add_flag("--exact-crt", indep.exact_crt,
                      "Also report exact CRT means (two coprime periodic lists)");
  indep_cmd->callback([&] { run_indep(indep); });

  PartitionOpts part;
  auto* part_cmd = app.add_subcommand(
      "partition-check", "Block decomposition and uniform distribution checks");
  add_common(part_cmd, part.common);
  part_cmd->add_option("--input", part.input, "Partition system JSON path")->required();
  part_cmd->add_option("--horizons", part.horizons, "Comma-separated levels");
  part_cmd->add_option("--cuts", part.cuts, "singleton, dyadic, every, or whole");
  part_cmd->add_option("--scale", part.scale, "Dyadic cut scale (0 = adaptive)");
  part_cmd->add_option("--every", part.every, "Stride for the 'every' cut rule");
  part_cmd->add_option("--grid-size", part.grid_size, "Grid {i/G : 0 <= i <= G}");
  part_cmd->add_option("--checks", part.checks, "all, uniformity, ratio, or ud");
  part_cmd->add_option("--seed", part.seed, "Seed override for the ragged builtin");
  part_cmd->callback([&] { run_partition_check(part); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << json{{"error", {{"code", "parse"}, {"message", e.what()}}}}.dump()
              << std::endl;
    return 2;
  } catch (const Error& e) {
    json err{{"code", errc_name(e.code())}, {"message", e.what()}};
    if (!e.field().empty()) err["field"] = e.field();
    std::cout << json{{"error", err}}.dump() << std::endl;
    if (e.code() == errc::parse) return 2;
    if (e.code() == errc::strategy_unavailable) return 4;
    return 3;
  } catch (const std::exception& e) {
    std::cout << json{{"error", {{"code", "internal"}, {"message", e.what()}}}}.dump()
              << std::endl;
    return 3;
  }
  return 0;
}
