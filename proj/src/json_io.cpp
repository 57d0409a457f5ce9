#include "equidist/json_io.hpp"

#include <cmath>
#include <memory>
#include <ostream>

namespace equidist {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* name) {
  if (!j.is_object())
    throw Error(errc::parse, "expected a JSON object", name);
  const auto it = j.find(name);
  if (it == j.end())
    throw Error(errc::parse, std::string("missing field '") + name + "'", name);
  return *it;
}

long long int_field(const json& j, const char* name) {
  const json& f = require_field(j, name);
  if (!f.is_number_integer() && !f.is_number_unsigned())
    throw Error(errc::parse, std::string("field '") + name + "' must be an integer", name);
  return f.get<long long>();
}

double number_field(const json& j, const char* name) {
  const json& f = require_field(j, name);
  if (!f.is_number())
    throw Error(errc::parse, std::string("field '") + name + "' must be a number", name);
  return f.get<double>();
}

std::string kind_of(const json& j) {
  const json& f = require_field(j, "kind");
  if (!f.is_string())
    throw Error(errc::parse, "field 'kind' must be a string", "kind");
  return f.get<std::string>();
}

}  // namespace

json scalar_to_json(const Scalar& s) {
  if (s.exact) {
    if (s.exact->is_integer() && s.exact->fits_int64())
      return json(s.exact->to_int64());
    return json(s.exact->str());
  }
  return json(s.value);
}

Scalar scalar_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer() || j.is_number_unsigned()) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > (std::uint64_t(1) << 62))
      throw Error(errc::parse, "integer too large in field '" + field + "'", field);
    return Scalar(Rational(j.get<long long>()));
  }
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v))
      throw Error(errc::parse, "non-finite number in field '" + field + "'", field);
    return Scalar(v);
  }
  if (j.is_string()) return Scalar(Rational::parse(j.get<std::string>()));
  throw Error(errc::parse,
              "field '" + field + "' must be a number or a \"p/q\" string", field);
}

json unit_value_to_json(const UnitValue& v) { return scalar_to_json(v.scalar()); }

UnitValue unit_value_from_json(const json& j, const std::string& field) {
  const Scalar s = scalar_from_json(j, field);
  return s.exact ? UnitValue(*s.exact) : UnitValue(s.value);
}

json spec_to_json(const SequenceSpec& spec) {
  json j;
  if (const auto* v = std::get_if<VanDerCorput>(&spec)) {
    j["kind"] = "van_der_corput";
    j["base"] = v->base;
  } else if (const auto* p = std::get_if<PeriodicList>(&spec)) {
    j["kind"] = "periodic_list";
    json values = json::array();
    for (const auto& u : p->values) values.push_back(unit_value_to_json(u));
    j["values"] = std::move(values);
  } else if (const auto* a = std::get_if<MultiplicativeAlpha>(&spec)) {
    j["kind"] = "multiplicative_alpha";
    j["primes"] = a->primes;
    j["s"] = a->s;
  } else if (const auto* pe = std::get_if<PartitionExtension>(&spec)) {
    j["kind"] = "partition_extension";
    j["system"] = partition_system_to_json(*pe->system);
    j["level"] = pe->level;
  } else if (const auto* c = std::get_if<Constant>(&spec)) {
    j["kind"] = "constant";
    j["c"] = unit_value_to_json(c->c);
  }
  return j;
}

SequenceSpec sequence_spec_from_json(const json& j) {
  const std::string kind = kind_of(j);
  SequenceSpec spec;
  if (kind == "van_der_corput") {
    spec = VanDerCorput{int_field(j, "base")};
  } else if (kind == "periodic_list") {
    const json& values = require_field(j, "values");
    if (!values.is_array())
      throw Error(errc::parse, "field 'values' must be an array", "values");
    PeriodicList p;
    for (const auto& v : values)
      p.values.push_back(unit_value_from_json(v, "values"));
    spec = std::move(p);
  } else if (kind == "multiplicative_alpha") {
    const json& primes = require_field(j, "primes");
    if (!primes.is_array())
      throw Error(errc::parse, "field 'primes' must be an array", "primes");
    MultiplicativeAlpha a;
    for (const auto& p : primes) {
      if (!p.is_number_integer() && !p.is_number_unsigned())
        throw Error(errc::parse, "field 'primes' must hold integers", "primes");
      a.primes.push_back(p.get<long long>());
    }
    std::sort(a.primes.begin(), a.primes.end());
    a.s = number_field(j, "s");
    spec = std::move(a);
  } else if (kind == "partition_extension") {
    auto system = std::make_shared<PartitionSystem>(
        partition_system_from_json(require_field(j, "system")));
    spec = PartitionExtension(system, int_field(j, "level"));
  } else if (kind == "constant") {
    spec = Constant{unit_value_from_json(require_field(j, "c"), "c")};
  } else {
    throw Error(errc::parse, "unknown sequence kind '" + kind + "'", "kind");
  }
  validate(spec);
  return spec;
}

json index_spec_to_json(const IndexSeqSpec& spec) {
  json j;
  if (std::holds_alternative<IdentityIndex>(spec)) {
    j["kind"] = "identity";
  } else {
    const auto& b = std::get<BlockShuffle>(spec);
    j["kind"] = "block_shuffle";
    j["modulus"] = b.modulus;
    j["permutation"] = b.permutation;
  }
  return j;
}

IndexSeqSpec index_spec_from_json(const json& j) {
  const std::string kind = kind_of(j);
  IndexSeqSpec spec;
  if (kind == "identity") {
    spec = IdentityIndex{};
  } else if (kind == "block_shuffle") {
    BlockShuffle b;
    b.modulus = int_field(j, "modulus");
    const json& perm = require_field(j, "permutation");
    if (!perm.is_array())
      throw Error(errc::parse, "field 'permutation' must be an array", "permutation");
    for (const auto& v : perm) {
      if (!v.is_number_integer() && !v.is_number_unsigned())
        throw Error(errc::parse, "field 'permutation' must hold integers", "permutation");
      b.permutation.push_back(v.get<long long>());
    }
    spec = std::move(b);
  } else {
    throw Error(errc::parse, "unknown index sequence kind '" + kind + "'", "kind");
  }
  validate(spec);
  return spec;
}

json function_to_json(const TestFunctionSpec& g) {
  json j;
  if (const auto* m = std::get_if<Monomial>(&g)) {
    j["kind"] = "monomial";
    j["degree"] = m->degree;
  } else {
    const auto& p = std::get<PiecewiseLinear>(g);
    j["kind"] = "piecewise_linear";
    json knots = json::array();
    for (const auto& k : p.knots)
      knots.push_back(json::array({unit_value_to_json(k.x), scalar_to_json(k.y)}));
    j["knots"] = std::move(knots);
  }
  return j;
}

TestFunctionSpec function_from_json(const json& j) {
  const std::string kind = kind_of(j);
  TestFunctionSpec g;
  if (kind == "monomial") {
    g = Monomial{static_cast<int>(int_field(j, "degree"))};
  } else if (kind == "piecewise_linear") {
    const json& knots = require_field(j, "knots");
    if (!knots.is_array())
      throw Error(errc::parse, "field 'knots' must be an array", "knots");
    PiecewiseLinear p;
    for (const auto& k : knots) {
      if (!k.is_array() || k.size() != 2)
        throw Error(errc::parse, "each knot must be an [x, y] pair", "knots");
      p.knots.push_back(
          {unit_value_from_json(k[0], "knots"), scalar_from_json(k[1], "knots")});
    }
    g = std::move(p);
  } else {
    throw Error(errc::parse, "unknown test function kind '" + kind + "'", "kind");
  }
  validate(g);
  return g;
}

json partition_system_to_json(const PartitionSystem& s) {
  json j;
  if (s.kind() == PartitionSystem::Kind::explicit_levels) {
    j["kind"] = "explicit";
    json levels = json::array();
    for (const auto& level : s.explicit_levels()) {
      json values = json::array();
      for (const auto& v : level) values.push_back(unit_value_to_json(v));
      levels.push_back(std::move(values));
    }
    j["levels"] = std::move(levels);
  } else {
    j["kind"] = "builtin";
    j["name"] = s.name();
    if (s.kind() == PartitionSystem::Kind::ragged) j["seed"] = s.seed();
  }
  return j;
}

PartitionSystem partition_system_from_json(const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "builtin") {
    const json& name = require_field(j, "name");
    if (!name.is_string())
      throw Error(errc::parse, "field 'name' must be a string", "name");
    std::uint64_t seed = 1;
    if (j.contains("seed")) seed = static_cast<std::uint64_t>(int_field(j, "seed"));
    return PartitionSystem::builtin(name.get<std::string>(), seed);
  }
  if (kind == "explicit") {
    const json& levels = require_field(j, "levels");
    if (!levels.is_array())
      throw Error(errc::parse, "field 'levels' must be an array", "levels");
    std::vector<std::vector<UnitValue>> parsed;
    for (const auto& level : levels) {
      if (!level.is_array())
        throw Error(errc::parse, "each level must be an array of values", "levels");
      std::vector<UnitValue> values;
      for (const auto& v : level)
        values.push_back(unit_value_from_json(v, "levels"));
      parsed.push_back(std::move(values));
    }
    bool strict = false;
    if (j.contains("strict")) {
      if (!j["strict"].is_boolean())
        throw Error(errc::parse, "field 'strict' must be a boolean", "strict");
      strict = j["strict"].get<bool>();
    }
    return PartitionSystem::from_levels(std::move(parsed), strict);
  }
  throw Error(errc::parse, "unknown partition system kind '" + kind + "'", "kind");
}

json sequence_system_to_json(const SequenceSystem& s) {
  json j;
  j["kind"] = "sequence_system";
  json levels = json::array();
  for (const auto& spec : s.levels) levels.push_back(spec_to_json(spec));
  j["levels"] = std::move(levels);
  if (s.bound_series) j["bound_series"] = *s.bound_series;
  return j;
}

SequenceSystem sequence_system_from_json(const json& j) {
  if (kind_of(j) != "sequence_system")
    throw Error(errc::parse, "expected kind 'sequence_system'", "kind");
  const json& levels = require_field(j, "levels");
  if (!levels.is_array() || levels.empty())
    throw Error(errc::parse, "field 'levels' must be a nonempty array", "levels");
  SequenceSystem s;
  for (const auto& spec : levels) s.levels.push_back(sequence_spec_from_json(spec));
  if (j.contains("bound_series")) {
    const json& bounds = j["bound_series"];
    if (!bounds.is_array())
      throw Error(errc::parse, "field 'bound_series' must be an array", "bound_series");
    std::vector<double> parsed;
    for (const auto& b : bounds) {
      if (!b.is_number())
        throw Error(errc::parse, "bound series entries must be numbers", "bound_series");
      parsed.push_back(b.get<double>());
    }
    s.bound_series = std::move(parsed);
  }
  return s;
}

std::string fmt_double(double x) { return json(x).dump(); }

json table_to_json(const ConvergenceTable& t) {
  json j;
  j["label"] = t.label;
  j["target"] = t.target ? json(*t.target) : json("unknown");
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back(json{{"horizon", r.horizon}, {"statistic", r.statistic}});
  j["rows"] = std::move(rows);
  return j;
}

void write_tables_csv(std::ostream& os,
                      const std::vector<ConvergenceTable>& tables,
                      bool label_column) {
  os << (label_column ? "label,horizon,statistic,target\n"
                      : "horizon,statistic,target\n");
  for (const auto& t : tables) {
    const std::string target = t.target ? fmt_double(*t.target) : "unknown";
    for (const auto& r : t.rows) {
      if (label_column) os << t.label << ',';
      os << r.horizon << ',' << fmt_double(r.statistic) << ',' << target << '\n';
    }
  }
}

json covering_to_json(const Covering& c) {
  json j;
  j["cost"] = c.cost.str();
  j["cost_value"] = c.cost.to_double();
  json progs = json::array();
  for (const auto& p : c.progressions)
    progs.push_back(json{{"r", p.r}, {"m", p.m}});
  j["progressions"] = std::move(progs);
  return j;
}

json report_to_json(const IndependenceReport& r) {
  json j;
  j["specs"] = r.spec_labels;
  j["functions"] = r.function_labels;
  json rows = json::array();
  for (size_t i = 0; i < r.horizons.size(); ++i)
    rows.push_back(json{{"horizon", r.horizons[i]}, {"max_gap", r.max_gaps[i]}});
  j["rows"] = std::move(rows);
  j["target"] = 0.0;
  return j;
}

ConvergenceTable report_to_table(const IndependenceReport& r) {
  ConvergenceTable t;
  t.label = "max_gap";
  t.target = 0.0;
  for (size_t i = 0; i < r.horizons.size(); ++i)
    t.rows.push_back({r.horizons[i], r.max_gaps[i]});
  return t;
}

}  // namespace equidist
