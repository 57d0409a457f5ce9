#include "doctest.h"

#include <sstream>

#include "equidist/json_io.hpp"

using namespace equidist;
using nlohmann::json;

namespace {

void check_spec_roundtrip(const json& encoded) {
  const SequenceSpec spec = sequence_spec_from_json(encoded);
  CHECK(spec_to_json(spec) == encoded);
  // decoding the re-encoding yields the same encoding again
  CHECK(spec_to_json(sequence_spec_from_json(spec_to_json(spec))) == encoded);
}

}  // namespace

TEST_CASE("sequence spec encodings round-trip losslessly") {
  check_spec_roundtrip(json{{"kind", "van_der_corput"}, {"base", 2}});
  check_spec_roundtrip(
      json{{"kind", "periodic_list"}, {"values", json::array({0, "1/3", 0.25, 1})}});
  check_spec_roundtrip(json{{"kind", "multiplicative_alpha"},
                            {"primes", json::array({2, 3})},
                            {"s", 2.0}});
  check_spec_roundtrip(json{{"kind", "constant"}, {"c", "2/7"}});
  check_spec_roundtrip(
      json{{"kind", "partition_extension"},
           {"system", json{{"kind", "builtin"}, {"name", "equipartition"}}},
           {"level", 4}});
}

TEST_CASE("index spec and function encodings round-trip") {
  const json id{{"kind", "identity"}};
  CHECK(index_spec_to_json(index_spec_from_json(id)) == id);
  const json shuffle{{"kind", "block_shuffle"},
                     {"modulus", 3},
                     {"permutation", json::array({2, 0, 1})}};
  CHECK(index_spec_to_json(index_spec_from_json(shuffle)) == shuffle);

  const json mono{{"kind", "monomial"}, {"degree", 3}};
  CHECK(function_to_json(function_from_json(mono)) == mono);
  const json pwl{{"kind", "piecewise_linear"},
                 {"knots", json::array({json::array({0, 0}),
                                        json::array({"1/2", "3/2"}),
                                        json::array({1, 0})})}};
  CHECK(function_to_json(function_from_json(pwl)) == pwl);
}

TEST_CASE("partition and sequence system encodings round-trip") {
  const json ragged{{"kind", "builtin"}, {"name", "ragged"}, {"seed", 9}};
  CHECK(partition_system_to_json(partition_system_from_json(ragged)) == ragged);

  const json explicit_sys{
      {"kind", "explicit"},
      {"levels", json::array({json::array({0, "1/2"}),
                              json::array({0, "1/4", "1/2"})})}};
  CHECK(partition_system_to_json(partition_system_from_json(explicit_sys)) ==
        explicit_sys);

  const json seq_sys{
      {"kind", "sequence_system"},
      {"levels", json::array({json{{"kind", "constant"}, {"c", "1/2"}},
                              json{{"kind", "constant"}, {"c", "1/4"}}})},
      {"bound_series", json::array({0.25})}};
  CHECK(sequence_system_to_json(sequence_system_from_json(seq_sys)) == seq_sys);
}

TEST_CASE("exactness follows the input form") {
  CHECK(scalar_from_json(json(1), "x").exact.has_value());
  CHECK(scalar_from_json(json("1/3"), "x").exact.has_value());
  CHECK(!scalar_from_json(json(0.5), "x").exact.has_value());
  CHECK(scalar_from_json(json(0.5), "x").value == 0.5);
  CHECK(*scalar_from_json(json("1/3"), "x").exact == Rational(1, 3));
}

TEST_CASE("parse errors name the offending field") {
  try {
    sequence_spec_from_json(json{{"kind", "van_der_corput"}});
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse);
    CHECK(e.field() == "base");
  }
  try {
    sequence_spec_from_json(json{{"kind", "mystery"}});
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.field() == "kind");
  }
  CHECK_THROWS_AS(sequence_spec_from_json(json{{"kind", "periodic_list"},
                                               {"values", "nope"}}),
                  Error);
  CHECK_THROWS_AS(unit_value_from_json(json(true), "v"), Error);
  // structurally fine, domain-invalid
  CHECK_THROWS_AS(sequence_spec_from_json(json{{"kind", "van_der_corput"}, {"base", 1}}),
                  Error);
}

TEST_CASE("partition extensions reject unavailable levels") {
  const json spec{
      {"kind", "partition_extension"},
      {"system",
       json{{"kind", "explicit"}, {"levels", json::array({json::array({0, "1/2"})})}}},
      {"level", 5}};
  try {
    sequence_spec_from_json(spec);
    FAIL("expected a missing-level error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::missing_level);
  }
}

TEST_CASE("table serialization") {
  ConvergenceTable t;
  t.label = "demo";
  t.target = 0.0;
  t.rows = {{10, 0.25}, {100, 0.125}};
  const json j = table_to_json(t);
  CHECK(j["target"] == 0.0);
  CHECK(j["rows"].size() == 2);

  std::ostringstream os;
  write_tables_csv(os, {t}, false);
  CHECK(os.str() == "horizon,statistic,target\n10,0.25,0.0\n100,0.125,0.0\n");

  ConvergenceTable unknown;
  unknown.label = "u";
  unknown.rows = {{5, 0.5}};
  std::ostringstream os2;
  write_tables_csv(os2, {unknown}, true);
  CHECK(os2.str() == "label,horizon,statistic,target\nu,5,0.5,unknown\n");
  CHECK(table_to_json(unknown)["target"] == "unknown");
}

TEST_CASE("double formatting round-trips") {
  for (double x : {0.5, 1.0 / 3.0, 1e-9, 123456.789, 0.0}) {
    CHECK(json::parse(fmt_double(x)).get<double>() == x);
  }
}

TEST_CASE("covering serialization keeps exact cost strings") {
  Covering c;
  c.progressions = {{0, 3}};
  c.cost = Rational(1, 3);
  const json j = covering_to_json(c);
  CHECK(j["cost"] == "1/3");
  CHECK(j["progressions"][0]["m"] == 3);
}
