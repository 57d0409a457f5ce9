#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "equidist/buck.hpp"
#include "equidist/independence.hpp"
#include "equidist/meanstats.hpp"
#include "equidist/partition.hpp"
#include "equidist/polyadic.hpp"
#include "equidist/seqcore.hpp"

namespace equidist {

// Canonical JSON encodings (tag field "kind"). Exact values serialize as
// integers or "p/q" strings, doubles as numbers; the encodings round-trip
// losslessly.

nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const nlohmann::json& j, const std::string& field);
nlohmann::json unit_value_to_json(const UnitValue& v);
UnitValue unit_value_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json spec_to_json(const SequenceSpec& spec);
SequenceSpec sequence_spec_from_json(const nlohmann::json& j);

nlohmann::json index_spec_to_json(const IndexSeqSpec& spec);
IndexSeqSpec index_spec_from_json(const nlohmann::json& j);

nlohmann::json function_to_json(const TestFunctionSpec& g);
TestFunctionSpec function_from_json(const nlohmann::json& j);

nlohmann::json partition_system_to_json(const PartitionSystem& s);
PartitionSystem partition_system_from_json(const nlohmann::json& j);

nlohmann::json sequence_system_to_json(const SequenceSystem& s);
SequenceSystem sequence_system_from_json(const nlohmann::json& j);

// Shortest round-trip formatting, shared by the CSV and JSON writers.
std::string fmt_double(double x);

nlohmann::json table_to_json(const ConvergenceTable& t);
void write_tables_csv(std::ostream& os,
                      const std::vector<ConvergenceTable>& tables,
                      bool label_column);

nlohmann::json covering_to_json(const Covering& c);
nlohmann::json report_to_json(const IndependenceReport& r);
ConvergenceTable report_to_table(const IndependenceReport& r);

}  // namespace equidist
