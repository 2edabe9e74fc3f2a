#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ordrel/copulas.hpp"
#include "ordrel/distributions.hpp"
#include "ordrel/harness.hpp"
#include "ordrel/majorization.hpp"
#include "ordrel/orders.hpp"
#include "ordrel/systems.hpp"

namespace ordrel {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file; malformed input or a missing file is a SchemaError.
Json load_json(const std::string& path);

/// Parsers are strict: missing required fields, wrong types and unknown
/// fields all throw SchemaError naming the offending path. Invalid values
/// that pass the schema (negative rates, ...) surface as DomainError from the
/// constructors.
DistSpec dist_from_json(const Json& j);
SystemSpec system_from_json(const Json& j);
GeneratorSpec generator_from_json(const Json& j);
GridSpec grid_from_json(const Json& j);
ShiftedSystem shifted_from_json(const Json& j);
TheoremCase case_from_json(const Json& j);
ScanConfig scan_config_from_json(const Json& j);

/// Serialization. Every number is rounded to 12 significant digits;
/// infinities are written as the strings "inf" / "-inf".
Json to_json(const DistSpec& d);
Json to_json(const SystemSpec& s);
Json to_json(const GeneratorSpec& g);
Json to_json(const GridSpec& g);
Json to_json(const ShiftedSystem& s);
Json to_json(const OrderVerdict& v);
Json to_json(const SchurCertificate& c);
Json to_json(const MonotoneCertificate& c);
Json to_json(const TheoremCase& c);
Json to_json(const TheoremReport& r);
Json to_json(const ScanConfig& c);
Json to_json(const ScanSummary& s);
Json to_json(const ScanResult& r);

/// One row per report: index, theorem, label, hypothesis flags (one 0/1 per
/// condition, in order), hypothesis_satisfied, outcome, consistent, error.
void write_reports_csv(std::ostream& out, const std::vector<TheoremReport>& reports);

/// %.12g.
std::string format_number(double v);

}  // namespace ordrel
