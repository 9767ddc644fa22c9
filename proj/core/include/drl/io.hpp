#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "drl/scenarios.hpp"

namespace drl {

using Json = nlohmann::json;

/// Shortest round-trip text for a double (17 significant digits).
std::string format_double(double v);

// Problem description:
//   {"n": 2, "sigma": 2.0,
//    "u0": {"terms": [{"coeff": 1.0, "prim": {"kind": "gaussian", "a": 0.5}}]},
//    "u1": {"terms": []}}
// kinds: gaussian, dipole (with "axis"), tensor_dipole, lap_gaussian.
// sigma defaults to 2, a missing u0/u1 is the zero function.

Json to_json(const DataPrimitive& p);
Json to_json(const DataCombo& d);
Json to_json(const Problem& p);

/// Throws InvalidInput on malformed input or invalid data for dimension n.
DataCombo combo_from_json(const Json& j, int n);
Problem problem_from_json(const Json& j);
Problem parse_problem(const std::string& text);

Json to_json(const NormSeries& s);
Json to_json(const FitResult& f);
Json to_json(const GrowthClass& g);
Json to_json(const VerificationReport& r);
Json to_json(const SweepRow& row);
Json to_json(const QuadConfig& cfg);

/// Header "t,value,err" then one row per point.
void write_series_csv(std::ostream& os, const NormSeries& s);

/// Reads "t,value[,err]" rows after a header line. Blank lines are skipped;
/// anything else malformed throws InvalidInput.
NormSeries read_series_csv(std::istream& is, Quantity quantity = Quantity::NormSq);

/// Header "sigma,n,class,alpha,expected,match".
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// One row per report: "id,passed,checks,failed_checks,runtime_s".
void write_report_summary_csv(std::ostream& os, const std::vector<VerificationReport>& reports);

} // namespace drl
