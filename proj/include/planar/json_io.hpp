#pragma once

// JSON forms of the library types. Lengths are millimeters and inductances
// microhenries in every document; conversion to SI happens here.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "planar/dataset.hpp"
#include "planar/estimator.hpp"
#include "planar/optimizer.hpp"
#include "planar/regression.hpp"

namespace planar {

using Json = nlohmann::ordered_json;

/// Parses a document; throws InputError naming `source_name` on bad syntax.
Json parse_json(const std::string& text, const std::string& source_name);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);
/// Canonical text form: 2-space indent, trailing newline.
std::string dump(const Json& doc);

Json to_json(const CoefficientSet& c);
CoefficientSet coefficients_from_json(const Json& doc);

/// Keys: D1_values, D2_values, w_values, s_values, O_values (mm), NT_values,
/// NL_values, min_inner (mm), strict_inner.
Json to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const Json& doc);

Json geometry_json(const WindingGeometry& g);

/// Keys D1, D2, d1, d2, w, s as [lower, upper] in mm; NT as a list; NL;
/// O_mm; optional coefficients. Missing keys take the reference values.
Json to_json(const OptimizationProblem& p);
OptimizationProblem problem_from_json(const Json& doc);

Json to_json(const OptimizationResult& r, bool include_log = true);

Json to_json(const EvaluationMetrics& m);
Json to_json(const FitReport& r);
Json to_json(const RepeatedFit& r);

/// Two columns: bin_center_pct,count.
void write_histogram_csv(std::ostream& out, const EvaluationMetrics& m);

}  // namespace planar
