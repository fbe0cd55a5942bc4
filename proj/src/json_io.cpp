#include "planar/json_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "planar/errors.hpp"
#include "planar/units.hpp"
#include "text.hpp"

namespace planar {

namespace {

constexpr const char* kCoefficientKeys[10] = {"a0", "a1", "a2", "a3", "a4",
                                              "a5", "a6", "a7", "a8", "a9"};

double number(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number()) throw InputError(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> mm_list(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_array()) throw InputError(std::string("key '") + key + "' must be a list");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw InputError(std::string("key '") + key + "' must hold numbers");
    out.push_back(from_mm(e.get<double>()));
  }
  return out;
}

std::vector<int> int_list(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_array()) throw InputError(std::string("key '") + key + "' must be a list");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw InputError(std::string("key '") + key + "' must hold integers");
    out.push_back(e.get<int>());
  }
  return out;
}

Json mm_array(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(to_mm(x));
  return out;
}

Json bounds_json(const Bounds& b) { return Json::array({to_mm(b.lower), to_mm(b.upper)}); }

Bounds bounds_from(const Json& doc, const char* key, const Bounds& fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw InputError(std::string("bounds '") + key + "' must be [lower, upper]");
  }
  return {from_mm(v[0].get<double>()), from_mm(v[1].get<double>())};
}

Json point_json(const DesignPoint& x) {
  Json j;
  j["D1_mm"] = to_mm(x.outer1);
  j["D2_mm"] = to_mm(x.outer2);
  j["w_mm"] = to_mm(x.width);
  j["s_mm"] = to_mm(x.spacing);
  j["N_T"] = x.turns;
  return j;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source_name) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source_name + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_json(os.str(), path);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  f << dump(doc);
}

Json to_json(const CoefficientSet& c) {
  Json j;
  for (std::size_t i = 0; i < 10; ++i) j[kCoefficientKeys[i]] = c.a[i];
  j["label"] = c.label;
  return j;
}

CoefficientSet coefficients_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("coefficient document must be an object");
  CoefficientSet c;
  for (std::size_t i = 0; i < 10; ++i) c.a[i] = number(doc, kCoefficientKeys[i]);
  if (doc.contains("label")) {
    if (!doc.at("label").is_string()) throw InputError("key 'label' must be a string");
    c.label = doc.at("label").get<std::string>();
  }
  c.check();
  return c;
}

Json to_json(const GridSpec& s) {
  Json j;
  j["D1_values"] = mm_array(s.outer1_values);
  j["D2_values"] = mm_array(s.outer2_values);
  j["w_values"] = mm_array(s.width_values);
  j["s_values"] = mm_array(s.spacing_values);
  j["O_values"] = mm_array(s.gap_values);
  j["NT_values"] = s.turns_values;
  j["NL_values"] = s.layers_values;
  j["min_inner"] = to_mm(s.min_inner);
  j["strict_inner"] = s.strict_inner;
  return j;
}

GridSpec grid_spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("grid spec must be an object");
  GridSpec s;
  s.outer1_values = mm_list(doc, "D1_values");
  s.outer2_values = mm_list(doc, "D2_values");
  s.width_values = mm_list(doc, "w_values");
  s.spacing_values = mm_list(doc, "s_values");
  s.gap_values = doc.contains("O_values") ? mm_list(doc, "O_values") : std::vector<double>{};
  s.turns_values = int_list(doc, "NT_values");
  s.layers_values = int_list(doc, "NL_values");
  s.min_inner = doc.contains("min_inner") ? from_mm(number(doc, "min_inner")) : 0.0;
  if (doc.contains("strict_inner")) {
    if (!doc.at("strict_inner").is_boolean()) throw InputError("key 'strict_inner' must be a boolean");
    s.strict_inner = doc.at("strict_inner").get<bool>();
  }
  s.check();
  return s;
}

Json geometry_json(const WindingGeometry& g) {
  Json j;
  j["D1_mm"] = to_mm(g.outer1());
  j["D2_mm"] = to_mm(g.outer2());
  j["d1_mm"] = to_mm(g.inner1());
  j["d2_mm"] = to_mm(g.inner2());
  j["w_mm"] = to_mm(g.width());
  j["s_mm"] = to_mm(g.spacing());
  j["N_T"] = g.turns();
  j["N_L"] = g.layers();
  if (g.layers() >= 2 && g.layer_gap()) {
    j["O_mm"] = to_mm(*g.layer_gap());
  } else {
    j["O_mm"] = nullptr;
  }
  const auto m = g.mean_sides();
  j["Dbar1_mm"] = to_mm(m.mean1);
  j["Dbar2_mm"] = to_mm(m.mean2);
  return j;
}

Json to_json(const OptimizationProblem& p) {
  Json j;
  j["D1"] = bounds_json(p.outer1);
  j["D2"] = bounds_json(p.outer2);
  j["d1"] = bounds_json(p.inner1);
  j["d2"] = bounds_json(p.inner2);
  j["w"] = bounds_json(p.width);
  j["s"] = bounds_json(p.spacing);
  j["NT"] = p.turns_domain;
  j["NL"] = p.layers;
  j["O_mm"] = p.layer_gap ? Json(to_mm(*p.layer_gap)) : Json(nullptr);
  j["coefficients"] = to_json(p.coefficients);
  return j;
}

OptimizationProblem problem_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("problem document must be an object");
  auto p = OptimizationProblem::reference();
  p.outer1 = bounds_from(doc, "D1", p.outer1);
  p.outer2 = bounds_from(doc, "D2", p.outer2);
  p.inner1 = bounds_from(doc, "d1", p.inner1);
  p.inner2 = bounds_from(doc, "d2", p.inner2);
  p.width = bounds_from(doc, "w", p.width);
  p.spacing = bounds_from(doc, "s", p.spacing);
  if (doc.contains("NT")) p.turns_domain = int_list(doc, "NT");
  if (doc.contains("NL")) {
    if (!doc.at("NL").is_number_integer()) throw InputError("key 'NL' must be an integer");
    p.layers = doc.at("NL").get<int>();
  }
  if (doc.contains("O_mm")) {
    const auto& o = doc.at("O_mm");
    if (o.is_null()) {
      p.layer_gap.reset();
    } else if (o.is_number()) {
      p.layer_gap = from_mm(o.get<double>());
    } else {
      throw InputError("key 'O_mm' must be a number or null");
    }
  }
  if (p.layers == 1) p.layer_gap.reset();
  if (doc.contains("coefficients")) p.coefficients = coefficients_from_json(doc.at("coefficients"));
  p.check();
  return p;
}

Json to_json(const OptimizationResult& r, bool include_log) {
  Json j;
  j["feasible_found"] = r.feasible_found;
  if (r.feasible_found && r.best) {
    j["best"] = geometry_json(*r.best);
    j["L_uH"] = to_uH(r.inductance);
  } else {
    j["best"] = nullptr;
    j["L_uH"] = nullptr;
  }
  j["restarts_run"] = r.restarts_run;
  if (include_log) {
    Json log = Json::array();
    for (const auto& rec : r.log) {
      Json e;
      e["start"] = point_json(rec.start);
      e["converged"] = point_json(rec.converged);
      e["L_uH"] = to_uH(rec.inductance);
      e["evaluations"] = rec.evaluations;
      log.push_back(std::move(e));
    }
    j["restarts"] = std::move(log);
  }
  return j;
}

Json to_json(const EvaluationMetrics& m) {
  Json j;
  j["count"] = m.count;
  j["mean_error_pct"] = m.mean_error_pct;
  j["std_error_pct"] = m.std_error_pct;
  j["mae_pct"] = m.mae_pct;
  j["max_abs_error_pct"] = m.max_abs_error_pct;
  j["threshold_pct"] = m.threshold_pct;
  Json exceed;
  for (const auto& [layers, count] : m.exceedance_by_layers) exceed[std::to_string(layers)] = count;
  j["exceedance_by_NL"] = exceed.is_null() ? Json::object() : exceed;
  j["bin_width_pct"] = m.bin_width_pct;
  Json hist = Json::array();
  for (const auto& b : m.histogram) {
    Json e;
    e["lower_pct"] = b.lower_pct;
    e["upper_pct"] = b.upper_pct;
    e["center_pct"] = b.center_pct();
    e["count"] = b.count;
    hist.push_back(std::move(e));
  }
  j["histogram"] = std::move(hist);
  return j;
}

Json to_json(const FitReport& r) {
  Json j;
  auto coeffs = to_json(r.coefficients);
  coeffs["c0"] = r.coefficients.intercept();
  j["coefficients"] = std::move(coeffs);
  j["n_train"] = r.n_train;
  j["n_eval"] = r.n_eval;
  j["seed"] = r.seed;
  j["repeats"] = r.repeats;
  j["fraction"] = r.fraction;
  j["metrics"] = to_json(r.metrics);
  return j;
}

Json to_json(const RepeatedFit& r) {
  Json j = to_json(r.summary);
  Json spread;
  for (std::size_t i = 0; i < 10; ++i) {
    const auto& s = r.spread[i];
    spread[kCoefficientKeys[i]] = {{"mean", s.mean}, {"std", s.stddev}, {"min", s.min},
                                   {"max", s.max}, {"range", s.range()}};
  }
  j["dispersion"] = std::move(spread);
  Json runs = Json::array();
  for (const auto& run : r.runs) runs.push_back(to_json(run));
  j["runs"] = std::move(runs);
  return j;
}

void write_histogram_csv(std::ostream& out, const EvaluationMetrics& m) {
  out << "bin_center_pct,count\n";
  for (const auto& b : m.histogram) out << text::shortest(b.center_pct()) << ',' << b.count << '\n';
}

}  // namespace planar
