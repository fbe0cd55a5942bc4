#include "planar/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "planar/errors.hpp"
#include "planar/random.hpp"
#include "planar/units.hpp"
#include "text.hpp"

namespace planar {

namespace {

std::vector<double> mm_range(double first, double last, double step) {
  std::vector<double> out;
  for (double v = first; v <= last + 1e-9; v += step) out.push_back(from_mm(v));
  return out;
}

GridSpec table_grid(std::vector<double> outer1, std::vector<double> outer2) {
  GridSpec spec;
  spec.outer1_values = std::move(outer1);
  spec.outer2_values = std::move(outer2);
  spec.width_values = {from_mm(3.0), from_mm(4.0), from_mm(5.0)};
  spec.spacing_values = {from_mm(0.1), from_mm(0.3), from_mm(0.5)};
  spec.gap_values = {from_mm(0.5), from_mm(1.0), from_mm(1.5)};
  spec.turns_values = {6, 8, 10};
  spec.layers_values = {1, 2, 3, 4};
  spec.min_inner = from_mm(17.0);
  spec.strict_inner = false;
  return spec;
}

template <typename T>
void require_positive_list(const std::vector<T>& values, const char* name) {
  if (values.empty()) throw InputError(std::string("grid list ") + name + " is empty");
  for (T v : values) {
    if (!(v > T{0})) throw InputError(std::string("grid list ") + name + " has a nonpositive value");
  }
}

}  // namespace

void GridSpec::check() const {
  require_positive_list(outer1_values, "D1");
  require_positive_list(outer2_values, "D2");
  require_positive_list(width_values, "w");
  require_positive_list(spacing_values, "s");
  require_positive_list(turns_values, "N_T");
  require_positive_list(layers_values, "N_L");
  const bool multilayer =
      std::any_of(layers_values.begin(), layers_values.end(), [](int n) { return n >= 2; });
  if (multilayer) require_positive_list(gap_values, "O");
  if (!(min_inner >= 0.0)) throw InputError("min_inner must be >= 0");
}

GridSpec dataset_a_spec() {
  return table_grid(mm_range(70, 110, 10), mm_range(70, 110, 10));
}

GridSpec dataset_b_spec() {
  return table_grid(mm_range(120, 160, 10), mm_range(120, 160, 10));
}

GridSpec dataset_c_spec() {
  return table_grid(mm_range(70, 110, 10), mm_range(120, 160, 10));
}

std::vector<WindingGeometry> generate_grid(const GridSpec& spec) {
  spec.check();
  const auto options = spec.validation();
  std::vector<WindingGeometry> out;
  for (double d1 : spec.outer1_values) {
    for (double d2 : spec.outer2_values) {
      if (d1 > d2) continue;
      for (double w : spec.width_values) {
        for (double s : spec.spacing_values) {
          for (int nt : spec.turns_values) {
            const double inner1 = d1 - 2.0 * nt * (w + s) + 2.0 * s;
            const double inner2 = d2 - 2.0 * nt * (w + s) + 2.0 * s;
            if (!(inner1 > 0.0) || !inner_side_ok(inner1, options) ||
                !inner_side_ok(inner2, options)) {
              continue;
            }
            for (int nl : spec.layers_values) {
              WindingParams p{d1, d2, w, s, nt, nl, std::nullopt};
              if (nl == 1) {
                out.emplace_back(p);
                continue;
              }
              for (double o : spec.gap_values) {
                p.layer_gap = o;
                out.emplace_back(p);
              }
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<WindingGeometry> default_training_grid() {
  auto out = generate_grid(dataset_a_spec());
  auto b = generate_grid(dataset_b_spec());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string_view to_string(SampleSource source) {
  switch (source) {
    case SampleSource::simulated: return "simulated";
    case SampleSource::measured: return "measured";
    case SampleSource::synthetic: return "synthetic";
  }
  return "simulated";
}

SampleSource parse_sample_source(std::string_view text) {
  if (text == "simulated") return SampleSource::simulated;
  if (text == "measured") return SampleSource::measured;
  if (text == "synthetic") return SampleSource::synthetic;
  throw InputError("unknown sample source '" + std::string(text) + "'");
}

SplitAssignment split_train_eval(std::size_t count, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw InputError("split fraction must lie strictly between 0 and 1");
  }
  if (count < 2) throw InputError("split needs at least 2 samples");
  const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(count)));
  if (n_train == 0 || n_train == count) {
    throw InputError("split fraction leaves an empty training or evaluation subset");
  }

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = count - 1; i > 0; --i) {
    std::swap(order[i], order[rng.index(i + 1)]);
  }

  SplitAssignment split;
  split.seed = seed;
  split.fraction = fraction;
  split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.eval.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.eval.begin(), split.eval.end());
  return split;
}

SplitAssignment split_train_eval(std::span<const Sample> samples, double fraction,
                                 std::uint64_t seed) {
  return split_train_eval(samples.size(), fraction, seed);
}

std::vector<Sample> select(std::span<const Sample> samples, std::span<const std::size_t> indices) {
  std::vector<Sample> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(samples[i]);
  return out;
}

std::vector<Sample> synth_labels(std::span<const WindingGeometry> geometries,
                                 const CoefficientSet& truth, double noise_sigma,
                                 std::uint64_t seed) {
  if (!(noise_sigma >= 0.0)) throw InputError("noise sigma must be >= 0");
  Rng rng(seed);
  std::vector<Sample> out;
  out.reserve(geometries.size());
  for (const auto& g : geometries) {
    double label = eval_full(g, truth);
    if (noise_sigma > 0.0) label *= std::pow(10.0, noise_sigma * rng.normal());
    out.push_back({g, label, SampleSource::synthetic});
  }
  return out;
}

// --- CSV ---------------------------------------------------------------

namespace {

constexpr int kLengthDecimals = 4;

void write_geometry_fields(std::ostream& out, const WindingGeometry& g) {
  using text::fixed;
  out << fixed(to_mm(g.outer1()), kLengthDecimals) << ',' << fixed(to_mm(g.outer2()), kLengthDecimals)
      << ',' << fixed(to_mm(g.inner1()), kLengthDecimals) << ','
      << fixed(to_mm(g.inner2()), kLengthDecimals) << ',' << fixed(to_mm(g.width()), kLengthDecimals)
      << ',' << fixed(to_mm(g.spacing()), kLengthDecimals) << ',' << g.turns() << ','
      << g.layers() << ',';
  if (g.layers() >= 2 && g.layer_gap()) out << fixed(to_mm(*g.layer_gap()), kLengthDecimals);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "' for reading");
  return f;
}

struct ParsedRow {
  WindingGeometry geometry;
  std::optional<double> inductance;
  std::optional<SampleSource> source;
};

ParsedRow parse_row(std::string_view line, const std::string& name, std::size_t lineno) {
  auto fail = [&](const std::string& msg) -> InputError { return InputError(name, lineno, msg); };
  const auto f = text::split(line, ',');
  if (f.size() != 11) {
    throw fail("expected 11 columns, found " + std::to_string(f.size()));
  }
  static constexpr const char* kNames[] = {"D1_mm", "D2_mm", "d1_mm", "d2_mm", "w_mm", "s_mm",
                                           "N_T",   "N_L",   "O_mm",  "L_uH",  "source"};
  auto length = [&](int col) {
    auto v = text::parse_double(f[col]);
    if (!v) throw fail(std::string(kNames[col]) + ": not a number");
    if (!(*v > 0.0) || !std::isfinite(*v)) throw fail(std::string(kNames[col]) + ": must be positive");
    return from_mm(*v);
  };
  auto count = [&](int col) {
    auto v = text::parse_int(f[col]);
    if (!v) throw fail(std::string(kNames[col]) + ": not an integer");
    if (*v < 1 || *v > 1000000) throw fail(std::string(kNames[col]) + ": must be >= 1");
    return static_cast<int>(*v);
  };

  WindingParams p;
  p.side_a = length(0);
  p.side_b = length(1);
  const double inner1 = length(2);
  const double inner2 = length(3);
  p.width = length(4);
  p.spacing = length(5);
  p.turns = count(6);
  p.layers = count(7);
  if (f[8].empty()) {
    if (p.layers >= 2) throw fail("O_mm is required when N_L >= 2");
  } else {
    if (p.layers == 1) throw fail("O_mm must be empty when N_L = 1");
    p.layer_gap = length(8);
  }

  std::optional<double> inductance;
  if (!f[9].empty()) {
    auto v = text::parse_double(f[9]);
    if (!v) throw fail("L_uH: not a number");
    if (!(*v > 0.0) || !std::isfinite(*v)) throw fail("L_uH: must be positive");
    inductance = from_uH(*v);
  }
  std::optional<SampleSource> source;
  if (!f[10].empty()) {
    try {
      source = parse_sample_source(f[10]);
    } catch (const InputError& e) {
      throw fail(e.what());
    }
  }

  try {
    WindingGeometry g(p);
    check_inner_sides(g, inner1, inner2);
    return {g, inductance, source};
  } catch (const Error& e) {
    throw fail(e.what());
  }
}

template <typename RowFn>
void for_each_row(std::istream& in, const std::string& name, RowFn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    if (!header_seen) {
      if (trimmed != kSampleCsvHeader) {
        throw InputError(name, lineno, "expected header '" + std::string(kSampleCsvHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    fn(parse_row(trimmed, name, lineno), lineno);
  }
  if (!header_seen) throw InputError(name, 1, "missing header");
}

}  // namespace

void write_csv(std::ostream& out, std::span<const Sample> samples) {
  out << kSampleCsvHeader << '\n';
  for (const auto& s : samples) {
    write_geometry_fields(out, s.geometry);
    out << ',' << text::shortest(to_uH(s.inductance)) << ',' << to_string(s.source) << '\n';
  }
}

void write_csv(const std::string& path, std::span<const Sample> samples) {
  auto f = open_out(path);
  write_csv(f, samples);
}

void write_geometry_csv(std::ostream& out, std::span<const WindingGeometry> geometries) {
  out << kSampleCsvHeader << '\n';
  for (const auto& g : geometries) {
    write_geometry_fields(out, g);
    out << ",,\n";
  }
}

void write_geometry_csv(const std::string& path, std::span<const WindingGeometry> geometries) {
  auto f = open_out(path);
  write_geometry_csv(f, geometries);
}

std::vector<Sample> read_csv(std::istream& in, const std::string& name) {
  std::vector<Sample> out;
  for_each_row(in, name, [&](ParsedRow row, std::size_t lineno) {
    if (!row.inductance) throw InputError(name, lineno, "L_uH is required");
    if (!row.source) throw InputError(name, lineno, "source is required");
    out.push_back({std::move(row.geometry), *row.inductance, *row.source});
  });
  return out;
}

std::vector<Sample> read_csv(const std::string& path) {
  auto f = open_in(path);
  return read_csv(f, path);
}

std::vector<WindingGeometry> read_geometry_csv(std::istream& in, const std::string& name) {
  std::vector<WindingGeometry> out;
  for_each_row(in, name, [&](ParsedRow row, std::size_t) { out.push_back(std::move(row.geometry)); });
  return out;
}

std::vector<WindingGeometry> read_geometry_csv(const std::string& path) {
  auto f = open_in(path);
  return read_geometry_csv(f, path);
}

}  // namespace planar
