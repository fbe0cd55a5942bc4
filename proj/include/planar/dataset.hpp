#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "planar/estimator.hpp"
#include "planar/geometry.hpp"

namespace planar {

/// Value lists for a Cartesian geometry grid. Lengths in meters.
struct GridSpec {
  std::vector<double> outer1_values;
  std::vector<double> outer2_values;
  std::vector<double> width_values;
  std::vector<double> spacing_values;
  std::vector<double> gap_values;
  std::vector<int> turns_values;
  std::vector<int> layers_values;
  double min_inner = 0.0;
  bool strict_inner = false;

  ValidationOptions validation() const { return {min_inner, strict_inner}; }

  /// Throws InputError on empty lists, nonpositive values or min_inner < 0.
  void check() const;
};

/// Training region with both outer sides in 70..110 mm.
GridSpec dataset_a_spec();
/// Training region with both outer sides in 120..160 mm.
GridSpec dataset_b_spec();
/// Off-diagonal region D1 in 70..110 mm, D2 in 120..160 mm, left out of the
/// training corpus and kept for extrapolation studies.
GridSpec dataset_c_spec();

/// Cartesian product of the spec's lists in list order (D1, D2, w, s, N_T,
/// N_L, O), keeping D1 <= D2 and inner sides that pass the threshold.
/// Single-layer entries are emitted once without a layer gap; multilayer
/// entries once per gap value.
std::vector<WindingGeometry> generate_grid(const GridSpec& spec);

/// Dataset A followed by dataset B.
std::vector<WindingGeometry> default_training_grid();

enum class SampleSource { simulated, measured, synthetic };

std::string_view to_string(SampleSource source);
SampleSource parse_sample_source(std::string_view text);

struct Sample {
  WindingGeometry geometry;
  double inductance;  // henries
  SampleSource source = SampleSource::simulated;
};

struct SplitAssignment {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> eval;   // ascending
  std::uint64_t seed = 0;
  double fraction = 0.0;
};

/// Shuffles the indices 0..count-1 with Fisher-Yates driven by Rng(seed) and
/// cuts after round(fraction * count). Throws InputError if either side
/// would be empty.
SplitAssignment split_train_eval(std::size_t count, double fraction, std::uint64_t seed);
SplitAssignment split_train_eval(std::span<const Sample> samples, double fraction,
                                 std::uint64_t seed);

std::vector<Sample> select(std::span<const Sample> samples, std::span<const std::size_t> indices);

/// Labels each geometry with eval_full(g, truth) * 10^e, e ~ N(0, sigma) in
/// log10 space. sigma = 0 reproduces the model exactly.
std::vector<Sample> synth_labels(std::span<const WindingGeometry> geometries,
                                 const CoefficientSet& truth, double noise_sigma,
                                 std::uint64_t seed);

/// Sample CSV header. Lengths in mm, inductance in uH.
inline constexpr std::string_view kSampleCsvHeader =
    "D1_mm,D2_mm,d1_mm,d2_mm,w_mm,s_mm,N_T,N_L,O_mm,L_uH,source";

void write_csv(std::ostream& out, std::span<const Sample> samples);
void write_csv(const std::string& path, std::span<const Sample> samples);

/// Geometry-only rows: L_uH and source left empty.
void write_geometry_csv(std::ostream& out, std::span<const WindingGeometry> geometries);
void write_geometry_csv(const std::string& path, std::span<const WindingGeometry> geometries);

/// Throws InputError naming `source_name` and the line of the first bad row.
std::vector<Sample> read_csv(std::istream& in, const std::string& source_name = "<stream>");
std::vector<Sample> read_csv(const std::string& path);

/// Accepts rows with or without labels; label columns are ignored when
/// present but still syntax-checked.
std::vector<WindingGeometry> read_geometry_csv(std::istream& in,
                                               const std::string& source_name = "<stream>");
std::vector<WindingGeometry> read_geometry_csv(const std::string& path);

}  // namespace planar
