#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cavphase/core_model.hpp"
#include "cavphase/params.hpp"

namespace cavphase {

enum class AxisName { delta_p, phi1, phi2 };

std::string_view to_string(AxisName name);
// Throws ParseError for anything but delta_p, phi1, phi2.
AxisName axis_name_from_string(std::string_view s);

// Uniform grid including both endpoints.
struct Axis {
  AxisName name = AxisName::delta_p;
  double start = 0;
  double stop = 1;
  int count = 2;

  // Throws ValidationError unless start < stop and count >= 2.
  void validate() const;
  double at(int k) const;
};

// A scan: the fixed configuration plus one or two axes. When delta_p is not
// an axis, `delta_p` is the probe detuning used at every point.
struct SweepSetup {
  SystemParams params;
  double delta_p = 0;
  std::vector<Axis> axes;
};

struct SweepResult {
  SystemParams params;
  double delta_p = 0;
  std::vector<Axis> axes;
  // Row-major: first axis outer, second inner.
  std::vector<IntensityRecord> records;
};

struct SweepOptions {
  int workers = 1;  // <= 0 picks hardware concurrency
};

/// Evaluates the closed form at one point. Points that hit NearSingular come
/// back with flag == near_singular and NaN observables.
IntensityRecord evaluate_point(const SystemParams& p, double delta_p);

SweepResult sweep1d(const SystemParams& p, double delta_p, const Axis& axis,
                    SweepOptions opt = {});
SweepResult sweep2d(const SystemParams& p, double delta_p, const Axis& outer, const Axis& inner,
                    SweepOptions opt = {});
SweepResult run_sweep(const SweepSetup& setup, SweepOptions opt = {});

// Figure grids. Spectra span [-5, 5] Gamma and every axis has 201 points.
inline constexpr int kPresetResolution = 201;
inline constexpr double kSpectrumHalfWidth = 5.0;

const std::vector<std::string>& preset_ids();
// Throws UnknownPreset.
SweepSetup figure_preset(std::string_view id);

}  // namespace cavphase
