#include <numbers>

#include "cavphase/errors.hpp"
#include "cavphase/sweep.hpp"

namespace cavphase {

namespace {

constexpr double kPi = std::numbers::pi;

Axis spectrum_axis() {
  return {AxisName::delta_p, -kSpectrumHalfWidth, kSpectrumHalfWidth, kPresetResolution};
}
Axis phase_axis(AxisName name) { return {name, 0.0, 2 * kPi, kPresetResolution}; }

}  // namespace

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids{"fig2a", "fig2b", "fig3a", "fig3b",
                                            "fig3c", "fig4a", "fig4b", "fig4c",
                                            "fig5a", "fig5b", "fig5c"};
  return ids;
}

// All presets start from the default configuration: g*sqrt(N) = Omega1 =
// Omega2 = Omega_t = kappa = Gamma, gamma12 = 0.001 Gamma, resonant controls.
SweepSetup figure_preset(std::string_view id) {
  SweepSetup s;
  const std::string key(id);
  if (key == "fig2a") {
    s.params.phi1 = 0;
    s.axes = {spectrum_axis(), phase_axis(AxisName::phi2)};
  } else if (key == "fig2b") {
    s.params.phi2 = 0;
    s.axes = {spectrum_axis(), phase_axis(AxisName::phi1)};
  } else if (key == "fig3a" || key == "fig3b" || key == "fig3c") {
    s.delta_p = key == "fig3a" ? -1.0 : key == "fig3b" ? 0.0 : 1.0;
    s.axes = {phase_axis(AxisName::phi1), phase_axis(AxisName::phi2)};
  } else if (key == "fig4a" || key == "fig4b" || key == "fig4c") {
    s.params.phi1 = kPi / 2;
    s.delta_p = key == "fig4a" ? 0.0 : key == "fig4b" ? 2.0 : 4.0;
    s.axes = {phase_axis(AxisName::phi2)};
  } else if (key == "fig5a" || key == "fig5b" || key == "fig5c") {
    s.delta_p = 0;
    s.params.phi2 = key == "fig5a" ? 0.0 : key == "fig5b" ? kPi / 2 : kPi;
    s.axes = {phase_axis(AxisName::phi1)};
  } else {
    throw UnknownPreset("unknown preset '" + key + "'");
  }
  return s;
}

}  // namespace cavphase
