// cavphase: intensities of a two-sided cavity holding closed-loop four-level
// atoms, as functions of the loop phase phi1 and the input relative phase phi2.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or configuration error.

#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "cavphase/config.hpp"
#include "cavphase/core_model.hpp"
#include "cavphase/errors.hpp"
#include "cavphase/serialize.hpp"
#include "cavphase/sweep.hpp"
#include "cavphase/validate.hpp"

namespace {

using namespace cavphase;

SweepSetup setup_for(const RunConfig& rc) {
  if (rc.mode == Mode::preset) return figure_preset(rc.preset_id);
  SweepSetup s{rc.params, rc.delta_p, rc.axes};
  if (s.axes.empty()) {
    const Axis spectrum{AxisName::delta_p, -kSpectrumHalfWidth, kSpectrumHalfWidth,
                        kPresetResolution};
    s.axes.push_back(spectrum);
    if (rc.mode == Mode::contour)
      s.axes.push_back({AxisName::phi2, 0, 2 * std::numbers::pi, kPresetResolution});
  }
  return s;
}

void emit(const RunConfig& rc, std::ostream& out) {
  if (rc.mode == Mode::point) {
    const IntensityRecord rec = evaluate_point(rc.params, rc.delta_p);
    if (rec.flag == PointFlag::ok) absorption_of(rec);  // passivity diagnostic
    if (rc.format == Format::csv) write_csv(out, std::span(&rec, 1));
    else write_json(out, rc.params, std::span(&rec, 1));
    return;
  }
  const SweepResult result = run_sweep(setup_for(rc), {rc.workers});
  if (rc.format == Format::csv) write_csv(out, result);
  else write_json(out, result);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;
  try {
    rc = parse_config(std::vector<std::string>(argv + 1, argv + argc));
    if (rc.help) {
      std::cout << *rc.help;
      return 0;
    }
    if (rc.mode == Mode::preset) figure_preset(rc.preset_id);
  } catch (const Error& e) {
    std::cerr << "cavphase: " << e.what() << '\n';
    return 2;
  }

  try {
    if (rc.mode == Mode::validate) {
      const auto report =
          validate_all(rc.params, Tolerances{}.scaled(rc.tolerance_scale), rc.workers);
      print_report(std::cout, report);
      return report.all_passed() ? 0 : 1;
    }
    if (rc.output.empty()) {
      emit(rc, std::cout);
    } else {
      std::ofstream file(rc.output, std::ios::binary);
      if (!file) {
        std::cerr << "cavphase: cannot open '" << rc.output << "' for writing\n";
        return 2;
      }
      emit(rc, file);
    }
  } catch (const ValidationError& e) {
    std::cerr << "cavphase: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "cavphase: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
