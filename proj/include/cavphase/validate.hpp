#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cavphase/params.hpp"

namespace cavphase {

// Pass thresholds. scaled() multiplies every one of them.
struct Tolerances {
  double identity = 1e-12;      // exact closed-form identities
  double oracle = 1e-10;        // closed form vs linear solve, relative
  double dynamics = 1e-4;       // time march vs closed form, relative
  double passivity = 1e-9;      // allowed negative absorption
  double trapping = 0.25;       // total output at the coherent-absorber point
  double insensitivity = 0.05;  // (max - min) / mean of total output at Delta_p = 4
  double pi_delay = 0.02;       // |I_l(phi2) - I_r(phi2 + pi)| at Delta_p = 4
  double split_floor = 1e-11;   // channels must differ by more than this at phi2 = pi/2

  Tolerances scaled(double s) const;
};

struct CheckResult {
  std::string name;
  double measured = 0;
  double threshold = 0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Runs the identity checks on `params` (with the overrides each identity
/// needs, e.g. phi2 = pi) and the figure-regime checks on the default
/// configuration. Failures are reported, never thrown.
ValidationReport validate_all(const SystemParams& params, const Tolerances& tol = {},
                              int workers = 0);

void print_report(std::ostream& out, const ValidationReport& report);

}  // namespace cavphase
