#include "cavphase/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "cavphase/bloch.hpp"
#include "cavphase/core_model.hpp"
#include "cavphase/serialize.hpp"
#include "cavphase/sweep.hpp"

namespace cavphase {

namespace {

constexpr double kPi = std::numbers::pi;
// Denominator floor for relative errors of quantities that vanish exactly.
constexpr double kZeroFloor = 1e-8;

CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured, threshold, measured <= threshold, std::move(detail)};
}

// Grid over [0, 2pi) excluding the endpoint.
double open_phase(int k, int n) { return 2 * kPi * k / n; }

double max_intensity_gap(const IntensityRecord& a, const IntensityRecord& b) {
  return std::max({std::abs(a.i_c - b.i_c), std::abs(a.i_out_r - b.i_out_r),
                   std::abs(a.i_out_l - b.i_out_l)});
}

CheckResult transmitter_reflector(SystemParams p, double tol) {
  p.phi2 = kPi;
  double worst = 0;
  for (int i = 0; i < 51; ++i)
    for (int j = 0; j < 51; ++j) {
      p.phi1 = open_phase(j, 51);
      const auto rec = intensity_ratios(p, -5.0 + 10.0 * i / 50);
      worst = std::max({worst, std::abs(rec.i_c), std::abs(rec.i_total - 2)});
    }
  return at_most("transmitter_reflector", worst, tol, "phi2 = pi: i_c = 0, i_total = 2");
}

CheckResult phi1_evenness(SystemParams p, double tol, int workers) {
  p.phi2 = 0;
  const Axis dp{AxisName::delta_p, -kSpectrumHalfWidth, kSpectrumHalfWidth, kPresetResolution};
  const Axis ph{AxisName::phi1, 0, 2 * kPi, kPresetResolution};
  const auto res = sweep2d(p, 0, dp, ph, {workers});
  double worst = 0;
  const int n = ph.count;
  for (int i = 0; i < dp.count; ++i)
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, max_intensity_gap(res.records[i * n + k],
                                                res.records[i * n + (n - 1 - k)]));
  return at_most("phi1_evenness", worst, tol, "I(phi1) = I(2pi - phi1) on the Delta_p x phi1 grid");
}

CheckResult periodicity_and_mirror(const SystemParams& base, double tol) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> phase(0, 2 * kPi), det(-5, 5);
  double worst = 0;
  for (int n = 0; n < 200; ++n) {
    SystemParams p = base;
    p.phi1 = phase(rng);
    p.phi2 = phase(rng);
    const double dp = det(rng);
    const auto rec = intensity_ratios(p, dp);
    SystemParams shifted = p;
    shifted.phi1 += 2 * kPi;
    shifted.phi2 += 2 * kPi;
    worst = std::max(worst, max_intensity_gap(rec, intensity_ratios(shifted, dp)));
    SystemParams mirrored = p;
    mirrored.phi2 = -p.phi2;
    worst = std::max(worst, std::abs(rec.i_out_l - intensity_ratios(mirrored, dp).i_out_r));
  }
  return at_most("periodicity_mirror", worst, tol,
                 "2pi shifts of both phases; I_l(phi2) = I_r(-phi2)");
}

CheckResult channel_equality(SystemParams p, double tol) {
  double worst = 0;
  for (double phi2 : {0.0, kPi}) {
    p.phi2 = phi2;
    for (int i = 0; i < 41; ++i)
      for (int j = 0; j < 41; ++j) {
        p.phi1 = open_phase(j, 41);
        const auto rec = intensity_ratios(p, -5.0 + 10.0 * i / 40);
        worst = std::max(worst, std::abs(rec.i_out_r - rec.i_out_l));
      }
  }
  return at_most("channel_equality", worst, tol, "I_r = I_l at phi2 in {0, pi}");
}

CheckResult lossless_conservation(SystemParams p, double tol) {
  p.g_sqrt_n = 0;
  double worst = 0;
  for (int i = 0; i < 81; ++i)
    for (int j = 0; j < 64; ++j) {
      p.phi2 = open_phase(j, 64);
      const auto rec = intensity_ratios(p, -8.0 + 16.0 * i / 80);
      worst = std::max(worst, std::abs(rec.i_out_r + rec.i_out_l - 2));
    }
  return at_most("lossless_conservation", worst, tol, "g_n = 0: i_out_r + i_out_l = 2");
}

CheckResult passivity(const SystemParams& base, double tol) {
  SystemParams p = base;
  double worst = 0;
  for (int i = 0; i < 51; ++i)
    for (int j = 0; j < 24; ++j)
      for (int k = 0; k < 24; ++k) {
        p.phi1 = open_phase(j, 24);
        p.phi2 = open_phase(k, 24);
        const auto rec = intensity_ratios(p, -5.0 + 10.0 * i / 50);
        worst = std::max(worst, -rec.absorption);
      }
  return at_most("passivity", worst, tol, "largest negative absorption");
}

CheckResult oracle_equivalence(double tol) {
  std::mt19937_64 rng(20170724);
  std::uniform_real_distribution<double> rabi(0.1, 3), det(-5, 5), phase(0, 2 * kPi);
  std::uniform_real_distribution<double> log_dephasing(std::log(1e-4), std::log(1e-1));
  double worst = 0;
  for (int n = 0; n < 1000; ++n) {
    SystemParams p;
    p.g_sqrt_n = rabi(rng);
    p.omega1 = rabi(rng);
    p.omega2 = rabi(rng);
    p.omega_t = rabi(rng);
    p.gamma12 = std::exp(log_dephasing(rng));
    p.delta1 = det(rng);
    p.delta2 = det(rng);
    p.delta_t = det(rng);
    p.phi1 = phase(rng);
    const double dp = det(rng);
    const auto closed = susceptibility(p, dp);
    worst = std::max(worst, std::abs(chi_oracle(p, dp) - closed) / std::abs(closed));
  }
  return at_most("oracle_equivalence", worst, tol, "1000 random points, relative chi error");
}

CheckResult dynamics_agreement(SystemParams p, double tol) {
  p.phi1 = kPi / 2;
  double worst = 0;
  std::ostringstream detail;
  int unconverged = 0;
  for (double dp : {0.0, 2.0, 4.0})
    for (double phi2 : {0.0, kPi / 2, kPi}) {
      p.phi2 = phi2;
      const auto drive = weak_drive(p, dp);
      const auto ss = integrate_to_steady_state(p, drive);
      if (!ss.converged) ++unconverged;
      const auto marched = output_from_state(ss.state, drive, p);
      const auto closed = intensity_ratios(p, dp);
      for (auto [a, b] : {std::pair{marched.i_out_r, closed.i_out_r},
                          std::pair{marched.i_out_l, closed.i_out_l},
                          std::pair{marched.i_c, closed.i_c}})
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), kZeroFloor));
    }
  detail << "9 weak-drive points, phi1 = pi/2";
  if (unconverged) detail << ", " << unconverged << " not converged";
  auto res = at_most("dynamics_agreement", worst, tol, detail.str());
  res.passed = res.passed && unconverged == 0;
  return res;
}

CheckResult resonant_channel_symmetry(SystemParams p, double tol) {
  p.delta1 = p.delta2 = p.delta_t = p.delta_ac = 0;
  p.phi1 = kPi / 2;
  double worst = 0;
  for (int k = 0; k < 360; ++k) {
    p.phi2 = open_phase(k, 360);
    const auto rec = intensity_ratios(p, 0.0);
    worst = std::max(worst, std::abs(rec.i_out_r - rec.i_out_l));
  }
  return at_most("resonant_channel_symmetry", worst, tol,
                 "Delta_p = 0, phi1 = pi/2, resonant controls: I_r = I_l for all phi2");
}

// Figure-regime checks: default configuration only.

std::vector<double> total_over_phi2(double delta_p, int n) {
  SystemParams p;
  p.phi1 = kPi / 2;
  std::vector<double> totals;
  for (int k = 0; k < n; ++k) {
    p.phi2 = open_phase(k, n);
    totals.push_back(intensity_ratios(p, delta_p).i_total);
  }
  return totals;
}

CheckResult trapping(double tol) {
  SystemParams p;
  p.phi1 = kPi / 2;
  p.phi2 = 0;
  return at_most("fig4a_trapping", intensity_ratios(p, 0.0).i_total, tol,
                 "defaults, Delta_p = 0, phi1 = pi/2, phi2 = 0: total output");
}

CheckResult insensitivity(double tol) {
  const auto t = total_over_phi2(4.0, 720);
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  double mean = 0;
  for (double v : t) mean += v;
  mean /= t.size();
  return at_most("fig4c_insensitivity", (*hi - *lo) / mean, tol,
                 "(max - min) / mean of i_total over phi2 at Delta_p = 4");
}

CheckResult channel_split(double floor) {
  SystemParams p;
  p.phi2 = kPi / 2;
  double worst = 0;
  for (int k = 0; k < 360; ++k) {
    p.phi1 = open_phase(k, 360);
    const auto rec = intensity_ratios(p, 0.0);
    worst = std::max(worst, std::abs(rec.i_out_r - rec.i_out_l));
  }
  return {"fig5b_channel_split", worst, floor, worst > floor,
          "phi2 = pi/2: channels must be distinguishable"};
}

CheckResult pi_delay(double tol) {
  SystemParams p;
  p.phi1 = kPi / 2;
  double worst = 0;
  for (int k = 0; k < 720; ++k) {
    const double phi2 = open_phase(k, 720);
    p.phi2 = phi2;
    const double left = intensity_ratios(p, 4.0).i_out_l;
    p.phi2 = phi2 + kPi;
    const double right = intensity_ratios(p, 4.0).i_out_r;
    worst = std::max(worst, std::abs(left - right));
  }
  return at_most("fig4c_pi_delay", worst, tol, "max |I_l(phi2) - I_r(phi2 + pi)| at Delta_p = 4");
}

CheckResult determinism() {
  bool same = true;
  for (const char* id : {"fig3a", "fig3b", "fig3c"}) {
    const auto setup = figure_preset(id);
    std::ostringstream serial, parallel;
    write_csv(serial, run_sweep(setup, {1}));
    write_csv(parallel, run_sweep(setup, {4}));
    same = same && serial.str() == parallel.str();
  }
  return {"determinism", same ? 0.0 : 1.0, 0.0, same, "fig3a-c CSV, 1 vs 4 workers"};
}

template <class Fn>
CheckResult guarded(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, std::nan(""), 0, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

Tolerances Tolerances::scaled(double s) const {
  Tolerances t = *this;
  for (double* v : {&t.identity, &t.oracle, &t.dynamics, &t.passivity, &t.trapping,
                    &t.insensitivity, &t.pi_delay, &t.split_floor})
    *v *= s;
  return t;
}

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

ValidationReport validate_all(const SystemParams& params, const Tolerances& tol, int workers) {
  ValidationReport r;
  auto& c = r.checks;
  c.push_back(guarded("transmitter_reflector", [&] { return transmitter_reflector(params, tol.identity); }));
  c.push_back(guarded("phi1_evenness", [&] { return phi1_evenness(params, tol.identity, workers); }));
  c.push_back(guarded("periodicity_mirror", [&] { return periodicity_and_mirror(params, tol.identity); }));
  c.push_back(guarded("channel_equality", [&] { return channel_equality(params, tol.identity); }));
  c.push_back(guarded("lossless_conservation", [&] { return lossless_conservation(params, tol.identity); }));
  c.push_back(guarded("resonant_channel_symmetry", [&] { return resonant_channel_symmetry(params, tol.identity); }));
  c.push_back(guarded("passivity", [&] { return passivity(params, tol.passivity); }));
  c.push_back(guarded("oracle_equivalence", [&] { return oracle_equivalence(tol.oracle); }));
  c.push_back(guarded("dynamics_agreement", [&] { return dynamics_agreement(params, tol.dynamics); }));
  c.push_back(guarded("fig4a_trapping", [&] { return trapping(tol.trapping); }));
  c.push_back(guarded("fig4c_insensitivity", [&] { return insensitivity(tol.insensitivity); }));
  c.push_back(guarded("fig5b_channel_split", [&] { return channel_split(tol.split_floor); }));
  c.push_back(guarded("fig4c_pi_delay", [&] { return pi_delay(tol.pi_delay); }));
  c.push_back(guarded("determinism", [] { return determinism(); }));
  return r;
}

void print_report(std::ostream& out, const ValidationReport& report) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured=" << format_real(c.measured)
        << (c.name == "fig5b_channel_split" ? "  required>" : "  limit=")
        << format_real(c.threshold);
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const auto& c) { return !c.passed; });
  out << (failed ? "FAILED " : "OK ") << report.checks.size() - failed << "/"
      << report.checks.size() << " checks passed\n";
}

}  // namespace cavphase
