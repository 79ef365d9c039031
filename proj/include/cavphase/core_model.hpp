#pragma once

#include <algorithm>
#include <complex>
#include <limits>

#include "cavphase/errors.hpp"
#include "cavphase/params.hpp"

namespace cavphase {

template <class Scalar>
using ComplexAmp = std::complex<Scalar>;

enum class PointFlag { ok, near_singular };

// Observables at one (Delta_p, phi1, phi2) point. Intensities are ratios to
// the single-beam input intensity.
template <class Scalar>
struct BasicIntensityRecord {
  Scalar delta_p = 0;
  Scalar phi1 = 0;
  Scalar phi2 = 0;
  Scalar i_c = 0;
  Scalar i_out_r = 0;
  Scalar i_out_l = 0;
  Scalar i_total = 0;
  Scalar absorption = 0;
  ComplexAmp<Scalar> chi{};
  PointFlag flag = PointFlag::ok;
};

using IntensityRecord = BasicIntensityRecord<double>;

template <class Scalar>
struct Coefficients {
  ComplexAmp<Scalar> a, b, c;
};

// Relative threshold below which closed-form denominators are rejected.
inline constexpr double kSingularGuard = 1e-12;

/// Detuning/decay coefficients of the weak-probe coherences:
/// A (ground-state coherence), B (|1>-|4>), C (|1>-|3>, probe transition).
template <class Scalar>
Coefficients<Scalar> coefficients_abc(const BasicSystemParams<Scalar>& p, Scalar delta_p) {
  const Scalar two_photon = delta_p - p.delta1;
  return {ComplexAmp<Scalar>(two_photon, p.gamma12),
          ComplexAmp<Scalar>(two_photon + p.delta2, p.gamma4),
          ComplexAmp<Scalar>(two_photon + p.delta2 - p.delta_t, p.gamma3)};
}

/// Closed-form susceptibility of the closed-loop medium, in units of Gamma.
/// Depends on phi1 only through cos(phi1). Im(chi) > 0 is absorption.
template <class Scalar>
ComplexAmp<Scalar> susceptibility(const BasicSystemParams<Scalar>& p, Scalar delta_p) {
  using std::abs;
  using std::cos;
  const auto [a, b, c] = coefficients_abc(p, delta_p);
  const Scalar o1 = p.omega1, o2 = p.omega2, ot = p.omega_t;

  const ComplexAmp<Scalar> den = Scalar(2) * o1 * o2 * ot * cos(p.phi1) - a * (ot * ot) -
                                 b * (o1 * o1) - c * (o2 * o2) + a * b * c;
  const Scalar scale = std::max(Scalar(1), o1 * o2 * ot);
  if (!(abs(den) >= Scalar(kSingularGuard) * scale))
    throw NearSingular("susceptibility denominator vanishes");

  const Scalar g2n = p.g_sqrt_n * p.g_sqrt_n;
  return g2n * (o2 * o2 - a * b) / den;
}

/// r = kappa / (kappa - i Delta_c - i chi). The intracavity ratio is
/// |r (1 + e^{i phi2})|^2.
template <class Scalar>
ComplexAmp<Scalar> cavity_response(const BasicSystemParams<Scalar>& p, Scalar delta_p,
                                   ComplexAmp<Scalar> chi) {
  using std::abs;
  const ComplexAmp<Scalar> i(0, 1);
  const Scalar delta_c = delta_p - p.delta_ac;
  const ComplexAmp<Scalar> den = p.kappa - i * delta_c - i * chi;
  if (!(abs(den) >= Scalar(kSingularGuard) * p.kappa))
    throw NearSingular("cavity pole: kappa - i*Delta_c - i*chi vanishes");
  return p.kappa / den;
}

template <class Scalar>
ComplexAmp<Scalar> cavity_response(const BasicSystemParams<Scalar>& p, Scalar delta_p) {
  return cavity_response(p, delta_p, susceptibility(p, delta_p));
}

/// Intensity ratios for a given cavity response. Shared by the closed form
/// and anything else that produces r.
template <class Scalar>
BasicIntensityRecord<Scalar> intensities_from_response(ComplexAmp<Scalar> r, Scalar phi2) {
  using std::norm;
  const ComplexAmp<Scalar> e = std::polar(Scalar(1), phi2);
  const ComplexAmp<Scalar> field = r * (Scalar(1) + e);
  BasicIntensityRecord<Scalar> rec;
  rec.phi2 = phi2;
  rec.i_c = norm(field);
  rec.i_out_r = norm(field - Scalar(1));
  rec.i_out_l = norm(r * (Scalar(1) + std::conj(e)) - Scalar(1));
  rec.i_total = rec.i_out_r + rec.i_out_l;
  rec.absorption = Scalar(1) - rec.i_total / Scalar(2);
  return rec;
}

/// Evaluates every observable at one probe detuning. Throws NearSingular.
template <class Scalar>
BasicIntensityRecord<Scalar> intensity_ratios(const BasicSystemParams<Scalar>& p,
                                              Scalar delta_p) {
  const ComplexAmp<Scalar> chi = susceptibility(p, delta_p);
  auto rec = intensities_from_response(cavity_response(p, delta_p, chi), p.phi2);
  rec.delta_p = delta_p;
  rec.phi1 = p.phi1;
  rec.chi = chi;
  return rec;
}

// Passivity tolerance for absorption_of.
inline constexpr double kPassivitySlack = 1e-9;

template <class Scalar>
Scalar absorption_of(const BasicIntensityRecord<Scalar>& rec) {
  const Scalar value = Scalar(1) - rec.i_total / Scalar(2);
  if (value < -Scalar(kPassivitySlack))
    throw PassivityViolation("total output exceeds total input");
  return value;
}

}  // namespace cavphase
