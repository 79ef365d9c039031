#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "cavphase/core_model.hpp"
#include "cavphase/errors.hpp"
#include "cavphase/params.hpp"

namespace cavphase {

// Mean-field state of the atom-cavity system: the 4x4 atomic density matrix
// (levels |1>..|4> at indices 0..3) and the intracavity amplitude alpha.
// Also used to hold time derivatives.
template <class Scalar>
struct BlochState {
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, 4, 4>;

  Matrix rho = Matrix::Zero();
  Complex alpha{};

  static BlochState ground() {
    BlochState s;
    s.rho(0, 0) = Scalar(1);
    return s;
  }

  Complex trace() const { return rho.trace(); }

  Scalar hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

  // Largest modulus over every density-matrix entry and alpha.
  Scalar max_abs() const { return std::max(rho.cwiseAbs().maxCoeff(), std::abs(alpha)); }

  BlochState& operator+=(const BlochState& o) {
    rho += o.rho;
    alpha += o.alpha;
    return *this;
  }
  friend BlochState operator+(BlochState a, const BlochState& b) { return a += b; }
  friend BlochState operator*(Scalar k, BlochState s) {
    s.rho *= k;
    s.alpha *= k;
    return s;
  }
};

// Probe drive and the split of the collective coupling into g and N.
// The collective coupling seen by the field is g*N; the single-atom g enters
// the coherence equations.
template <class Scalar>
struct BasicDriveConfig {
  Scalar alpha_in_mag = 0;  // |alpha_in|, equal on both mirrors
  Scalar g_single = 0;
  Scalar n_atoms = 1;
  Scalar delta_p = 0;
};

using DriveConfig = BasicDriveConfig<double>;

template <class Scalar>
void validate(const BasicDriveConfig<Scalar>& d, const BasicSystemParams<Scalar>& p) {
  using std::abs;
  using std::sqrt;
  if (!(d.alpha_in_mag >= 0) || !(d.g_single >= 0) || !(d.n_atoms > 0))
    throw ValidationError("drive: alpha_in_mag, g_single must be >= 0 and n_atoms > 0");
  if (!(abs(d.g_single * sqrt(d.n_atoms) - p.g_sqrt_n) <= Scalar(1e-12)))
    throw ValidationError("drive: g_single*sqrt(n_atoms) must equal g_n");
}

/// Weak-probe drive: N = 1e6, g = g_n / 1e3, and |alpha_in| small enough that
/// the steady-state |g alpha| stays below 1e-3 Gamma for any passive medium.
/// `strength` scales |alpha_in| relative to that bound.
template <class Scalar>
BasicDriveConfig<Scalar> weak_drive(const BasicSystemParams<Scalar>& p, Scalar delta_p,
                                    Scalar strength = 1) {
  using std::sqrt;
  BasicDriveConfig<Scalar> d;
  d.n_atoms = Scalar(1e6);
  d.g_single = p.g_sqrt_n / Scalar(1e3);
  d.delta_p = delta_p;
  // |alpha| <= 2 |alpha_in| / sqrt(kappa) whenever Im(chi) >= 0.
  const Scalar g = d.g_single > 0 ? d.g_single : Scalar(1e-3);
  d.alpha_in_mag = strength * Scalar(1e-3) * sqrt(p.kappa) / (Scalar(2) * g);
  return d;
}

// Dephasing rates of the optical coherences. gamma13 = Gamma3 and
// gamma14 = Gamma4 are what the closed-form coefficients C and B require.
template <class Scalar>
struct CoherenceRates {
  Scalar g13, g14, g23, g24, g34;
  explicit CoherenceRates(const BasicSystemParams<Scalar>& p)
      : g13(p.gamma3),
        g14(p.gamma4),
        g23(p.gamma3),
        g24(p.gamma4),
        g34(std::sqrt(p.gamma3 * p.gamma4)) {}
};

/// Time derivative of the mean-field state. The upper-triangle coherences and
/// populations follow the printed equations of motion; the lower triangle is
/// filled with conjugates, so the derivative is Hermitian by construction.
template <class Scalar>
BlochState<Scalar> eom_rhs(const BlochState<Scalar>& s, const BasicSystemParams<Scalar>& p,
                           const BasicDriveConfig<Scalar>& d) {
  using Complex = std::complex<Scalar>;
  const Complex i(0, 1);
  const auto& r = s.rho;
  auto R = [&r](int m, int n) { return r(m - 1, n - 1); };

  const CoherenceRates<Scalar> gam(p);
  const Complex e = std::polar(Scalar(1), p.phi1);
  const Complex ec = std::conj(e);
  const Complex ga = d.g_single * s.alpha;
  const Complex gac = std::conj(ga);
  const Scalar o1 = p.omega1, o2 = p.omega2, ot = p.omega_t;
  const Scalar dp = d.delta_p;
  const Scalar half3 = p.gamma3 / 2, half4 = p.gamma4 / 2;

  BlochState<Scalar> out;
  auto& dr = out.rho;
  dr(0, 0) = i * (gac * R(1, 3) - ga * R(3, 1)) + half3 * R(3, 3) + half4 * R(4, 4);
  dr(0, 1) = (i * (dp - p.delta1) - p.gamma12) * R(1, 2) - i * ga * R(3, 2) + i * o1 * R(1, 3) +
             i * o2 * R(1, 4);
  dr(0, 2) = (i * (dp - p.delta1 + p.delta2 - p.delta_t) - gam.g13) * R(1, 3) +
             i * ga * (R(1, 1) - R(3, 3)) + i * o1 * R(1, 2) + i * ot * R(1, 4) * e;
  dr(0, 3) = (i * (dp - p.delta1 + p.delta2) - gam.g14) * R(1, 4) - i * ga * R(3, 4) * ec +
             i * o2 * R(1, 2) + i * ot * R(1, 3) * ec;
  dr(1, 1) = i * o1 * (R(2, 3) - R(3, 2)) + i * o2 * (R(2, 4) - R(4, 2)) + half3 * R(3, 3) +
             half4 * R(4, 4);
  dr(1, 2) = (i * (p.delta2 - p.delta_t) - gam.g23) * R(2, 3) + i * ga * R(2, 1) +
             i * o1 * (R(2, 2) - R(3, 3)) - i * o2 * R(4, 3) * e + i * ot * R(2, 4) * e;
  dr(1, 3) = (i * p.delta2 - gam.g24) * R(2, 4) - i * o1 * R(3, 4) * ec +
             i * o2 * (R(2, 2) - R(4, 4)) + i * ot * R(2, 3) * ec;
  dr(2, 2) = i * (ga * R(3, 1) - gac * R(1, 3)) + i * o1 * (R(3, 2) - R(2, 3)) +
             i * ot * (R(3, 4) - R(4, 3)) - p.gamma3 * R(3, 3);
  dr(2, 3) = (i * p.delta_t - gam.g34) * R(3, 4) - i * gac * R(1, 4) * e - i * o1 * R(2, 4) * e +
             i * o2 * R(3, 2) * e + i * ot * (R(3, 3) - R(4, 4));
  dr(3, 3) = i * o2 * (R(4, 2) - R(2, 4)) + i * ot * (R(4, 3) - R(3, 4)) - p.gamma4 * R(4, 4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < m; ++n) dr(m, n) = std::conj(dr(n, m));

  // kappa_l = kappa_r = kappa / 2 and tau = 1, so sqrt(2 kappa_i / tau) = sqrt(kappa).
  const Scalar in_rate = std::sqrt(p.kappa);
  const Complex in_l = std::polar(d.alpha_in_mag, p.phi2);
  const Complex in_r = d.alpha_in_mag;
  const Scalar delta_c = dp - p.delta_ac;
  out.alpha = i * delta_c * s.alpha + i * (d.g_single * d.n_atoms) * R(1, 3) -
              p.kappa * s.alpha + in_rate * (in_l + in_r);
  return out;
}

template <class Scalar>
struct ProbeCoherences {
  std::complex<Scalar> rho12, rho13, rho14;
};

/// Weak-probe steady state of the |1>-|k> coherences with all population in
/// |1>: solves M (rho12, rho13, rho14) = (0, -g alpha, 0) by LU.
template <class Scalar>
ProbeCoherences<Scalar> linear_response_coherences(const BasicSystemParams<Scalar>& p,
                                                   const BasicDriveConfig<Scalar>& d,
                                                   std::complex<Scalar> alpha) {
  using Complex = std::complex<Scalar>;
  using Mat3 = Eigen::Matrix<Complex, 3, 3>;
  using Vec3 = Eigen::Matrix<Complex, 3, 1>;

  const auto [a, b, c] = coefficients_abc(p, d.delta_p);
  const Complex e = std::polar(Scalar(1), p.phi1);
  const Scalar o1 = p.omega1, o2 = p.omega2, ot = p.omega_t;

  Mat3 m;
  m << a, o1, o2,
       o1, c, ot * e,
       o2, ot * std::conj(e), b;
  Vec3 rhs(Complex(0), -d.g_single * alpha, Complex(0));

  const Eigen::FullPivLU<Mat3> lu(m);
  const Scalar scale = std::max(Scalar(1), o1 * o2 * ot);
  if (!(std::abs(lu.determinant()) >= Scalar(kSingularGuard) * scale))
    throw NearSingular("weak-probe coherence system is singular");
  const Vec3 x = lu.solve(rhs);
  return {x(0), x(1), x(2)};
}

/// Susceptibility from the linear-response solve: chi = g N rho13 / alpha
/// with alpha = 1. Never touches the closed-form expression.
template <class Scalar>
std::complex<Scalar> chi_oracle(const BasicSystemParams<Scalar>& p, Scalar delta_p) {
  BasicDriveConfig<Scalar> d;
  d.g_single = p.g_sqrt_n;
  d.n_atoms = 1;
  d.delta_p = delta_p;
  const std::complex<Scalar> alpha(1);
  const auto coh = linear_response_coherences(p, d, alpha);
  return d.g_single * d.n_atoms * coh.rho13 / alpha;
}

template <class Scalar>
struct IntegratorOptions {
  Scalar dt = Scalar(0.01);
  Scalar residual_tol = Scalar(1e-12);
  Scalar trace_tol = Scalar(1e-8);
  // <= 0 means 10 * max(1/gamma12, 1/kappa, 1/Gamma) * 100.
  Scalar max_time = 0;
};

template <class Scalar>
struct SteadyState {
  BlochState<Scalar> state;
  bool converged = false;
  Scalar residual = 0;  // max |d/dt| over all components at `state`
  Scalar time = 0;
  long steps = 0;
};

/// Thrown by require_converged(); carries the best state found.
template <class Scalar>
struct NotConverged : Error {
  SteadyState<Scalar> best;
  explicit NotConverged(SteadyState<Scalar> b)
      : Error("time march did not reach steady state"), best(std::move(b)) {}
};

/// Marches the equations of motion with classical RK4 from the optically
/// pumped state (rho = |1><1|, alpha = 0) until the largest derivative
/// component drops below the residual tolerance. Returns the state with the
/// smallest residual seen if the time limit is hit. Throws NonPhysical if
/// the trace drifts or a population goes negative.
template <class Scalar>
SteadyState<Scalar> integrate_to_steady_state(const BasicSystemParams<Scalar>& p,
                                              const BasicDriveConfig<Scalar>& d,
                                              IntegratorOptions<Scalar> opt = {}) {
  using std::abs;
  validate(p);
  validate(d, p);
  Scalar horizon = opt.max_time;
  if (!(horizon > 0)) {
    const Scalar slowest = std::max({Scalar(1) / p.gamma12, Scalar(1) / p.kappa,
                                     Scalar(1) / std::min(p.gamma3, p.gamma4)});
    horizon = Scalar(10) * slowest * Scalar(100);
  }

  const Scalar h = opt.dt;
  BlochState<Scalar> s = BlochState<Scalar>::ground();
  SteadyState<Scalar> best{s, false, std::numeric_limits<Scalar>::infinity(), 0, 0};
  Scalar t = 0;
  long steps = 0;

  for (;;) {
    const BlochState<Scalar> k1 = eom_rhs(s, p, d);
    const Scalar residual = k1.max_abs();
    if (residual < best.residual) best = {s, false, residual, t, steps};
    if (residual < opt.residual_tol) {
      best.converged = true;
      return best;
    }
    if (t >= horizon) return best;

    const BlochState<Scalar> k2 = eom_rhs(s + (h / 2) * k1, p, d);
    const BlochState<Scalar> k3 = eom_rhs(s + (h / 2) * k2, p, d);
    const BlochState<Scalar> k4 = eom_rhs(s + h * k3, p, d);
    s += (h / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
    t += h;
    ++steps;

    if (abs(s.trace() - Scalar(1)) > opt.trace_tol)
      throw NonPhysical("density-matrix trace drifted from 1");
    if (s.rho.diagonal().real().minCoeff() < Scalar(-1e-10))
      throw NonPhysical("negative population");
  }
}

template <class Scalar>
const SteadyState<Scalar>& require_converged(const SteadyState<Scalar>& ss) {
  if (!ss.converged) throw NotConverged<Scalar>(ss);
  return ss;
}

/// Output ratios from the input-output relation a_out + a_in = sqrt(2 kappa_i tau) a
/// on each mirror, with inputs |alpha_in| e^{i phi2} (left) and |alpha_in| (right).
/// The intracavity ratio is kappa |alpha|^2 / |alpha_in|^2, which is the
/// normalization of the closed-form I_c.
template <class Scalar>
BasicIntensityRecord<Scalar> output_from_state(const BlochState<Scalar>& s,
                                               const BasicDriveConfig<Scalar>& d,
                                               const BasicSystemParams<Scalar>& p) {
  using std::norm;
  if (!(d.alpha_in_mag > 0)) throw ValidationError("drive: alpha_in_mag must be > 0");
  const Scalar mirror = std::sqrt(p.kappa);  // sqrt(2 (kappa/2) tau), tau = 1
  const std::complex<Scalar> in_l = std::polar(d.alpha_in_mag, p.phi2);
  const std::complex<Scalar> in_r = d.alpha_in_mag;
  const Scalar in_intensity = d.alpha_in_mag * d.alpha_in_mag;

  BasicIntensityRecord<Scalar> rec;
  rec.delta_p = d.delta_p;
  rec.phi1 = p.phi1;
  rec.phi2 = p.phi2;
  rec.i_c = p.kappa * norm(s.alpha) / in_intensity;
  rec.i_out_l = norm(mirror * s.alpha - in_l) / in_intensity;
  rec.i_out_r = norm(mirror * s.alpha - in_r) / in_intensity;
  rec.i_total = rec.i_out_r + rec.i_out_l;
  rec.absorption = Scalar(1) - rec.i_total / Scalar(2);
  rec.chi = chi_oracle(p, d.delta_p);
  return rec;
}

}  // namespace cavphase
