#pragma once

#include <cmath>
#include <string>

#include "cavphase/errors.hpp"

namespace cavphase {

// One physical configuration of the atom-cavity system. Every rate, Rabi
// frequency and detuning is in units of the excited-state decay rate Gamma;
// phases are radians and are kept unreduced.
//
// Cavity loss is split evenly between the mirrors (kappa_l = kappa_r =
// kappa / 2). The probe detuning is not part of the configuration; it is the
// free variable of every evaluation.
template <class Scalar>
struct BasicSystemParams {
  Scalar g_sqrt_n = 1;  // collective coupling g*sqrt(N)
  Scalar omega1 = 1;
  Scalar omega2 = 1;
  Scalar omega_t = 1;
  Scalar kappa = 1;
  Scalar gamma3 = 1;
  Scalar gamma4 = 1;
  Scalar gamma12 = Scalar(0.001);
  Scalar delta1 = 0;
  Scalar delta2 = 0;
  Scalar delta_t = 0;
  Scalar delta_ac = 0;  // cavity-atom detuning; Delta_c = Delta_p - delta_ac
  Scalar phi1 = 0;      // closed-loop phase
  Scalar phi2 = 0;      // left-minus-right input phase

  // Returns the same configuration in another scalar type.
  template <class Other>
  BasicSystemParams<Other> cast() const {
    BasicSystemParams<Other> o;
    o.g_sqrt_n = Other(g_sqrt_n);
    o.omega1 = Other(omega1);
    o.omega2 = Other(omega2);
    o.omega_t = Other(omega_t);
    o.kappa = Other(kappa);
    o.gamma3 = Other(gamma3);
    o.gamma4 = Other(gamma4);
    o.gamma12 = Other(gamma12);
    o.delta1 = Other(delta1);
    o.delta2 = Other(delta2);
    o.delta_t = Other(delta_t);
    o.delta_ac = Other(delta_ac);
    o.phi1 = Other(phi1);
    o.phi2 = Other(phi2);
    return o;
  }
};

using SystemParams = BasicSystemParams<double>;

// Throws ValidationError naming the first offending field.
template <class Scalar>
void validate(const BasicSystemParams<Scalar>& p) {
  using std::isfinite;
  auto finite = [](const char* name, Scalar v) {
    if (!isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
  };
  auto non_negative = [&](const char* name, Scalar v) {
    finite(name, v);
    if (v < 0) throw ValidationError(std::string(name) + " must be >= 0");
  };
  auto positive = [&](const char* name, Scalar v) {
    finite(name, v);
    if (!(v > 0)) throw ValidationError(std::string(name) + " must be > 0");
  };
  non_negative("g_n", p.g_sqrt_n);
  non_negative("omega1", p.omega1);
  non_negative("omega2", p.omega2);
  non_negative("omega_t", p.omega_t);
  positive("kappa", p.kappa);
  positive("gamma3", p.gamma3);
  positive("gamma4", p.gamma4);
  positive("gamma12", p.gamma12);
  finite("delta1", p.delta1);
  finite("delta2", p.delta2);
  finite("delta_t", p.delta_t);
  finite("delta_ac", p.delta_ac);
  finite("phi1", p.phi1);
  finite("phi2", p.phi2);
}

}  // namespace cavphase
