// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#include "prqc/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prqc {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

}  // namespace

SingleQubitGate make_hadamard() {
  return {{cplx(kSqrtHalf, 0), cplx(kSqrtHalf, 0), cplx(kSqrtHalf, 0),
           cplx(-kSqrtHalf, 0)}};
}

SingleQubitGate make_z_rotation(double theta) {
  return {{cplx(1, 0), cplx(0, 0), cplx(0, 0), std::polar(1.0, -theta)}};
}

SingleQubitGate make_x_rotation(double theta) {
  SingleQubitGate h = make_hadamard();
  return h.compose(make_z_rotation(theta)).compose(h);
}

SingleQubitGate make_hz(double theta) {
  return make_hadamard().compose(make_z_rotation(theta));
}

SingleQubitGate sample_haar_su2(Rng& rng) {
  double a, b, c, d, norm_sq;
  do {
    a = standard_normal(rng);
    b = standard_normal(rng);
    c = standard_normal(rng);
    d = standard_normal(rng);
    norm_sq = a * a + b * b + c * c + d * d;
  } while (norm_sq < 1e-12);
  const double inv = 1.0 / std::sqrt(norm_sq);
  a *= inv;
  b *= inv;
  c *= inv;
  d *= inv;
  // Unit quaternion a + b i + c j + d k as an SU(2) matrix.
  return {{cplx(a, b), cplx(c, d), cplx(-c, d), cplx(a, -b)}};
}

GateEnsemble GateEnsemble::haar() { return {Kind::haar, 1.0 / 3.0}; }
GateEnsemble GateEnsemble::hz() { return {Kind::hz, 0.0}; }
GateEnsemble GateEnsemble::z_rotation() { return {Kind::z_rotation, 1.0}; }

GateEnsemble GateEnsemble::mixture(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("mixture weight must lie in [0, 1]");
  }
  return {Kind::mixture, c};
}

double GateEnsemble::stay_probability() const {
  switch (kind) {
    case Kind::haar: return 1.0 / 3.0;
    case Kind::hz: return 0.0;
    case Kind::z_rotation: return 1.0;
    case Kind::mixture: return c;
  }
  throw std::invalid_argument("invalid GateEnsemble::Kind");
}

std::string GateEnsemble::name() const {
  switch (kind) {
    case Kind::haar: return "haar";
    case Kind::hz: return "hz";
    case Kind::z_rotation: return "zrot";
    case Kind::mixture: return "mixture";
  }
  throw std::invalid_argument("invalid GateEnsemble::Kind");
}

GateEnsemble ensemble_from_name(const std::string& name, double c) {
  if (name == "haar") return GateEnsemble::haar();
  if (name == "hz") return GateEnsemble::hz();
  if (name == "zrot" || name == "z_rotation") return GateEnsemble::z_rotation();
  if (name == "mixture") return GateEnsemble::mixture(c);
  throw std::invalid_argument("unknown ensemble '" + name + "'");
}

SingleQubitGate sample_from_ensemble(const GateEnsemble& e, Rng& rng) {
  switch (e.kind) {
    case GateEnsemble::Kind::haar:
      return sample_haar_su2(rng);
    case GateEnsemble::Kind::hz:
      return make_hz(uniform_angle(rng));
    case GateEnsemble::Kind::z_rotation:
      return make_z_rotation(uniform_angle(rng));
    case GateEnsemble::Kind::mixture: {
      // Draw the branch first, then the angle, so the stream layout is
      // fixed regardless of branch.
      const bool take_z = bernoulli(rng, e.c);
      const double angle = uniform_angle(rng);
      return take_z ? make_z_rotation(angle) : make_hz(angle);
    }
  }
  throw std::invalid_argument("invalid GateEnsemble::Kind");
}

SingleQubitGate euler_gate(const EulerAngles& angles) {
  return make_hz(angles.alpha)
      .compose(make_x_rotation(angles.beta))
      .compose(make_z_rotation(angles.gamma));
}

EulerAngles euler_from_gate(const SingleQubitGate& g) {
  if (!g.is_unitary(1e-9)) {
    throw std::invalid_argument("euler_from_gate: matrix is not unitary");
  }
  // Write g = H V with V = Z(alpha) X(beta) Z(gamma); extract from V = H g.
  const SingleQubitGate v = make_hadamard().compose(g);
  const cplx v00 = v.u[0], v01 = v.u[1], v10 = v.u[2];
  const double m00 = std::abs(v00);
  const double m01 = std::abs(v01);
  EulerAngles out;
  out.beta = 2.0 * std::atan2(m01, m00);
  constexpr double kEdge = 1e-12;
  if (m01 <= kEdge * (m00 + m01 + kEdge)) {
    // Diagonal V = Z(alpha + gamma) up to phase; fix gamma = 0.
    out.beta = 0.0;
    out.alpha = wrap_angle(-std::arg(v.u[3] / v00));
    out.gamma = 0.0;
  } else if (m00 <= kEdge * (m00 + m01 + kEdge)) {
    // Antidiagonal: Z(alpha) X(pi) Z(gamma) = [[0, e^{-i gamma}],
    // [e^{-i alpha}, 0]] up to phase; fix gamma = 0.
    out.beta = std::numbers::pi;
    out.alpha = wrap_angle(std::arg(v01 / v10));
    out.gamma = 0.0;
  } else {
    // Generic case: V01/V00 = i tan(beta/2) e^{-i gamma},
    //               V10/V00 = i tan(beta/2) e^{-i alpha}.
    out.gamma = wrap_angle(std::numbers::pi / 2.0 - std::arg(v01 / v00));
    out.alpha = wrap_angle(std::numbers::pi / 2.0 - std::arg(v10 / v00));
  }
  return out;
}

EulerAngles haar_euler_angles(Rng& rng) {
  return euler_from_gate(sample_haar_su2(rng));
}

double phase_insensitive_distance(const SingleQubitGate& a,
                                  const SingleQubitGate& b) {
  const SingleQubitGate p = a.adjoint().compose(b);
  return 1.0 - 0.5 * std::abs(p.u[0] + p.u[3]);
}

}  // namespace prqc
