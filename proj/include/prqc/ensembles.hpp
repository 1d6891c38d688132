// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "prqc/rng.hpp"
#include "prqc/statevector.hpp"

namespace prqc {

/// Global phase convention: Z(theta) = diag(1, e^{-i theta}). This is the
/// convention fixed by the cluster measurement basis
/// {(|0> + e^{i theta}|1>)/sqrt(2), (|0> - e^{i theta}|1>)/sqrt(2)}: a
/// teleportation step with angle theta and outcome m realizes exactly
/// H Z(theta + m pi), with no leftover phase.
SingleQubitGate make_hadamard();
SingleQubitGate make_z_rotation(double theta);
/// X(theta) = H Z(theta) H.
SingleQubitGate make_x_rotation(double theta);
/// hz(theta) = H * Z(theta); hz(0) is the Hadamard.
SingleQubitGate make_hz(double theta);

/// Haar-distributed SU(2) element via a normalized Gaussian quaternion.
SingleQubitGate sample_haar_su2(Rng& rng);

/// Family of random single-qubit gates drawn each iteration.
///   haar:      Haar-random SU(2);
///   hz:        H Z(alpha), alpha uniform in [0, 2 pi);
///   z_rotation: Z(alpha), alpha uniform in [0, 2 pi);
///   mixture(c): with probability c a z_rotation draw, else an hz draw.
struct GateEnsemble {
  enum class Kind { haar, hz, z_rotation, mixture };

  Kind kind = Kind::haar;
  double c = 0.0;  // mixture weight; meaningful only for Kind::mixture

  static GateEnsemble haar();
  static GateEnsemble hz();
  static GateEnsemble z_rotation();
  static GateEnsemble mixture(double c);

  /// The single-site second-moment parameter: the probability that a z
  /// letter stays z under one averaged gate. haar -> 1/3, hz -> 0,
  /// z_rotation -> 1, mixture(c) -> c.
  double stay_probability() const;

  std::string name() const;
};

GateEnsemble ensemble_from_name(const std::string& name, double c = 0.0);

SingleQubitGate sample_from_ensemble(const GateEnsemble& e, Rng& rng);

/// Euler angles for the wire-gate form HZ(alpha) X(beta) Z(gamma).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

SingleQubitGate euler_gate(const EulerAngles& angles);

/// Decomposition of any 2x2 unitary as HZ(alpha) X(beta) Z(gamma) up to
/// global phase; beta in [0, pi], alpha and gamma in [0, 2 pi).
EulerAngles euler_from_gate(const SingleQubitGate& g);

/// Angles whose euler_gate is Haar distributed (the pushforward of the
/// Haar measure through euler_from_gate). Note that independently uniform
/// angles do NOT give Haar: their averaged second moment has z-survival
/// 1/4 instead of 1/3.
EulerAngles haar_euler_angles(Rng& rng);

/// Distance 1 - |tr(a^dagger b)| / 2: zero iff equal up to global phase.
double phase_insensitive_distance(const SingleQubitGate& a,
                                  const SingleQubitGate& b);

}  // namespace prqc
