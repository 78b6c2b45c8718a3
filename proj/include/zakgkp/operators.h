// Copyright 2026 The zakgkp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZAKGKP_OPERATORS_H
#define ZAKGKP_OPERATORS_H

#include <span>

#include "zakgkp/zak_core.h"

namespace zakgkp {

/// How grid translations handle shifts that are not a whole number of cells.
enum class Interpolation {
    /// Throw OffGridError.
    none,
    /// Sample the quasi-periodic extension bilinearly.
    bilinear,
};

/// P^U(t): |u,v> -> exp(iut) |u,v>.
ModularWavefunction apply_phase_u(const ModularWavefunction &psi, double t);
IdealZakState apply_phase_u(const IdealZakState &state, double t);

/// P^V(t): |u,v> -> exp(ivt) |u,v>.
ModularWavefunction apply_phase_v(const ModularWavefunction &psi, double t);
IdealZakState apply_phase_v(const IdealZakState &state, double t);

/// T^U(t): |u,v> -> |u+t,v>, i.e. psi'(u,v) = psi(u-t,v) through the quasi-periodic extension.
///
/// Whole periods of t are applied as the analytic phase P^V(-[t]_a); the remainder must be a
/// multiple of du unless interpolation is requested.
ModularWavefunction apply_translate_u(
    const ModularWavefunction &psi, double t, Interpolation interpolation = Interpolation::none);
IdealZakState apply_translate_u(const IdealZakState &state, double t);

/// T^V(t): |u,v> -> |u,v+t>. Periodic in t with period 2pi/b.
ModularWavefunction apply_translate_v(
    const ModularWavefunction &psi, double t, Interpolation interpolation = Interpolation::none);
IdealZakState apply_translate_v(const IdealZakState &state, double t);

/// X(t) = T^U(t).
ModularWavefunction apply_X(const ModularWavefunction &psi, double t, Interpolation interpolation = Interpolation::none);
IdealZakState apply_X(const IdealZakState &state, double t);

/// Z(t) = P^U(t) T^V(t): |u,v> -> exp(iut) |u,v+t>.
ModularWavefunction apply_Z(const ModularWavefunction &psi, double t, Interpolation interpolation = Interpolation::none);
IdealZakState apply_Z(const IdealZakState &state, double t);

/// P^U(t) on kets |x,y> given at arbitrary (uncanonicalized) coordinates: the phase is
/// exp(i t {x}_a), after which the points are folded into `patch`.
IdealZakState apply_phase_u_unrestricted(std::span<const ZakPoint> raw, const ZakPatch &patch, double t);

/// Translations on a stretched patch; wrapping in u costs exp(-ibv) and the v-period is 2pi/b.
ModularWavefunction stretched_translate_u(
    const ModularWavefunction &psi, double t, Interpolation interpolation = Interpolation::none);
ModularWavefunction stretched_translate_v(
    const ModularWavefunction &psi, double t, Interpolation interpolation = Interpolation::none);

struct ModularExpectations {
    double u;
    double v;
};

/// <u> and <v> by quadrature. Throws NormalizationError if |norm - 1| exceeds `tolerance`.
ModularExpectations modular_expectations(const ModularWavefunction &psi, double tolerance = 1e-6);

struct ModularOperator {
    enum class Kind { P_U, P_V, T_U, T_V };

    Kind kind;
    double t;
    ZakPatch patch;

    ModularWavefunction apply(const ModularWavefunction &psi) const;
    IdealZakState apply(const IdealZakState &state) const;
};

struct QuadratureShift {
    enum class Kind { X, Z };

    Kind kind;
    double t;

    ModularWavefunction apply(const ModularWavefunction &psi) const;
    IdealZakState apply(const IdealZakState &state) const;
};

}  // namespace zakgkp

#endif
