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

#ifndef ZAKGKP_MODULAR_ARITH_H
#define ZAKGKP_MODULAR_ARITH_H

#include <complex>
#include <cstdint>

namespace zakgkp {

/// x = frac + whole, with frac in [-centering, period - centering) and whole = multiple * period.
struct CenteredDecomposition {
    double frac;
    double whole;
    int64_t multiple;
    double period;
    double centering;
};

/// Splits x into its centered fractional part and closest integer multiple of `period`.
///
/// The boundary is half-open on the right and is decided by a single floor, with no tolerance:
/// frac = x - period * floor((x + centering) / period). Throws std::invalid_argument if period <= 0.
CenteredDecomposition centered_decompose(double x, double period, double centering);

double frac_part(double x, double period, double centering);
double closest_int_multiple(double x, double period, double centering);

/// A Zak point reduced into the fundamental patch, with the phase picked up by the ket on the way:
/// |x, y> = phase * |u, v>.
struct CanonicalZakPoint {
    double u;
    double v;
    std::complex<double> phase;
    /// Number of whole u-periods removed (x = u + u_wraps * a).
    int64_t u_wraps;
};

/// Standard patch [-a/4, 3a/4) x [-pi/a, pi/a); phase exp(-i [x]_a {y}_{2pi/a}).
CanonicalZakPoint canonicalize_zak_point(double x, double y, double a);

/// Stretched patch with u-period a and v-period 2pi/b, arbitrary centerings.
/// Each whole u-period contributes exp(-i b v) to the phase.
CanonicalZakPoint canonicalize_zak_point(
    double x, double y, double a, double b, double u_centering, double v_centering);

}  // namespace zakgkp

#endif
