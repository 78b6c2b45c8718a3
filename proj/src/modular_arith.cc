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

#include "zakgkp/modular_arith.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zakgkp {

CenteredDecomposition centered_decompose(double x, double period, double centering) {
    if (!(period > 0) || !std::isfinite(period)) {
        throw std::invalid_argument("period must be positive and finite, got " + std::to_string(period));
    }
    double k = std::floor((x + centering) / period);
    double whole = k * period;
    return {x - whole, whole, static_cast<int64_t>(k), period, centering};
}

double frac_part(double x, double period, double centering) {
    return centered_decompose(x, period, centering).frac;
}

double closest_int_multiple(double x, double period, double centering) {
    return centered_decompose(x, period, centering).whole;
}

CanonicalZakPoint canonicalize_zak_point(
    double x, double y, double a, double b, double u_centering, double v_centering) {
    if (!(b > 0)) {
        throw std::invalid_argument("b must be positive");
    }
    auto du = centered_decompose(x, a, u_centering);
    auto dv = centered_decompose(y, 2 * std::numbers::pi / b, v_centering);
    double angle = -static_cast<double>(du.multiple) * b * dv.frac;
    return {du.frac, dv.frac, std::polar(1.0, angle), du.multiple};
}

CanonicalZakPoint canonicalize_zak_point(double x, double y, double a) {
    if (!(a > 0)) {
        throw std::invalid_argument("a must be positive");
    }
    return canonicalize_zak_point(x, y, a, a, a / 4, std::numbers::pi / a);
}

}  // namespace zakgkp
