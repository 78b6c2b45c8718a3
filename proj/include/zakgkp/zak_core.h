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

#ifndef ZAKGKP_ZAK_CORE_H
#define ZAKGKP_ZAK_CORE_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "zakgkp/modular_arith.h"

namespace zakgkp {

using cd = std::complex<double>;

/// Fundamental domain [u_min, u_min + a) x [v_min, v_min + 2pi/b).
///
/// The standard patch has b = a (area 2pi); a stretched patch has independent b (area 2pi a/b).
/// Wavefunctions on the patch extend as psi(u + a, v) = exp(i b v) psi(u, v) and
/// psi(u, v + 2pi/b) = psi(u, v).
struct ZakPatch {
    double a;
    double b;
    double u_min;
    double v_min;

    /// [-a/4, 3a/4) x [-pi/a, pi/a).
    static ZakPatch standard(double a);
    /// [-a/4, 3a/4) x [-pi/b, pi/b).
    static ZakPatch stretched(double a, double b);

    double u_period() const {
        return a;
    }
    double v_period() const;
    double area() const;
    bool is_standard() const {
        return a == b;
    }
    bool contains(double u, double v) const;
    CanonicalZakPoint canonicalize(double x, double y) const;

    bool operator==(const ZakPatch &other) const = default;
};

/// Left-corner sampling of a patch: u_j = u_min + j du, v_k = v_min + k dv.
///
/// Nu and Nv must be even and the origin must be a node. On the standard patch this means Nu is
/// divisible by 4, which makes u = 0, u = a/2 and v = 0 grid nodes.
class ZakGrid {
   public:
    ZakGrid(ZakPatch patch, size_t nu, size_t nv);

    const ZakPatch &patch() const {
        return patch_;
    }
    size_t nu() const {
        return nu_;
    }
    size_t nv() const {
        return nv_;
    }
    size_t size() const {
        return nu_ * nv_;
    }
    double du() const {
        return du_;
    }
    double dv() const {
        return dv_;
    }
    double u(int64_t j) const {
        return patch_.u_min + static_cast<double>(j) * du_;
    }
    double v(int64_t k) const {
        return patch_.v_min + static_cast<double>(k) * dv_;
    }

    /// Index of the node at coordinate u (within 1e-9 of a cell), not wrapped into [0, Nu).
    std::optional<int64_t> u_index(double u) const;
    std::optional<int64_t> v_index(double v) const;

    bool operator==(const ZakGrid &other) const = default;

   private:
    ZakPatch patch_;
    size_t nu_;
    size_t nv_;
    double du_;
    double dv_;
};

/// Samples of psi(u, v) on a ZakGrid, row-major in j (u) then k (v).
class ModularWavefunction {
   public:
    explicit ModularWavefunction(ZakGrid grid);
    ModularWavefunction(ZakGrid grid, std::vector<cd> samples);

    const ZakGrid &grid() const {
        return grid_;
    }
    cd operator()(size_t j, size_t k) const {
        return samples_[j * grid_.nv() + k];
    }
    cd &at(size_t j, size_t k) {
        return samples_[j * grid_.nv() + k];
    }
    std::span<const cd> samples() const {
        return samples_;
    }
    std::span<cd> mutable_samples() {
        return samples_;
    }

    /// Sample at any integer node, using the quasi-periodic extension with analytic phases.
    cd sample_extended(int64_t j, int64_t k) const;

    /// Sum |psi|^2 du dv.
    double norm_squared() const;

   private:
    ZakGrid grid_;
    std::vector<cd> samples_;
};

/// A square-integrable position wavefunction psi(x) that can be Zak transformed.
class PositionStateDescriptor {
   public:
    enum class Kind { vacuum, gaussian_comb, tabulated };

    /// pi^{-1/4} exp(-(x - offset)^2 / 2).
    static PositionStateDescriptor vacuum(double offset = 0);

    /// Normalized sum_n exp(-s_n^2 / (2 envelope_variance)) exp(-(x - s_n)^2 / (2 tooth_variance)),
    /// with teeth at s_n = offset + n * spacing.
    static PositionStateDescriptor gaussian_comb(
        double spacing, double tooth_variance, double envelope_variance, double offset = 0);

    /// Piecewise-linear interpolation through (xs[i], values[i]); zero outside [xs.front(), xs.back()].
    /// Not renormalized.
    static PositionStateDescriptor tabulated(std::vector<double> xs, std::vector<cd> values);

    Kind kind() const {
        return kind_;
    }
    double offset() const {
        return offset_;
    }
    double spacing() const {
        return spacing_;
    }
    double tooth_variance() const {
        return tooth_variance_;
    }
    double envelope_variance() const {
        return envelope_variance_;
    }
    const std::vector<double> &xs() const {
        return xs_;
    }
    const std::vector<cd> &values() const {
        return values_;
    }

    cd operator()(double x) const;

    /// Exact integral of |psi|^2 (1 for vacuum and combs).
    double norm_squared() const;

    /// Integral of |psi|^2 outside [lo, hi).
    double mass_outside(double lo, double hi) const;

   private:
    PositionStateDescriptor() = default;
    double comb_unnormalized(double x) const;

    Kind kind_ = Kind::vacuum;
    double offset_ = 0;
    double spacing_ = 0;
    double tooth_variance_ = 0;
    double envelope_variance_ = 0;
    double comb_scale_ = 1;
    std::vector<double> xs_;
    std::vector<cd> values_;
};

struct ZakTransformResult {
    ModularWavefunction psi;
    /// Mass of |psi(x)|^2 outside the window covered by the truncated comb sum.
    double tail_mass;
};

/// psi(u_j, v_k) = sqrt(b / 2pi) sum_{|m| <= m_max} exp(-i b m v_k) psi_x(u_j + a m).
///
/// Throws TruncationError when the relative tail mass exceeds `tolerance`.
ZakTransformResult zak_transform(
    const PositionStateDescriptor &state, const ZakGrid &grid, int m_max, double tolerance = 1e-12);

/// Smallest m_max whose tail mass is below `tolerance` (at most `limit`; returns -1 if none).
int required_m_max(const PositionStateDescriptor &state, const ZakPatch &patch, double tolerance, int limit = 1000);

/// psi_x(u + a n) = sqrt(b / 2pi) sum_k exp(i b n v_k) psi(u, v_k) dv. u must be a grid node.
cd inverse_zak_transform(const ModularWavefunction &psi, int64_t n, double u);

struct ExtendedValue {
    cd value;
    /// Set when (x, y) was not a grid node and the value came from bilinear interpolation.
    bool interpolated;
};

/// psi(x, y) for any real (x, y), via canonicalization and the wavefunction extension phase.
ExtendedValue evaluate_extended(const ModularWavefunction &psi, double x, double y);

/// sum conj(phi) psi du dv. Throws GridMismatchError on different grids.
cd inner_product(const ModularWavefunction &phi, const ModularWavefunction &psi);

/// psi_S(u, v) = sqrt(b/a) psi(u, (b/a) v) on the stretched patch with the same sample counts.
ModularWavefunction stretch_rescale(const ModularWavefunction &psi, double b);

enum class ZakConvention { momentum_first, opposite, symmetric };

/// <u,v|u,v>_conv: 1, exp(-iuv) or exp(-iuv/2).
cd convention_phase(double u, double v, ZakConvention convention);

struct ZakPoint {
    double u;
    double v;
    cd weight;
};

/// Finite superposition of Zak kets, sum_i w_i |u_i, v_i>, held exactly.
///
/// Points are canonicalized into the patch as they are added (the ket phase is folded into the
/// weight) and coincident points are merged.
class IdealZakState {
   public:
    explicit IdealZakState(ZakPatch patch);
    IdealZakState(ZakPatch patch, std::initializer_list<ZakPoint> points);

    const ZakPatch &patch() const {
        return patch_;
    }
    const std::vector<ZakPoint> &points() const {
        return points_;
    }

    /// Adds weight * |x, y> for any real (x, y).
    void add(double x, double y, cd weight);

    /// Coefficient of |u, v> (delta pairing); zero if no point sits there.
    cd weight_at(double u, double v) const;

    /// Sum of |w|^2.
    double norm_squared() const;

   private:
    ZakPatch patch_;
    std::vector<ZakPoint> points_;
};

/// sum_i conj(w_i) psi(u_i, v_i); points must be grid nodes.
cd ideal_state_overlap(const IdealZakState &state, const ModularWavefunction &psi);

}  // namespace zakgkp

#endif
