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

#include "zakgkp/zak_core.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

#include "zakgkp/errors.h"

namespace zakgkp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNodeTolerance = 1e-9;

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        q--;
    }
    return q;
}

std::optional<int64_t> node_index(double x, double origin, double step) {
    double f = (x - origin) / step;
    double r = std::nearbyint(f);
    if (std::abs(f - r) > kNodeTolerance) {
        return std::nullopt;
    }
    return static_cast<int64_t>(r);
}

// Integral of |p|^2 over [s, e] for p linear from ps to pe.
double linear_segment_mass(double s, double e, cd ps, cd pe) {
    return (e - s) / 3 * (std::norm(ps) + (ps * std::conj(pe)).real() + std::norm(pe));
}

}  // namespace

double ZakPatch::v_period() const {
    return 2 * kPi / b;
}

double ZakPatch::area() const {
    return a * v_period();
}

ZakPatch ZakPatch::standard(double a) {
    return stretched(a, a);
}

ZakPatch ZakPatch::stretched(double a, double b) {
    if (!(a > 0) || !(b > 0)) {
        throw std::invalid_argument("patch periods must be positive");
    }
    return {a, b, -a / 4, -kPi / b};
}

bool ZakPatch::contains(double u, double v) const {
    return u >= u_min && u < u_min + a && v >= v_min && v < v_min + v_period();
}

CanonicalZakPoint ZakPatch::canonicalize(double x, double y) const {
    return canonicalize_zak_point(x, y, a, b, -u_min, -v_min);
}

ZakGrid::ZakGrid(ZakPatch patch, size_t nu, size_t nv) : patch_(patch), nu_(nu), nv_(nv) {
    if (!(patch.a > 0) || !(patch.b > 0) || !std::isfinite(patch.a) || !std::isfinite(patch.b)) {
        throw std::invalid_argument("patch periods must be positive and finite");
    }
    if (nu == 0 || nu % 2 != 0 || nv == 0 || nv % 2 != 0) {
        throw std::invalid_argument(
            "Nu and Nv must be positive and even, got " + std::to_string(nu) + "x" + std::to_string(nv));
    }
    du_ = patch.a / static_cast<double>(nu);
    dv_ = patch.v_period() / static_cast<double>(nv);
    if (!u_index(0) || !v_index(0)) {
        throw std::invalid_argument(
            "grid " + std::to_string(nu) + "x" + std::to_string(nv) + " does not place a node at the origin");
    }
}

std::optional<int64_t> ZakGrid::u_index(double u) const {
    return node_index(u, patch_.u_min, du_);
}

std::optional<int64_t> ZakGrid::v_index(double v) const {
    return node_index(v, patch_.v_min, dv_);
}

ModularWavefunction::ModularWavefunction(ZakGrid grid) : grid_(grid), samples_(grid.size()) {
}

ModularWavefunction::ModularWavefunction(ZakGrid grid, std::vector<cd> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size()) {
        throw GridMismatchError(
            "sample count " + std::to_string(samples_.size()) + " does not match grid size " +
            std::to_string(grid_.size()));
    }
}

cd ModularWavefunction::sample_extended(int64_t j, int64_t k) const {
    auto nu = static_cast<int64_t>(grid_.nu());
    auto nv = static_cast<int64_t>(grid_.nv());
    int64_t n = floor_div(j, nu);
    int64_t jj = j - n * nu;
    int64_t kk = k - floor_div(k, nv) * nv;
    cd value = (*this)(static_cast<size_t>(jj), static_cast<size_t>(kk));
    if (n != 0) {
        value *= std::polar(1.0, static_cast<double>(n) * grid_.patch().b * grid_.v(kk));
    }
    return value;
}

double ModularWavefunction::norm_squared() const {
    double total = 0;
    for (const auto &s : samples_) {
        total += std::norm(s);
    }
    return total * grid_.du() * grid_.dv();
}

PositionStateDescriptor PositionStateDescriptor::vacuum(double offset) {
    PositionStateDescriptor d;
    d.kind_ = Kind::vacuum;
    d.offset_ = offset;
    return d;
}

PositionStateDescriptor PositionStateDescriptor::gaussian_comb(
    double spacing, double tooth_variance, double envelope_variance, double offset) {
    if (!(spacing > 0) || !(tooth_variance > 0) || !(envelope_variance > 0)) {
        throw std::invalid_argument("gaussian_comb parameters must be positive");
    }
    PositionStateDescriptor d;
    d.kind_ = Kind::gaussian_comb;
    d.spacing_ = spacing;
    d.tooth_variance_ = tooth_variance;
    d.envelope_variance_ = envelope_variance;
    d.offset_ = offset;

    // Norm from the closed-form tooth overlaps:
    // int g_n g_n' = sigma sqrt(pi) exp(-(s_n - s_n')^2 / (4 sigma^2)).
    double sigma = std::sqrt(tooth_variance);
    double reach = 10 * std::sqrt(envelope_variance) + std::abs(offset);
    auto n_lo = static_cast<int64_t>(std::floor((-reach - offset) / spacing));
    auto n_hi = static_cast<int64_t>(std::ceil((reach - offset) / spacing));
    auto k_max = static_cast<int64_t>(std::ceil(12 * sigma / spacing)) + 1;
    double total = 0;
    for (int64_t n = n_lo; n <= n_hi; n++) {
        double s = offset + static_cast<double>(n) * spacing;
        double cn = std::exp(-s * s / (2 * envelope_variance));
        for (int64_t m = std::max(n_lo, n - k_max); m <= std::min(n_hi, n + k_max); m++) {
            double sp = offset + static_cast<double>(m) * spacing;
            double cm = std::exp(-sp * sp / (2 * envelope_variance));
            total += cn * cm * std::exp(-(s - sp) * (s - sp) / (4 * tooth_variance));
        }
    }
    total *= sigma * std::sqrt(kPi);
    d.comb_scale_ = 1 / std::sqrt(total);
    return d;
}

PositionStateDescriptor PositionStateDescriptor::tabulated(std::vector<double> xs, std::vector<cd> values) {
    if (xs.size() != values.size() || xs.size() < 2) {
        throw std::invalid_argument("tabulated state needs matching xs/values with at least two points");
    }
    for (size_t i = 1; i < xs.size(); i++) {
        if (!(xs[i] > xs[i - 1])) {
            throw std::invalid_argument("tabulated xs must be strictly increasing");
        }
    }
    PositionStateDescriptor d;
    d.kind_ = Kind::tabulated;
    d.xs_ = std::move(xs);
    d.values_ = std::move(values);
    return d;
}

double PositionStateDescriptor::comb_unnormalized(double x) const {
    double sigma = std::sqrt(tooth_variance_);
    auto center = static_cast<int64_t>(std::nearbyint((x - offset_) / spacing_));
    auto k_max = static_cast<int64_t>(std::ceil(10 * sigma / spacing_)) + 1;
    double total = 0;
    for (int64_t n = center - k_max; n <= center + k_max; n++) {
        double s = offset_ + static_cast<double>(n) * spacing_;
        double d = x - s;
        total += std::exp(-s * s / (2 * envelope_variance_) - d * d / (2 * tooth_variance_));
    }
    return total;
}

cd PositionStateDescriptor::operator()(double x) const {
    switch (kind_) {
        case Kind::vacuum: {
            double d = x - offset_;
            return std::pow(kPi, -0.25) * std::exp(-d * d / 2);
        }
        case Kind::gaussian_comb:
            return comb_scale_ * comb_unnormalized(x);
        case Kind::tabulated: {
            if (x < xs_.front() || x > xs_.back()) {
                return 0;
            }
            auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            size_t i = it == xs_.end() ? xs_.size() - 1 : static_cast<size_t>(it - xs_.begin());
            size_t i0 = i - 1;
            double t = (x - xs_[i0]) / (xs_[i] - xs_[i0]);
            return values_[i0] * (1 - t) + values_[i] * t;
        }
    }
    return 0;
}

double PositionStateDescriptor::norm_squared() const {
    if (kind_ != Kind::tabulated) {
        return 1;
    }
    double total = 0;
    for (size_t i = 1; i < xs_.size(); i++) {
        total += linear_segment_mass(xs_[i - 1], xs_[i], values_[i - 1], values_[i]);
    }
    return total;
}

double PositionStateDescriptor::mass_outside(double lo, double hi) const {
    switch (kind_) {
        case Kind::vacuum:
            return 0.5 * std::erfc(hi - offset_) + 0.5 * std::erfc(offset_ - lo);
        case Kind::gaussian_comb: {
            // Pairwise tooth products are Gaussians centered at the midpoint with width sigma / sqrt(2).
            double sigma = std::sqrt(tooth_variance_);
            double reach = 10 * std::sqrt(envelope_variance_) + std::abs(offset_);
            auto n_lo = static_cast<int64_t>(std::floor((-reach - offset_) / spacing_));
            auto n_hi = static_cast<int64_t>(std::ceil((reach - offset_) / spacing_));
            auto k_max = static_cast<int64_t>(std::ceil(12 * sigma / spacing_)) + 1;
            double total = 0;
            for (int64_t n = n_lo; n <= n_hi; n++) {
                double s = offset_ + static_cast<double>(n) * spacing_;
                double cn = std::exp(-s * s / (2 * envelope_variance_));
                for (int64_t m = std::max(n_lo, n - k_max); m <= std::min(n_hi, n + k_max); m++) {
                    double t = offset_ + static_cast<double>(m) * spacing_;
                    double cm = std::exp(-t * t / (2 * envelope_variance_));
                    double mid = (s + t) / 2;
                    double tails = std::erfc((mid - lo) / sigma) + std::erfc((hi - mid) / sigma);
                    total += cn * cm * std::exp(-(s - t) * (s - t) / (4 * tooth_variance_)) * tails;
                }
            }
            return comb_scale_ * comb_scale_ * total * sigma * std::sqrt(kPi) / 2;
        }
        case Kind::tabulated: {
            double total = 0;
            for (size_t i = 1; i < xs_.size(); i++) {
                double x0 = xs_[i - 1];
                double x1 = xs_[i];
                if (x0 < lo) {
                    double e = std::min(x1, lo);
                    total += linear_segment_mass(x0, e, (*this)(x0), (*this)(e));
                }
                if (x1 > hi) {
                    double s = std::max(x0, hi);
                    total += linear_segment_mass(s, x1, (*this)(s), (*this)(x1));
                }
            }
            return total;
        }
    }
    return 0;
}

ZakTransformResult zak_transform(
    const PositionStateDescriptor &state, const ZakGrid &grid, int m_max, double tolerance) {
    if (m_max < 0) {
        throw std::invalid_argument("m_max must be non-negative");
    }
    const ZakPatch &patch = grid.patch();
    double lo = patch.u_min - patch.a * m_max;
    double hi = patch.u_min + patch.a * (m_max + 1);
    double norm = state.norm_squared();
    double tail = norm > 0 ? state.mass_outside(lo, hi) / norm : 0;
    if (tail > tolerance) {
        char msg[160];
        std::snprintf(
            msg, sizeof msg, "comb sum truncated at M_max=%d leaves relative tail mass %.3g above tolerance %.3g",
            m_max, tail, tolerance);
        throw TruncationError(msg, tail);
    }

    size_t nu = grid.nu();
    size_t nv = grid.nv();
    size_t nm = 2 * static_cast<size_t>(m_max) + 1;

    // psi_x(u_j + a m) does not depend on k; sample it once per (j, m).
    std::vector<cd> comb(nu * nm);
    for (size_t j = 0; j < nu; j++) {
        for (size_t i = 0; i < nm; i++) {
            double m = static_cast<double>(i) - m_max;
            comb[j * nm + i] = state(grid.u(static_cast<int64_t>(j)) + patch.a * m);
        }
    }
    std::vector<cd> phases(nm * nv);
    for (size_t i = 0; i < nm; i++) {
        double m = static_cast<double>(i) - m_max;
        for (size_t k = 0; k < nv; k++) {
            phases[i * nv + k] = std::polar(1.0, -patch.b * m * grid.v(static_cast<int64_t>(k)));
        }
    }

    double prefactor = std::sqrt(patch.b / (2 * kPi));
    ModularWavefunction psi(grid);
    for (size_t j = 0; j < nu; j++) {
        for (size_t k = 0; k < nv; k++) {
            cd total = 0;
            for (size_t i = 0; i < nm; i++) {
                total += phases[i * nv + k] * comb[j * nm + i];
            }
            psi.at(j, k) = prefactor * total;
        }
    }
    return {std::move(psi), tail};
}

int required_m_max(const PositionStateDescriptor &state, const ZakPatch &patch, double tolerance, int limit) {
    double norm = state.norm_squared();
    for (int m = 0; m <= limit; m++) {
        double lo = patch.u_min - patch.a * m;
        double hi = patch.u_min + patch.a * (m + 1);
        if (state.mass_outside(lo, hi) <= tolerance * norm) {
            return m;
        }
    }
    return -1;
}

cd inverse_zak_transform(const ModularWavefunction &psi, int64_t n, double u) {
    const ZakGrid &grid = psi.grid();
    auto j = grid.u_index(u);
    if (!j) {
        throw OffGridError("inverse_zak_transform: u=" + std::to_string(u) + " is not a grid node");
    }
    double b = grid.patch().b;
    cd total = 0;
    for (size_t k = 0; k < grid.nv(); k++) {
        double v = grid.v(static_cast<int64_t>(k));
        total += std::polar(1.0, b * static_cast<double>(n) * v) * psi.sample_extended(*j, static_cast<int64_t>(k));
    }
    return std::sqrt(b / (2 * kPi)) * total * grid.dv();
}

ExtendedValue evaluate_extended(const ModularWavefunction &psi, double x, double y) {
    const ZakGrid &grid = psi.grid();
    CanonicalZakPoint p = grid.patch().canonicalize(x, y);
    // <x,y| = conj(phase) <u,v|.
    cd extension = std::conj(p.phase);
    auto j = grid.u_index(p.u);
    auto k = grid.v_index(p.v);
    if (j && k) {
        return {extension * psi.sample_extended(*j, *k), false};
    }
    double fj = (p.u - grid.patch().u_min) / grid.du();
    double fk = (p.v - grid.patch().v_min) / grid.dv();
    double j0 = std::floor(fj);
    double k0 = std::floor(fk);
    double tj = fj - j0;
    double tk = fk - k0;
    auto ij = static_cast<int64_t>(j0);
    auto ik = static_cast<int64_t>(k0);
    cd value = (1 - tj) * (1 - tk) * psi.sample_extended(ij, ik) + tj * (1 - tk) * psi.sample_extended(ij + 1, ik) +
               (1 - tj) * tk * psi.sample_extended(ij, ik + 1) + tj * tk * psi.sample_extended(ij + 1, ik + 1);
    return {extension * value, true};
}

cd inner_product(const ModularWavefunction &phi, const ModularWavefunction &psi) {
    if (!(phi.grid() == psi.grid())) {
        throw GridMismatchError("inner_product: states live on different grids");
    }
    cd total = 0;
    auto a = phi.samples();
    auto b = psi.samples();
    for (size_t i = 0; i < a.size(); i++) {
        total += std::conj(a[i]) * b[i];
    }
    return total * phi.grid().du() * phi.grid().dv();
}

ModularWavefunction stretch_rescale(const ModularWavefunction &psi, double b) {
    const ZakGrid &grid = psi.grid();
    const ZakPatch &patch = grid.patch();
    if (!patch.is_standard()) {
        throw GridMismatchError("stretch_rescale expects a state on a standard (b = a) patch");
    }
    if (!(b > 0)) {
        throw std::invalid_argument("stretch_rescale: b must be positive");
    }
    double ratio = b / patch.a;
    ZakPatch stretched{patch.a, b, patch.u_min, patch.v_min / ratio};
    ZakGrid out_grid(stretched, grid.nu(), grid.nv());
    std::vector<cd> samples(psi.samples().begin(), psi.samples().end());
    double scale = std::sqrt(ratio);
    for (auto &s : samples) {
        s *= scale;
    }
    return ModularWavefunction(out_grid, std::move(samples));
}

cd convention_phase(double u, double v, ZakConvention convention) {
    switch (convention) {
        case ZakConvention::momentum_first:
            return 1;
        case ZakConvention::opposite:
            return std::polar(1.0, -u * v);
        case ZakConvention::symmetric:
            return std::polar(1.0, -u * v / 2);
    }
    return 1;
}

IdealZakState::IdealZakState(ZakPatch patch) : patch_(patch) {
}

IdealZakState::IdealZakState(ZakPatch patch, std::initializer_list<ZakPoint> points) : patch_(patch) {
    for (const auto &p : points) {
        add(p.u, p.v, p.weight);
    }
}

void IdealZakState::add(double x, double y, cd weight) {
    CanonicalZakPoint c = patch_.canonicalize(x, y);
    cd w = weight * c.phase;
    double tol_u = 1e-10 * patch_.u_period();
    double tol_v = 1e-10 * patch_.v_period();
    for (auto &p : points_) {
        if (std::abs(p.u - c.u) <= tol_u && std::abs(p.v - c.v) <= tol_v) {
            p.weight += w;
            return;
        }
    }
    points_.push_back({c.u, c.v, w});
}

cd IdealZakState::weight_at(double u, double v) const {
    CanonicalZakPoint c = patch_.canonicalize(u, v);
    double tol_u = 1e-10 * patch_.u_period();
    double tol_v = 1e-10 * patch_.v_period();
    for (const auto &p : points_) {
        if (std::abs(p.u - c.u) <= tol_u && std::abs(p.v - c.v) <= tol_v) {
            return std::conj(c.phase) * p.weight;
        }
    }
    return 0;
}

double IdealZakState::norm_squared() const {
    double total = 0;
    for (const auto &p : points_) {
        total += std::norm(p.weight);
    }
    return total;
}

cd ideal_state_overlap(const IdealZakState &state, const ModularWavefunction &psi) {
    const ZakGrid &grid = psi.grid();
    if (!(state.patch() == grid.patch())) {
        throw GridMismatchError("ideal_state_overlap: patch mismatch");
    }
    cd total = 0;
    for (const auto &p : state.points()) {
        auto j = grid.u_index(p.u);
        auto k = grid.v_index(p.v);
        if (!j || !k) {
            throw OffGridError(
                "ideal_state_overlap: point (" + std::to_string(p.u) + ", " + std::to_string(p.v) +
                ") is not a grid node");
        }
        total += std::conj(p.weight) * psi.sample_extended(*j, *k);
    }
    return total;
}

}  // namespace zakgkp
