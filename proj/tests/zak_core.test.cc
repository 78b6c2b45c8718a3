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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"
#include "zakgkp/errors.h"

using namespace zakgkp;
using namespace zakgkp::testing;

namespace {

ZakGrid standard_grid(size_t nu = 256, size_t nv = 256) {
    return ZakGrid(ZakPatch::standard(kA), nu, nv);
}

std::vector<PositionStateDescriptor> corpus() {
    return {
        PositionStateDescriptor::vacuum(),
        PositionStateDescriptor::gaussian_comb(kA, 0.04, 25, 0),
        PositionStateDescriptor::gaussian_comb(kA, 0.16, 6.25, 0),
        PositionStateDescriptor::gaussian_comb(kA, 0.09, 1 / 0.09, kAlpha),
        PositionStateDescriptor::vacuum(1.3),
    };
}

}  // namespace

TEST(zak_core, patch_geometry) {
    ZakPatch p = ZakPatch::standard(kA);
    ASSERT_EQ(p.u_min, -kA / 4);
    ASSERT_EQ(p.v_min, -kPi / kA);
    ASSERT_NEAR(p.area(), 2 * kPi, 1e-14);
    ASSERT_TRUE(p.is_standard());
    ASSERT_TRUE(p.contains(0, 0));
    ASSERT_FALSE(p.contains(3 * kA / 4, 0));
    ASSERT_TRUE(p.contains(-kA / 4, -kPi / kA));

    ZakPatch s = ZakPatch::stretched(kAlpha, 2 * kAlpha);
    ASSERT_NEAR(s.v_period(), kPi / kAlpha, 1e-15);
    ASSERT_NEAR(s.area(), kPi, 1e-14);
    ASSERT_FALSE(s.is_standard());
}

TEST(zak_core, grid_validation) {
    ASSERT_THROW(standard_grid(6, 8), std::invalid_argument);
    ASSERT_THROW(standard_grid(8, 7), std::invalid_argument);
    ASSERT_THROW(standard_grid(0, 8), std::invalid_argument);
    ZakGrid g = standard_grid(8, 4);
    ASSERT_NEAR(g.du(), kA / 8, 1e-15);
    ASSERT_NEAR(g.dv(), 2 * kPi / kA / 4, 1e-15);
    ASSERT_EQ(g.u_index(0), 2);
    ASSERT_EQ(g.u_index(kAlpha), 6);
    ASSERT_EQ(g.v_index(0), 2);
    ASSERT_EQ(g.u_index(0.01), std::nullopt);
    ASSERT_EQ(g.u_index(kA), 10);
}

TEST(zak_core, vacuum_transform_matches_direct_sum) {
    ZakGrid g = standard_grid(64, 64);
    auto r = zak_transform(PositionStateDescriptor::vacuum(), g, 16);
    ASSERT_LT(r.tail_mass, 1e-12);
    cd origin = r.psi(16, 32);
    ASSERT_NEAR(origin.real(), kVacuumZakOrigin, 1e-14);
    ASSERT_NEAR(origin.imag(), 0, 1e-15);
    for (size_t j = 0; j < g.nu(); j += 3) {
        for (size_t k = 0; k < g.nv(); k += 5) {
            cd want = zak_direct(vacuum_x, g.u(j), g.v(k), kA, kA);
            ASSERT_NEAR(std::abs(r.psi(j, k) - want), 0, 1e-14);
        }
    }
}

TEST(zak_core, comb_transform_matches_direct_sum) {
    ZakGrid g = standard_grid(32, 32);
    double delta = 0.3;
    auto state = PositionStateDescriptor::gaussian_comb(kA, delta * delta, 1 / (delta * delta), kAlpha);
    auto r = zak_transform(state, g, 16);
    double norm = 0;
    for (int i = -40000; i < 40000; i++) {
        double x = i * 1e-3;
        double f = comb_x_unnormalized(x, delta, kA, kAlpha);
        norm += f * f * 1e-3;
    }
    auto oracle = [&](double x) {
        return comb_x_unnormalized(x, delta, kA, kAlpha) / std::sqrt(norm);
    };
    for (size_t j = 0; j < g.nu(); j += 3) {
        for (size_t k = 0; k < g.nv(); k += 3) {
            cd want = zak_direct(oracle, g.u(j), g.v(k), kA, kA, 30);
            ASSERT_NEAR(std::abs(r.psi(j, k) - want), 0, 1e-9);
        }
    }
}

TEST(zak_core, isometry_on_corpus) {
    ZakGrid g = standard_grid();
    for (const auto &state : corpus()) {
        auto r = zak_transform(state, g, 16);
        double n = r.psi.norm_squared();
        ASSERT_LT(std::abs(n - state.norm_squared()) / state.norm_squared(), 1e-6);
    }
}

TEST(zak_core, isometry_tabulated) {
    std::vector<double> xs;
    std::vector<cd> values;
    for (int i = -400; i <= 400; i++) {
        double x = i * 0.02;
        xs.push_back(x);
        values.emplace_back(vacuum_x(x - 0.4), 0.3 * vacuum_x(x + 0.2));
    }
    auto state = PositionStateDescriptor::tabulated(xs, values);
    auto r = zak_transform(state, standard_grid(), 16);
    ASSERT_LT(std::abs(r.psi.norm_squared() - state.norm_squared()) / state.norm_squared(), 1e-6);
}

TEST(zak_core, inverse_examples) {
    auto psi = zak_transform(PositionStateDescriptor::vacuum(), standard_grid(), 16).psi;
    cd x0 = inverse_zak_transform(psi, 0, 0);
    ASSERT_NEAR(x0.real(), kVacuumAtZero, 1e-12);
    ASSERT_NEAR(x0.imag(), 0, 1e-12);
    cd x1 = inverse_zak_transform(psi, 1, 0);
    ASSERT_NEAR(x1.real(), kVacuumAtA, 1e-12);
    ASSERT_THROW(inverse_zak_transform(psi, 0, 0.001), OffGridError);
}

TEST(zak_core, inverse_roundtrip_on_probes) {
    ZakGrid g = standard_grid();
    for (const auto &state : corpus()) {
        auto psi = zak_transform(state, g, 16).psi;
        for (int p = 0; p < 64; p++) {
            int64_t j = (p * 37) % 256;
            int64_t n = (p % 7) - 3;
            double u = g.u(j);
            cd got = inverse_zak_transform(psi, n, u);
            ASSERT_NEAR(std::abs(got - state(u + kA * n)), 0, 1e-6);
        }
    }
}

TEST(zak_core, inverse_roundtrip_tabulated_on_comb_points) {
    ZakGrid g = standard_grid(16, 64);
    std::vector<double> xs;
    std::vector<cd> values;
    for (int i = -48; i < 48; i++) {
        double x = g.u(i);
        xs.push_back(x);
        values.emplace_back(std::sin(0.3 * i) * std::exp(-0.001 * i * i), std::cos(0.1 * i) * 0.2);
    }
    auto state = PositionStateDescriptor::tabulated(xs, values);
    auto psi = zak_transform(state, g, 4).psi;
    for (size_t i = 0; i < xs.size(); i++) {
        int64_t j = static_cast<int64_t>(i) - 48;
        int64_t n = j >= 0 ? j / 16 : -((-j + 15) / 16);
        double u = g.u(j - n * 16);
        ASSERT_NEAR(std::abs(inverse_zak_transform(psi, n, u) - values[i]), 0, 1e-12);
    }
}

TEST(zak_core, truncation_is_reported) {
    ZakGrid g = standard_grid(16, 16);
    try {
        zak_transform(PositionStateDescriptor::vacuum(), g, 0);
        FAIL() << "expected TruncationError";
    } catch (const TruncationError &e) {
        ASSERT_NEAR(e.tail_mass, 0.5 * std::erfc(3 * kA / 4) + 0.5 * std::erfc(kA / 4), 1e-15);
    }
    int m = required_m_max(PositionStateDescriptor::vacuum(), g.patch(), 1e-12);
    ASSERT_EQ(m, 2);
    ASSERT_THROW(zak_transform(PositionStateDescriptor::gaussian_comb(kA, 0.01, 100, 0), g, 2), TruncationError);
}

TEST(zak_core, comb_normalization_and_tail) {
    double sigma2 = 0.04;
    double offset = 0.5;
    auto state = PositionStateDescriptor::gaussian_comb(kA, sigma2, 25, offset);
    double sigma = std::sqrt(sigma2);
    // Closed-form pair integrals of the unnormalized teeth over (-inf, lo) and [hi, inf).
    double lo = -3;
    double hi = 4;
    double total = 0;
    double outside = 0;
    for (int n = -40; n <= 40; n++) {
        double s = offset + n * kA;
        for (int m = -40; m <= 40; m++) {
            double t = offset + m * kA;
            double w = std::exp(-(s * s + t * t) / 50) * std::exp(-(s - t) * (s - t) / (4 * sigma2));
            double mid = (s + t) / 2;
            total += w * sigma * std::sqrt(kPi);
            outside += w * sigma * std::sqrt(kPi) / 2 * (std::erfc((mid - lo) / sigma) + std::erfc((hi - mid) / sigma));
        }
    }
    double norm = 0;
    for (int i = -60000; i < 60000; i++) {
        norm += std::norm(state(i * 1e-3)) * 1e-3;
    }
    ASSERT_NEAR(norm, 1, 1e-9);
    ASSERT_NEAR(state.mass_outside(lo, hi), outside / total, 1e-12);
    double midpoint = 0;
    for (int i = 0; i < 800000; i++) {
        double x = hi + (i + 0.5) * 1e-4;
        double y = lo - (i + 0.5) * 1e-4;
        midpoint += (std::norm(state(x)) + std::norm(state(y))) * 1e-4;
    }
    ASSERT_NEAR(state.mass_outside(lo, hi), midpoint, 1e-8);
    ASSERT_NEAR(std::norm(state(0.7)), comb_x_unnormalized(0.7, 0.2, kA, offset) * comb_x_unnormalized(0.7, 0.2, kA, offset) / total, 1e-12);
}

TEST(zak_core, tabulated_exact_norm) {
    auto s = PositionStateDescriptor::tabulated({0, 1, 3}, {1, 1, cd(0, 1)});
    ASSERT_NEAR(s.norm_squared(), 1 + 4.0 / 3, 1e-15);
    ASSERT_NEAR(s.mass_outside(0.5, 10), 0.5, 1e-15);
    ASSERT_EQ(s(-1), cd(0));
    ASSERT_EQ(s(0.5), cd(1));
    ASSERT_THROW(PositionStateDescriptor::tabulated({0, 0}, {1, 1}), std::invalid_argument);
}

TEST(zak_core, extension_laws) {
    ZakGrid g = standard_grid(32, 32);
    auto psi = random_grid_state(g, 1);
    for (int64_t j : {0, 5, 8, 31}) {
        for (int64_t k : {0, 3, 16, 31}) {
            double u = g.u(j);
            double v = g.v(k);
            cd s = psi(j, k);
            auto e = evaluate_extended(psi, u, v);
            ASSERT_EQ(e.value, s);
            ASSERT_FALSE(e.interpolated);
            ASSERT_NEAR(std::abs(evaluate_extended(psi, u + kA, v).value - std::polar(1.0, kA * v) * s), 0, 1e-13);
            ASSERT_NEAR(std::abs(evaluate_extended(psi, u, v + 2 * kPi / kA).value - s), 0, 1e-13);
            ASSERT_NEAR(
                std::abs(evaluate_extended(psi, u - 3 * kA, v - 2 * kPi / kA).value - std::polar(1.0, -3 * kA * v) * s),
                0,
                1e-12);
            ASSERT_NEAR(std::abs(psi.sample_extended(j + 2 * 32, k) - std::polar(1.0, 2 * kA * v) * s), 0, 1e-13);
        }
    }
    auto e = evaluate_extended(psi, g.u(3) + g.du() / 2, g.v(4));
    ASSERT_TRUE(e.interpolated);
    ASSERT_NEAR(std::abs(e.value - (psi(3, 4) + psi(4, 4)) / 2.0), 0, 1e-14);
}

TEST(zak_core, vacuum_mirror_symmetry) {
    ZakGrid g = standard_grid(64, 64);
    auto psi = zak_transform(PositionStateDescriptor::vacuum(), g, 16).psi;
    for (size_t j = 0; j < g.nu(); j++) {
        for (size_t k = 0; k < g.nv(); k++) {
            ASSERT_NEAR(std::abs(psi(j, k)), std::abs(psi(j, (g.nv() - k) % g.nv())), 1e-14);
        }
    }
}

TEST(zak_core, inner_product_properties) {
    ZakGrid g = standard_grid();
    auto vac = zak_transform(PositionStateDescriptor::vacuum(), g, 16).psi;
    auto shifted = zak_transform(PositionStateDescriptor::vacuum(kA), g, 16).psi;
    ASSERT_NEAR(std::abs(inner_product(vac, vac) - 1.0), 0, 1e-12);
    cd overlap = inner_product(vac, shifted);
    ASSERT_NEAR(overlap.real(), kShiftedVacuumOverlap, 1e-12);
    ASSERT_NEAR(overlap.imag(), 0, 1e-12);
    auto x = random_grid_state(g, 2);
    auto y = random_grid_state(g, 3);
    ASSERT_NEAR(std::abs(inner_product(x, y) - std::conj(inner_product(y, x))), 0, 1e-15);
    ASSERT_THROW(inner_product(x, random_grid_state(standard_grid(128, 256), 1)), GridMismatchError);
}

TEST(zak_core, stretch_rescale_matches_stretched_transform) {
    ZakGrid g = standard_grid(64, 64);
    auto psi = zak_transform(PositionStateDescriptor::vacuum(0.3), g, 16).psi;
    ASSERT_EQ(max_abs_diff(stretch_rescale(psi, kA), psi), 0);
    double b = 2.5 * kA;
    auto s = stretch_rescale(psi, b);
    ASSERT_NEAR(s.grid().patch().v_period(), 2 * kPi / b, 1e-15);
    ASSERT_NEAR(s.norm_squared(), psi.norm_squared(), 1e-13);
    auto direct = zak_transform(PositionStateDescriptor::vacuum(0.3), s.grid(), 16).psi;
    ASSERT_LT(max_abs_diff(s, direct), 1e-13);
    for (int64_t k = 0; k < 64; k += 7) {
        double v = s.grid().v(k);
        double u = s.grid().u(9);
        ASSERT_NEAR(std::abs(evaluate_extended(s, u + kA, v).value - std::polar(1.0, b * v) * s(9, k)), 0, 1e-13);
        ASSERT_NEAR(std::abs(evaluate_extended(s, u, v + 2 * kPi / b).value - s(9, k)), 0, 1e-13);
    }
    ASSERT_THROW(stretch_rescale(s, kA), GridMismatchError);
}

TEST(zak_core, convention_phases) {
    ASSERT_EQ(convention_phase(1.2, 0, ZakConvention::opposite), cd(1));
    ASSERT_EQ(convention_phase(1.2, 0.7, ZakConvention::momentum_first), cd(1));
    ASSERT_NEAR(std::abs(convention_phase(1.2, 0.7, ZakConvention::opposite) - std::polar(1.0, -0.84)), 0, 1e-15);
    ASSERT_NEAR(std::abs(convention_phase(1.2, 0.7, ZakConvention::symmetric) - std::polar(1.0, -0.42)), 0, 1e-15);
}

TEST(zak_core, ideal_state_canonicalizes_and_merges) {
    ZakPatch p = ZakPatch::standard(kA);
    IdealZakState s(p);
    s.add(kAlpha, 0, 1);
    s.add(kAlpha + kA, 0.25, 2);
    s.add(kAlpha - kA, 0.25, cd(0, 1));
    ASSERT_EQ(s.points().size(), 2u);
    ASSERT_NEAR(s.points()[1].u, kAlpha, 1e-15);
    cd expected = 2.0 * std::polar(1.0, -kA * 0.25) + cd(0, 1) * std::polar(1.0, kA * 0.25);
    ASSERT_NEAR(std::abs(s.points()[1].weight - expected), 0, 1e-14);
    ASSERT_NEAR(std::abs(s.weight_at(kAlpha, 0.25) - expected), 0, 1e-14);
    ASSERT_NEAR(std::abs(s.weight_at(kAlpha + kA, 0.25) - std::polar(1.0, kA * 0.25) * expected), 0, 1e-14);
    ASSERT_EQ(s.weight_at(0.1, 0.1), cd(0));
    ASSERT_NEAR(s.norm_squared(), 1 + std::norm(expected), 1e-14);
}

TEST(zak_core, ideal_overlap) {
    ZakGrid g = standard_grid();
    auto psi = zak_transform(PositionStateDescriptor::vacuum(), g, 16).psi;
    IdealZakState origin(g.patch(), {{0, 0, 1}});
    ASSERT_NEAR(ideal_state_overlap(origin, psi).real(), kVacuumZakOrigin, 1e-14);
    ModularWavefunction zero(g);
    ASSERT_EQ(ideal_state_overlap(origin, zero), cd(0));
    cd c0(0.3, 0.1);
    cd c1(-0.2, 0.5);
    IdealZakState two(g.patch(), {{0, 0, c0}, {kAlpha, 0, c1}});
    cd want = std::conj(c0) * psi(64, 128) + std::conj(c1) * psi(192, 128);
    ASSERT_NEAR(std::abs(ideal_state_overlap(two, psi) - want), 0, 1e-15);
    IdealZakState off(g.patch(), {{0.001, 0, 1}});
    ASSERT_THROW(ideal_state_overlap(off, psi), OffGridError);
}

TEST(zak_core, approximate_codeword_concentrates) {
    ZakGrid g = standard_grid();
    auto psi = zak_transform(PositionStateDescriptor::gaussian_comb(kA, 0.01, 100, 0), g, 16).psi;
    double inside = 0;
    for (size_t j = 0; j < g.nu(); j++) {
        for (size_t k = 0; k < g.nv(); k++) {
            double u = g.u(j);
            double v = g.v(k);
            if (u >= -kA / 4 && u < kA / 4 && v >= -kPi / (2 * kA) && v < kPi / (2 * kA)) {
                inside += std::norm(psi(j, k)) * g.du() * g.dv();
            }
        }
    }
    ASSERT_GT(inside, 0.99);
    size_t best = 0;
    for (size_t i = 0; i < g.size(); i++) {
        if (std::abs(psi.samples()[i]) > std::abs(psi.samples()[best])) {
            best = i;
        }
    }
    ASSERT_EQ(best, 64u * 256 + 128);
}
