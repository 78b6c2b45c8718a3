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

#include "zakgkp/ssd.h"

#include <cmath>
#include <numbers>
#include <string>

#include "zakgkp/errors.h"
#include "zakgkp/grid_io.h"

namespace zakgkp {

namespace {

constexpr double kPi = std::numbers::pi;

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        q--;
    }
    return q;
}

bool close(double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)) + 1e-300;
}

void require_full_patch(const ZakPatch &patch, const GKPCode &code) {
    if (code.K != 2) {
        throw std::invalid_argument("the subsystem decomposition needs K = 2");
    }
    ZakPatch expected = code.patch();
    if (!close(patch.a, expected.a) || !close(patch.b, expected.b) || !close(patch.u_min, expected.u_min) ||
        !close(patch.v_min, expected.v_min)) {
        throw GridMismatchError("state does not live on the code's standard patch");
    }
}

void require_gauge(const SSDState &s) {
    if (!(s.gamma[0].grid() == s.gamma[1].grid())) {
        throw GridMismatchError("gauge wavefunctions live on different grids");
    }
    if (!(s.gamma[0].grid().patch() == gauge_patch(s.code))) {
        throw GridMismatchError("gauge wavefunctions are not on the code's gauge patch");
    }
}

IdealZakState scaled(const IdealZakState &state, cd factor) {
    IdealZakState out(state.patch());
    for (const auto &p : state.points()) {
        out.add(p.u, p.v, factor * p.weight);
    }
    return out;
}

SSDState empty_ssd(const GKPCode &code, const ZakGrid &g) {
    return {code, {ModularWavefunction(g), ModularWavefunction(g)}};
}

struct GaugeShift {
    int64_t periods;
    int64_t cells;
    double frac;
};

GaugeShift gauge_shift(double t, double alpha, double du, bool need_cells) {
    auto d = centered_decompose(t, alpha, alpha / 2);
    GaugeShift g{d.multiple, 0, d.frac};
    if (need_cells) {
        double cells = d.frac / du;
        double r = std::nearbyint(cells);
        if (std::abs(cells - r) > 1e-9) {
            throw OffGridError("apply_X_ssd: shift " + std::to_string(t) + " is not a multiple of the grid step");
        }
        g.cells = static_cast<int64_t>(r);
    }
    return g;
}

Matrix2 accumulate(const SSDPureState &state, bool ec) {
    Matrix2 m{};
    if (const auto *s = std::get_if<SSDState>(&state)) {
        require_gauge(*s);
        const ZakGrid &g = s->gamma[0].grid();
        double alpha = s->code.alpha;
        for (size_t j = 0; j < g.nu(); j++) {
            for (size_t k = 0; k < g.nv(); k++) {
                cd c0 = s->gamma[0](j, k);
                cd c1 = s->gamma[1](j, k);
                if (ec) {
                    c1 *= std::polar(1.0, -alpha * g.v(static_cast<int64_t>(k)));
                }
                m[0][0] += c0 * std::conj(c0);
                m[0][1] += c0 * std::conj(c1);
                m[1][0] += c1 * std::conj(c0);
                m[1][1] += c1 * std::conj(c1);
            }
        }
        double cell = g.du() * g.dv();
        for (auto &row : m) {
            for (auto &x : row) {
                x *= cell;
            }
        }
        return m;
    }
    const auto &s = std::get<IdealSSDState>(state);
    // Every gauge point that carries weight in either sector.
    IdealZakState support(gauge_patch(s.code));
    for (const auto &gamma : s.gamma) {
        for (const auto &p : gamma.points()) {
            support.add(p.u, p.v, 1);
        }
    }
    for (const auto &p : support.points()) {
        std::array<cd, 2> c{s.gamma[0].weight_at(p.u, p.v), s.gamma[1].weight_at(p.u, p.v)};
        if (ec) {
            c[1] *= std::polar(1.0, -s.code.alpha * p.v);
        }
        for (int l = 0; l < 2; l++) {
            for (int lp = 0; lp < 2; lp++) {
                m[l][lp] += c[l] * std::conj(c[lp]);
            }
        }
    }
    return m;
}

LogicalQubit trace_map(const SSDMixture &rho, bool ec) {
    Matrix2 m{};
    for (const auto &[p, state] : rho.components()) {
        Matrix2 part = accumulate(state, ec);
        for (int l = 0; l < 2; l++) {
            for (int lp = 0; lp < 2; lp++) {
                m[l][lp] += p * part[l][lp];
            }
        }
    }
    return LogicalQubit::from_unnormalized(m);
}

}  // namespace

ZakPatch gauge_patch(const GKPCode &code) {
    code.validate();
    return {code.alpha, 2 * code.alpha, -code.alpha / 2, -kPi / (2 * code.alpha)};
}

ZakGrid gauge_grid(const GKPCode &code, const ZakGrid &full) {
    require_full_patch(full.patch(), code);
    if (full.nu() % 4 != 0) {
        throw GridMismatchError("full grid Nu must be divisible by 4 to split into gauge halves");
    }
    return ZakGrid(gauge_patch(code), full.nu() / 2, full.nv());
}

IdealSSDState IdealSSDState::empty(const GKPCode &code) {
    ZakPatch g = gauge_patch(code);
    return {code, {IdealZakState(g), IdealZakState(g)}};
}

SSDState to_ssd(const ModularWavefunction &psi, const GKPCode &code) {
    ZakGrid g = gauge_grid(code, psi.grid());
    SSDState s = empty_ssd(code, g);
    size_t half = g.nu();
    for (int l = 0; l < 2; l++) {
        for (size_t j = 0; j < half; j++) {
            for (size_t k = 0; k < g.nv(); k++) {
                s.gamma[l].at(j, k) = psi(j + l * half, k);
            }
        }
    }
    return s;
}

IdealSSDState to_ssd(const IdealZakState &state, const GKPCode &code) {
    require_full_patch(state.patch(), code);
    IdealSSDState s = IdealSSDState::empty(code);
    for (const auto &p : state.points()) {
        auto d = centered_decompose(p.u, code.alpha, code.alpha / 2);
        s.gamma[d.multiple == 0 ? 0 : 1].add(d.frac, p.v, p.weight);
    }
    return s;
}

SSDState to_ssd_alternate(const ModularWavefunction &psi, const GKPCode &code) {
    const ZakGrid &full = psi.grid();
    ZakGrid g = gauge_grid(code, full);
    SSDState s = empty_ssd(code, g);
    for (size_t j = 0; j < full.nu(); j++) {
        double u = full.u(static_cast<int64_t>(j));
        auto d = centered_decompose(u, code.alpha, code.alpha / 2);
        int l = d.multiple == 0 ? 0 : 1;
        for (size_t k = 0; k < full.nv(); k++) {
            double v = full.v(static_cast<int64_t>(k));
            CanonicalZakPoint c = g.patch().canonicalize(u, v);
            auto jg = g.u_index(c.u);
            auto kg = g.v_index(c.v);
            cd w = psi(j, k) * std::polar(1.0, 2 * v * d.whole) * c.phase;
            s.gamma[l].at(static_cast<size_t>(*jg), static_cast<size_t>(*kg)) = w;
        }
    }
    return s;
}

IdealSSDState to_ssd_alternate(const IdealZakState &state, const GKPCode &code) {
    require_full_patch(state.patch(), code);
    IdealSSDState s = IdealSSDState::empty(code);
    for (const auto &p : state.points()) {
        auto d = centered_decompose(p.u, code.alpha, code.alpha / 2);
        s.gamma[d.multiple == 0 ? 0 : 1].add(p.u, p.v, p.weight * std::polar(1.0, 2 * p.v * d.whole));
    }
    return s;
}

ModularWavefunction from_ssd(const SSDState &s) {
    require_gauge(s);
    const ZakGrid &g = s.gamma[0].grid();
    ZakGrid full(s.code.patch(), 2 * g.nu(), g.nv());
    ModularWavefunction psi(full);
    for (int l = 0; l < 2; l++) {
        for (size_t j = 0; j < g.nu(); j++) {
            for (size_t k = 0; k < g.nv(); k++) {
                psi.at(j + l * g.nu(), k) = s.gamma[l](j, k);
            }
        }
    }
    return psi;
}

IdealZakState from_ssd(const IdealSSDState &s) {
    IdealZakState out(s.code.patch());
    for (int l = 0; l < 2; l++) {
        for (const auto &p : s.gamma[l].points()) {
            out.add(p.u + s.code.alpha * l, p.v, p.weight);
        }
    }
    return out;
}

SSDMixture to_ssd(const MixtureState &rho, const GKPCode &code) {
    std::vector<std::pair<double, SSDPureState>> parts;
    for (const auto &[p, state] : rho.components()) {
        if (const auto *psi = std::get_if<ModularWavefunction>(&state)) {
            parts.emplace_back(p, to_ssd(*psi, code));
        } else {
            parts.emplace_back(p, to_ssd(std::get<IdealZakState>(state), code));
        }
    }
    return SSDMixture(std::move(parts));
}

LogicalQubit gauge_trace(const SSDMixture &rho) {
    return trace_map(rho, false);
}

LogicalQubit ec_gauge_trace(const SSDMixture &rho) {
    return trace_map(rho, true);
}

std::array<cd, 2> ec_ssd_amplitudes(const SSDState &s, const Syndrome &syndrome) {
    require_gauge(s);
    std::array<cd, 2> c;
    for (int l = 0; l < 2; l++) {
        ExtendedValue e = evaluate_extended(s.gamma[l], syndrome.u_tilde, syndrome.v_tilde);
        if (e.interpolated) {
            throw OffGridError("ec_ssd_amplitudes: syndrome does not sit on a gauge grid node");
        }
        c[l] = std::polar(1.0, -s.code.alpha * l * syndrome.v_tilde) * e.value;
    }
    return c;
}

std::array<cd, 2> ec_ssd_amplitudes(const IdealSSDState &s, const Syndrome &syndrome) {
    std::array<cd, 2> c;
    for (int l = 0; l < 2; l++) {
        c[l] = std::polar(1.0, -s.code.alpha * l * syndrome.v_tilde) *
               s.gamma[l].weight_at(syndrome.u_tilde, syndrome.v_tilde);
    }
    return c;
}

SSDState apply_Z_ssd(const SSDState &s, double t) {
    require_gauge(s);
    SSDState out = s;
    for (int l = 0; l < 2; l++) {
        out.gamma[l] = apply_phase_u(apply_translate_v(s.gamma[l], t), t);
        if (l == 1) {
            cd phase = std::polar(1.0, s.code.alpha * t);
            for (auto &x : out.gamma[l].mutable_samples()) {
                x *= phase;
            }
        }
    }
    return out;
}

IdealSSDState apply_Z_ssd(const IdealSSDState &s, double t) {
    IdealSSDState out = s;
    for (int l = 0; l < 2; l++) {
        out.gamma[l] = scaled(apply_Z(s.gamma[l], t), std::polar(1.0, s.code.alpha * l * t));
    }
    return out;
}

SSDState apply_X_ssd(const SSDState &s, double t) {
    require_gauge(s);
    const ZakGrid &g = s.gamma[0].grid();
    GaugeShift shift = gauge_shift(t, s.code.alpha, g.du(), true);
    auto nu = static_cast<int64_t>(g.nu());
    // exp(-2i alpha p v_k) for p in {-1, 0, 1}.
    std::array<std::vector<cd>, 3> period_phase;
    for (int p = -1; p <= 1; p++) {
        auto &row = period_phase[p + 1];
        row.resize(g.nv());
        for (size_t k = 0; k < g.nv(); k++) {
            row[k] = std::polar(1.0, -2 * s.code.alpha * p * g.v(static_cast<int64_t>(k)));
        }
    }
    SSDState out = empty_ssd(s.code, g);
    for (int l = 0; l < 2; l++) {
        for (int64_t j = 0; j < nu; j++) {
            int64_t jj = j + shift.cells;
            int64_t w = floor_div(jj, nu);
            auto jp = static_cast<size_t>(jj - w * nu);
            int64_t n = l + shift.periods + w;
            int64_t lp = n - 2 * floor_div(n, 2);
            int64_t p = floor_div(n, 2);
            for (size_t k = 0; k < g.nv(); k++) {
                cd phase = (p >= -1 && p <= 1) ? period_phase[p + 1][k]
                                               : std::polar(1.0, -2 * s.code.alpha * static_cast<double>(p) *
                                                                     g.v(static_cast<int64_t>(k)));
                out.gamma[lp].at(jp, k) = phase * s.gamma[l](static_cast<size_t>(j), k);
            }
        }
    }
    return out;
}

IdealSSDState apply_X_ssd(const IdealSSDState &s, double t) {
    GaugeShift shift = gauge_shift(t, s.code.alpha, 0, false);
    IdealSSDState out = IdealSSDState::empty(s.code);
    for (int l = 0; l < 2; l++) {
        for (const auto &pt : s.gamma[l].points()) {
            auto d = centered_decompose(pt.u + shift.frac, s.code.alpha, s.code.alpha / 2);
            int64_t n = l + shift.periods + d.multiple;
            int64_t lp = n - 2 * floor_div(n, 2);
            int64_t p = floor_div(n, 2);
            out.gamma[lp].add(
                d.frac, pt.v, pt.weight * std::polar(1.0, -2 * s.code.alpha * static_cast<double>(p) * pt.v));
        }
    }
    return out;
}

SSDState which_patch_z(const SSDState &s) {
    SSDState out = s;
    for (auto &x : out.gamma[1].mutable_samples()) {
        x = -x;
    }
    return out;
}

IdealSSDState which_patch_z(const IdealSSDState &s) {
    IdealSSDState out = s;
    out.gamma[1] = scaled(s.gamma[1], -1);
    return out;
}

cd PPCoefficients::operator()(int l, int64_t m, size_t j) const {
    auto half = static_cast<int64_t>(grid.nv() / 2);
    return coefficients[l][static_cast<size_t>(m + half) * grid.nu() + j];
}

namespace {

// twiddle[(m + Nv/2) * Nv + k] = exp(2i alpha m v_k).
std::vector<cd> pp_twiddles(double alpha, const ZakGrid &g) {
    size_t nv = g.nv();
    auto half = static_cast<int64_t>(nv / 2);
    std::vector<cd> tw(nv * nv);
    for (size_t mi = 0; mi < nv; mi++) {
        double m = static_cast<double>(static_cast<int64_t>(mi) - half);
        for (size_t k = 0; k < nv; k++) {
            tw[mi * nv + k] = std::polar(1.0, 2 * alpha * m * g.v(static_cast<int64_t>(k)));
        }
    }
    return tw;
}

}  // namespace

PPCoefficients pp_bridge(const SSDState &s) {
    require_gauge(s);
    const ZakGrid &g = s.gamma[0].grid();
    size_t nu = g.nu();
    size_t nv = g.nv();
    std::vector<cd> tw = pp_twiddles(s.code.alpha, g);
    double scale = std::sqrt(s.code.alpha / kPi) * g.dv();
    PPCoefficients pp{s.code, g, {std::vector<cd>(nu * nv), std::vector<cd>(nu * nv)}};
    for (int l = 0; l < 2; l++) {
        for (size_t mi = 0; mi < nv; mi++) {
            for (size_t j = 0; j < nu; j++) {
                cd total = 0;
                for (size_t k = 0; k < nv; k++) {
                    total += tw[mi * nv + k] * s.gamma[l](j, k);
                }
                pp.coefficients[l][mi * nu + j] = scale * total;
            }
        }
    }
    return pp;
}

SSDState pp_reassemble(const PPCoefficients &pp) {
    const ZakGrid &g = pp.grid;
    size_t nu = g.nu();
    size_t nv = g.nv();
    std::vector<cd> tw = pp_twiddles(pp.code.alpha, g);
    double scale = std::sqrt(pp.code.alpha / kPi);
    SSDState s = empty_ssd(pp.code, g);
    for (int l = 0; l < 2; l++) {
        for (size_t j = 0; j < nu; j++) {
            for (size_t k = 0; k < nv; k++) {
                cd total = 0;
                for (size_t mi = 0; mi < nv; mi++) {
                    total += std::conj(tw[mi * nv + k]) * pp.coefficients[l][mi * nu + j];
                }
                s.gamma[l].at(j, k) = scale * total;
            }
        }
    }
    return s;
}

void export_ssd(const SSDState &s, const std::filesystem::path &prefix) {
    require_gauge(s);
    std::string line = "alpha=" + format_double(s.code.alpha);
    for (int l = 0; l < 2; l++) {
        std::filesystem::path file = prefix;
        file += ".l" + std::to_string(l) + ".bin";
        atomic_write_file(file, grid_to_binary(s.gamma[l]));
        line += ",l" + std::to_string(l) + "=" + file.filename().string();
    }
    const ZakGrid &g = s.gamma[0].grid();
    line += ",Nu=" + std::to_string(g.nu()) + ",Nv=" + std::to_string(g.nv()) + "\n";
    std::filesystem::path manifest = prefix;
    manifest += ".manifest";
    atomic_write_file(manifest, line);
}

}  // namespace zakgkp
