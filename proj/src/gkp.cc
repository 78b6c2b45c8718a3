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

#include "zakgkp/gkp.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "zakgkp/errors.h"

namespace zakgkp {

namespace {

constexpr double kPi = std::numbers::pi;

bool close(double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)) + 1e-300;
}

void require_qubit(const GKPCode &code) {
    code.validate();
    if (code.K != 2) {
        throw std::invalid_argument("logical maps are defined for K = 2, got K = " + std::to_string(code.K));
    }
}

void require_code_patch(const ZakPatch &patch, const GKPCode &code) {
    ZakPatch expected = code.patch();
    if (!close(patch.a, expected.a) || !close(patch.b, expected.b) || !close(patch.u_min, expected.u_min) ||
        !close(patch.v_min, expected.v_min)) {
        throw GridMismatchError("state does not live on the code's standard patch");
    }
}

// Per-cell amplitudes, optionally with the error-correction counter-rotation.
void accumulate_grid(Matrix2 &m, double p, const ModularWavefunction &psi, const GKPCode &code, bool ec) {
    require_code_patch(psi.grid().patch(), code);
    const ZakGrid &grid = psi.grid();
    size_t half = grid.nu() / 2;
    std::vector<cd> rotation(grid.nv(), cd{1});
    if (ec) {
        for (size_t k = 0; k < grid.nv(); k++) {
            rotation[k] = std::polar(1.0, -code.alpha * grid.v(static_cast<int64_t>(k)));
        }
    }
    Matrix2 acc{};
    for (size_t j = 0; j < half; j++) {
        for (size_t k = 0; k < grid.nv(); k++) {
            cd c0 = psi(j, k);
            cd c1 = psi(j + half, k) * rotation[k];
            acc[0][0] += c0 * std::conj(c0);
            acc[0][1] += c0 * std::conj(c1);
            acc[1][0] += c1 * std::conj(c0);
            acc[1][1] += c1 * std::conj(c1);
        }
    }
    double cell = grid.du() * grid.dv();
    for (int l = 0; l < 2; l++) {
        for (int lp = 0; lp < 2; lp++) {
            m[l][lp] += p * cell * acc[l][lp];
        }
    }
}

void accumulate_ideal(Matrix2 &m, double p, const IdealZakState &state, const GKPCode &code, bool ec) {
    require_code_patch(state.patch(), code);
    double tol_u = 1e-10 * code.alpha;
    double tol_v = 1e-10 * kPi / code.alpha;
    std::vector<std::pair<double, double>> cells;
    for (const auto &pt : state.points()) {
        double u = frac_part(pt.u, code.alpha, code.alpha / 2);
        bool seen = false;
        for (const auto &c : cells) {
            if (std::abs(c.first - u) <= tol_u && std::abs(c.second - pt.v) <= tol_v) {
                seen = true;
                break;
            }
        }
        if (!seen) {
            cells.emplace_back(u, pt.v);
        }
    }
    for (const auto &[u, v] : cells) {
        std::array<cd, 2> c{state.weight_at(u, v), state.weight_at(u + code.alpha, v)};
        if (ec) {
            c[1] *= std::polar(1.0, -code.alpha * v);
        }
        for (int l = 0; l < 2; l++) {
            for (int lp = 0; lp < 2; lp++) {
                m[l][lp] += p * c[l] * std::conj(c[lp]);
            }
        }
    }
}

LogicalQubit logical_map(const MixtureState &rho, const GKPCode &code, bool ec) {
    require_qubit(code);
    Matrix2 m{};
    for (const auto &[p, state] : rho.components()) {
        if (const auto *psi = std::get_if<ModularWavefunction>(&state)) {
            accumulate_grid(m, p, *psi, code, ec);
        } else {
            accumulate_ideal(m, p, std::get<IdealZakState>(state), code, ec);
        }
    }
    return LogicalQubit::from_unnormalized(m);
}

}  // namespace

void GKPCode::validate() const {
    if (!(alpha > 0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("alpha must be positive and finite");
    }
    if (K < 2) {
        throw std::invalid_argument("K must be at least 2");
    }
}

IdealZakState codeword(const GKPCode &code, int l) {
    code.validate();
    if (l < 0 || l >= code.K) {
        throw std::invalid_argument("codeword index " + std::to_string(l) + " outside [0, K)");
    }
    IdealZakState state(code.patch());
    state.add(code.a() / code.K * l, 0, 1);
    return state;
}

PositionStateDescriptor approx_codeword(const GKPCode &code, int l, double delta) {
    code.validate();
    if (!(delta > 0)) {
        throw std::invalid_argument("delta must be positive");
    }
    return PositionStateDescriptor::gaussian_comb(code.a(), delta * delta, 1 / (delta * delta), code.a() / code.K * l);
}

StabilizerResiduals stabilizer_residual(const ModularWavefunction &psi, const GKPCode &code) {
    const ZakGrid &grid = psi.grid();
    double s1 = 0;
    double s2 = 0;
    double q = 2 * kPi * code.K / code.a();
    for (size_t j = 0; j < grid.nu(); j++) {
        double u = grid.u(static_cast<int64_t>(j));
        cd g2 = std::polar(1.0, q * u) - 1.0;
        for (size_t k = 0; k < grid.nv(); k++) {
            cd g1 = std::polar(1.0, -code.a() * grid.v(static_cast<int64_t>(k))) - 1.0;
            double p = std::norm(psi(j, k));
            s1 += std::norm(g1) * p;
            s2 += std::norm(g2) * p;
        }
    }
    double cell = grid.du() * grid.dv();
    return {std::sqrt(s1 * cell), std::sqrt(s2 * cell)};
}

StabilizerResiduals stabilizer_residual(const IdealZakState &state, const GKPCode &code) {
    double s1 = 0;
    double s2 = 0;
    double q = 2 * kPi * code.K / code.a();
    for (const auto &p : state.points()) {
        double w = std::norm(p.weight);
        s1 += std::norm(std::polar(1.0, -code.a() * p.v) - 1.0) * w;
        s2 += std::norm(std::polar(1.0, q * p.u) - 1.0) * w;
    }
    return {std::sqrt(s1), std::sqrt(s2)};
}

Syndrome syndrome_reduce(const GKPCode &code, double s, double t) {
    code.validate();
    double vp = kPi / code.alpha;
    auto reduce = [](double x, double period) {
        double r = frac_part(x, period, period / 2);
        return period / 2 - r <= 1e-12 * period * std::max(1.0, std::abs(x) / period) ? r - period : r;
    };
    return {s, t, reduce(s, code.alpha), reduce(t, vp)};
}

std::array<cd, 2> ec_kraus_amplitudes(
    const ModularWavefunction &psi, const GKPCode &code, const Syndrome &syndrome, Interpolation interpolation) {
    require_qubit(code);
    require_code_patch(psi.grid().patch(), code);
    std::array<cd, 2> c;
    for (int l = 0; l < 2; l++) {
        ExtendedValue e = evaluate_extended(psi, syndrome.u_tilde + code.alpha * l, syndrome.v_tilde);
        if (e.interpolated && interpolation == Interpolation::none) {
            throw OffGridError("ec_kraus_amplitudes: syndrome does not sit on a grid node");
        }
        c[l] = std::polar(1.0, -code.alpha * l * syndrome.v_tilde) * e.value;
    }
    return c;
}

std::array<cd, 2> ec_kraus_amplitudes(const IdealZakState &state, const GKPCode &code, const Syndrome &syndrome) {
    require_qubit(code);
    require_code_patch(state.patch(), code);
    std::array<cd, 2> c;
    for (int l = 0; l < 2; l++) {
        c[l] = std::polar(1.0, -code.alpha * l * syndrome.v_tilde) *
               state.weight_at(syndrome.u_tilde + code.alpha * l, syndrome.v_tilde);
    }
    return c;
}

LogicalQubit LogicalQubit::from_unnormalized(const Matrix2 &unnormalized) {
    double trace = unnormalized[0][0].real() + unnormalized[1][1].real();
    if (!(trace > 0)) {
        throw DegenerateLogicalError(
            "state has no weight on the correctable patch translates (raw trace " + std::to_string(trace) + ")",
            trace);
    }
    LogicalQubit q;
    q.raw_trace_ = trace;
    for (int l = 0; l < 2; l++) {
        for (int lp = 0; lp < 2; lp++) {
            q.rho_[l][lp] = unnormalized[l][lp] / trace;
        }
    }
    return q;
}

BlochVector LogicalQubit::bloch() const {
    return {2 * rho_[0][1].real(), -2 * rho_[0][1].imag(), rho_[0][0].real() - rho_[1][1].real()};
}

double LogicalQubit::purity() const {
    double total = 0;
    for (const auto &row : rho_) {
        for (const auto &x : row) {
            total += std::norm(x);
        }
    }
    return total;
}

double LogicalQubit::fidelity(int l) const {
    return rho_[l][l].real();
}

LogicalQubit logical_from_overlap(const MixtureState &rho, const GKPCode &code) {
    return logical_map(rho, code, false);
}

LogicalQubit ec_channel_logical(const MixtureState &rho, const GKPCode &code) {
    return logical_map(rho, code, true);
}

}  // namespace zakgkp
