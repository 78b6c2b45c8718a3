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

#include "zakgkp/operators.h"

#include <cmath>
#include <string>

#include "zakgkp/errors.h"

namespace zakgkp {

namespace {

struct CellShift {
    int64_t periods;
    int64_t cells;
};

// Splits t into whole periods and a remainder in [0, period) counted in grid cells.
std::optional<CellShift> cell_shift(double t, double period, double step) {
    auto d = centered_decompose(t, period, 0);
    double cells = d.frac / step;
    double r = std::nearbyint(cells);
    if (std::abs(cells - r) > 1e-9) {
        return std::nullopt;
    }
    return CellShift{d.multiple, static_cast<int64_t>(r)};
}

[[noreturn]] void throw_off_grid(const char *op, double t, double step) {
    throw OffGridError(
        std::string(op) + ": shift " + std::to_string(t) + " is not a multiple of the grid step " +
        std::to_string(step) + " (enable interpolation to allow it)");
}

template <typename F>
ModularWavefunction map_samples(const ModularWavefunction &psi, F &&f) {
    const ZakGrid &grid = psi.grid();
    ModularWavefunction out(grid);
    for (size_t j = 0; j < grid.nu(); j++) {
        for (size_t k = 0; k < grid.nv(); k++) {
            out.at(j, k) = f(static_cast<int64_t>(j), static_cast<int64_t>(k));
        }
    }
    return out;
}

template <typename F>
IdealZakState map_points(const IdealZakState &state, F &&f) {
    IdealZakState out(state.patch());
    for (const auto &p : state.points()) {
        f(out, p);
    }
    return out;
}

}  // namespace

ModularWavefunction apply_phase_u(const ModularWavefunction &psi, double t) {
    const ZakGrid &grid = psi.grid();
    return map_samples(psi, [&](int64_t j, int64_t k) {
        return std::polar(1.0, grid.u(j) * t) * psi(j, k);
    });
}

IdealZakState apply_phase_u(const IdealZakState &state, double t) {
    return map_points(state, [&](IdealZakState &out, const ZakPoint &p) {
        out.add(p.u, p.v, std::polar(1.0, p.u * t) * p.weight);
    });
}

ModularWavefunction apply_phase_v(const ModularWavefunction &psi, double t) {
    const ZakGrid &grid = psi.grid();
    return map_samples(psi, [&](int64_t j, int64_t k) {
        return std::polar(1.0, grid.v(k) * t) * psi(j, k);
    });
}

IdealZakState apply_phase_v(const IdealZakState &state, double t) {
    return map_points(state, [&](IdealZakState &out, const ZakPoint &p) {
        out.add(p.u, p.v, std::polar(1.0, p.v * t) * p.weight);
    });
}

ModularWavefunction apply_translate_u(const ModularWavefunction &psi, double t, Interpolation interpolation) {
    const ZakGrid &grid = psi.grid();
    auto shift = cell_shift(t, grid.patch().a, grid.du());
    if (!shift) {
        if (interpolation == Interpolation::none) {
            throw_off_grid("apply_translate_u", t, grid.du());
        }
        return map_samples(psi, [&](int64_t j, int64_t k) {
            return evaluate_extended(psi, grid.u(j) - t, grid.v(k)).value;
        });
    }
    std::vector<cd> period_phase(grid.nv(), cd{1});
    if (shift->periods != 0) {
        double angle = -static_cast<double>(shift->periods) * grid.patch().b;
        for (size_t k = 0; k < grid.nv(); k++) {
            period_phase[k] = std::polar(1.0, angle * grid.v(static_cast<int64_t>(k)));
        }
    }
    return map_samples(psi, [&](int64_t j, int64_t k) {
        return period_phase[k] * psi.sample_extended(j - shift->cells, k);
    });
}

IdealZakState apply_translate_u(const IdealZakState &state, double t) {
    return map_points(state, [&](IdealZakState &out, const ZakPoint &p) {
        out.add(p.u + t, p.v, p.weight);
    });
}

ModularWavefunction apply_translate_v(const ModularWavefunction &psi, double t, Interpolation interpolation) {
    const ZakGrid &grid = psi.grid();
    auto shift = cell_shift(t, grid.patch().v_period(), grid.dv());
    if (!shift) {
        if (interpolation == Interpolation::none) {
            throw_off_grid("apply_translate_v", t, grid.dv());
        }
        return map_samples(psi, [&](int64_t j, int64_t k) {
            return evaluate_extended(psi, grid.u(j), grid.v(k) - t).value;
        });
    }
    return map_samples(psi, [&](int64_t j, int64_t k) {
        return psi.sample_extended(j, k - shift->cells);
    });
}

IdealZakState apply_translate_v(const IdealZakState &state, double t) {
    return map_points(state, [&](IdealZakState &out, const ZakPoint &p) {
        out.add(p.u, p.v + t, p.weight);
    });
}

ModularWavefunction apply_X(const ModularWavefunction &psi, double t, Interpolation interpolation) {
    return apply_translate_u(psi, t, interpolation);
}

IdealZakState apply_X(const IdealZakState &state, double t) {
    return apply_translate_u(state, t);
}

ModularWavefunction apply_Z(const ModularWavefunction &psi, double t, Interpolation interpolation) {
    return apply_phase_u(apply_translate_v(psi, t, interpolation), t);
}

IdealZakState apply_Z(const IdealZakState &state, double t) {
    return apply_phase_u(apply_translate_v(state, t), t);
}

IdealZakState apply_phase_u_unrestricted(std::span<const ZakPoint> raw, const ZakPatch &patch, double t) {
    IdealZakState out(patch);
    for (const auto &p : raw) {
        double u = frac_part(p.u, patch.a, -patch.u_min);
        out.add(p.u, p.v, std::polar(1.0, t * u) * p.weight);
    }
    return out;
}

ModularWavefunction stretched_translate_u(const ModularWavefunction &psi, double t, Interpolation interpolation) {
    return apply_translate_u(psi, t, interpolation);
}

ModularWavefunction stretched_translate_v(const ModularWavefunction &psi, double t, Interpolation interpolation) {
    return apply_translate_v(psi, t, interpolation);
}

ModularExpectations modular_expectations(const ModularWavefunction &psi, double tolerance) {
    const ZakGrid &grid = psi.grid();
    double norm = psi.norm_squared();
    if (!(std::abs(norm - 1) <= tolerance)) {
        throw NormalizationError("modular_expectations needs a normalized state, norm^2 = " + std::to_string(norm), norm);
    }
    double eu = 0;
    double ev = 0;
    for (size_t j = 0; j < grid.nu(); j++) {
        for (size_t k = 0; k < grid.nv(); k++) {
            double p = std::norm(psi(j, k));
            eu += grid.u(static_cast<int64_t>(j)) * p;
            ev += grid.v(static_cast<int64_t>(k)) * p;
        }
    }
    double cell = grid.du() * grid.dv();
    return {eu * cell, ev * cell};
}

namespace {

void check_patch(const ZakPatch &expected, const ZakPatch &actual) {
    if (!(expected == actual)) {
        throw GridMismatchError("operator patch does not match the state's patch");
    }
}

}  // namespace

ModularWavefunction ModularOperator::apply(const ModularWavefunction &psi) const {
    check_patch(patch, psi.grid().patch());
    switch (kind) {
        case Kind::P_U:
            return apply_phase_u(psi, t);
        case Kind::P_V:
            return apply_phase_v(psi, t);
        case Kind::T_U:
            return apply_translate_u(psi, t);
        case Kind::T_V:
            return apply_translate_v(psi, t);
    }
    return psi;
}

IdealZakState ModularOperator::apply(const IdealZakState &state) const {
    check_patch(patch, state.patch());
    switch (kind) {
        case Kind::P_U:
            return apply_phase_u(state, t);
        case Kind::P_V:
            return apply_phase_v(state, t);
        case Kind::T_U:
            return apply_translate_u(state, t);
        case Kind::T_V:
            return apply_translate_v(state, t);
    }
    return state;
}

ModularWavefunction QuadratureShift::apply(const ModularWavefunction &psi) const {
    return kind == Kind::X ? apply_X(psi, t) : apply_Z(psi, t);
}

IdealZakState QuadratureShift::apply(const IdealZakState &state) const {
    return kind == Kind::X ? apply_X(state, t) : apply_Z(state, t);
}

}  // namespace zakgkp
