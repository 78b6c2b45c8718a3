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

#ifndef ZAKGKP_SSD_H
#define ZAKGKP_SSD_H

#include <array>
#include <filesystem>
#include <variant>
#include <vector>

#include "zakgkp/gkp.h"

namespace zakgkp {

/// Gauge-mode patch [-alpha/2, alpha/2) x [-pi/(2 alpha), pi/(2 alpha)): stretched with a = alpha, b = 2 alpha,
/// so |u + alpha, v>_G = exp(-2i alpha v) |u, v>_G.
ZakPatch gauge_patch(const GKPCode &code);

/// Gauge grid matching a full-patch grid: Nu/2 u-samples and the same Nv, hence the same du and dv.
ZakGrid gauge_grid(const GKPCode &code, const ZakGrid &full);

/// psi = sum_l |l>_L (x) |gamma_l>_G with gamma_l(u, v) = psi(u + alpha l, v) on the gauge grid.
struct SSDState {
    GKPCode code;
    std::array<ModularWavefunction, 2> gamma;
};

/// Ideal counterpart: per-l gauge point masses on the gauge patch.
struct IdealSSDState {
    GKPCode code;
    std::array<IdealZakState, 2> gamma;

    static IdealSSDState empty(const GKPCode &code);
};

/// Splits the full patch into its left (l = 0) and right (l = 1) halves; no phases are introduced.
SSDState to_ssd(const ModularWavefunction &psi, const GKPCode &code);
IdealSSDState to_ssd(const IdealZakState &state, const GKPCode &code);

/// Same decomposition through |u,v> = exp(2iv[u]_alpha) |[u]_alpha/alpha>_L (x) |u,v>_G, with the raw gauge
/// coordinate folded back into the gauge patch by its quasi-periodicity.
SSDState to_ssd_alternate(const ModularWavefunction &psi, const GKPCode &code);
IdealSSDState to_ssd_alternate(const IdealZakState &state, const GKPCode &code);

ModularWavefunction from_ssd(const SSDState &s);
IdealZakState from_ssd(const IdealSSDState &s);

using SSDPureState = std::variant<SSDState, IdealSSDState>;
using SSDMixture = Mixture<SSDPureState>;

SSDMixture to_ssd(const MixtureState &rho, const GKPCode &code);

/// rho_{l l'} = sum_n p_n int gamma_l conj(gamma_l') du dv, trace-normalized.
LogicalQubit gauge_trace(const SSDMixture &rho);

/// gauge_trace after gamma_l -> exp(-i alpha l v) gamma_l.
LogicalQubit ec_gauge_trace(const SSDMixture &rho);

/// Gauge-mode measurement form of error correction: c_l = exp(-i alpha l v~) gamma_l(u~, v~).
std::array<cd, 2> ec_ssd_amplitudes(const SSDState &s, const Syndrome &syndrome);
std::array<cd, 2> ec_ssd_amplitudes(const IdealSSDState &s, const Syndrome &syndrome);

/// Z(t) = exp(i alpha l t) (x) T^V_G(t) P^U_G(t).
SSDState apply_Z_ssd(const SSDState &s, double t);
IdealSSDState apply_Z_ssd(const IdealSSDState &s, double t);

/// X(t) with t = n alpha + f, f = {t}_alpha. The gauge coordinate moves by f; crossing the gauge patch
/// boundary w = -1, 0 or 1 times changes the logical index to l' = (l + n + w) mod 2 and, for every
/// whole full-patch period 2 alpha p with p = floor((l + n + w) / 2), multiplies by exp(-2i alpha p v).
SSDState apply_X_ssd(const SSDState &s, double t);
IdealSSDState apply_X_ssd(const IdealSSDState &s, double t);

/// exp(i pi l): flips the sign of gamma_1.
SSDState which_patch_z(const SSDState &s);
IdealSSDState which_patch_z(const IdealSSDState &s);

/// Partitioned-position gauge coefficients
///   psi_l(m, u_j) = sqrt(alpha/pi) sum_k exp(+2i alpha m v_k) gamma_l(u_j, v_k) dv,  m in [-Nv/2, Nv/2),
/// inverted by gamma_l(u_j, v_k) = sqrt(alpha/pi) sum_m exp(-2i alpha m v_k) psi_l(m, u_j).
/// A gauge function exp(2i alpha v) f(u) therefore sits entirely at m = -1.
struct PPCoefficients {
    GKPCode code;
    ZakGrid grid;
    /// coefficients[l][(m + Nv/2) * Nu_G + j].
    std::array<std::vector<cd>, 2> coefficients;

    cd operator()(int l, int64_t m, size_t j) const;
};

PPCoefficients pp_bridge(const SSDState &s);
SSDState pp_reassemble(const PPCoefficients &pp);

/// Writes <prefix>.l0.bin and <prefix>.l1.bin in the binary grid format and a one-line
/// <prefix>.manifest naming them.
void export_ssd(const SSDState &s, const std::filesystem::path &prefix);

}  // namespace zakgkp

#endif
