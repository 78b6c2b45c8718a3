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

#ifndef ZAKGKP_GKP_H
#define ZAKGKP_GKP_H

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "zakgkp/operators.h"
#include "zakgkp/zak_core.h"

namespace zakgkp {

/// Rectangular GKP code with codeword spacing alpha and logical dimension K.
///
/// The full patch has a = K alpha (standard, b = a). The logical maps are defined for K = 2, where the
/// correctable patch is P_G = [-alpha/2, alpha/2) x [-pi/(2 alpha), pi/(2 alpha)), the left half of P.
struct GKPCode {
    double alpha = std::sqrt(std::numbers::pi);
    int K = 2;

    double a() const {
        return K * alpha;
    }
    ZakPatch patch() const {
        return ZakPatch::standard(a());
    }
    /// Throws std::invalid_argument unless alpha > 0 and K >= 2.
    void validate() const;
};

/// |l_GKP> = |(a/K) l, 0>.
IdealZakState codeword(const GKPCode &code, int l);

/// Gaussian comb with spacing a, offset (a/K) l, tooth variance delta^2 and envelope variance delta^-2.
PositionStateDescriptor approx_codeword(const GKPCode &code, int l, double delta);

struct StabilizerResiduals {
    /// ||P^V(-a) psi - psi||.
    double r1;
    /// ||P^U(2 pi K / a) psi - psi||.
    double r2;
};

StabilizerResiduals stabilizer_residual(const ModularWavefunction &psi, const GKPCode &code);
StabilizerResiduals stabilizer_residual(const IdealZakState &state, const GKPCode &code);

struct Syndrome {
    double s;
    double t;
    double u_tilde;
    double v_tilde;
};

/// u~ = {s}_alpha (centered alpha/2), v~ = {t}_{pi/alpha} (centered pi/(2 alpha)).
Syndrome syndrome_reduce(const GKPCode &code, double s, double t);

/// c_l = exp(-i alpha l v~) psi(u~ + alpha l, v~), the post-correction amplitudes on |l_GKP>.
std::array<cd, 2> ec_kraus_amplitudes(
    const ModularWavefunction &psi,
    const GKPCode &code,
    const Syndrome &syndrome,
    Interpolation interpolation = Interpolation::none);
std::array<cd, 2> ec_kraus_amplitudes(const IdealZakState &state, const GKPCode &code, const Syndrome &syndrome);

using Matrix2 = std::array<std::array<cd, 2>, 2>;

struct BlochVector {
    double x;
    double y;
    double z;
};

/// Trace-normalized 2x2 logical density matrix plus the trace it had before normalization.
class LogicalQubit {
   public:
    /// Normalizes `unnormalized`; throws DegenerateLogicalError if its trace is not positive.
    static LogicalQubit from_unnormalized(const Matrix2 &unnormalized);

    const Matrix2 &rho() const {
        return rho_;
    }
    cd operator()(int l, int lp) const {
        return rho_[l][lp];
    }
    double raw_trace() const {
        return raw_trace_;
    }
    BlochVector bloch() const;
    double purity() const;
    /// <l|rho|l>.
    double fidelity(int l) const;

   private:
    Matrix2 rho_{};
    double raw_trace_ = 0;
};

/// Finite ensemble sum_n p_n |state_n><state_n|.
template <typename State>
class Mixture {
   public:
    /// Throws std::invalid_argument unless the list is nonempty, every p_n >= 0 and sum p_n = 1 to 1e-12.
    explicit Mixture(std::vector<std::pair<double, State>> components) : components_(std::move(components)) {
        if (components_.empty()) {
            throw std::invalid_argument("mixture needs at least one component");
        }
        double total = 0;
        for (const auto &c : components_) {
            if (!(c.first >= 0)) {
                throw std::invalid_argument("mixture probabilities must be nonnegative");
            }
            total += c.first;
        }
        if (std::abs(total - 1) > 1e-12) {
            throw std::invalid_argument("mixture probabilities must sum to 1");
        }
    }

    static Mixture pure(State state) {
        std::vector<std::pair<double, State>> c;
        c.emplace_back(1.0, std::move(state));
        return Mixture(std::move(c));
    }

    const std::vector<std::pair<double, State>> &components() const {
        return components_;
    }

   private:
    std::vector<std::pair<double, State>> components_;
};

using PureState = std::variant<ModularWavefunction, IdealZakState>;
using MixtureState = Mixture<PureState>;

/// rho_{l l'} = sum_n p_n int_{P_G} psi_n(u + alpha l, v) conj(psi_n(u + alpha l', v)) du dv.
///
/// Grid states use the left-Riemann rule on the P_G sub-grid; ideal states use delta pairing.
LogicalQubit logical_from_overlap(const MixtureState &rho, const GKPCode &code);

/// As logical_from_overlap with the counter-rotation exp(-i alpha (l - l') v) inside the integral:
/// the syndrome average of the outer products of ec_kraus_amplitudes.
LogicalQubit ec_channel_logical(const MixtureState &rho, const GKPCode &code);

}  // namespace zakgkp

#endif
