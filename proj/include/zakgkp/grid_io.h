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

#ifndef ZAKGKP_GRID_IO_H
#define ZAKGKP_GRID_IO_H

#include <filesystem>
#include <string>
#include <string_view>

#include "zakgkp/zak_core.h"

namespace zakgkp {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Text grid: a "u_min,du,Nu,v_min,dv,Nv" header and its values, then "j,k,re,im" rows, j outer.
std::string grid_to_csv(const ModularWavefunction &psi);

/// Parses grid_to_csv output. The periods are recovered as a = Nu du and b = 2pi / (Nv dv).
ModularWavefunction grid_from_csv(std::string_view text);

/// Little-endian binary grid.
///
/// 48-byte header: magic "ZAKG", version u32 (= 1), Nu u32, Nv u32, then a, b, u_min, v_min as f64.
/// Followed by Nu * Nv (re, im) f64 pairs, j outer.
std::string grid_to_binary(const ModularWavefunction &psi);
ModularWavefunction grid_from_binary(std::string_view bytes);

/// "j,k,u,v,abs,arg" rows.
std::string grid_polar_csv(const ModularWavefunction &psi);

/// "u,v,re,im" rows, one per point.
std::string ideal_points_csv(const IdealZakState &state);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write_file(const std::filesystem::path &path, std::string_view contents);

std::string read_file(const std::filesystem::path &path);

}  // namespace zakgkp

#endif
