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

#include "zakgkp/grid_io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace zakgkp {

namespace {

constexpr std::array<char, 4> kMagic{'Z', 'A', 'K', 'G'};
constexpr uint32_t kVersion = 1;
constexpr size_t kHeaderBytes = 48;

template <typename T>
void put_le(std::string &out, T value) {
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    out.append(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::string_view in, size_t offset) {
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), in.data() + offset, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

double parse_double(std::string_view s) {
    double x;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    return x;
}

size_t parse_size(std::string_view s) {
    size_t x;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a count: '" + std::string(s) + "'");
    }
    return x;
}

}  // namespace

std::string format_double(double x) {
    std::array<char, 32> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

std::string grid_to_csv(const ModularWavefunction &psi) {
    const ZakGrid &g = psi.grid();
    std::string out = "u_min,du,Nu,v_min,dv,Nv\n";
    out += format_double(g.patch().u_min) + "," + format_double(g.du()) + "," + std::to_string(g.nu()) + "," +
           format_double(g.patch().v_min) + "," + format_double(g.dv()) + "," + std::to_string(g.nv()) + "\n";
    out += "j,k,re,im\n";
    for (size_t j = 0; j < g.nu(); j++) {
        for (size_t k = 0; k < g.nv(); k++) {
            cd s = psi(j, k);
            out += std::to_string(j) + "," + std::to_string(k) + "," + format_double(s.real()) + "," +
                   format_double(s.imag()) + "\n";
        }
    }
    return out;
}

ModularWavefunction grid_from_csv(std::string_view text) {
    auto lines = split(text, '\n');
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.size() < 3 || lines[0] != "u_min,du,Nu,v_min,dv,Nv" || lines[2] != "j,k,re,im") {
        throw std::invalid_argument("grid CSV: missing header rows");
    }
    auto h = split(lines[1], ',');
    if (h.size() != 6) {
        throw std::invalid_argument("grid CSV: header needs 6 values");
    }
    double u_min = parse_double(h[0]);
    double du = parse_double(h[1]);
    size_t nu = parse_size(h[2]);
    double v_min = parse_double(h[3]);
    double dv = parse_double(h[4]);
    size_t nv = parse_size(h[5]);
    double a = du * static_cast<double>(nu);
    double b = 2 * std::numbers::pi / (dv * static_cast<double>(nv));
    ZakGrid grid({a, b, u_min, v_min}, nu, nv);
    if (lines.size() - 3 != grid.size()) {
        throw std::invalid_argument("grid CSV: expected " + std::to_string(grid.size()) + " sample rows");
    }
    ModularWavefunction psi(grid);
    for (size_t i = 3; i < lines.size(); i++) {
        auto f = split(lines[i], ',');
        if (f.size() != 4) {
            throw std::invalid_argument("grid CSV: sample row needs 4 fields");
        }
        size_t j = parse_size(f[0]);
        size_t k = parse_size(f[1]);
        if (j >= nu || k >= nv) {
            throw std::invalid_argument("grid CSV: index out of range");
        }
        psi.at(j, k) = {parse_double(f[2]), parse_double(f[3])};
    }
    return psi;
}

std::string grid_to_binary(const ModularWavefunction &psi) {
    const ZakGrid &g = psi.grid();
    std::string out;
    out.reserve(kHeaderBytes + 16 * g.size());
    out.append(kMagic.data(), kMagic.size());
    put_le<uint32_t>(out, kVersion);
    put_le<uint32_t>(out, static_cast<uint32_t>(g.nu()));
    put_le<uint32_t>(out, static_cast<uint32_t>(g.nv()));
    put_le<double>(out, g.patch().a);
    put_le<double>(out, g.patch().b);
    put_le<double>(out, g.patch().u_min);
    put_le<double>(out, g.patch().v_min);
    for (const auto &s : psi.samples()) {
        put_le<double>(out, s.real());
        put_le<double>(out, s.imag());
    }
    return out;
}

ModularWavefunction grid_from_binary(std::string_view bytes) {
    if (bytes.size() < kHeaderBytes || bytes.substr(0, 4) != std::string_view(kMagic.data(), 4)) {
        throw std::invalid_argument("binary grid: bad magic");
    }
    if (get_le<uint32_t>(bytes, 4) != kVersion) {
        throw std::invalid_argument("binary grid: unsupported version");
    }
    size_t nu = get_le<uint32_t>(bytes, 8);
    size_t nv = get_le<uint32_t>(bytes, 12);
    ZakPatch patch{get_le<double>(bytes, 16), get_le<double>(bytes, 24), get_le<double>(bytes, 32),
                   get_le<double>(bytes, 40)};
    ZakGrid grid(patch, nu, nv);
    if (bytes.size() != kHeaderBytes + 16 * grid.size()) {
        throw std::invalid_argument("binary grid: payload size does not match header");
    }
    std::vector<cd> samples(grid.size());
    for (size_t i = 0; i < samples.size(); i++) {
        size_t at = kHeaderBytes + 16 * i;
        samples[i] = {get_le<double>(bytes, at), get_le<double>(bytes, at + 8)};
    }
    return ModularWavefunction(grid, std::move(samples));
}

std::string grid_polar_csv(const ModularWavefunction &psi) {
    const ZakGrid &g = psi.grid();
    std::string out = "j,k,u,v,abs,arg\n";
    for (size_t j = 0; j < g.nu(); j++) {
        for (size_t k = 0; k < g.nv(); k++) {
            cd s = psi(j, k);
            out += std::to_string(j) + "," + std::to_string(k) + "," + format_double(g.u(static_cast<int64_t>(j))) +
                   "," + format_double(g.v(static_cast<int64_t>(k))) + "," + format_double(std::abs(s)) + "," +
                   format_double(std::arg(s)) + "\n";
        }
    }
    return out;
}

std::string ideal_points_csv(const IdealZakState &state) {
    std::string out = "u,v,re,im\n";
    for (const auto &p : state.points()) {
        out += format_double(p.u) + "," + format_double(p.v) + "," + format_double(p.weight.real()) + "," +
               format_double(p.weight.imag()) + "\n";
    }
    return out;
}

void atomic_write_file(const std::filesystem::path &path, std::string_view contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        }
        f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        f.flush();
        if (!f) {
            throw std::runtime_error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace zakgkp
