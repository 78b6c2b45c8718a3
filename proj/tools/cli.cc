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

#include "cli.h"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "zakgkp/errors.h"
#include "zakgkp/grid_io.h"
#include "zakgkp/ssd.h"

namespace zakgkp::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr size_t kShiftArrayDefaultGrid = 288;

double parse_number(std::string_view s, const std::string &what) {
    double x;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument("bad " + what + ": '" + std::string(s) + "'");
    }
    return x;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(item);
    }
    return out;
}

PositionStateDescriptor load_tabulated(const std::string &path) {
    std::string text = read_file(path);
    std::vector<double> xs;
    std::vector<cd> values;
    for (const auto &raw : split(text, '\n')) {
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) {
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 2 && f.size() != 3) {
            throw std::invalid_argument("tabulated state rows need x,re[,im]: '" + line + "'");
        }
        xs.push_back(parse_number(f[0], "tabulated x"));
        double im = f.size() == 3 ? parse_number(f[2], "tabulated value") : 0;
        values.emplace_back(parse_number(f[1], "tabulated value"), im);
    }
    return PositionStateDescriptor::tabulated(std::move(xs), std::move(values));
}

int target_logical(const std::string &spec) {
    if (spec == "gkp1") {
        return 1;
    }
    auto f = split(spec, ':');
    if (f.size() == 3 && f[0] == "gkp-approx") {
        return f[2] == "1" ? 1 : 0;
    }
    return 0;
}

std::string join_path(const std::string &base, const std::string &suffix) {
    return base + suffix;
}

void write_manifest(const std::filesystem::path &path, const RunConfig &config, const std::string &command) {
    atomic_write_file(path, config.manifest(command));
}

std::string grid_payload(const ModularWavefunction &psi, const std::string &format) {
    return format == "bin" ? grid_to_binary(psi) : grid_to_csv(psi);
}

void require_out(const RunConfig &config) {
    if (config.out.empty()) {
        throw std::invalid_argument("--out is required for this command");
    }
}

}  // namespace

RunConfig::RunConfig() : alpha(std::sqrt(kPi)) {
}

GKPCode RunConfig::code() const {
    GKPCode c{alpha, 2};
    c.validate();
    return c;
}

ZakGrid RunConfig::grid() const {
    return ZakGrid(code().patch(), nu, nv);
}

std::string RunConfig::manifest(const std::string &command) const {
    std::string m = "# " + command + "\n";
    m += "alpha=" + format_double(alpha) + "\n";
    m += "grid=" + std::to_string(nu) + "x" + std::to_string(nv) + "\n";
    m += "mmax=" + std::to_string(mmax) + "\n";
    m += "delta=" + format_double(delta) + "\n";
    m += "state=" + state + "\n";
    m += "format=" + format + "\n";
    m += "method=" + method + "\n";
    m += "seed=" + std::to_string(seed) + "\n";
    std::string ds;
    for (size_t i = 0; i < deltas.size(); i++) {
        ds += (i ? "," : "") + format_double(deltas[i]);
    }
    m += "deltas=" + ds + "\n";
    m += "jmax=" + std::to_string(j_max) + "\n";
    m += "kmax=" + std::to_string(k_max) + "\n";
    if (dx) {
        m += "dx=" + format_double(*dx) + "\n";
    }
    if (dy) {
        m += "dy=" + format_double(*dy) + "\n";
    }
    return m;
}

std::pair<size_t, size_t> parse_grid(const std::string &text) {
    auto x = text.find('x');
    if (x == std::string::npos) {
        throw std::invalid_argument("grid must look like NuxNv, got '" + text + "'");
    }
    size_t nu = 0;
    size_t nv = 0;
    auto a = std::from_chars(text.data(), text.data() + x, nu);
    auto b = std::from_chars(text.data() + x + 1, text.data() + text.size(), nv);
    if (a.ec != std::errc() || a.ptr != text.data() + x || b.ec != std::errc() ||
        b.ptr != text.data() + text.size()) {
        throw std::invalid_argument("grid must look like NuxNv, got '" + text + "'");
    }
    return {nu, nv};
}

StateSpec parse_state(const std::string &spec, const RunConfig &config) {
    GKPCode code = config.code();
    if (spec == "vacuum") {
        return PositionStateDescriptor::vacuum();
    }
    if (spec == "gkp0") {
        return codeword(code, 0);
    }
    if (spec == "gkp1") {
        return codeword(code, 1);
    }
    if (spec.rfind("tabulated:", 0) == 0) {
        return load_tabulated(spec.substr(10));
    }
    auto f = split(spec, ':');
    if (!f.empty() && f[0] == "gkp-approx" && f.size() <= 3) {
        double delta = f.size() >= 2 ? parse_number(f[1], "delta") : config.delta;
        int l = 0;
        if (f.size() == 3) {
            if (f[2] != "0" && f[2] != "1") {
                throw std::invalid_argument("gkp-approx logical index must be 0 or 1");
            }
            l = f[2] == "1";
        }
        if (!(delta > 0)) {
            throw std::invalid_argument("delta must be positive");
        }
        return approx_codeword(code, l, delta);
    }
    throw std::invalid_argument("unknown state spec '" + spec + "'");
}

ModularWavefunction prepare_grid_state(const PositionStateDescriptor &state, const RunConfig &config) {
    return zak_transform(state, config.grid(), config.mmax).psi;
}

std::string logical_report_header() {
    return "rho00_re,rho00_im,rho01_re,rho01_im,rho10_re,rho10_im,rho11_re,rho11_im,bloch_x,bloch_y,bloch_z,"
           "purity,raw_trace\n";
}

std::string logical_report_row(const LogicalQubit &q) {
    std::string row;
    for (int l = 0; l < 2; l++) {
        for (int lp = 0; lp < 2; lp++) {
            row += format_double(q(l, lp).real()) + "," + format_double(q(l, lp).imag()) + ",";
        }
    }
    BlochVector b = q.bloch();
    row += format_double(b.x) + "," + format_double(b.y) + "," + format_double(b.z) + ",";
    row += format_double(q.purity()) + "," + format_double(q.raw_trace()) + "\n";
    return row;
}

LogicalQubit logical_for(const StateSpec &state, const RunConfig &config) {
    GKPCode code = config.code();
    PureState pure = std::holds_alternative<IdealZakState>(state)
                         ? PureState(std::get<IdealZakState>(state))
                         : PureState(prepare_grid_state(std::get<PositionStateDescriptor>(state), config));
    MixtureState rho = MixtureState::pure(std::move(pure));
    if (config.method == "overlap") {
        return logical_from_overlap(rho, code);
    }
    SSDMixture ssd = to_ssd(rho, code);
    if (config.method == "ec-trace") {
        return ec_gauge_trace(ssd);
    }
    if (config.method == "trace") {
        return gauge_trace(ssd);
    }
    throw std::invalid_argument("unknown method '" + config.method + "'");
}

int cmd_zakplot(const RunConfig &config, std::ostream &out) {
    require_out(config);
    StateSpec state = parse_state(config.state, config);
    if (const auto *ideal = std::get_if<IdealZakState>(&state)) {
        atomic_write_file(config.out, ideal_points_csv(*ideal));
        out << "wrote " << config.out << " (" << ideal->points().size() << " points)\n";
    } else {
        auto result = zak_transform(std::get<PositionStateDescriptor>(state), config.grid(), config.mmax);
        atomic_write_file(config.out, grid_payload(result.psi, config.format));
        atomic_write_file(join_path(config.out, ".polar.csv"), grid_polar_csv(result.psi));
        out << "wrote " << config.out << " (" << config.nu << "x" << config.nv
            << ", tail mass " << format_double(result.tail_mass) << ")\n";
    }
    write_manifest(join_path(config.out, ".manifest"), config, "zakplot");
    return kExitOk;
}

int cmd_shift_array(const RunConfig &config_in, std::ostream &out) {
    require_out(config_in);
    RunConfig config = config_in;
    if (!config.grid_given) {
        config.nu = kShiftArrayDefaultGrid;
        config.nv = kShiftArrayDefaultGrid;
    }
    if (config.j_max < 0 || config.k_max < 0) {
        throw std::invalid_argument("jmax and kmax must be nonnegative");
    }
    GKPCode code = config.code();
    double a = code.a();
    double dx = config.dx.value_or(a / 3);
    double dy = config.dy.value_or(2 * kPi / a / 3);
    config.dx = dx;
    config.dy = dy;
    StateSpec state = parse_state(config.state, config);

    std::filesystem::path dir(config.out);
    std::filesystem::create_directories(dir);
    std::string ext = config.format == "bin" ? ".bin" : ".csv";
    std::string index = "j,k,x_shift,p_shift,re00,im00,abs00,arg00\n";

    std::optional<ModularWavefunction> psi;
    if (const auto *pos = std::get_if<PositionStateDescriptor>(&state)) {
        psi = prepare_grid_state(*pos, config);
    }
    for (int j = 0; j <= config.j_max; j++) {
        for (int k = 0; k <= config.k_max; k++) {
            double x = j * dx;
            double p = k * dy;
            std::string name = "panel_j" + std::to_string(j) + "_k" + std::to_string(k);
            cd origin;
            if (psi) {
                ModularWavefunction panel = apply_X(apply_Z(*psi, p), x);
                const ZakGrid &g = panel.grid();
                origin = panel(static_cast<size_t>(*g.u_index(0)), static_cast<size_t>(*g.v_index(0)));
                atomic_write_file(dir / (name + ext), grid_payload(panel, config.format));
            } else {
                IdealZakState panel = apply_X(apply_Z(std::get<IdealZakState>(state), p), x);
                origin = panel.weight_at(0, 0);
                atomic_write_file(dir / (name + ".csv"), ideal_points_csv(panel));
            }
            index += std::to_string(j) + "," + std::to_string(k) + "," + format_double(x) + "," + format_double(p) +
                     "," + format_double(origin.real()) + "," + format_double(origin.imag()) + "," +
                     format_double(std::abs(origin)) + "," + format_double(std::arg(origin)) + "\n";
        }
    }
    atomic_write_file(dir / "index.csv", index);
    write_manifest(dir / "manifest.txt", config, "shift-array");
    out << "shift-array: dx=" << format_double(dx) << " dy=" << format_double(dy) << " grid=" << config.nu << "x"
        << config.nv << " panels=" << (config.j_max + 1) * (config.k_max + 1) << " -> " << dir.string() << "\n";
    return kExitOk;
}

int cmd_logical(const RunConfig &config, std::ostream &out) {
    StateSpec state = parse_state(config.state, config);
    std::string report = logical_report_header() + logical_report_row(logical_for(state, config));
    if (!config.out.empty()) {
        atomic_write_file(config.out, report);
        write_manifest(join_path(config.out, ".manifest"), config, "logical");
    }
    out << report;
    return kExitOk;
}

int cmd_sweep(const RunConfig &config, std::ostream &out) {
    if (config.deltas.empty()) {
        throw std::invalid_argument("--deltas needs at least one value");
    }
    GKPCode code = config.code();
    int l = target_logical(config.state);
    std::string table = "delta,fidelity,purity,raw_trace,r1,r2\n";
    for (double delta : config.deltas) {
        if (!(delta > 0)) {
            throw std::invalid_argument("deltas must be positive");
        }
        ModularWavefunction psi = prepare_grid_state(approx_codeword(code, l, delta), config);
        LogicalQubit q = logical_for(StateSpec(approx_codeword(code, l, delta)), config);
        StabilizerResiduals r = stabilizer_residual(psi, code);
        table += format_double(delta) + "," + format_double(q.fidelity(l)) + "," + format_double(q.purity()) + "," +
                 format_double(q.raw_trace()) + "," + format_double(r.r1) + "," + format_double(r.r2) + "\n";
    }
    if (!config.out.empty()) {
        atomic_write_file(config.out, table);
        write_manifest(join_path(config.out, ".manifest"), config, "sweep");
    }
    out << table;
    return kExitOk;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig config;
    std::string grid_text;
    double dx = 0;
    double dy = 0;

    CLI::App app{"Zak-transform toolkit for GKP codes"};
    app.name("zakgkp");
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file ('#' comments); flags override it");
    app.add_option("--alpha", config.alpha, "Codeword spacing alpha (patch width a = 2 alpha)");
    auto *grid_opt = app.add_option("--grid", grid_text, "Samples as NuxNv (default 256x256; 288x288 for shift-array)");
    app.add_option("--mmax", config.mmax, "Comb-sum truncation M_max");
    app.add_option("--delta", config.delta, "Default delta for gkp-approx states");
    app.add_option("--state", config.state, "vacuum | gkp0 | gkp1 | gkp-approx:DELTA:L | tabulated:PATH");
    app.add_option("--out", config.out, "Output path (directory for shift-array)");
    app.add_option("--format", config.format, "Grid output format")->check(CLI::IsMember({"csv", "bin"}));
    app.add_option("--method", config.method, "Logical map")->check(CLI::IsMember({"trace", "ec-trace", "overlap"}));
    app.add_option("--seed", config.seed, "Seed recorded in the manifest");
    app.add_option("--deltas", config.deltas, "Sweep deltas, comma separated")->delimiter(',');
    app.add_option("--jmax", config.j_max, "Largest position step index for shift-array");
    app.add_option("--kmax", config.k_max, "Largest momentum step index for shift-array");
    auto *dx_opt = app.add_option("--dx", dx, "Position step for shift-array (default a/3)");
    auto *dy_opt = app.add_option("--dy", dy, "Momentum step for shift-array (default 2pi/(3a))");

    auto *zakplot = app.add_subcommand("zakplot", "Write the modular wavefunction of a state");
    auto *shift_array = app.add_subcommand("shift-array", "Write X(j dx) Z(k dy) applied to a state");
    auto *logical = app.add_subcommand("logical", "Report the logical qubit of a state");
    auto *sweep = app.add_subcommand("sweep", "Logical quality of approximate codewords versus delta");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (*grid_opt) {
            std::tie(config.nu, config.nv) = parse_grid(grid_text);
            config.grid_given = true;
        }
        if (*dx_opt) {
            config.dx = dx;
        }
        if (*dy_opt) {
            config.dy = dy;
        }
        config.grid();
        if (*zakplot) {
            return cmd_zakplot(config, out);
        }
        if (*shift_array) {
            return cmd_shift_array(config, out);
        }
        if (*logical) {
            return cmd_logical(config, out);
        }
        if (*sweep) {
            return cmd_sweep(config, out);
        }
    } catch (const TruncationError &e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const DegenerateLogicalError &e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const NormalizationError &e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}

}  // namespace zakgkp::cli
