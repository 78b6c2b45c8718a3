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

#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.h"
#include "zakgkp/grid_io.h"

using namespace zakgkp;
using namespace zakgkp::testing;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "zakgkp");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_table(const std::string &text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        rows.push_back(row);
    }
    return rows;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("zakgkp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override {
        std::filesystem::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, logical_on_ideal_codeword) {
    for (const char *method : {"trace", "ec-trace", "overlap"}) {
        auto r = run_cli({"logical", "--state", "gkp0", "--method", method});
        ASSERT_EQ(r.code, 0) << r.err;
        ASSERT_EQ(r.out.rfind(cli::logical_report_header(), 0), 0u);
        auto rows = parse_table(r.out);
        ASSERT_EQ(rows.size(), 1u);
        ASSERT_EQ(rows[0].size(), 13u);
        ASSERT_EQ(rows[0][10], 1);
        ASSERT_EQ(rows[0][11], 1);
    }
}

TEST_F(CliTest, logical_methods_agree) {
    auto trace = run_cli({"logical", "--state", "gkp-approx:0.2:0", "--grid", "128x128", "--method", "trace"});
    auto overlap = run_cli({"logical", "--state", "gkp-approx:0.2:0", "--grid", "128x128", "--method", "overlap"});
    ASSERT_EQ(trace.code, 0);
    auto a = parse_table(trace.out)[0];
    auto b = parse_table(overlap.out)[0];
    for (size_t i = 0; i < a.size(); i++) {
        ASSERT_NEAR(a[i], b[i], 1e-10) << i;
    }
}

TEST_F(CliTest, vacuum_logical_matches_oracle) {
    auto r = run_cli({"logical", "--state", "vacuum", "--out", path("vac.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto row = parse_table(r.out)[0];
    auto oracle = position_space_logical(vacuum_x, kAlpha, 256);
    double tr = (oracle[0][0] + oracle[1][1]).real();
    ASSERT_NEAR(row[0], oracle[0][0].real() / tr, 1e-12);
    ASSERT_NEAR(row[2], oracle[0][1].real() / tr, 1e-12);
    ASSERT_NEAR(row[6], oracle[1][1].real() / tr, 1e-12);
    ASSERT_EQ(read_file(path("vac.csv")), r.out);
    ASSERT_TRUE(std::filesystem::exists(path("vac.csv.manifest")));
}

TEST_F(CliTest, sweep_is_monotone_and_deterministic) {
    std::vector<std::string> args{"sweep", "--grid", "128x128", "--deltas", "0.5,0.3,0.1"};
    auto r = run_cli(args);
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(r.out.rfind("delta,fidelity,purity,raw_trace,r1,r2\n", 0), 0u);
    auto rows = parse_table(r.out);
    ASSERT_EQ(rows.size(), 3u);
    ASSERT_LT(rows[0][1], rows[1][1]);
    ASSERT_LT(rows[1][1], rows[2][1]);
    ASSERT_GT(rows[2][1], 1 - 1e-6);
    ASSERT_EQ(run_cli(args).out, r.out);
}

TEST_F(CliTest, zakplot_vacuum) {
    auto r = run_cli({"zakplot", "--state", "vacuum", "--grid", "64x64", "--out", path("vac.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::string first = read_file(path("vac.csv"));
    auto psi = grid_from_csv(first);
    size_t best = 0;
    for (size_t i = 0; i < psi.samples().size(); i++) {
        if (std::abs(psi.samples()[i]) > std::abs(psi.samples()[best])) {
            best = i;
        }
    }
    ASSERT_EQ(best, *psi.grid().u_index(0) * 64 + *psi.grid().v_index(0));
    ASSERT_NEAR(std::abs(psi.samples()[best]), kVacuumZakOrigin, 1e-12);
    ASSERT_TRUE(std::filesystem::exists(path("vac.csv.polar.csv")));
    std::string manifest = read_file(path("vac.csv.manifest"));
    ASSERT_NE(manifest.find("grid=64x64"), std::string::npos);
    ASSERT_NE(manifest.find("state=vacuum"), std::string::npos);

    ASSERT_EQ(run_cli({"zakplot", "--state", "vacuum", "--grid", "64x64", "--out", path("vac.csv")}).code, 0);
    ASSERT_EQ(read_file(path("vac.csv")), first);

    ASSERT_EQ(run_cli({"zakplot", "--state", "vacuum", "--grid", "64x64", "--format", "bin", "--out", path("v.bin")}).code, 0);
    ASSERT_EQ(max_abs_diff(grid_from_binary(read_file(path("v.bin"))), psi), 0);
}

TEST_F(CliTest, zakplot_ideal_codeword) {
    auto r = run_cli({"zakplot", "--state", "gkp0", "--out", path("g0.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(read_file(path("g0.csv")), "u,v,re,im\n0,0,1,0\n");
}

TEST_F(CliTest, shift_array_panels) {
    auto r = run_cli({"shift-array", "--state", "gkp-approx:0.3:0", "--grid", "96x96", "--out", path("arr")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto base = grid_from_csv(read_file(path("arr/panel_j0_k0.csv")));
    auto input = zak_transform(approx_codeword(GKPCode{}, 0, 0.3), base.grid(), 16).psi;
    ASSERT_EQ(max_abs_diff(base, input), 0);
    auto moved = grid_from_csv(read_file(path("arr/panel_j1_k0.csv")));
    for (size_t j = 0; j < 96; j++) {
        for (size_t k = 0; k < 96; k++) {
            ASSERT_NEAR(std::abs(moved(j, k)), std::abs(base((j + 96 - 32) % 96, k)), 1e-15);
        }
    }
    auto index = parse_table(read_file(path("arr/index.csv")));
    ASSERT_EQ(index.size(), 16u);
    double corner = index[0][7];
    for (size_t row : {3u, 12u, 15u}) {
        ASSERT_NEAR(index[row][7], corner, 1e-6);
    }
    ASSERT_NE(read_file(path("arr/manifest.txt")).find("dx="), std::string::npos);
}

TEST_F(CliTest, exit_codes) {
    ASSERT_EQ(run_cli({"logical", "--grid", "63x64"}).code, 2);
    ASSERT_EQ(run_cli({"logical", "--grid", "66x64"}).code, 2);
    ASSERT_EQ(run_cli({"logical", "--state", "squeezed"}).code, 2);
    ASSERT_EQ(run_cli({"logical", "--method", "magic"}).code, 2);
    ASSERT_EQ(run_cli({"logical", "--alpha", "-1"}).code, 2);
    ASSERT_EQ(run_cli({"nonsense"}).code, 2);
    ASSERT_EQ(run_cli({}).code, 2);
    ASSERT_EQ(run_cli({"shift-array", "--grid", "64x64", "--dx", "0.123", "--out", path("x")}).code, 2);
    auto trunc = run_cli({"logical", "--state", "vacuum", "--grid", "64x64", "--mmax", "0"});
    ASSERT_EQ(trunc.code, 3);
    ASSERT_NE(trunc.err.find("M_max"), std::string::npos);
    ASSERT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, config_file_and_precedence) {
    {
        std::string text = "# settings\ngrid=64x64\nstate=gkp-approx:0.4:1\nmethod=overlap\n";
        atomic_write_file(path("run.cfg"), text);
    }
    auto from_file = run_cli({"logical", "--config", path("run.cfg"), "--out", path("a.csv")});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    auto direct = run_cli({"logical", "--grid", "64x64", "--state", "gkp-approx:0.4:1", "--method", "overlap"});
    ASSERT_EQ(from_file.out, direct.out);
    auto manifest = read_file(path("a.csv.manifest"));
    ASSERT_NE(manifest.find("grid=64x64"), std::string::npos);

    auto overridden = run_cli({"logical", "--config", path("run.cfg"), "--state", "gkp0"});
    ASSERT_EQ(parse_table(overridden.out)[0][10], 1);

    atomic_write_file(path("again.cfg"), manifest);
    auto replay = run_cli({"logical", "--config", path("again.cfg")});
    ASSERT_EQ(replay.code, 0) << replay.err;
    ASSERT_EQ(replay.out, direct.out);
}
