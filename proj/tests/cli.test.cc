// Copyright 2026 The errtel Authors
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

#include "errtel/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errtel/records_io.h"
#include "gtest/gtest.h"

using namespace errtel;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

/// Output lines, minus the leading "# config:" comment.
std::vector<std::string> data_lines(const std::string &text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# config:", 0) == 0) {
            continue;
        }
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST(cli, usage_errors_exit_two) {
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"teleport"}).code, kExitUsage);
    EXPECT_EQ(cli({"ghz", "--n", "5", "--p-error", "0.1"}).code, kExitUsage);  // no seed
    EXPECT_EQ(cli({"ghz", "--seed", "1", "--n", "-1", "--p-error", "0.1"}).code, kExitUsage);
    EXPECT_EQ(cli({"ghz", "--seed", "1", "--n", "5", "--p-error", "1.5"}).code, kExitUsage);
    EXPECT_EQ(cli({"ghz", "--seed", "1", "--n", "5", "--p-error", "0.1", "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(cli({"ghz", "--seed", "1", "--n", "5", "--p-error", "0.1", "--trials", "0"}).code, kExitUsage);
    EXPECT_EQ(cli({"ghz", "--seed", "1", "--n", "4,5", "--p-error", "0.1,0.2"}).code, kExitUsage);
    EXPECT_EQ(cli({"tree", "--seed", "1", "--branching", "3,,3", "--eps-loss", "0.1"}).code, kExitUsage);
    EXPECT_EQ(cli({"tree", "--seed", "1", "--branching", "3,3", "--eps-loss", "0.1", "--tie-rule", "coin"}).code,
              kExitUsage);
    CliResult bad = cli({"ghz", "--seed", "1", "--n", "5", "--p-error", "0.1,1.5"});
    EXPECT_EQ(bad.code, kExitUsage);
    EXPECT_TRUE(bad.out.empty());
    EXPECT_FALSE(bad.err.empty());
}

TEST(cli, help_exits_zero) {
    CliResult r = cli({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("ghz"), std::string::npos);
}

TEST(cli, single_point_is_header_plus_one_row) {
    CliResult r = cli({"ghz", "--seed", "1", "--n", "5", "--p-error", "0.1", "--trials", "2000"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 2u);
    ASSERT_EQ(lines[0], io::kCsvHeader);
    ASSERT_EQ(r.out.rfind("# config: {", 0), 0u);
    ASSERT_NE(r.out.find("GhzTeleport"), std::string::npos);
    ASSERT_EQ(r.out.find("threads"), std::string::npos);
}

TEST(cli, sweep_rows_are_sorted) {
    CliResult r = cli({"ghz", "--seed", "4", "--n", "5", "--p-error", "0.05,0.01,0.02", "--trials", "2000"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 4u);
    std::vector<double> values;
    for (size_t i = 1; i < lines.size(); i++) {
        std::vector<std::string> cells = io::split_csv_line(lines[i]);
        ASSERT_EQ(cells.size(), 7u);
        ASSERT_EQ(cells[0], "p_error");
        values.push_back(std::stod(cells[1]));
    }
    ASSERT_TRUE(std::is_sorted(values.begin(), values.end()));
    ASSERT_EQ(values.front(), 0.01);
}

TEST(cli, empty_record_list_is_header_only) {
    std::ostringstream out;
    io::write_csv(out, {});
    ASSERT_EQ(out.str(), std::string(io::kCsvHeader) + "\n");
    std::ostringstream json;
    io::write_json(json, {});
    ASSERT_TRUE(io::parse_json(json.str()).empty());
}

TEST(cli, json_round_trips) {
    CliResult r = cli({"tree", "--seed", "3", "--branching", "3,3", "--eps-loss", "0.1,0.2", "--p-error", "0.01",
                       "--vote", "--trials", "3000", "--format", "json"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<SweepRecord> records = io::parse_json(r.out);
    ASSERT_EQ(records.size(), 2u);
    std::ostringstream again;
    io::write_json(again, records);
    ASSERT_EQ(again.str(), r.out);
    ASSERT_EQ(records[0].labels.at(0).first, "eps_loss");
    ASSERT_EQ(records[0].trials, 3000u);
    ASSERT_THROW(io::parse_json("[{\"estimate\": 1"), std::invalid_argument);
    ASSERT_THROW(io::parse_json("{}"), std::invalid_argument);
}

TEST(cli, csv_quoting_round_trips) {
    SweepRecord r;
    r.labels = {{"branching", "3,3"}, {"metric", "eps_eff"}};
    r.estimate = 0.25;
    std::ostringstream out;
    io::write_csv(out, {r});
    std::vector<std::string> lines = data_lines(out.str());
    ASSERT_EQ(lines.size(), 2u);
    std::vector<std::string> cells = io::split_csv_line(lines[1]);
    ASSERT_EQ(cells.size(), 7u);
    ASSERT_EQ(cells[0], "branching;metric");
    ASSERT_EQ(cells[1], "3,3;eps_eff");
    ASSERT_EQ(io::split_csv_line("a,\"b,\"\"c\"\"\",d"), (std::vector<std::string>{"a", "b,\"c\"", "d"}));
}

TEST(cli, output_is_byte_identical_across_runs_and_threads) {
    std::vector<std::vector<std::string>> commands{
        {"ghz", "--seed", "7", "--n", "3,6", "--p-error", "0.05", "--trials", "5000"},
        {"plus-cluster", "--seed", "7", "--n-l", "3", "--p-error", "0.01,0.02", "--trials", "3000"},
        {"tree", "--seed", "7", "--branching", "2,2", "--eps-loss", "0.1", "--p-error", "0.01,0.05", "--vote",
         "--trials", "5000", "--format", "json"},
        {"compare", "--seed", "7", "--trials", "2000"},
        {"search", "--seed", "7", "--max-q", "13", "--trials", "2000", "--top", "3"},
    };
    for (const auto &command : commands) {
        CliResult base = cli(command);
        ASSERT_EQ(base.code, kExitOk) << base.err;
        CliResult repeat = cli(command);
        ASSERT_EQ(base.out, repeat.out);
        for (const char *threads : {"1", "2", "4"}) {
            std::vector<std::string> with_threads = command;
            with_threads.push_back("--threads");
            with_threads.push_back(threads);
            CliResult r = cli(with_threads);
            ASSERT_EQ(r.code, kExitOk) << r.err;
            ASSERT_EQ(r.out, base.out) << command[0] << " threads=" << threads;
        }
    }
}

TEST(cli, output_file) {
    std::filesystem::path path = std::filesystem::temp_directory_path() / "errtel_cli_test.csv";
    std::vector<std::string> args{"ghz", "--seed", "2", "--n", "4", "--p-error", "0.1", "--trials", "1000"};
    CliResult stdout_run = cli(args);
    args.push_back("--output");
    args.push_back(path.string());
    CliResult file_run = cli(args);
    ASSERT_EQ(file_run.code, kExitOk) << file_run.err;
    ASSERT_TRUE(file_run.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    ASSERT_EQ(content.str(), stdout_run.out);
    std::filesystem::remove(path);

    CliResult unwritable =
        cli({"ghz", "--seed", "2", "--n", "4", "--p-error", "0.1", "--output", "/nonexistent_dir/x/out.csv"});
    ASSERT_EQ(unwritable.code, kExitRuntime);
    ASSERT_FALSE(unwritable.err.empty());
}

TEST(cli, compare_rows) {
    CliResult r = cli({"compare", "--seed", "1", "--trials", "1000"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 1u + 3 * 5);
    bool saw_quad_bonds = false;
    for (size_t i = 1; i < lines.size(); i++) {
        std::vector<std::string> cells = io::split_csv_line(lines[i]);
        if (cells[1] == "QuadC;bonds") {
            saw_quad_bonds = true;
            ASSERT_EQ(std::stod(cells[2]), 92.0);
        }
    }
    ASSERT_TRUE(saw_quad_bonds);
}

TEST(cli, break_even_loss_metric) {
    CliResult r = cli({"break-even", "--seed", "1", "--branching", "3,3", "--metric", "loss", "--tol", "0.002"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 2u);
    std::vector<std::string> cells = io::split_csv_line(lines[1]);
    ASSERT_NEAR(std::stod(cells[2]), 0.195, 0.005);
    ASSERT_LE(std::stod(cells[3]), std::stod(cells[2]));
    ASSERT_GE(std::stod(cells[4]), std::stod(cells[2]));
}

TEST(cli, search_spot_check) {
    CliResult r = cli({"search", "--seed", "1", "--max-q", "13", "--eps-loss", "0.15", "--trials", "2000", "--top",
                       "2", "--spot-check", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::vector<std::string> lines = data_lines(r.out);
    // rank 1: three exact metrics plus two Monte Carlo; rank 2: three exact.
    ASSERT_EQ(lines.size(), 1u + 5 + 3);
    ASSERT_EQ(cli({"search", "--seed", "1", "--max-q", "1"}).code, kExitUsage);
}
