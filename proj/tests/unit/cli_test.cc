// Copyright 2026 The gibbskit Authors
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

// Drives the gibbskit executable end to end.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "gibbskit/bench.h"
#include "gibbskit/exact.h"
#include "gibbskit/random_instances.h"

namespace {

using json = nlohmann::json;

struct CliRun {
    int code = -1;
    std::string out;
    json doc;
};

std::string data(const std::string &name) {
    return std::string(GIBBSKIT_TEST_DATA) + "/" + name;
}

CliRun run(const std::string &args, const std::string &env = "") {
    const std::string cmd = env + " " + std::string(GIBBSKIT_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        r.out.append(buf, got);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.doc = json::parse(r.out, nullptr, false);
    return r;
}

std::filesystem::path temp_file(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("gibbskit_cli_" + name);
}

TEST(CliExact, SingleZ) {
    CliRun r = run("exact " + data("z.json") + " --beta 1");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NEAR(r.doc["result"]["Z"].get<double>(), 2 * std::cosh(1.0), 1e-10);
    EXPECT_NEAR(r.doc["result"]["Z"].get<double>(), 3.0862, 1e-4);
    EXPECT_NEAR(r.doc["result"]["F"].get<double>(), -std::log(2 * std::cosh(1.0)), 1e-12);
    EXPECT_EQ(r.doc["result"]["spectrum"]["dimension"], 2);
    EXPECT_EQ(r.doc["command"][0], "exact");
    EXPECT_TRUE(r.doc.contains("version"));
}

TEST(CliExact, ZeroHamiltonian) {
    CliRun r = run("exact " + data("zero4.json") + " --beta 1");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.doc["result"]["Z"].get<double>(), 16.0);
}

TEST(CliExact, OverCapIsStructuredError) {
    CliRun r = run("exact " + data("zz13.json") + " --beta 1");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.doc["error"]["type"], "validation");
    EXPECT_NE(r.doc["error"]["message"].get<std::string>().find("exceeds exact cap"), std::string::npos);
}

TEST(CliExact, MissingFileAndBadFlags) {
    EXPECT_EQ(run("exact /nonexistent.json").code, 2);
    EXPECT_EQ(run("exact " + data("z.json") + " --beta 0").code, 2);
    EXPECT_EQ(run("exact " + data("z.json") + " --beta abc").code, 2);
    EXPECT_EQ(run("nonsense").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(CliPartition, SeededCompressedRun) {
    CliRun r = run("partition " + data("z.json") + " --beta 1 --delta 0.05 --method compressed --seed 7 --workers 1");
    ASSERT_EQ(r.code, 0) << r.out;
    const double z = 2 * std::cosh(1.0);
    EXPECT_LE(std::abs(r.doc["result"]["value"].get<double>() / z - 1), 0.05);
    EXPECT_EQ(r.doc["seed"], 7);
    EXPECT_GT(r.doc["matvecs"]["hamiltonian"].get<long>(), 0);
    EXPECT_GT(r.doc["result"]["taylor_order"].get<int>(), 0);
    EXPECT_TRUE(r.doc["result"].contains("k_compress"));
}

TEST(CliPartition, ReplayIsBitExact) {
    const std::string args =
        "partition " + data("zz_complete4.json") + " --beta 0.7 --delta 0.1 --method compressed --workers 1";
    CliRun a = run(args + " --seed 11");
    CliRun b = run(args + " --seed 11");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.doc["result"].dump(), b.doc["result"].dump());
    EXPECT_EQ(a.doc["matvecs"], b.doc["matvecs"]);
    CliRun c = run(args + " --seed 12");
    EXPECT_NE(a.doc["result"]["value"], c.doc["result"]["value"]);
}

TEST(CliPartition, ReplayFromRecord) {
    const std::filesystem::path rec = temp_file("record.json");
    CliRun a = run("partition " + data("zz_complete4.json") + " --delta 0.2 --seed 5 --workers 1 --record " +
                rec.string());
    ASSERT_EQ(a.code, 0);
    std::ifstream in(rec);
    json saved = json::parse(in);
    std::string replay;
    for (const auto &arg : saved["command"]) {
        const std::string s = arg.get<std::string>();
        if (s == "--record") {
            break;
        }
        replay += s + " ";
    }
    CliRun b = run(replay);
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(saved["result"].dump(), b.doc["result"].dump());
    std::filesystem::remove(rec);
}

TEST(CliPartition, SeedFallsBackToEnvironment) {
    CliRun a = run("partition " + data("z.json") + " --delta 0.2 --workers 1", "GIBBSKIT_SEED=4242");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.doc["seed"], 4242);
    CliRun b = run("partition " + data("z.json") + " --delta 0.2 --workers 1 --seed 4242");
    EXPECT_EQ(a.doc["result"].dump(), b.doc["result"].dump());
    EXPECT_EQ(run("partition " + data("z.json") + " --delta 0.2", "GIBBSKIT_SEED=abc").code, 2);
}

TEST(CliPartition, InvalidFlags) {
    EXPECT_EQ(run("partition " + data("z.json") + " --delta 1.5").code, 2);
    EXPECT_EQ(run("partition " + data("z.json") + " --method magic").code, 2);
    EXPECT_EQ(run("partition " + data("z.json") + " --eta 0").code, 2);
    EXPECT_EQ(run("partition " + data("z.json") + " --boost 2").code, 2);
    EXPECT_EQ(run("partition " + data("z.json") + " --workers 0").code, 2);
}

TEST(CliPartition, CompressedNoCostlierThanHutchppAtSmallDelta) {
    const std::filesystem::path file = temp_file("n10.json");
    {
        std::ofstream out(file);
        out << gibbskit::normalize_norm_bound(gibbskit::random_k_local(10, 2, 15, 1.0, 31), 2.0).to_json();
    }
    const std::string base = "partition " + file.string() + " --delta 0.05 --seed 3 --workers 1 --method ";
    CliRun c = run(base + "compressed");
    CliRun h = run(base + "hutchpp");
    ASSERT_EQ(c.code, 0) << c.out;
    ASSERT_EQ(h.code, 0) << h.out;
    EXPECT_LE(c.doc["matvecs"]["trace_operator"].get<long>(), h.doc["matvecs"]["trace_operator"].get<long>());
    EXPECT_LE(c.doc["matvecs"]["hamiltonian"].get<long>(), h.doc["matvecs"]["hamiltonian"].get<long>());
    std::filesystem::remove(file);
}

TEST(CliFreeEnergy, CompleteGraphSandwich) {
    CliRun r = run("free-energy-dense " + data("zz_complete4.json") + " --beta 1 --k 2 --tol 1e-8");
    ASSERT_EQ(r.code, 0) << r.out;
    const json &res = r.doc["result"];
    const double f_exact = gibbskit::exact_free_energy(gibbskit::load_hamiltonian(data("zz_complete4.json")), 1.0);
    EXPECT_NEAR(res["F_exact"].get<double>(), f_exact, 1e-10);
    EXPECT_LE(res["f_k_star"].get<double>(), f_exact + 1e-6);
    EXPECT_LE(f_exact, res["f_rounded"].get<double>() + 1e-6);
    EXPECT_TRUE(res["sandwich_holds"].get<bool>());
}

TEST(CliFreeEnergy, ZeroHamiltonian) {
    CliRun r = run("free-energy-dense " + data("zero4.json") + " --beta 1 --k 2 --tol 1e-8");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NEAR(r.doc["result"]["f_k_star"].get<double>(), -4 * std::log(2.0), 1e-6);
}

TEST(CliFreeEnergy, RejectsThreeLocal) {
    CliRun r = run("free-energy-dense " + data("three_local.json") + " --k 2");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.doc["error"]["message"].get<std::string>().find("locality"), std::string::npos);
}

TEST(CliReduce, MeanValueFromPartitionFunctions) {
    CliRun r = run("reduce qmv-from-qpf " + data("z.json") + " --pauli Z --epsilon 0.05");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_LE(std::abs(r.doc["result"]["value"].get<double>() - std::tanh(1.0)), 0.05);
    EXPECT_EQ(r.doc["result"]["oracle"]["calls"], 2);
    EXPECT_EQ(r.doc["result"]["oracle"]["trace"].size(), 2u);
    EXPECT_EQ(r.doc["result"]["oracle"]["trace"][0]["problem"], "qpf");
}

TEST(CliReduce, PartitionFromMeanValuesOnZero) {
    CliRun r = run("reduce qpf-from-qmv " + data("zero4.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.doc["result"]["value"].get<double>(), 16.0);
}

TEST(CliReduce, JitteredCountingSweep) {
    CliRun r = run("reduce qpf-from-qdos " + data("two_level.json") +
                " --beta 2 --oracle noisy --jitter 0.01 --seeds 100 --seed 1");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.doc["result"]["summary"]["runs"], 100);
    EXPECT_EQ(r.doc["result"]["summary"]["within_window"], 100);
    EXPECT_TRUE(r.doc["result"]["summary"]["all_within"].get<bool>());
    EXPECT_EQ(r.doc["result"]["oracle"]["noise"]["r"], 0.01);
}

TEST(CliReduce, InvalidCombinations) {
    EXPECT_EQ(run("reduce qmv-from-qpf " + data("z.json")).code, 2);
    EXPECT_EQ(run("reduce qpf-from-qmv " + data("z.json") + " --pauli Z").code, 2);
    EXPECT_EQ(run("reduce qpf-from-qdos " + data("two_level.json") + " --jitter 0.01").code, 2);
    EXPECT_EQ(run("reduce qpf-from-qdos " + data("two_level.json") + " --oracle noisy").code, 2);
    EXPECT_EQ(run("reduce qpf-from-qdos " + data("two_level.json") + " --oracle noisy --jitter 0.1 --saturate").code,
              2);
    EXPECT_EQ(run("reduce qpf-from-qmv " + data("z.json") + " --oracle noisy --saturate --extremal").code, 2);
    EXPECT_EQ(run("reduce qpf-from-qdos " + data("z.json")).code, 2);
    EXPECT_EQ(run("reduce qpf-from-magic " + data("z.json")).code, 2);
    EXPECT_EQ(run("reduce qpf-from-qdos " + data("two_level.json") + " --oracle noisy --jitter 0.01 --sign up").code,
              2);
}

TEST(CliBench, SmallSuiteCsv) {
    const std::filesystem::path csv = temp_file("bench.csv");
    CliRun r = run("bench " + data("small_suite.json") + " --out " + csv.string() + " --seed 2 --workers 1");
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream in(csv);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(text.substr(0, text.find('\n')), gibbskit::bench_csv_header());
    std::vector<gibbskit::BenchRow> rows = gibbskit::parse_bench_csv(text);
    EXPECT_EQ(rows.size(), 2u * 2u * 2u * 2u);
    EXPECT_EQ(r.doc["result"]["rows"], 16);
    std::filesystem::remove(csv);
}

TEST(CliBench, CsvToStdout) {
    CliRun r = run("bench " + data("small_suite.json") + " --seed 2 --workers 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), gibbskit::bench_csv_header());
}

TEST(CliBench, DefaultSuite) {
    const std::filesystem::path csv = temp_file("default.csv");
    CliRun r = run("bench --out " + csv.string() + " --seed 0 --workers 1");
    ASSERT_EQ(r.code, 0) << r.out;
    std::ifstream in(csv);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<gibbskit::BenchRow> rows = gibbskit::parse_bench_csv(text);
    // 2 sizes x 3 deltas x 3 methods x 3 replicates.
    ASSERT_EQ(rows.size(), 54u);
    int compressed = 0;
    int within = 0;
    for (const gibbskit::BenchRow &row : rows) {
        if (row.method == gibbskit::TraceMethod::kCompressedHutchpp) {
            ++compressed;
            within += row.rel_err_vs_exact <= row.delta ? 1 : 0;
        }
    }
    EXPECT_EQ(compressed, 18);
    EXPECT_GE(within, 0.95 * compressed);
    std::filesystem::remove(csv);
}

TEST(CliBench, MalformedSuite) {
    const std::filesystem::path bad = temp_file("bad_suite.json");
    {
        std::ofstream out(bad);
        out << "{\"ns\": [8], \"deltas\": [2.0]}";
    }
    EXPECT_EQ(run("bench " + bad.string()).code, 2);
    EXPECT_EQ(run("bench /nonexistent/suite.json").code, 2);
    std::filesystem::remove(bad);
}

}  // namespace
