#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hedonica/batch.hpp"
#include "support.hpp"

using namespace hedonica;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("hedonica_batch_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Batch, SeedsFollowTheRunIndex) {
    auto config = fixtures::small_config(6, 10);
    config.n_runs = 3;
    config.seed = 40;
    const auto batch = run_batch(config);
    EXPECT_EQ(batch.seeds(), (std::vector<std::uint64_t>{40, 41, 42}));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(batch.runs[i].seed, 40 + i);
}

TEST(Batch, ThreadCountDoesNotChangeResults) {
    auto config = fixtures::small_config(8, 30);
    config.n_runs = 5;
    const auto serial = run_batch(config, {1, false});
    const auto parallel = run_batch(config, {4, false});
    std::ostringstream a, b;
    write_steps_csv(a, serial);
    write_steps_csv(b, parallel);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(summary_json(serial, summarize(serial)).dump(), summary_json(parallel, summarize(parallel)).dump());
}

TEST(Batch, StepsCsvShape) {
    auto config = fixtures::small_config(6, 12);
    config.n_runs = 2;
    const auto batch = run_batch(config);
    std::ostringstream out;
    write_steps_csv(out, batch);
    const auto lines = lines_of(out.str());
    ASSERT_EQ(lines.size(), 1u + 2u * 12u);
    EXPECT_EQ(lines[0], "run,step,alone,solicited,initiator,coalitions_active,formed_this_step,mean_coalition_size");
    EXPECT_EQ(lines[1].substr(0, 4), "0,1,");
    EXPECT_EQ(lines.back().substr(0, 5), "1,12,");
    EXPECT_NE(lines[1].find(".000000"), std::string::npos);
}

TEST(Batch, HonestyCsvLeavesEmptyBinsBlank) {
    std::vector<HonestyBin> bins{{0.0, 12.5, 2}, {0.05, std::nullopt, 0}};
    std::ostringstream out;
    write_honesty_csv(out, bins);
    EXPECT_EQ(out.str(), "bin_center,mean_gained_utility,agent_count\n0.000000,12.500000,2\n0.050000,,0\n");
}

TEST(Batch, SummaryJsonContents) {
    auto config = fixtures::small_config(6, 15);
    const auto batch = run_batch(config);
    const auto j = summary_json(batch, summarize(batch));
    EXPECT_EQ(j["version"], artifact_version());
    EXPECT_EQ(j["config"]["n_agents"], 6);
    EXPECT_EQ(j["seeds"].size(), 2u);
    EXPECT_TRUE(j["coalition_duration"].contains("mean"));
    EXPECT_TRUE(j["coalition_duration"]["right_censored_included"].get<bool>());
    EXPECT_TRUE(j.contains("honesty_profile"));
    EXPECT_TRUE(j.contains("mean_roles_per_step"));
}

TEST(Batch, PeakBin) {
    std::vector<HonestyBin> bins{{0.0, 1.0, 1}, {0.05, std::nullopt, 0}, {0.10, 5.0, 3}, {0.15, 5.0, 2}};
    EXPECT_DOUBLE_EQ(*peak_honesty_bin(bins), 0.10);
    EXPECT_FALSE(peak_honesty_bin(std::vector<HonestyBin>{}).has_value());
}

TEST(Batch, OutputsAreByteIdenticalAcrossInvocations) {
    auto config = fixtures::small_config(8, 25);
    config.n_runs = 3;
    const auto a = scratch("a"), b = scratch("b");
    for (const auto& dir : {a, b}) {
        const auto batch = run_batch(config, {0, true});
        write_batch_outputs(dir, batch, summarize(batch));
    }
    for (const char* name : {"steps.csv", "honesty.csv", "summary.json", "trace_run0.csv", "trace_run2.csv"}) {
        ASSERT_TRUE(fs::exists(a / name)) << name;
        EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Batch, UnwritableDirectoryThrows) {
    auto config = fixtures::small_config(6, 5);
    const auto batch = run_batch(config);
    const auto blocker = scratch("blocker");
    std::ofstream(blocker) << "a file, not a directory";
    EXPECT_ANY_THROW(write_batch_outputs(blocker / "out", batch, summarize(batch)));
    fs::remove_all(blocker);
}

TEST(Experiment, FourArmsAndComparison) {
    auto config = fixtures::small_config(9, 20);
    config.n_runs = 2;
    const auto result = run_experiment(config);
    ASSERT_EQ(result.arms.size(), 4u);
    EXPECT_EQ(result.arms[0].first, "seeking");
    EXPECT_EQ(result.arms[3].first, "mixed");
    EXPECT_EQ(result.arms[1].second.config.risk_mix, RiskMix::AllAverse);
    const auto& orderings = result.comparison["orderings"];
    for (const char* key : {"duration_seeking_lt_averse_lt_neutral", "alone_lowest_in_seeking",
                            "initiators_lowest_in_neutral"}) {
        EXPECT_TRUE(orderings.contains(key)) << key;
    }
    const auto dir = scratch("experiment");
    write_experiment_outputs(dir, result);
    for (const char* arm : {"seeking", "averse", "neutral", "mixed"}) {
        EXPECT_TRUE(fs::exists(dir / arm / "steps.csv")) << arm;
        EXPECT_TRUE(fs::exists(dir / arm / "summary.json")) << arm;
    }
    EXPECT_TRUE(fs::exists(dir / "comparison.json"));
    fs::remove_all(dir);
}
