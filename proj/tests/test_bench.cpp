#include "pvl/bench.hpp"
#include "pvl/vector_engine.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <memory>
#include <sstream>

using namespace pvl;

namespace {

/// Each timed run lasts durations[k % size] ms.
TimeSource scripted(std::vector<double> durations)
{
    auto calls = std::make_shared<std::size_t>(0);
    auto clock = std::make_shared<double>(0.0);
    return [=] {
        const std::size_t c = (*calls)++;
        if (c % 2 == 1)
            *clock += durations[(c / 2) % durations.size()];
        else
            *clock += 1000.0;
        return *clock;
    };
}

BenchConfig small_config()
{
    BenchConfig c;
    c.n_per_cell = 48;
    c.runs = 3;
    c.lane_widths = {4, 16};
    c.h_jitter = 0.3;
    c.seed = 21;
    return c;
}

std::string csv_of(const BenchConfig& config, const BenchReport& report)
{
    std::ostringstream out;
    write_csv(out, summarise(report.results, config.lane_widths), config.lane_widths);
    return out.str();
}

} // namespace

TEST(Median, Basics)
{
    EXPECT_EQ(median({}), 0.0);
    EXPECT_EQ(median({3.0}), 3.0);
    EXPECT_EQ(median({5.0, 1.0, 3.0}), 3.0);
    EXPECT_EQ(median({4.0, 1.0, 3.0, 2.0}), 2.5);
}

TEST(Median, OneSlowRunDoesNotMove)
{
    int resets = 0;
    const auto body = [] {};
    const auto reset = [&] { ++resets; };
    EXPECT_EQ(median_time(5, reset, body, scripted({1.0, 1.0, 1.0, 1.0, 1.0})), 1.0);
    EXPECT_EQ(median_time(5, reset, body, scripted({1.0, 1.0, 250.0, 1.0, 1.0})), 1.0);
    EXPECT_EQ(median_time(5, reset, body, scripted({2.0, 1.0, 3.0, 500.0, 4.0})), 3.0);
    EXPECT_EQ(resets, 15);
}

TEST(WeightedTotal, AllOnes)
{
    const KindTimes ones{{DirectionKind::face, 1.0}, {DirectionKind::edge, 1.0}, {DirectionKind::corner, 1.0}};
    const auto t = weighted_total(ones, ones);
    EXPECT_EQ(t.scalar_ms, 26.0);
    EXPECT_EQ(t.vector_ms, 26.0);
    EXPECT_EQ(t.speedup, 1.0);
}

TEST(WeightedTotal, PublishedTable)
{
    const KindTimes scalar{{DirectionKind::corner, 0.00035}, {DirectionKind::edge, 0.0052}, {DirectionKind::face, 0.082}};
    const KindTimes vector{{DirectionKind::corner, 0.00070}, {DirectionKind::edge, 0.0035}, {DirectionKind::face, 0.034}};
    const auto t = weighted_total(scalar, vector);
    EXPECT_NEAR(t.scalar_ms, 0.5572, 1e-12);
    EXPECT_NEAR(t.scalar_ms, 0.56, 0.005);
    EXPECT_NEAR(t.vector_ms, 0.2516, 1e-12);
    EXPECT_NEAR(t.speedup, 2.21, 0.005);

    KindTimes dispatched = vector;
    dispatched[DirectionKind::corner] = scalar.at(DirectionKind::corner);
    EXPECT_NEAR(weighted_total(scalar, dispatched).speedup, 2.24, 0.005);
}

TEST(WeightedTotal, MissingKind)
{
    const KindTimes partial{{DirectionKind::face, 1.0}, {DirectionKind::edge, 1.0}};
    const KindTimes full{{DirectionKind::face, 1.0}, {DirectionKind::edge, 1.0}, {DirectionKind::corner, 1.0}};
    EXPECT_THROW(weighted_total(partial, full), std::invalid_argument);
    EXPECT_THROW(weighted_total(full, partial), std::invalid_argument);
}

TEST(Config, Validation)
{
    EXPECT_NO_THROW(validate(BenchConfig{}));
    const auto bad = [](auto mutate) {
        BenchConfig c;
        mutate(c);
        EXPECT_THROW(validate(c), ConfigError);
    };
    bad([](BenchConfig& c) { c.runs = 0; });
    bad([](BenchConfig& c) { c.cell_edge = 0.0; });
    bad([](BenchConfig& c) { c.h_value = 0.0; });
    bad([](BenchConfig& c) { c.h_value = 1.5; });
    bad([](BenchConfig& c) { c.h_jitter = -0.1; });
    bad([](BenchConfig& c) { c.h_jitter = 1.0; });
    bad([](BenchConfig& c) { c.h_value = 0.8, c.h_jitter = 0.5; });
    bad([](BenchConfig& c) { c.lane_widths = {}; });
    bad([](BenchConfig& c) { c.lane_widths = {8, 2}; });

    EXPECT_EQ(parse_orientation("edge"), OrientationFilter::edge);
    EXPECT_THROW(parse_orientation("diagonal"), ConfigError);
    EXPECT_THROW(run_test27cells([] {
        BenchConfig c;
        c.runs = -1;
        return c;
    }()), ConfigError);
}

TEST(Test27Cells, EmptyCells)
{
    BenchConfig c;
    c.n_per_cell = 0;
    const auto report = run_test27cells(c, [] { return 0.0; });
    ASSERT_EQ(report.results.size(), 26u);
    for (const auto& r : report.results) {
        EXPECT_EQ(r.scalar_stats, PairStatistics{});
        EXPECT_EQ(r.scalar_ms, 0.0);
        for (const auto& l : r.lanes)
            EXPECT_EQ(l.stats, PairStatistics{});
    }
}

TEST(Test27Cells, OrientationFilter)
{
    BenchConfig c = small_config();
    for (auto [filter, count] : {std::pair{OrientationFilter::face, 6u}, std::pair{OrientationFilter::edge, 12u},
                                 std::pair{OrientationFilter::corner, 8u}, std::pair{OrientationFilter::all, 26u}}) {
        c.orientations = filter;
        const auto report = run_test27cells(c);
        EXPECT_EQ(report.results.size(), count);
        for (const auto& r : report.results)
            EXPECT_TRUE(accepts(filter, r.kind));
    }
}

TEST(Test27Cells, CornerDispatch)
{
    const auto report = run_test27cells(small_config());
    for (const auto& r : report.results)
        for (const auto& l : r.lanes) {
            EXPECT_EQ(l.scalar_dispatch, r.kind == DirectionKind::corner);
            if (r.kind == DirectionKind::corner)
                EXPECT_EQ(l.stats, r.scalar_stats);
        }
}

TEST(Test27Cells, VerifyDefaultConfig)
{
    BenchConfig c;
    c.verify = true;
    c.runs = 1;
    c.lane_widths = {1, 4, 8, 16};
    const auto report = run_test27cells(c);
    ASSERT_TRUE(report.verification);
    EXPECT_TRUE(report.verification->passed());
    for (const auto& f : report.verification->failures)
        ADD_FAILURE() << f;

    auto block = make_block27(c.n_per_cell, c.cell_edge, {c.h_value, c.h_jitter}, c.seed);
    const auto pairs = neighbour_pairs();
    for (const auto& r : report.results) {
        const auto it = std::find_if(pairs.begin(), pairs.end(), [&](const auto& np) { return np.neighbour == r.neighbour; });
        ASSERT_NE(it, pairs.end());
        EXPECT_EQ(r.scalar_stats.in_range, oracle_pair_count(block.cells[it->cell_a], block.cells[it->cell_b]));
    }
}

TEST(Test27Cells, CrossPathHitCounts)
{
    BenchConfig c = small_config();
    c.n_per_cell = 216;
    c.h_jitter = 0.0;
    c.runs = 1;
    auto block = make_block27(c.n_per_cell, c.cell_edge, {c.h_value, c.h_jitter}, c.seed);
    const auto pairs = neighbour_pairs();
    const auto report = run_test27cells(c);
    for (std::size_t k = 0; k < report.results.size(); ++k) {
        const auto& np = pairs[k];
        const auto slack = boundary_pairs(block.cells[np.cell_a], block.cells[np.cell_b]).count;
        for (const auto& l : report.results[k].lanes) {
            const auto d = std::int64_t(l.stats.in_range) - std::int64_t(report.results[k].scalar_stats.in_range);
            EXPECT_LE(std::uint64_t(std::abs(d)), slack);
        }
    }
}

TEST(Test27Cells, Deterministic)
{
    const BenchConfig c = small_config();
    const auto a = run_test27cells(c, scripted({1.0, 2.0, 3.0}));
    const auto b = run_test27cells(c, scripted({1.0, 2.0, 3.0}));
    EXPECT_EQ(csv_of(c, a), csv_of(c, b));
    ASSERT_EQ(a.results.size(), b.results.size());
    for (std::size_t k = 0; k < a.results.size(); ++k) {
        EXPECT_EQ(a.results[k].scalar_stats, b.results[k].scalar_stats);
        for (std::size_t l = 0; l < a.results[k].lanes.size(); ++l)
            EXPECT_EQ(a.results[k].lanes[l].stats, b.results[k].lanes[l].stats);
    }

    // accumulators of two identical sweeps over fresh blocks
    std::vector<DensityField> fields;
    for (int rep = 0; rep < 2; ++rep) {
        auto block = make_block27(c.n_per_cell, c.cell_edge, {c.h_value, c.h_jitter}, c.seed);
        VectorOptions opt;
        for (const auto& np : neighbour_pairs())
            pair_interact_vectorised(block.cells[np.cell_a], block.cells[np.cell_b], np.direction, opt);
        fields.push_back(collect_densities(block.cells));
    }
    EXPECT_EQ(fields[0], fields[1]);
}

TEST(Csv, Format)
{
    const std::vector<int> widths{8};
    const std::vector<KindSummary> s{
        {DirectionKind::face, 8, 0.082, 0.034, 0.082 / 0.034, 100, 60},
        {DirectionKind::edge, 8, 0.0052, 0.0035, 0.0052 / 0.0035, 20, 10},
        {DirectionKind::corner, 8, 0.00035, 0.0007, 0.5, 2, 1},
    };
    std::ostringstream out;
    write_csv(out, s, widths);
    EXPECT_EQ(out.str(), "orientation,lane_width,scalar_ms,vector_ms,speedup,candidates,hits\n"
                         "face,8,0.082,0.034,2.41176,100,60\n"
                         "edge,8,0.0052,0.0035,1.48571,20,10\n"
                         "corner,8,0.00035,0.0007,0.5,2,1\n"
                         "total,8,0.5572,0.2516,2.21463,122,71\n");

    std::ostringstream partial;
    write_csv(partial, {s[0]}, widths);
    EXPECT_EQ(partial.str(), "orientation,lane_width,scalar_ms,vector_ms,speedup,candidates,hits\n"
                             "face,8,0.082,0.034,2.41176,100,60\n");
}

TEST(Csv, SummaryPerKindMedian)
{
    BenchConfig c = small_config();
    const auto report = run_test27cells(c, scripted({1.0, 2.0, 3.0, 4.0, 5.0}));
    const auto s = summarise(report.results, c.lane_widths);
    ASSERT_EQ(s.size(), 3u * c.lane_widths.size());
    for (const auto& k : s) {
        std::uint64_t hits = 0;
        for (const auto& r : report.results)
            if (r.kind == k.kind)
                for (const auto& l : r.lanes)
                    if (l.lane_width == k.lane_width)
                        hits += l.stats.in_range;
        EXPECT_EQ(k.hits, hits);
    }
}
