#pragma once

#include "pvl/geometry.hpp"
#include "pvl/oracle.hpp"
#include "pvl/stats.hpp"
#include "pvl/workload.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvl {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OrientationFilter { face, edge, corner, all };

OrientationFilter parse_orientation(const std::string& name);
bool accepts(OrientationFilter filter, DirectionKind kind);

struct BenchConfig {
    std::size_t n_per_cell = 216;
    double cell_edge = 1.0;
    /// 216 = 6^3 particles per unit cell give a mean spacing of 1/6.
    double h_value = 1.2348 / 6.0;
    double h_jitter = 0.0;
    std::uint64_t seed = 0;
    int runs = 5;
    std::vector<int> lane_widths{8};
    OrientationFilter orientations = OrientationFilter::all;
    bool verify = false;
    std::optional<std::string> csv_path;
};

/// Throws ConfigError on an invalid configuration.
void validate(const BenchConfig& config);

struct LaneTiming {
    int lane_width = 0;
    double vector_ms = 0.0;
    double speedup = 0.0;
    PairStatistics stats;
    bool scalar_dispatch = false;
};

/// Median timings of one of the 26 neighbour pairs.
struct BenchResult {
    std::size_t neighbour = 0;
    std::array<int, 3> offset{};
    DirectionKind kind = DirectionKind::face;
    double scalar_ms = 0.0;
    PairStatistics scalar_stats;
    std::vector<LaneTiming> lanes;
};

struct VerificationReport {
    ComparisonReport scalar;
    std::map<int, ComparisonReport> lanes;
    std::vector<std::string> failures;

    [[nodiscard]] bool passed() const { return failures.empty(); }
};

struct BenchReport {
    std::vector<BenchResult> results;
    std::optional<VerificationReport> verification;
};

/// Current time in milliseconds; only differences are used.
using TimeSource = std::function<double()>;

double steady_clock_ms();

double median(std::vector<double> values);

/// Times `body` `runs` times, calling `reset` untimed before each run, and
/// returns the median duration.
double median_time(int runs, const std::function<void()>& reset, const std::function<void()>& body,
                   const TimeSource& now);

BenchReport run_test27cells(const BenchConfig& config, const TimeSource& now = steady_clock_ms);

/// Cross-checks scalar and lane paths over the 26 pair sweeps plus the
/// central self sweep against brute_force_reference.
VerificationReport verify_block(CellBlock& block, const std::vector<int>& lane_widths, double rel_tol = 1e-5);

/// Per-kind medians for one lane width.
struct KindSummary {
    DirectionKind kind = DirectionKind::face;
    int lane_width = 0;
    double scalar_ms = 0.0;
    double vector_ms = 0.0;
    double speedup = 0.0;
    std::uint64_t candidates = 0;
    std::uint64_t hits = 0;
};

std::vector<KindSummary> summarise(const std::vector<BenchResult>& results, const std::vector<int>& lane_widths);

struct WeightedTotal {
    double scalar_ms = 0.0;
    double vector_ms = 0.0;
    double speedup = 0.0;
};

using KindTimes = std::map<DirectionKind, double>;

/// 8 x corner + 12 x edge + 6 x face for both paths. Throws
/// std::invalid_argument when a kind is missing.
WeightedTotal weighted_total(const KindTimes& scalar, const KindTimes& vector);

/// Weighted total over the summaries of one lane width.
WeightedTotal weighted_total(const std::vector<KindSummary>& summaries, int lane_width);

/// header: orientation,lane_width,scalar_ms,vector_ms,speedup,candidates,hits
/// One row per (kind, lane width), then one total row per lane width when
/// all three kinds are present.
void write_csv(std::ostream& out, const std::vector<KindSummary>& summaries, const std::vector<int>& lane_widths);

} // namespace pvl
