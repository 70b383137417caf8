#include "pvl/bench.hpp"

#include "pvl/scalar_engine.hpp"
#include "pvl/vector_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>

namespace pvl {

OrientationFilter parse_orientation(const std::string& name)
{
    if (name == "face")
        return OrientationFilter::face;
    if (name == "edge")
        return OrientationFilter::edge;
    if (name == "corner")
        return OrientationFilter::corner;
    if (name == "all")
        return OrientationFilter::all;
    throw ConfigError("unknown orientation '" + name + "'");
}

bool accepts(OrientationFilter filter, DirectionKind kind)
{
    switch (filter) {
    case OrientationFilter::face: return kind == DirectionKind::face;
    case OrientationFilter::edge: return kind == DirectionKind::edge;
    case OrientationFilter::corner: return kind == DirectionKind::corner;
    case OrientationFilter::all: return true;
    }
    return false;
}

void validate(const BenchConfig& config)
{
    if (config.runs < 1)
        throw ConfigError("runs must be at least 1");
    if (!(config.cell_edge > 0.0))
        throw ConfigError("cell edge must be positive");
    if (!(config.h_value > 0.0))
        throw ConfigError("h must be positive");
    if (config.h_jitter < 0.0 || config.h_jitter >= 1.0)
        throw ConfigError("h jitter must be in [0, 1)");
    if (config.h_value * (1.0 + config.h_jitter) > config.cell_edge)
        throw ConfigError("h (including jitter) must not exceed the cell edge");
    if (config.lane_widths.empty())
        throw ConfigError("at least one lane width is required");
    for (int w : config.lane_widths)
        if (!is_valid_lane_width(w))
            throw ConfigError("lane width must be 1, 4, 8 or 16, got " + std::to_string(w));
}

double steady_clock_ms()
{
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

double median(std::vector<double> values)
{
    if (values.empty())
        return 0.0;
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + std::ptrdiff_t(mid), values.end());
    if (values.size() % 2 == 1)
        return values[mid];
    const double upper = values[mid];
    const double lower = *std::max_element(values.begin(), values.begin() + std::ptrdiff_t(mid));
    return 0.5 * (lower + upper);
}

double median_time(int runs, const std::function<void()>& reset, const std::function<void()>& body,
                   const TimeSource& now)
{
    std::vector<double> times;
    times.reserve(std::size_t(runs));
    for (int r = 0; r < runs; ++r) {
        reset();
        const double t0 = now();
        body();
        times.push_back(now() - t0);
    }
    return median(std::move(times));
}

BenchReport run_test27cells(const BenchConfig& config, const TimeSource& now)
{
    validate(config);
    BenchReport report;
    CellBlock block =
        make_block27(config.n_per_cell, config.cell_edge, HPolicy{config.h_value, config.h_jitter}, config.seed);

    PairWorkspace workspace;
    for (const auto& np : neighbour_pairs()) {
        if (!accepts(config.orientations, np.direction.kind))
            continue;
        Cell& a = block.cells[np.cell_a];
        Cell& b = block.cells[np.cell_b];
        const auto sp_a = sort_cell(a, np.direction.axis);
        const auto sp_b = sort_cell(b, np.direction.axis);
        const auto reset = [&] {
            a.reset_accumulators();
            b.reset_accumulators();
        };

        BenchResult res;
        res.neighbour = np.neighbour;
        res.offset = np.offset;
        res.kind = np.direction.kind;
        res.scalar_ms =
            median_time(config.runs, reset, [&] { res.scalar_stats = pseudo_verlet_scalar(a, b, sp_a, sp_b); }, now);

        for (int w : config.lane_widths) {
            VectorOptions opt;
            opt.lane_width = w;
            opt.workspace = &workspace;
            LaneTiming lt;
            lt.lane_width = w;
            lt.vector_ms = median_time(
                config.runs, reset,
                [&] {
                    const auto r = pair_interact_vectorised(a, b, np.direction, sp_a, sp_b, opt);
                    lt.stats = r.stats;
                    lt.scalar_dispatch = r.scalar_dispatch;
                },
                now);
            lt.speedup = lt.vector_ms > 0.0 ? res.scalar_ms / lt.vector_ms : 0.0;
            res.lanes.push_back(lt);
        }
        reset();
        report.results.push_back(std::move(res));
    }

    if (config.verify)
        report.verification = verify_block(block, config.lane_widths);
    return report;
}

VerificationReport verify_block(CellBlock& block, const std::vector<int>& lane_widths, double rel_tol)
{
    VerificationReport report;
    BruteForceOptions focus;
    focus.include_self = true;
    focus.focus_cell = CellBlock::central;

    const DensityField reference = brute_force_reference(block.cells, focus);
    const BoundaryPairs boundary = boundary_pairs(block.cells, focus);
    const DeviationFloor floor = single_contribution_floor(block.cells);
    const auto pairs = neighbour_pairs();
    Cell& central = block.cells[CellBlock::central];

    std::vector<std::uint64_t> expected_hits;
    std::vector<std::uint64_t> boundary_counts;
    for (const auto& np : pairs) {
        expected_hits.push_back(oracle_pair_count(block.cells[np.cell_a], block.cells[np.cell_b]));
        boundary_counts.push_back(boundary_pairs(block.cells[np.cell_a], block.cells[np.cell_b]).count);
    }

    const auto label = [](const NeighbourPair& np) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "offset (%d,%d,%d)", np.offset[0], np.offset[1], np.offset[2]);
        return std::string(buf);
    };

    // Scalar path: exact pair counts, near-exact accumulators.
    block.reset_accumulators();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& np = pairs[k];
        Cell& a = block.cells[np.cell_a];
        Cell& b = block.cells[np.cell_b];
        const auto stats = pseudo_verlet_scalar(a, b, sort_cell(a, np.direction.axis), sort_cell(b, np.direction.axis));
        if (stats.in_range != expected_hits[k])
            report.failures.push_back("scalar hit count mismatch at " + label(np));
    }
    naive_self(central);
    report.scalar = compare(reference, collect_densities(block.cells), rel_tol, boundary.receivers, floor);
    if (!report.scalar.passed())
        report.failures.push_back("scalar accumulators deviate from the brute-force reference");

    for (int w : lane_widths) {
        block.reset_accumulators();
        VectorOptions opt;
        opt.lane_width = w;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto& np = pairs[k];
            const auto r = pair_interact_vectorised(block.cells[np.cell_a], block.cells[np.cell_b], np.direction, opt);
            const auto diff = std::int64_t(r.stats.in_range) - std::int64_t(expected_hits[k]);
            if (std::uint64_t(std::abs(diff)) > boundary_counts[k])
                report.failures.push_back("lane width " + std::to_string(w) + " hit count mismatch at " + label(np));
        }
        naive_self(central);
        auto cmp = compare(reference, collect_densities(block.cells), rel_tol, boundary.receivers, floor);
        if (!cmp.passed())
            report.failures.push_back("lane width " + std::to_string(w) +
                                      " accumulators deviate from the brute-force reference");
        report.lanes.emplace(w, std::move(cmp));
    }
    block.reset_accumulators();
    return report;
}

std::vector<KindSummary> summarise(const std::vector<BenchResult>& results, const std::vector<int>& lane_widths)
{
    std::vector<KindSummary> out;
    for (DirectionKind kind : {DirectionKind::face, DirectionKind::edge, DirectionKind::corner}) {
        for (std::size_t li = 0; li < lane_widths.size(); ++li) {
            std::vector<double> scalar;
            std::vector<double> vector;
            KindSummary s;
            s.kind = kind;
            s.lane_width = lane_widths[li];
            for (const auto& r : results) {
                if (r.kind != kind)
                    continue;
                scalar.push_back(r.scalar_ms);
                vector.push_back(r.lanes[li].vector_ms);
                s.candidates += r.lanes[li].stats.inspected;
                s.hits += r.lanes[li].stats.in_range;
            }
            if (scalar.empty())
                continue;
            s.scalar_ms = median(std::move(scalar));
            s.vector_ms = median(std::move(vector));
            s.speedup = s.vector_ms > 0.0 ? s.scalar_ms / s.vector_ms : 0.0;
            out.push_back(s);
        }
    }
    return out;
}

WeightedTotal weighted_total(const KindTimes& scalar, const KindTimes& vector)
{
    const auto total = [](const KindTimes& t) {
        double sum = 0.0;
        for (auto [kind, weight] : {std::pair{DirectionKind::corner, 8.0}, std::pair{DirectionKind::edge, 12.0},
                                    std::pair{DirectionKind::face, 6.0}}) {
            const auto it = t.find(kind);
            if (it == t.end())
                throw std::invalid_argument("weighted total needs a " + std::string(to_string(kind)) + " time");
            sum += weight * it->second;
        }
        return sum;
    };
    WeightedTotal out;
    out.scalar_ms = total(scalar);
    out.vector_ms = total(vector);
    out.speedup = out.vector_ms > 0.0 ? out.scalar_ms / out.vector_ms : 0.0;
    return out;
}

WeightedTotal weighted_total(const std::vector<KindSummary>& summaries, int lane_width)
{
    KindTimes scalar;
    KindTimes vector;
    for (const auto& s : summaries) {
        if (s.lane_width != lane_width)
            continue;
        scalar[s.kind] = s.scalar_ms;
        vector[s.kind] = s.vector_ms;
    }
    return weighted_total(scalar, vector);
}

namespace {

std::string fmt6(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

void write_csv(std::ostream& out, const std::vector<KindSummary>& summaries, const std::vector<int>& lane_widths)
{
    out << "orientation,lane_width,scalar_ms,vector_ms,speedup,candidates,hits\n";
    std::set<DirectionKind> kinds;
    for (const auto& s : summaries) {
        kinds.insert(s.kind);
        out << to_string(s.kind) << ',' << s.lane_width << ',' << fmt6(s.scalar_ms) << ',' << fmt6(s.vector_ms)
            << ',' << fmt6(s.speedup) << ',' << s.candidates << ',' << s.hits << '\n';
    }
    if (kinds.size() != 3)
        return;
    for (int w : lane_widths) {
        const WeightedTotal t = weighted_total(summaries, w);
        std::uint64_t candidates = 0;
        std::uint64_t hits = 0;
        for (const auto& s : summaries)
            if (s.lane_width == w) {
                candidates += s.candidates;
                hits += s.hits;
            }
        out << "total," << w << ',' << fmt6(t.scalar_ms) << ',' << fmt6(t.vector_ms) << ',' << fmt6(t.speedup) << ','
            << candidates << ',' << hits << '\n';
    }
}

} // namespace pvl
