#pragma once

#include "pvl/geometry.hpp"
#include "pvl/scalar_engine.hpp"
#include "pvl/stats.hpp"
#include "pvl/workload.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pvl {

struct ParticleDensity {
    std::int64_t id = 0;
    double rho = 0.0;
    double wcount = 0.0;

    friend bool operator==(const ParticleDensity&, const ParticleDensity&) = default;
};

/// Per-particle accumulators ordered by ascending id.
using DensityField = std::vector<ParticleDensity>;

/// Snapshot of the accumulators currently stored in the cells.
DensityField collect_densities(std::span<const Cell> cells);

struct BruteForceOptions {
    /// Also test pairs of distinct particles that share a cell.
    bool include_self = true;
    /// When set, only pairs with at least one particle in this cell count.
    std::optional<std::size_t> focus_cell;
};

/// O(N^2) reference over every ordered particle pair allowed by the options,
/// using the double-precision predicate r^2 < h_i^2 and the default kernel.
/// Each particle's contributions are summed in ascending source-id order, so
/// the result does not depend on the input ordering.
DensityField brute_force_reference(std::span<const Cell> cells, const BruteForceOptions& options = {},
                                   PairLog* log = nullptr);

/// Ordered pairs (i, j) in distinct cells a, b or b, a with r < h_i.
std::uint64_t oracle_pair_count(const Cell& cell_a, const Cell& cell_b);

/// Ordered pairs within `rel` of the cut-off, |r - h_i| / h_i < rel, where
/// single and double precision may disagree on the range test.
struct BoundaryPairs {
    std::uint64_t count = 0;
    std::vector<std::int64_t> receivers;
};

BoundaryPairs boundary_pairs(std::span<const Cell> cells, const BruteForceOptions& options, double rel = 1e-5);
BoundaryPairs boundary_pairs(const Cell& cell_a, const Cell& cell_b, double rel = 1e-5);

/// Lower bound on the denominator of the relative deviation. Accumulators far
/// below one full-weight neighbour contribution are compared against that
/// scale instead of their own magnitude.
struct DeviationFloor {
    double rho = 0.0;
    double wcount = 0.0;
};

/// The floor given by a single neighbour at zero separation: the largest
/// mass times w(0), and w(0).
DeviationFloor single_contribution_floor(std::span<const Cell> cells);

struct ComparisonReport {
    double max_rel_rho = 0.0;
    double max_rel_wcount = 0.0;
    std::int64_t worst_id = -1;
    std::size_t compared = 0;
    std::vector<std::int64_t> exempt;
    double rel_tol = 0.0;
    /// Unfloored per-particle relative deviation and how many compared
    /// particles exceed rel_tol under it.
    double strict_max = 0.0;
    std::size_t strict_exceed = 0;

    [[nodiscard]] double max_deviation() const { return std::max(max_rel_rho, max_rel_wcount); }
    [[nodiscard]] bool passed() const { return max_deviation() <= rel_tol; }
};

/// Relative deviation |x - y| / max(|x|, |y|, floor), zero when the
/// denominator vanishes.
double relative_deviation(double x, double y, double floor = 0.0);

/// Per-particle relative deviation of rho and wcount between two fields over
/// the same particle ids. Ids listed in `exempt` are skipped and reported.
/// Throws std::invalid_argument when the id sets differ.
ComparisonReport compare(const DensityField& a, const DensityField& b, double rel_tol,
                         std::span<const std::int64_t> exempt = {}, DeviationFloor floor = {});

enum class SweepMode { naive, pseudo_verlet };

/// Builds one seeded uniform cell pair (unit edge) along the given offset and
/// returns the statistics of the requested scalar sweep.
PairStatistics candidate_fraction(SweepMode mode, std::array<int, 3> offset, std::size_t n_per_cell,
                                  const HPolicy& h, std::uint64_t seed);

} // namespace pvl
