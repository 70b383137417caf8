#pragma once

#include "pvl/geometry.hpp"
#include "pvl/kernel.hpp"
#include "pvl/stats.hpp"

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pvl {

/// (receiver id, source id) of every interaction applied, in visit order.
using PairLog = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// Adds the contribution of pj onto pi. A separation at or beyond pi.h
/// contributes nothing.
template <DensityKernel Kernel = CubicFalloffKernel>
void interact(Particle& pi, const Particle& pj, const Kernel& kernel = {})
{
    const double r = std::sqrt(norm2(pi.pos - pj.pos));
    const double w = kernel(r / pi.h);
    pi.rho += pj.mass * w;
    pi.wcount += w;
}

namespace detail {

template <DensityKernel Kernel>
inline void accumulate(Particle& pi, const Particle& pj, double r2, const Kernel& kernel, PairLog* log)
{
    const double w = kernel(std::sqrt(r2) / pi.h);
    pi.rho += pj.mass * w;
    pi.wcount += w;
    if (log)
        log->emplace_back(pi.id, pj.id);
}

} // namespace detail

/// Code-1 style double loop over every particle pair of two disjoint cells,
/// accumulating in both directions.
template <DensityKernel Kernel = CubicFalloffKernel>
PairStatistics naive_pair(Cell& cell_a, Cell& cell_b, const Kernel& kernel = {}, PairLog* log = nullptr)
{
    PairStatistics stats;
    for (auto& pi : cell_a.particles) {
        const double hi2 = pi.h * pi.h;
        for (auto& pj : cell_b.particles) {
            const double r2 = norm2(pi.pos - pj.pos);
            stats.inspected += 2;
            if (r2 < hi2) {
                detail::accumulate(pi, pj, r2, kernel, log);
                ++stats.in_range;
            }
            if (r2 < pj.h * pj.h) {
                detail::accumulate(pj, pi, r2, kernel, log);
                ++stats.in_range;
            }
        }
    }
    return stats;
}

/// All ordered pairs i != j within one cell.
template <DensityKernel Kernel = CubicFalloffKernel>
PairStatistics naive_self(Cell& cell, const Kernel& kernel = {}, PairLog* log = nullptr)
{
    PairStatistics stats;
    auto& parts = cell.particles;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (i == j)
                continue;
            const double r2 = norm2(parts[i].pos - parts[j].pos);
            ++stats.inspected;
            if (r2 < parts[i].h * parts[i].h) {
                detail::accumulate(parts[i], parts[j], r2, kernel, log);
                ++stats.in_range;
            }
        }
    }
    return stats;
}

/// Code-2 style sorted sweep. Both projections must be along the same unit
/// axis with cell (a) on the lower side. The (a <- b) inner loop stops once
/// dist_b[j] reaches dist_a[i] + h_i; the (b <- a) sweep is its mirror.
template <DensityKernel Kernel = CubicFalloffKernel>
PairStatistics pseudo_verlet_scalar(Cell& cell_a, Cell& cell_b, const SortedProjection& sp_a,
                                    const SortedProjection& sp_b, const Kernel& kernel = {},
                                    PairLog* log = nullptr)
{
    PairStatistics stats;
    const int count_a = int(sp_a.size());
    const int count_b = int(sp_b.size());

    for (int i = 0; i < count_a; ++i) {
        Particle& pi = cell_a.particles[sp_a.index[i]];
        const double hi2 = pi.h * pi.h;
        const double reach = sp_a.dist[i] + pi.h;
        for (int j = 0; j < count_b && sp_b.dist[j] < reach; ++j) {
            const Particle& pj = cell_b.particles[sp_b.index[j]];
            const double r2 = norm2(pi.pos - pj.pos);
            ++stats.inspected;
            if (r2 < hi2) {
                detail::accumulate(pi, pj, r2, kernel, log);
                ++stats.in_range;
            }
        }
    }

    for (int j = 0; j < count_b; ++j) {
        Particle& pj = cell_b.particles[sp_b.index[j]];
        const double hj2 = pj.h * pj.h;
        const double reach = sp_b.dist[j] - pj.h;
        for (int i = count_a - 1; i >= 0 && sp_a.dist[i] > reach; --i) {
            const Particle& pi = cell_a.particles[sp_a.index[i]];
            const double r2 = norm2(pj.pos - pi.pos);
            ++stats.inspected;
            if (r2 < hj2) {
                detail::accumulate(pj, pi, r2, kernel, log);
                ++stats.in_range;
            }
        }
    }
    return stats;
}

/// Loop limits for one cell pair, all in sorted-order indices.
///
/// Particles of (a) below first_a cannot reach any particle of (b). For the
/// remaining ones, max_index_a[i - first_a] is the last (b) candidate. On the
/// other side, particles of (b) above last_b cannot reach (a), and
/// min_index_b[j] is the first (a) candidate of (b) particle j <= last_b.
struct InteractionBounds {
    int first_a = 0;
    std::vector<int> max_index_a;
    int last_b = -1;
    std::vector<int> min_index_b;

    [[nodiscard]] int max_index_at(int i) const { return max_index_a[std::size_t(i - first_a)]; }
};

/// Backward scan for the first (a) particle that may reach dist_b_0 using the
/// cell-wide maximum cut-off.
int compute_first_a(std::span<const double> dist_a, double h_max_a, double dist_b_0);

/// Single forward pass, each entry starting from its predecessor. h_a holds
/// the cut-offs of (a) in sorted order. Result has count_a - first_a entries.
std::vector<int> compute_max_index_a(std::span<const double> dist_a, std::span<const double> h_a,
                                     std::span<const double> dist_b, int first_a);

/// Mirror of compute_first_a: forward scan for the last (b) particle that may
/// reach dist_a_last. Returns -1 when none can.
int compute_last_b(std::span<const double> dist_b, double h_max_b, double dist_a_last);

/// Mirror of compute_max_index_a: single backward pass from last_b. Result has
/// last_b + 1 entries.
std::vector<int> compute_min_index_b(std::span<const double> dist_b, std::span<const double> h_b,
                                     std::span<const double> dist_a, int last_b);

struct BoundsB {
    int last_b = -1;
    std::vector<int> min_index_b;
};

BoundsB compute_bounds_b(std::span<const double> dist_b, std::span<const double> h_b,
                         std::span<const double> dist_a, double h_max_b);

/// Cut-offs of a cell's particles in sorted-projection order.
std::vector<double> sorted_h(const Cell& cell, const SortedProjection& sp);

/// Both sides' bounds for a sorted cell pair. Empty cells give first_a =
/// count_a and last_b = -1.
InteractionBounds compute_bounds(const Cell& cell_a, const Cell& cell_b, const SortedProjection& sp_a,
                                 const SortedProjection& sp_b);

/// As above, reusing the storage of `out`.
void compute_bounds(const Cell& cell_a, const Cell& cell_b, const SortedProjection& sp_a,
                    const SortedProjection& sp_b, InteractionBounds& out);

} // namespace pvl
