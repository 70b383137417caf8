#pragma once

#include "pvl/cache.hpp"
#include "pvl/geometry.hpp"
#include "pvl/kernel.hpp"
#include "pvl/scalar_engine.hpp"
#include "pvl/stats.hpp"

#include <array>
#include <cstdint>
#include <experimental/simd>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace pvl {

template <int W>
using LaneFloat = std::experimental::fixed_size_simd<float, W>;

/// W consecutive cache entries starting at a lane-aligned slot.
template <int W>
struct LaneBlock {
    LaneFloat<W> x;
    LaneFloat<W> y;
    LaneFloat<W> z;
    LaneFloat<W> h;
    LaneFloat<W> mass;

    static LaneBlock load(const ParticleCache& cache, std::size_t offset)
    {
        constexpr auto tag = std::experimental::element_aligned;
        return {LaneFloat<W>(cache.x.data() + offset, tag), LaneFloat<W>(cache.y.data() + offset, tag),
                LaneFloat<W>(cache.z.data() + offset, tag), LaneFloat<W>(cache.h.data() + offset, tag),
                LaneFloat<W>(cache.mass.data() + offset, tag)};
    }
};

/// Per-lane flags.
template <int W>
struct LaneMask {
    typename LaneFloat<W>::mask_type lane{false};

    [[nodiscard]] bool any() const { return std::experimental::any_of(lane); }
    [[nodiscard]] int count() const { return std::experimental::popcount(lane); }
    [[nodiscard]] bool operator[](int k) const { return lane[k]; }
};

/// Per-lane partial sums for one outer particle.
template <int W>
struct LaneAccumulator {
    LaneFloat<W> rho = 0.0f;
    LaneFloat<W> wcount = 0.0f;

    void reset()
    {
        rho = 0.0f;
        wcount = 0.0f;
    }
};

/// Pairwise tree reduction: lane k absorbs lane k + s for s = W/2, W/4, ...
template <int W>
float horizontal_sum(std::array<float, W> v)
{
    for (int s = W / 2; s > 0; s /= 2)
        for (int k = 0; k < s; ++k)
            v[k] += v[k + s];
    return v[0];
}

template <int W>
float horizontal_sum(const LaneFloat<W>& v)
{
    std::array<float, W> a;
    v.copy_to(a.data(), std::experimental::element_aligned);
    return horizontal_sum<W>(a);
}

template <int W>
struct LaneDistances {
    LaneFloat<W> r2;
};

/// Squared distances from outer slot i to inner slots j_block .. j_block + W - 1.
template <int W>
[[gnu::always_inline]] inline LaneDistances<W> particle_dist_bulk(const ParticleCache& outer, std::size_t i,
                                                                  const ParticleCache& inner, std::size_t j_block)
{
    constexpr auto tag = std::experimental::element_aligned;
    const LaneFloat<W> dx = outer.x[i] - LaneFloat<W>(inner.x.data() + j_block, tag);
    const LaneFloat<W> dy = outer.y[i] - LaneFloat<W>(inner.y.data() + j_block, tag);
    const LaneFloat<W> dz = outer.z[i] - LaneFloat<W>(inner.z.data() + j_block, tag);
    return {dx * dx + dy * dy + dz * dz};
}

/// Lane k is set iff r_k < h_i, evaluated on squared distances.
template <int W>
[[gnu::always_inline]] inline LaneMask<W> make_mask(const LaneDistances<W>& d, float h_i)
{
    return {d.r2 < h_i * h_i};
}

template <int W, DensityKernel Kernel = CubicFalloffKernel>
[[gnu::always_inline]] inline void interact_bulk(const LaneDistances<W>& d, float h_i, const ParticleCache& inner,
                                                 std::size_t j_block, const LaneMask<W>& mask,
                                                 LaneAccumulator<W>& acc, const Kernel& kernel = {})
{
    const LaneFloat<W> q = std::experimental::sqrt(d.r2) * (1.0f / h_i);
    LaneFloat<W> w;
    if constexpr (std::is_invocable_r_v<LaneFloat<W>, const Kernel&, LaneFloat<W>>) {
        w = kernel(q);
    } else {
        for (int k = 0; k < W; ++k)
            w[k] = kernel(float(q[k]));
    }
    LaneFloat<W> sel = 0.0f;
    std::experimental::where(mask.lane, sel) = w;
    const LaneFloat<W> mj(inner.mass.data() + j_block, std::experimental::element_aligned);
    acc.rho += mj * sel;
    acc.wcount += sel;
}

/// Same as above, recomputing the distances from the caches.
template <int W, DensityKernel Kernel = CubicFalloffKernel>
void interact_bulk(const ParticleCache& outer, std::size_t i, const ParticleCache& inner, std::size_t j_block,
                   const LaneMask<W>& mask, LaneAccumulator<W>& acc, const Kernel& kernel = {})
{
    interact_bulk<W>(particle_dist_bulk<W>(outer, i, inner, j_block), outer.h[i], inner, j_block, mask, acc,
                     kernel);
}

/// Optional instrumentation of a vectorised pair sweep.
struct VectorTrace {
    /// Sorted indices of the outer particles, in visit order.
    std::vector<int> outer_a;
    std::vector<int> outer_b;
    /// Accumulator flushes per cell-local particle index.
    std::vector<int> flushes_a;
    std::vector<int> flushes_b;
};

/// Reusable storage for the bounds and caches of successive pair sweeps.
struct PairWorkspace {
    InteractionBounds bounds;
    PairCaches caches;
};

struct VectorOptions {
    int lane_width = 8;
    CacheConfig cache;
    /// Corner pairs go through pseudo_verlet_scalar when set.
    bool scalar_corner_dispatch = true;
    PairWorkspace* workspace = nullptr;
    VectorTrace* trace = nullptr;
    PairLog* log = nullptr;
};

struct PairSweepResult {
    PairStatistics stats;
    bool scalar_dispatch = false;
};

namespace detail {

inline std::size_t round_up(std::size_t n, std::size_t w) { return (n + w - 1) / w * w; }

template <int W, DensityKernel Kernel>
PairStatistics vector_sweep(Cell& cell_a, Cell& cell_b, const InteractionBounds& bounds, const PairCaches& caches,
                            const Kernel& kernel, VectorTrace* trace, PairLog* log)
{
    PairStatistics stats;
    const ParticleCache& ca = caches.a;
    const ParticleCache& cb = caches.b;
    const int count_a = int(bounds.max_index_a.size()) + bounds.first_a;

    const auto flush = [](Particle& p, const LaneAccumulator<W>& acc) {
        p.rho += double(horizontal_sum<W>(acc.rho));
        p.wcount += double(horizontal_sum<W>(acc.wcount));
    };
    const auto record = [&](const Particle& receiver, const Cell& src_cell, const ParticleCache& src,
                            std::size_t j_block, const LaneMask<W>& m) {
        for (int k = 0; k < W; ++k)
            if (m[k])
                log->emplace_back(receiver.id, src_cell.particles[std::size_t(src.src_index[j_block + k])].id);
    };

    // (a <- b): outer particles from the interface backwards.
    LaneAccumulator<W> acc;
    if (!bounds.max_index_a.empty()) {
        for (int i = count_a - 1; i >= bounds.first_a; --i) {
            const std::size_t slot = std::size_t(i - ca.sorted_offset);
            const float h_i = ca.h[slot];
            const std::size_t j_end = round_up(std::size_t(bounds.max_index_at(i)) + 1, W);
            acc.reset();
            for (std::size_t jb = 0; jb < j_end; jb += W) {
                const auto d = particle_dist_bulk<W>(ca, slot, cb, jb);
                const auto m = make_mask<W>(d, h_i);
                stats.inspected += std::min<std::size_t>(W, cb.logical_count - jb);
                if (m.any()) {
                    stats.in_range += std::uint64_t(m.count());
                    interact_bulk<W>(d, h_i, cb, jb, m, acc, kernel);
                    if (log)
                        record(cell_a.particles[std::size_t(ca.src_index[slot])], cell_b, cb, jb, m);
                }
            }
            Particle& p = cell_a.particles[std::size_t(ca.src_index[slot])];
            flush(p, acc);
            if (trace) {
                trace->outer_a.push_back(i);
                trace->flushes_a[std::size_t(ca.src_index[slot])]++;
            }
        }
    }

    // (b <- a): outer particles from the interface forwards.
    for (int j = 0; j <= bounds.last_b && !bounds.min_index_b.empty(); ++j) {
        const std::size_t slot = std::size_t(j - cb.sorted_offset);
        const float h_j = cb.h[slot];
        const std::size_t i_begin = std::size_t(bounds.min_index_b[std::size_t(j)] - ca.sorted_offset) / W * W;
        acc.reset();
        for (std::size_t ib = i_begin; ib < ca.padded_count; ib += W) {
            const auto d = particle_dist_bulk<W>(cb, slot, ca, ib);
            const auto m = make_mask<W>(d, h_j);
            stats.inspected += std::min<std::size_t>(W, ca.logical_count - ib);
            if (m.any()) {
                stats.in_range += std::uint64_t(m.count());
                interact_bulk<W>(d, h_j, ca, ib, m, acc, kernel);
                if (log)
                    record(cell_b.particles[std::size_t(cb.src_index[slot])], cell_a, ca, ib, m);
            }
        }
        Particle& p = cell_b.particles[std::size_t(cb.src_index[slot])];
        flush(p, acc);
        if (trace) {
            trace->outer_b.push_back(j);
            trace->flushes_b[std::size_t(cb.src_index[slot])]++;
        }
    }
    return stats;
}

} // namespace detail

/// Full lane-parallel pair sweep: bounds, caches, then the masked loops for
/// (a <- b) and (b <- a). Corner pairs use the scalar sweep when
/// options.scalar_corner_dispatch is set.
template <DensityKernel Kernel = CubicFalloffKernel>
PairSweepResult pair_interact_vectorised(Cell& cell_a, Cell& cell_b, const CellPairDirection& direction,
                                         const SortedProjection& sp_a, const SortedProjection& sp_b,
                                         const VectorOptions& options = {}, const Kernel& kernel = {})
{
    if (!is_valid_lane_width(options.lane_width))
        throw std::invalid_argument("lane width must be 1, 4, 8 or 16, got " +
                                    std::to_string(options.lane_width));

    PairSweepResult result;
    if (options.scalar_corner_dispatch && direction.kind == DirectionKind::corner) {
        result.stats = pseudo_verlet_scalar(cell_a, cell_b, sp_a, sp_b, kernel, options.log);
        result.scalar_dispatch = true;
        return result;
    }

    if (options.trace) {
        options.trace->flushes_a.assign(cell_a.size(), 0);
        options.trace->flushes_b.assign(cell_b.size(), 0);
    }

    PairWorkspace local;
    PairWorkspace& ws = options.workspace ? *options.workspace : local;
    compute_bounds(cell_a, cell_b, sp_a, sp_b, ws.bounds);
    build_pair_caches(cell_a, cell_b, sp_a, sp_b, ws.bounds, options.lane_width, options.cache, ws.caches);
    const InteractionBounds& bounds = ws.bounds;
    const PairCaches& caches = ws.caches;

    switch (options.lane_width) {
    case 1:
        result.stats = detail::vector_sweep<1>(cell_a, cell_b, bounds, caches, kernel, options.trace, options.log);
        break;
    case 4:
        result.stats = detail::vector_sweep<4>(cell_a, cell_b, bounds, caches, kernel, options.trace, options.log);
        break;
    case 8:
        result.stats = detail::vector_sweep<8>(cell_a, cell_b, bounds, caches, kernel, options.trace, options.log);
        break;
    default:
        result.stats = detail::vector_sweep<16>(cell_a, cell_b, bounds, caches, kernel, options.trace, options.log);
        break;
    }
    return result;
}

/// Sorts both cells along the direction's axis, then sweeps.
template <DensityKernel Kernel = CubicFalloffKernel>
PairSweepResult pair_interact_vectorised(Cell& cell_a, Cell& cell_b, const CellPairDirection& direction,
                                         const VectorOptions& options = {}, const Kernel& kernel = {})
{
    const auto sp_a = sort_cell(cell_a, direction.axis);
    const auto sp_b = sort_cell(cell_b, direction.axis);
    return pair_interact_vectorised(cell_a, cell_b, direction, sp_a, sp_b, options, kernel);
}

} // namespace pvl
