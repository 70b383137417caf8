#pragma once

#include "pvl/geometry.hpp"
#include "pvl/scalar_engine.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pvl {

/// Thrown when a cell holds more particles than the cache may take.
class CacheCapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Sorted, shifted, single-precision SoA copy of the part of one cell that a
/// pair sweep touches. Slot k holds the particle at sorted index
/// sorted_offset + k; slots from logical_count to padded_count are sentinels
/// (src_index -1, zero h and mass, far-away position).
struct ParticleCache {
    std::vector<float> x;
    std::vector<float> y;
    std::vector<float> z;
    std::vector<float> h;
    std::vector<float> mass;
    std::vector<int> src_index;
    std::size_t logical_count = 0;
    std::size_t padded_count = 0;
    int sorted_offset = 0;
    float sentinel_coord = 0.0f;

    void clear();
};

struct CacheConfig {
    std::size_t capacity = 4096;
    /// Periodic box lengths; positions are wrapped to the minimum image
    /// around the pair centre when set.
    std::optional<Vec3> domain_size;
};

struct PairCaches {
    ParticleCache a;
    ParticleCache b;
    Vec3 centre;
};

/// Midpoint of the two cell centres.
Vec3 pair_centre(const Cell& cell_a, const Cell& cell_b);

/// Shift by the pair centre, wrap when periodic, narrow to float.
Vec3 shift_position(Vec3 pos, Vec3 centre, const std::optional<Vec3>& domain_size);

/// Fills both caches with the union of the sorted ranges needed by the
/// (a <- b) and (b <- a) sweeps, then pads each to lane_width.
void build_pair_caches(const Cell& cell_a, const Cell& cell_b, const SortedProjection& sp_a,
                       const SortedProjection& sp_b, const InteractionBounds& bounds, int lane_width,
                       const CacheConfig& config, PairCaches& out);

PairCaches build_pair_caches(const Cell& cell_a, const Cell& cell_b, const SortedProjection& sp_a,
                             const SortedProjection& sp_b, const InteractionBounds& bounds, int lane_width = 1,
                             const CacheConfig& config = {});

/// Appends sentinels up to the next multiple of lane_width (1, 4, 8 or 16).
/// Existing padding is discarded first.
void pad_to_lanes(ParticleCache& cache, int lane_width);

bool is_valid_lane_width(int lane_width);

} // namespace pvl
