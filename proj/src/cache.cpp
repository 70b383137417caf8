#include "pvl/cache.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pvl {

void ParticleCache::clear()
{
    x.clear();
    y.clear();
    z.clear();
    h.clear();
    mass.clear();
    src_index.clear();
    logical_count = 0;
    padded_count = 0;
    sorted_offset = 0;
}


bool is_valid_lane_width(int lane_width)
{
    return lane_width == 1 || lane_width == 4 || lane_width == 8 || lane_width == 16;
}

void pad_to_lanes(ParticleCache& cache, int lane_width)
{
    if (!is_valid_lane_width(lane_width))
        throw std::invalid_argument("lane width must be 1, 4, 8 or 16, got " + std::to_string(lane_width));

    const std::size_t n = cache.logical_count;
    const std::size_t w = std::size_t(lane_width);
    const std::size_t padded = (n + w - 1) / w * w;

    const float s = cache.sentinel_coord;
    for (auto* v : {&cache.x, &cache.y, &cache.z}) {
        v->resize(n);
        v->resize(padded, s);
    }
    for (auto* v : {&cache.h, &cache.mass}) {
        v->resize(n);
        v->resize(padded, 0.0f);
    }
    cache.src_index.resize(n);
    cache.src_index.resize(padded, -1);
    cache.padded_count = padded;
}

Vec3 pair_centre(const Cell& cell_a, const Cell& cell_b)
{
    return 0.5 * (cell_a.centre() + cell_b.centre());
}

Vec3 shift_position(Vec3 pos, Vec3 centre, const std::optional<Vec3>& domain_size)
{
    Vec3 d = pos - centre;
    if (domain_size) {
        const auto wrap = [](double v, double len) { return len > 0.0 ? v - len * std::round(v / len) : v; };
        d = {wrap(d.x, domain_size->x), wrap(d.y, domain_size->y), wrap(d.z, domain_size->z)};
    }
    return d;
}

namespace {

void fill(ParticleCache& cache, const Cell& cell, const SortedProjection& sp, int first, int last, Vec3 centre,
          const CacheConfig& config)
{
    const std::size_t n = last >= first ? std::size_t(last - first + 1) : 0;
    cache.sorted_offset = std::max(first, 0);
    for (auto* v : {&cache.x, &cache.y, &cache.z, &cache.h, &cache.mass})
        v->resize(n);
    cache.src_index.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const int src = sp.index[std::size_t(first) + k];
        const Particle& p = cell.particles[std::size_t(src)];
        const Vec3 d = shift_position(p.pos, centre, config.domain_size);
        cache.x[k] = float(d.x);
        cache.y[k] = float(d.y);
        cache.z[k] = float(d.z);
        cache.h[k] = float(p.h);
        cache.mass[k] = float(p.mass);
        cache.src_index[k] = src;
    }
    cache.logical_count = n;
}

} // namespace

void build_pair_caches(const Cell& cell_a, const Cell& cell_b, const SortedProjection& sp_a,
                       const SortedProjection& sp_b, const InteractionBounds& bounds, int lane_width,
                       const CacheConfig& config, PairCaches& out)
{
    for (const Cell* c : {&cell_a, &cell_b}) {
        if (c->size() > config.capacity)
            throw CacheCapacityError("cell holds " + std::to_string(c->size()) +
                                     " particles, cache capacity is " + std::to_string(config.capacity));
    }

    out.a.clear();
    out.b.clear();
    out.centre = pair_centre(cell_a, cell_b);
    const float sentinel = float(2.0 * std::max(cell_a.edge, cell_b.edge) +
                                 2.0 * std::max(cell_a.h_max(), cell_b.h_max()));
    out.a.sentinel_coord = sentinel;
    out.b.sentinel_coord = sentinel;

    const int count_a = int(sp_a.size());
    if (count_a > 0 && !sp_b.dist.empty()) {
        // (a): outer particles from first_a plus the (b <- a) candidates from
        // min_index_b onward, both ending at count_a - 1.
        int start_a = bounds.first_a;
        if (!bounds.min_index_b.empty())
            start_a = std::min(start_a, bounds.min_index_b.front());
        // (b): candidates 0..max_index_a of the last (a) particle plus the
        // (b <- a) outer particles 0..last_b.
        int end_b = bounds.last_b;
        if (!bounds.max_index_a.empty())
            end_b = std::max(end_b, bounds.max_index_a.back());

        if (start_a < count_a)
            fill(out.a, cell_a, sp_a, start_a, count_a - 1, out.centre, config);
        fill(out.b, cell_b, sp_b, 0, end_b, out.centre, config);
    }

    pad_to_lanes(out.a, lane_width);
    pad_to_lanes(out.b, lane_width);
}

PairCaches build_pair_caches(const Cell& cell_a, const Cell& cell_b, const SortedProjection& sp_a,
                             const SortedProjection& sp_b, const InteractionBounds& bounds, int lane_width,
                             const CacheConfig& config)
{
    PairCaches out;
    build_pair_caches(cell_a, cell_b, sp_a, sp_b, bounds, lane_width, config, out);
    return out;
}

} // namespace pvl
