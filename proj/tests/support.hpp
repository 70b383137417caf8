#pragma once

#include "pvl/geometry.hpp"
#include "pvl/workload.hpp"

#include <cmath>
#include <cstdint>
#include <set>
#include <utility>

namespace pvl::testing {

using PairSet = std::set<std::pair<std::int64_t, std::int64_t>>;

/// Cell a at the origin, cell b at the canonical offset, unit edge.
struct CellPair {
    Cell a;
    Cell b;
    CellPairDirection dir;
};

inline CellPair make_pair(std::array<int, 3> offset, std::size_t na, std::size_t nb, const HPolicy& h,
                          std::uint64_t seed)
{
    CellPair p;
    p.dir = make_direction(offset);
    p.a = make_uniform_cell({0, 0, 0}, 1.0, na, h, seed, 0, 0);
    p.b = make_uniform_cell({double(offset[0]), double(offset[1]), double(offset[2])}, 1.0, nb, h, seed, 1,
                            std::int64_t(na));
    return p;
}

/// Every (receiver, source) with r^2 < h_receiver^2, in both directions.
inline PairSet true_pairs(const Cell& a, const Cell& b)
{
    PairSet out;
    for (const auto& p : a.particles)
        for (const auto& q : b.particles) {
            const Vec3 d = p.pos - q.pos;
            const double r2 = d.x * d.x + d.y * d.y + d.z * d.z;
            if (r2 < p.h * p.h)
                out.emplace(p.id, q.id);
            if (r2 < q.h * q.h)
                out.emplace(q.id, p.id);
        }
    return out;
}

template <class Log>
PairSet to_set(const Log& log)
{
    return PairSet(log.begin(), log.end());
}

inline double distance(Vec3 a, Vec3 b)
{
    const Vec3 d = a - b;
    return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

} // namespace pvl::testing
