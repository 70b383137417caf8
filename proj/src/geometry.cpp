#include "pvl/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pvl {

double Cell::h_max() const
{
    // four independent chains so the max latency overlaps
    std::array<double, 4> m{};
    const std::size_t n = particles.size();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        for (std::size_t l = 0; l < 4; ++l)
            m[l] = std::max(m[l], particles[k + l].h);
    for (; k < n; ++k)
        m[0] = std::max(m[0], particles[k].h);
    return std::max(std::max(m[0], m[1]), std::max(m[2], m[3]));
}

void Cell::reset_accumulators()
{
    for (auto& p : particles) {
        p.rho = 0.0;
        p.wcount = 0.0;
    }
}

std::string_view to_string(DirectionKind kind)
{
    switch (kind) {
    case DirectionKind::face: return "face";
    case DirectionKind::edge: return "edge";
    case DirectionKind::corner: return "corner";
    }
    return "unknown";
}

bool is_canonical(std::array<int, 3> offset)
{
    for (int c : offset) {
        if (c != 0)
            return c > 0;
    }
    return false;
}

CellPairDirection make_direction(std::array<int, 3> offset)
{
    int nonzero = 0;
    for (int c : offset) {
        if (c < -1 || c > 1)
            throw std::invalid_argument("cell offset components must be in {-1, 0, 1}");
        nonzero += c != 0;
    }
    if (nonzero == 0)
        throw std::invalid_argument("cell offset must be non-zero");

    const Vec3 raw{double(offset[0]), double(offset[1]), double(offset[2])};
    const double inv = 1.0 / std::sqrt(double(nonzero));

    CellPairDirection d;
    d.offset = offset;
    d.axis = inv * raw;
    d.kind = nonzero == 1 ? DirectionKind::face : (nonzero == 2 ? DirectionKind::edge : DirectionKind::corner);
    return d;
}

std::vector<CellPairDirection> make_direction_set()
{
    std::vector<CellPairDirection> out;
    out.reserve(13);
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j)
            for (int k = -1; k <= 1; ++k) {
                const std::array<int, 3> off{i, j, k};
                if (is_canonical(off))
                    out.push_back(make_direction(off));
            }
    return out;
}

SortedProjection sort_cell(const Cell& cell, Vec3 axis)
{
    const std::size_t n = cell.size();
    std::vector<double> proj(n);
    for (std::size_t k = 0; k < n; ++k)
        proj[k] = project(cell.particles[k].pos, axis);

    SortedProjection sp;
    sp.index.resize(n);
    std::iota(sp.index.begin(), sp.index.end(), 0);
    // stable_sort keeps equal projections in ascending index order.
    std::stable_sort(sp.index.begin(), sp.index.end(), [&](int a, int b) { return proj[a] < proj[b]; });

    sp.dist.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        sp.dist[k] = proj[sp.index[k]];
    return sp;
}

} // namespace pvl
