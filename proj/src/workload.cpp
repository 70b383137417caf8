#include "pvl/workload.hpp"

#include <random>

namespace pvl {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t cell_stream_seed(std::uint64_t seed, std::uint64_t cell_index)
{
    return splitmix64(seed ^ splitmix64(cell_index + 1));
}

double uniform01(std::uint64_t bits)
{
    return double(bits >> 11) * 0x1.0p-53;
}

Cell make_uniform_cell(Vec3 origin, double edge, std::size_t n, const HPolicy& h, std::uint64_t seed,
                       std::uint64_t stream, std::int64_t id_base)
{
    std::mt19937_64 rng(cell_stream_seed(seed, stream));
    Cell cell;
    cell.origin = origin;
    cell.edge = edge;
    cell.particles.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Particle p;
        p.id = id_base + std::int64_t(k);
        p.pos.x = origin.x + edge * uniform01(rng());
        p.pos.y = origin.y + edge * uniform01(rng());
        p.pos.z = origin.z + edge * uniform01(rng());
        const double u = 2.0 * uniform01(rng()) - 1.0;
        p.h = h.value * (1.0 + h.jitter * u);
        p.mass = 1.0;
        cell.particles.push_back(p);
    }
    return cell;
}

void CellBlock::reset_accumulators()
{
    for (auto& c : cells)
        c.reset_accumulators();
}

CellBlock make_block27(std::size_t n_per_cell, double edge, const HPolicy& h, std::uint64_t seed)
{
    CellBlock block;
    block.cells.reserve(27);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const std::size_t idx = CellBlock::index_of(i, j, k);
                block.cells.push_back(make_uniform_cell(edge * Vec3{double(i), double(j), double(k)}, edge,
                                                        n_per_cell, h, seed, idx,
                                                        std::int64_t(idx * n_per_cell)));
            }
    return block;
}

std::vector<NeighbourPair> neighbour_pairs()
{
    std::vector<NeighbourPair> out;
    out.reserve(26);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const std::size_t idx = CellBlock::index_of(i, j, k);
                if (idx == CellBlock::central)
                    continue;
                NeighbourPair np;
                np.neighbour = idx;
                np.offset = {i - 1, j - 1, k - 1};
                if (is_canonical(np.offset)) {
                    np.cell_a = CellBlock::central;
                    np.cell_b = idx;
                    np.direction = make_direction(np.offset);
                } else {
                    np.cell_a = idx;
                    np.cell_b = CellBlock::central;
                    np.direction = make_direction({-np.offset[0], -np.offset[1], -np.offset[2]});
                }
                out.push_back(np);
            }
    return out;
}

} // namespace pvl
