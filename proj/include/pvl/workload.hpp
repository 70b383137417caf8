#pragma once

#include "pvl/geometry.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pvl {

/// Cut-off assignment for generated particles: h = value * (1 + jitter * u)
/// with u uniform in [-1, 1).
struct HPolicy {
    double value = 1.2348 / 6.0;
    double jitter = 0.0;
};

/// Seed of the independent random stream for one cell.
std::uint64_t cell_stream_seed(std::uint64_t seed, std::uint64_t cell_index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(std::uint64_t bits);

/// Cell of edge `edge` at `origin` holding n uniformly placed unit-mass
/// particles with ids id_base .. id_base + n - 1. Contents depend only on
/// (seed, stream).
Cell make_uniform_cell(Vec3 origin, double edge, std::size_t n, const HPolicy& h, std::uint64_t seed,
                       std::uint64_t stream, std::int64_t id_base);

/// 3x3x3 block of cells; cell (i, j, k) sits at index 9i + 3j + k with
/// origin (i, j, k) * edge. Index 13 is the central cell.
struct CellBlock {
    static constexpr std::size_t central = 13;
    std::vector<Cell> cells;

    static std::size_t index_of(int i, int j, int k) { return std::size_t(9 * i + 3 * j + k); }

    void reset_accumulators();
};

CellBlock make_block27(std::size_t n_per_cell, double edge, const HPolicy& h, std::uint64_t seed);

/// One of the 26 neighbours of the central cell, arranged so that cell (a)
/// lies on the lower side of the canonical direction.
struct NeighbourPair {
    std::size_t neighbour = 0;
    std::array<int, 3> offset{};
    std::size_t cell_a = 0;
    std::size_t cell_b = 0;
    CellPairDirection direction;
};

/// All 26 neighbour pairs in cell-index order.
std::vector<NeighbourPair> neighbour_pairs();

} // namespace pvl
