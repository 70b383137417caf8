#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pvl {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;

    constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr double norm2(Vec3 a) { return dot(a, a); }

/// A particle with its density accumulators. rho and wcount are zero until
/// an interaction pass touches them.
struct Particle {
    std::int64_t id = 0;
    Vec3 pos;
    double h = 0.0;
    double mass = 0.0;
    double rho = 0.0;
    double wcount = 0.0;
};

/// Axis-aligned cubic cell of a cell list. Every contained particle lies in
/// [origin, origin + edge) per axis and edge >= h_max().
struct Cell {
    Vec3 origin;
    double edge = 1.0;
    std::vector<Particle> particles;

    [[nodiscard]] std::size_t size() const { return particles.size(); }
    [[nodiscard]] bool empty() const { return particles.empty(); }
    [[nodiscard]] double h_max() const;
    [[nodiscard]] Vec3 centre() const { return origin + Vec3{edge / 2, edge / 2, edge / 2}; }

    /// Zeroes rho and wcount of every particle.
    void reset_accumulators();
};

enum class DirectionKind { face, edge, corner };

std::string_view to_string(DirectionKind kind);

/// One of the 13 symmetry-reduced neighbour offsets with its unit axis.
struct CellPairDirection {
    std::array<int, 3> offset{};
    Vec3 axis;
    DirectionKind kind = DirectionKind::face;

    friend bool operator==(const CellPairDirection&, const CellPairDirection&) = default;
};

/// Builds the direction for an arbitrary non-zero offset in {-1,0,1}^3. The
/// offset is kept as given (not canonicalised).
CellPairDirection make_direction(std::array<int, 3> offset);

/// The 13 canonical directions: one lexicographically positive representative
/// of each +/- pair of the 26 neighbour offsets, in lexicographic order.
std::vector<CellPairDirection> make_direction_set();

/// True when the first non-zero component of the offset is positive.
bool is_canonical(std::array<int, 3> offset);

/// Scalar projection of a position onto a unit axis, in length units.
constexpr double project(Vec3 pos, Vec3 axis) { return dot(pos, axis); }

/// Projected distances of one cell's particles, sorted ascending. index[k]
/// is the position within the cell of the particle at sorted slot k.
struct SortedProjection {
    std::vector<double> dist;
    std::vector<int> index;

    [[nodiscard]] std::size_t size() const { return dist.size(); }
};

/// Sorts a cell's particles along the axis. Ties are broken by ascending
/// particle position within the cell.
SortedProjection sort_cell(const Cell& cell, Vec3 axis);

} // namespace pvl
