#include "pvl/scalar_engine.hpp"

namespace pvl {

namespace {

// The scans below are written against an accessor for the sorted cut-offs so
// that compute_bounds can read them straight from the cells.

template <class HAt>
void max_index_scan(std::span<const double> dist_a, HAt h_a, std::span<const double> dist_b, int first_a,
                    std::vector<int>& max_index)
{
    const int count_a = int(dist_a.size());
    const int count_b = int(dist_b.size());
    max_index.clear();
    if (first_a >= count_a || count_b == 0)
        return;
    max_index.resize(std::size_t(count_a - first_a));

    int temp = 0;
    while (temp < count_b - 1 && dist_a[first_a] + h_a(first_a) > dist_b[temp])
        temp++;
    max_index[0] = temp;
    for (int i = first_a + 1; i < count_a; i++) {
        temp = max_index[std::size_t(i - 1 - first_a)];
        while (temp < count_b - 1 && dist_a[i] + h_a(i) > dist_b[temp])
            temp++;
        max_index[std::size_t(i - first_a)] = temp;
    }
}

template <class HAt>
void min_index_scan(std::span<const double> dist_b, HAt h_b, std::span<const double> dist_a, int last_b,
                    std::vector<int>& min_index)
{
    const int count_a = int(dist_a.size());
    min_index.clear();
    if (last_b < 0 || count_a == 0)
        return;
    min_index.resize(std::size_t(last_b + 1));

    int temp = count_a - 1;
    while (temp > 0 && dist_b[last_b] - h_b(last_b) < dist_a[temp])
        temp--;
    min_index[std::size_t(last_b)] = temp;
    for (int j = last_b - 1; j >= 0; j--) {
        temp = min_index[std::size_t(j + 1)];
        while (temp > 0 && dist_b[j] - h_b(j) < dist_a[temp])
            temp--;
        min_index[std::size_t(j)] = temp;
    }
}

} // namespace

int compute_first_a(std::span<const double> dist_a, double h_max_a, double dist_b_0)
{
    int first_a = int(dist_a.size());
    while (first_a > 0 && dist_a[first_a - 1] + h_max_a > dist_b_0)
        first_a--;
    return first_a;
}

std::vector<int> compute_max_index_a(std::span<const double> dist_a, std::span<const double> h_a,
                                     std::span<const double> dist_b, int first_a)
{
    std::vector<int> out;
    max_index_scan(dist_a, [&](int i) { return h_a[std::size_t(i)]; }, dist_b, first_a, out);
    return out;
}

int compute_last_b(std::span<const double> dist_b, double h_max_b, double dist_a_last)
{
    const int count_b = int(dist_b.size());
    int last_b = -1;
    while (last_b < count_b - 1 && dist_b[last_b + 1] - h_max_b < dist_a_last)
        last_b++;
    return last_b;
}

std::vector<int> compute_min_index_b(std::span<const double> dist_b, std::span<const double> h_b,
                                     std::span<const double> dist_a, int last_b)
{
    std::vector<int> out;
    min_index_scan(dist_b, [&](int j) { return h_b[std::size_t(j)]; }, dist_a, last_b, out);
    return out;
}

BoundsB compute_bounds_b(std::span<const double> dist_b, std::span<const double> h_b,
                         std::span<const double> dist_a, double h_max_b)
{
    BoundsB out;
    if (dist_a.empty() || dist_b.empty())
        return out;
    out.last_b = compute_last_b(dist_b, h_max_b, dist_a.back());
    out.min_index_b = compute_min_index_b(dist_b, h_b, dist_a, out.last_b);
    return out;
}

std::vector<double> sorted_h(const Cell& cell, const SortedProjection& sp)
{
    std::vector<double> h(sp.size());
    for (std::size_t k = 0; k < sp.size(); ++k)
        h[k] = cell.particles[std::size_t(sp.index[k])].h;
    return h;
}

void compute_bounds(const Cell& cell_a, const Cell& cell_b, const SortedProjection& sp_a,
                    const SortedProjection& sp_b, InteractionBounds& out)
{
    out.first_a = int(sp_a.size());
    out.last_b = -1;
    out.max_index_a.clear();
    out.min_index_b.clear();
    if (sp_a.size() == 0 || sp_b.size() == 0)
        return;

    const auto h_a = [&](int i) { return cell_a.particles[std::size_t(sp_a.index[std::size_t(i)])].h; };
    const auto h_b = [&](int j) { return cell_b.particles[std::size_t(sp_b.index[std::size_t(j)])].h; };

    out.first_a = compute_first_a(sp_a.dist, cell_a.h_max(), sp_b.dist.front());
    max_index_scan(sp_a.dist, h_a, sp_b.dist, out.first_a, out.max_index_a);

    out.last_b = compute_last_b(sp_b.dist, cell_b.h_max(), sp_a.dist.back());
    min_index_scan(sp_b.dist, h_b, sp_a.dist, out.last_b, out.min_index_b);
}

InteractionBounds compute_bounds(const Cell& cell_a, const Cell& cell_b, const SortedProjection& sp_a,
                                 const SortedProjection& sp_b)
{
    InteractionBounds bounds;
    compute_bounds(cell_a, cell_b, sp_a, sp_b, bounds);
    return bounds;
}

} // namespace pvl
