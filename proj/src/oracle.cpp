#include "pvl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace pvl {

DensityField collect_densities(std::span<const Cell> cells)
{
    DensityField out;
    for (const auto& c : cells)
        for (const auto& p : c.particles)
            out.push_back({p.id, p.rho, p.wcount});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

namespace {

bool pair_allowed(std::size_t ci, std::size_t cj, const BruteForceOptions& options)
{
    if (ci == cj && !options.include_self)
        return false;
    if (options.focus_cell)
        return ci == *options.focus_cell || cj == *options.focus_cell;
    return true;
}

struct Contribution {
    std::int64_t source;
    double rho;
    double w;
};

} // namespace

DensityField brute_force_reference(std::span<const Cell> cells, const BruteForceOptions& options, PairLog* log)
{
    const CubicFalloffKernel kernel;
    DensityField out;
    std::vector<Contribution> contrib;

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        for (const Particle& pi : cells[ci].particles) {
            contrib.clear();
            for (std::size_t cj = 0; cj < cells.size(); ++cj) {
                if (!pair_allowed(ci, cj, options))
                    continue;
                for (const Particle& pj : cells[cj].particles) {
                    if (&pi == &pj)
                        continue;
                    const double r2 = norm2(pi.pos - pj.pos);
                    if (r2 < pi.h * pi.h) {
                        const double w = kernel(std::sqrt(r2) / pi.h);
                        contrib.push_back({pj.id, pj.mass * w, w});
                    }
                }
            }
            std::sort(contrib.begin(), contrib.end(),
                      [](const Contribution& a, const Contribution& b) { return a.source < b.source; });
            ParticleDensity d{pi.id, 0.0, 0.0};
            for (const auto& c : contrib) {
                d.rho += c.rho;
                d.wcount += c.w;
                if (log)
                    log->emplace_back(pi.id, c.source);
            }
            out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

std::uint64_t oracle_pair_count(const Cell& cell_a, const Cell& cell_b)
{
    std::uint64_t n = 0;
    for (const auto& pi : cell_a.particles)
        for (const auto& pj : cell_b.particles) {
            const double r2 = norm2(pi.pos - pj.pos);
            n += r2 < pi.h * pi.h;
            n += r2 < pj.h * pj.h;
        }
    return n;
}

namespace {

void tally_boundary(const Particle& receiver, const Particle& source, double rel, BoundaryPairs& out)
{
    const double r = std::sqrt(norm2(receiver.pos - source.pos));
    if (std::abs(r - receiver.h) / receiver.h < rel) {
        ++out.count;
        out.receivers.push_back(receiver.id);
    }
}

void unique_receivers(BoundaryPairs& out)
{
    std::sort(out.receivers.begin(), out.receivers.end());
    out.receivers.erase(std::unique(out.receivers.begin(), out.receivers.end()), out.receivers.end());
}

} // namespace

BoundaryPairs boundary_pairs(std::span<const Cell> cells, const BruteForceOptions& options, double rel)
{
    BoundaryPairs out;
    for (std::size_t ci = 0; ci < cells.size(); ++ci)
        for (std::size_t cj = 0; cj < cells.size(); ++cj) {
            if (!pair_allowed(ci, cj, options))
                continue;
            for (const auto& pi : cells[ci].particles)
                for (const auto& pj : cells[cj].particles)
                    if (&pi != &pj)
                        tally_boundary(pi, pj, rel, out);
        }
    unique_receivers(out);
    return out;
}

BoundaryPairs boundary_pairs(const Cell& cell_a, const Cell& cell_b, double rel)
{
    BoundaryPairs out;
    for (const auto& pi : cell_a.particles)
        for (const auto& pj : cell_b.particles) {
            tally_boundary(pi, pj, rel, out);
            tally_boundary(pj, pi, rel, out);
        }
    unique_receivers(out);
    return out;
}

DeviationFloor single_contribution_floor(std::span<const Cell> cells)
{
    const CubicFalloffKernel kernel;
    double m = 0.0;
    for (const auto& c : cells)
        for (const auto& p : c.particles)
            m = std::max(m, p.mass);
    return {m * kernel(0.0), kernel(0.0)};
}

double relative_deviation(double x, double y, double floor)
{
    const double scale = std::max({std::abs(x), std::abs(y), floor});
    return scale == 0.0 ? 0.0 : std::abs(x - y) / scale;
}

ComparisonReport compare(const DensityField& a, const DensityField& b, double rel_tol,
                         std::span<const std::int64_t> exempt, DeviationFloor floor)
{
    if (a.size() != b.size())
        throw std::invalid_argument("density fields cover different particle sets");

    const std::unordered_set<std::int64_t> skip(exempt.begin(), exempt.end());
    ComparisonReport report;
    report.rel_tol = rel_tol;
    double worst = -1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].id != b[k].id)
            throw std::invalid_argument("density fields cover different particle sets");
        if (skip.contains(a[k].id)) {
            report.exempt.push_back(a[k].id);
            continue;
        }
        const double drho = relative_deviation(a[k].rho, b[k].rho, floor.rho);
        const double dw = relative_deviation(a[k].wcount, b[k].wcount, floor.wcount);
        const double strict =
            std::max(relative_deviation(a[k].rho, b[k].rho), relative_deviation(a[k].wcount, b[k].wcount));
        report.strict_max = std::max(report.strict_max, strict);
        report.strict_exceed += strict > rel_tol;
        report.max_rel_rho = std::max(report.max_rel_rho, drho);
        report.max_rel_wcount = std::max(report.max_rel_wcount, dw);
        if (std::max(drho, dw) > worst) {
            worst = std::max(drho, dw);
            report.worst_id = a[k].id;
        }
        ++report.compared;
    }
    return report;
}

PairStatistics candidate_fraction(SweepMode mode, std::array<int, 3> offset, std::size_t n_per_cell,
                                  const HPolicy& h, std::uint64_t seed)
{
    if (!is_canonical(offset))
        offset = {-offset[0], -offset[1], -offset[2]};
    const CellPairDirection dir = make_direction(offset);
    Cell a = make_uniform_cell({0.0, 0.0, 0.0}, 1.0, n_per_cell, h, seed, 0, 0);
    Cell b = make_uniform_cell({double(offset[0]), double(offset[1]), double(offset[2])}, 1.0, n_per_cell, h, seed,
                               1, std::int64_t(n_per_cell));
    if (mode == SweepMode::naive)
        return naive_pair(a, b);
    const auto sp_a = sort_cell(a, dir.axis);
    const auto sp_b = sort_cell(b, dir.axis);
    return pseudo_verlet_scalar(a, b, sp_a, sp_b);
}

} // namespace pvl
