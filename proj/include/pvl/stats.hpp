#pragma once

#include <cstdint>

namespace pvl {

/// Candidate pairs whose distance was computed, and how many of them were
/// within the receiving particle's cut-off. Each direction of a symmetric
/// sweep counts separately.
struct PairStatistics {
    std::uint64_t inspected = 0;
    std::uint64_t in_range = 0;

    [[nodiscard]] double fraction() const
    {
        return inspected == 0 ? 0.0 : double(in_range) / double(inspected);
    }

    PairStatistics& operator+=(const PairStatistics& o)
    {
        inspected += o.inspected;
        in_range += o.in_range;
        return *this;
    }

    friend bool operator==(const PairStatistics&, const PairStatistics&) = default;
};

} // namespace pvl
