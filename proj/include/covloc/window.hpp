#pragma once

#include <cstddef>
#include <string>

#include "covloc/types.hpp"

namespace covloc {

// Contiguous range of basis indices [lo, hi], lo may be negative
// (two-sided torus case) or zero (phase-observable case on the
// nonnegative integers).
struct IndexWindow {
    int lo = 0;
    int hi = 0;

    IndexWindow() = default;
    IndexWindow(int lo_, int hi_) : lo(lo_), hi(hi_) {
        if (lo > hi)
            throw input_error("IndexWindow: lo > hi (" + std::to_string(lo) +
                              " > " + std::to_string(hi) + ")");
    }

    int dim() const { return hi - lo + 1; }
    bool contains(int n) const { return lo <= n && n <= hi; }
    bool contains(const IndexWindow& sub) const {
        return lo <= sub.lo && sub.hi <= hi;
    }
    std::size_t offset(int n) const { return static_cast<std::size_t>(n - lo); }
    int index_at(std::size_t off) const { return lo + static_cast<int>(off); }

    bool operator==(const IndexWindow&) const = default;
};

} // namespace covloc
