#pragma once

#include <utility>
#include <vector>

#include "covloc/types.hpp"

namespace covloc {

// Half-open arc [start, start + length) on the circle, angles in radians.
// start lies in [0, 2*pi); length in (0, 2*pi]. A wrap-around arc has
// start + length > 2*pi and covers [start, 2*pi) together with
// [0, start + length - 2*pi).
struct Arc {
    double start = 0.0;
    double length = 0.0;
    double end() const { return start + length; }
};

// Finite disjoint union of arcs in canonical form: arcs sorted by start,
// touching arcs merged (including across the 0/2*pi seam, so at most one
// wrap-around arc exists), arcs shorter than 1e-12 dropped. The full circle
// canonicalizes to the single arc [0, 2*pi).
class ArcSet {
public:
    ArcSet() = default; // empty set

    static ArcSet full_circle();
    // Single arc from start to end (same reduction rules as normalize_arcs).
    static ArcSet interval(double start, double end);

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }
    bool is_full_circle() const;
    bool contains(double theta) const;

private:
    explicit ArcSet(std::vector<Arc> canonical) : arcs_(std::move(canonical)) {}
    std::vector<Arc> arcs_;

    friend ArcSet normalize_arcs(const std::vector<std::pair<double, double>>&);
    friend ArcSet rotate(const ArcSet&, double);
    friend ArcSet set_union(const ArcSet&, const ArcSet&);
    friend ArcSet set_complement(const ArcSet&);
};

// Reduce x into [0, 2*pi).
double wrap_angle(double x);

// Union of half-open arcs given as (start, end) pairs, both reduced mod
// 2*pi; end "before" start wraps around. A pair whose endpoints coincide
// after reduction (but not as raw numbers) denotes the full circle.
ArcSet normalize_arcs(const std::vector<std::pair<double, double>>& raw);

// Normalized Haar measure: total arc length / 2*pi, in [0, 1].
double haar_measure(const ArcSet& x);

// (1/2*pi) * integral over X of e^{i q theta} d theta, in closed form.
// Equals haar_measure(x) at q = 0 and exactly delta_{q,0} on the full circle.
cplx kernel_integral(const ArcSet& x, int q);

// X shifted by theta (addition mod 2*pi); Haar measure is invariant.
ArcSet rotate(const ArcSet& x, double theta);

ArcSet set_union(const ArcSet& x, const ArcSet& y);
ArcSet set_complement(const ArcSet& x);

// Haar measure of the intersection; used for disjointness tests.
double overlap_measure(const ArcSet& x, const ArcSet& y);
bool disjoint(const ArcSet& x, const ArcSet& y, double tol = 1e-12);

// Set equality up to symmetric difference of Haar measure <= tol.
bool approx_equal(const ArcSet& x, const ArcSet& y, double tol = 1e-12);

} // namespace covloc
