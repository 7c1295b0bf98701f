#include "covloc/torus.hpp"

#include <algorithm>
#include <cmath>

namespace covloc {

namespace {

// Arcs shorter than this are dropped after merging; gaps up to this are
// closed. Point sets carry no measure, so the kernel cannot see them.
constexpr double kMinArc = 1e-12;

// Non-wrapping piece [a, b) with 0 <= a < b <= 2*pi.
struct Segment {
    double a = 0.0;
    double b = 0.0;
};

std::vector<Segment> to_segments(const std::vector<Arc>& arcs) {
    std::vector<Segment> segs;
    segs.reserve(arcs.size() + 1);
    for (const Arc& arc : arcs) {
        if (arc.end() > two_pi) {
            segs.push_back({arc.start, two_pi});
            segs.push_back({0.0, arc.end() - two_pi});
        } else {
            segs.push_back({arc.start, arc.end()});
        }
    }
    std::sort(segs.begin(), segs.end(),
              [](const Segment& s, const Segment& t) { return s.a < t.a; });
    return segs;
}

std::vector<Segment> merge_segments(std::vector<Segment> segs) {
    std::vector<Segment> merged;
    for (const Segment& s : segs) {
        if (!merged.empty() && s.a <= merged.back().b + kMinArc)
            merged.back().b = std::max(merged.back().b, s.b);
        else
            merged.push_back(s);
    }
    return merged;
}

// Merged segments -> canonical arc list, rejoining across the 0/2*pi seam.
std::vector<Arc> segments_to_arcs(std::vector<Segment> segs) {
    std::erase_if(segs, [](const Segment& s) { return s.b - s.a < kMinArc; });
    if (segs.empty()) return {};

    const double seam_gap = segs.front().a + (two_pi - segs.back().b);
    if (seam_gap <= kMinArc) {
        if (segs.size() == 1) return {Arc{0.0, two_pi}}; // covers everything
        // Join last and first into one wrap-around arc.
        Arc wrap{segs.back().a, (two_pi - segs.back().a) + segs.front().b};
        segs.erase(segs.begin());
        segs.pop_back();
        std::vector<Arc> arcs;
        arcs.reserve(segs.size() + 1);
        for (const Segment& s : segs) arcs.push_back({s.a, s.b - s.a});
        arcs.push_back(wrap); // largest start, stays last in sort order
        return arcs;
    }

    std::vector<Arc> arcs;
    arcs.reserve(segs.size());
    for (const Segment& s : segs) arcs.push_back({s.a, s.b - s.a});
    return arcs;
}

std::vector<Arc> canonicalize(const std::vector<Arc>& raw) {
    for (const Arc& arc : raw)
        if (arc.length >= two_pi) return {Arc{0.0, two_pi}};
    return segments_to_arcs(merge_segments(to_segments(raw)));
}

} // namespace

double wrap_angle(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

ArcSet ArcSet::full_circle() { return ArcSet({Arc{0.0, two_pi}}); }

ArcSet ArcSet::interval(double start, double end) {
    return normalize_arcs({{start, end}});
}

bool ArcSet::is_full_circle() const {
    return arcs_.size() == 1 && arcs_[0].length == two_pi;
}

bool ArcSet::contains(double theta) const {
    const double t = wrap_angle(theta);
    for (const Arc& arc : arcs_) {
        if (arc.end() > two_pi) {
            if (t >= arc.start || t < arc.end() - two_pi) return true;
        } else {
            if (t >= arc.start && t < arc.end()) return true;
        }
    }
    return false;
}

ArcSet normalize_arcs(const std::vector<std::pair<double, double>>& raw) {
    std::vector<Arc> arcs;
    arcs.reserve(raw.size());
    for (const auto& [start, end] : raw) {
        if (!std::isfinite(start) || !std::isfinite(end))
            throw input_error("normalize_arcs: non-finite angle");
        if (start == end)
            throw input_error("normalize_arcs: empty arc (start == end)");
        const double s = wrap_angle(start);
        const double e = wrap_angle(end);
        const double length = (e == s) ? two_pi // spanned a whole turn
                                       : (e > s ? e - s : e - s + two_pi);
        arcs.push_back({s, length});
    }
    return ArcSet(canonicalize(arcs));
}

double haar_measure(const ArcSet& x) {
    double total = 0.0;
    for (const Arc& arc : x.arcs()) total += arc.length;
    return total / two_pi;
}

cplx kernel_integral(const ArcSet& x, int q) {
    if (q == 0) return {haar_measure(x), 0.0};
    if (x.is_full_circle()) return {0.0, 0.0}; // characters are orthonormal
    cplx sum{0.0, 0.0};
    const double dq = static_cast<double>(q);
    for (const Arc& arc : x.arcs()) {
        // Wrap arcs are split at 2*pi and the two pieces summed.
        const double pieces[2][2] = {
            {arc.start, std::min(arc.end(), two_pi)},
            {0.0, arc.end() > two_pi ? arc.end() - two_pi : 0.0}};
        for (const auto& p : pieces) {
            if (p[1] <= p[0]) continue;
            sum += std::polar(1.0, dq * p[1]) - std::polar(1.0, dq * p[0]);
        }
    }
    return sum / cplx{0.0, two_pi * dq};
}

ArcSet rotate(const ArcSet& x, double theta) {
    if (!std::isfinite(theta)) throw input_error("rotate: non-finite angle");
    std::vector<Arc> arcs;
    arcs.reserve(x.arcs().size());
    for (const Arc& arc : x.arcs())
        arcs.push_back({wrap_angle(arc.start + theta), arc.length});
    return ArcSet(canonicalize(arcs));
}

ArcSet set_union(const ArcSet& x, const ArcSet& y) {
    std::vector<Arc> arcs = x.arcs();
    arcs.insert(arcs.end(), y.arcs().begin(), y.arcs().end());
    return ArcSet(canonicalize(arcs));
}

ArcSet set_complement(const ArcSet& x) {
    if (x.empty()) return ArcSet::full_circle();
    if (x.is_full_circle()) return ArcSet{};
    const std::vector<Segment> segs = merge_segments(to_segments(x.arcs()));
    std::vector<Arc> gaps;
    double cursor = 0.0;
    for (const Segment& s : segs) {
        if (s.a > cursor) gaps.push_back({cursor, s.a - cursor});
        cursor = s.b;
    }
    if (cursor < two_pi) gaps.push_back({cursor, two_pi - cursor});
    return ArcSet(canonicalize(gaps));
}

double overlap_measure(const ArcSet& x, const ArcSet& y) {
    const std::vector<Segment> sx = merge_segments(to_segments(x.arcs()));
    const std::vector<Segment> sy = merge_segments(to_segments(y.arcs()));
    double total = 0.0;
    for (const Segment& a : sx)
        for (const Segment& b : sy) {
            const double lo = std::max(a.a, b.a);
            const double hi = std::min(a.b, b.b);
            if (hi > lo) total += hi - lo;
        }
    return total / two_pi;
}

bool disjoint(const ArcSet& x, const ArcSet& y, double tol) {
    return overlap_measure(x, y) * two_pi <= tol;
}

bool approx_equal(const ArcSet& x, const ArcSet& y, double tol) {
    const double sym =
        haar_measure(x) + haar_measure(y) - 2.0 * overlap_measure(x, y);
    return std::abs(sym) * two_pi <= tol;
}

} // namespace covloc
