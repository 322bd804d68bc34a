// Deterministic randomized inputs for the property suites: valid graded
// loop-type knot-side complexes glued from segment templates, together with
// the exact segment multiset the decomposition must report.
//
// Construction rules (all derived from the gluing compatibility of segment
// ends and the grading anchors of the templates):
//   - at every shared dot, one glued end comes from {s3 out, s2 in, s12 in}
//     and the other from {s123 out, s1 out, s12 out}; in segment terms the
//     loop alternates u-type and v-type ends, with d supplying one of each;
//   - exactly one d segment per input, closed up either on itself (d[0]),
//     through a palindromic chain of v/u blocks (slope 2*tau != 0), or
//     through the four-segment figure-eight-style chain (tau = 0);
//   - self-mirrored four-segment rings v,u,v,u of a common length;
//   - u[1] + v[1] at a common shift closing into a single loop, mirrored
//     unless the Alexander shift is zero (then it is its own mirror);
//   - occasional rank-2 local systems on a whole loop.

#pragma once

#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dtangle/complex.hpp"
#include "dtangle/halfint.hpp"
#include "dtangle/ingest.hpp"
#include "dtangle/segments.hpp"

namespace dtangle::testsupport {

struct GeneratedInput {
    TypeDComplex cfd;              // valid, graded, loop-type
    SegmentDecomposition expected; // canonical order, graded
};

namespace detail {

struct Builder {
    TypeDComplex c;
    std::vector<CurveSegment> expected;
    std::vector<int> dot_gen; // dot id -> generator index, -1 until created
    int seg_counter = 0;

    Builder() { c.algebra_id = AlgebraId::torus; }

    int new_dot() {
        dot_gen.push_back(-1);
        return static_cast<int>(dot_gen.size()) - 1;
    }

    // Instantiates a segment template with its L/R dots mapped to the shared
    // dots dot_left/dot_right (which may coincide).  Returns an arrow key
    // inside the segment, usable for attaching a local-system rank.
    std::pair<int, int> add_segment(SegmentKind kind, int param, std::optional<DA> shift,
                                    int dot_left, int dot_right) {
        const std::string prefix = "s" + std::to_string(++seg_counter) + "_";
        TypeDComplex piece = segment_template(kind, param, shift, prefix);
        std::vector<int> map(piece.gens.size(), -1);
        for (int i = 0; i < static_cast<int>(piece.gens.size()); ++i) {
            const Generator& g = piece.gens[i];
            int dot = -1;
            if (g.name == prefix + "L") dot = dot_left;
            if (g.name == prefix + "R") dot = dot_right;
            if (dot >= 0) {
                if (dot_gen[dot] == -1) {
                    dot_gen[dot] =
                        c.add_generator("x" + std::to_string(dot + 1), g.idem, g.grading);
                } else if (!(c.gens[dot_gen[dot]].grading == g.grading)) {
                    throw std::logic_error("test builder: dot grading mismatch at a gluing");
                }
                map[i] = dot_gen[dot];
            } else {
                map[i] = c.add_generator(g.name, g.idem, g.grading);
            }
        }
        for (const auto& [key, m] : piece.arrows)
            c.add_arrow(map[key.first], map[key.second], m);
        expected.push_back(CurveSegment{
            kind, param, (kind == SegmentKind::d) ? std::nullopt : shift});
        int inner = piece.index_of(prefix + "w1");
        if (inner == -1) inner = piece.index_of(prefix + "R"); // d[0]: L -> R directly
        return {map[piece.index_of(prefix + "L")], map[inner]};
    }

    // Replicates the expected segments of the loop [first_expected, end) for a
    // rank-dim local system attached at the given arrow.
    void set_loop_rank(std::size_t first_expected, std::pair<int, int> arrow, int dim) {
        if (dim <= 1) return;
        c.local_dims[arrow] = dim;
        const std::size_t count = expected.size() - first_expected;
        for (int k = 1; k < dim; ++k)
            for (std::size_t i = 0; i < count; ++i)
                expected.push_back(expected[first_expected + i]);
    }
};

// d[0] with both ends on one dot: the unknot-shaped loop.
inline void add_bare_d0(Builder& b) {
    const int p = b.new_dot();
    b.add_segment(SegmentKind::d, 0, DA{HalfInt(0), HalfInt(0)}, p, p);
}

// d[2 tau] closed through j blocks of v/u (tau > 0) or u/v (tau < 0)
// segments, with block lengths m and reverse(m); the palindrome keeps the
// decomposition mirror-symmetric.
inline void add_d_chain(Builder& b, int tau, const std::vector<int>& m) {
    const std::vector<int> n(m.rbegin(), m.rend());
    const int j = static_cast<int>(m.size());
    std::vector<int> dots;
    for (int i = 0; i <= 2 * j; ++i) dots.push_back(b.new_dot());
    b.add_segment(SegmentKind::d, 2 * tau, DA{HalfInt(0), HalfInt(0)}, dots[0], dots[2 * j]);

    HalfInt delta(tau), alex(tau > 0 ? -tau : tau);
    for (int i = 0; i < j; ++i) {
        if (tau > 0) {
            b.add_segment(SegmentKind::v, m[i],
                          DA{delta + HalfInt::half(m[i]), alex + HalfInt::half(m[i])},
                          dots[2 * i], dots[2 * i + 1]);
            delta = delta + HalfInt(m[i] - 1);
            alex = alex + HalfInt(m[i]);
            b.add_segment(SegmentKind::u, n[i],
                          DA{delta + HalfInt(1) - HalfInt::half(n[i]), alex + HalfInt::half(n[i])},
                          dots[2 * i + 1], dots[2 * i + 2]);
            delta = delta + HalfInt(1 - n[i]);
            alex = alex + HalfInt(n[i]);
        } else {
            b.add_segment(SegmentKind::u, m[i],
                          DA{delta + HalfInt(1) - HalfInt::half(m[i]), alex + HalfInt::half(m[i])},
                          dots[2 * i], dots[2 * i + 1]);
            delta = delta + HalfInt(1 - m[i]);
            alex = alex + HalfInt(m[i]);
            b.add_segment(SegmentKind::v, n[i],
                          DA{delta + HalfInt::half(n[i]), alex + HalfInt::half(n[i])},
                          dots[2 * i + 1], dots[2 * i + 2]);
            delta = delta + HalfInt(n[i] - 1);
            alex = alex + HalfInt(n[i]);
        }
    }
    if (delta != HalfInt(tau) || alex != HalfInt(tau > 0 ? tau : -tau))
        throw std::logic_error("test builder: d chain fails to close");
}

// d[0] closed through v, u, v, u of a common length (the figure-eight
// pattern); u segments are traversed against their orientation, so the
// chain zig-zags through the shared dots while the end types alternate.
inline void add_fig8_chain(Builder& b, int m) {
    std::vector<int> dots;
    for (int i = 0; i < 5; ++i) dots.push_back(b.new_dot());
    const HalfInt h_m = HalfInt::half(m);            // m/2
    const HalfInt h_3m1 = HalfInt::half(3 * m - 2);  // 3m/2 - 1
    b.add_segment(SegmentKind::d, 0, DA{HalfInt(0), HalfInt(0)}, dots[4], dots[0]);
    b.add_segment(SegmentKind::v, m, DA{h_m, h_m}, dots[0], dots[1]);
    b.add_segment(SegmentKind::u, m, DA{h_3m1, h_m}, dots[2], dots[1]);
    b.add_segment(SegmentKind::v, m, DA{h_3m1, -h_m}, dots[3], dots[2]);
    b.add_segment(SegmentKind::u, m, DA{h_m, -h_m}, dots[3], dots[4]);
}

// Four segments v[l], u[l], v[l], u[l] closed into a single loop whose
// Alexander offsets make it its own mirror; delta is free to translate.
inline void add_ring_loop(Builder& b, int l, HalfInt r, int dim) {
    const std::size_t first = b.expected.size();
    const int a = b.new_dot(), bb = b.new_dot(), cc = b.new_dot(), d = b.new_dot();
    const HalfInt h_l = HalfInt::half(l); // l/2
    auto arrow = b.add_segment(SegmentKind::v, l, DA{r, h_l}, a, bb);
    b.add_segment(SegmentKind::u, l, DA{r + HalfInt(l - 1), h_l}, cc, bb);
    b.add_segment(SegmentKind::v, l, DA{r + HalfInt(l - 1), -h_l}, d, cc);
    b.add_segment(SegmentKind::u, l, DA{r, -h_l}, d, a);
    b.set_loop_rank(first, arrow, dim);
}

// u[1] and v[1] at a common shift closed into one loop.
inline void add_quad_loop(Builder& b, DA shift, int dim) {
    const std::size_t first = b.expected.size();
    const int p = b.new_dot(), q = b.new_dot();
    auto arrow = b.add_segment(SegmentKind::u, 1, shift, p, q);
    b.add_segment(SegmentKind::v, 1, shift, p, q);
    b.set_loop_rank(first, arrow, dim);
}

inline std::vector<int> random_composition(std::mt19937& rng, int total, int parts) {
    std::set<int> cuts;
    while (static_cast<int>(cuts.size()) < parts - 1)
        cuts.insert(std::uniform_int_distribution<int>(1, total - 1)(rng));
    std::vector<int> m;
    int prev = 0;
    for (int cut : cuts) {
        m.push_back(cut - prev);
        prev = cut;
    }
    m.push_back(total - prev);
    return m;
}

} // namespace detail

inline GeneratedInput random_input(unsigned seed) {
    std::mt19937 rng(seed * 2654435761u + 12345u);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    detail::Builder b;
    int budget = 21;

    const int tau = pick(-3, 3);
    if (tau == 0) {
        if (pick(0, 1) == 0) {
            detail::add_bare_d0(b);
            budget -= 1;
        } else {
            detail::add_fig8_chain(b, pick(1, 5));
            budget -= 5;
        }
    } else {
        const int j = pick(1, std::min(std::abs(tau), 3));
        detail::add_d_chain(b, tau, detail::random_composition(rng, std::abs(tau), j));
        budget -= 1 + 2 * j;
    }

    const int extras = pick(0, 3);
    for (int e = 0; e < extras; ++e) {
        const int dim = (pick(0, 4) == 0) ? 2 : 1;
        const DA shift{HalfInt::from_twice(pick(-6, 6)), HalfInt::from_twice(pick(-6, 6))};
        if (pick(0, 1) == 0) {
            const int total = (shift.alex.twice == 0 ? 2 : 4) * dim;
            if (budget < total) continue;
            detail::add_quad_loop(b, shift, dim);
            if (shift.alex.twice != 0)
                detail::add_quad_loop(b, DA{shift.delta, -shift.alex}, dim);
            budget -= total;
        } else {
            const int total = 4 * dim;
            if (budget < total) continue;
            detail::add_ring_loop(b, pick(1, 5), shift.delta, dim);
            budget -= total;
        }
    }

    require_valid(b.c, "generated input");
    GeneratedInput out;
    out.cfd = std::move(b.c);
    out.expected.graded = true;
    out.expected.segments = std::move(b.expected);
    sort_decomposition(out.expected);
    validate_decomposition(out.expected);
    return out;
}

inline GeneratedInput ungraded_variant(const GeneratedInput& g) {
    GeneratedInput out;
    out.cfd = strip_gradings(g.cfd);
    out.expected.graded = false;
    for (CurveSegment s : g.expected.segments) {
        s.shift.reset();
        out.expected.segments.push_back(s);
    }
    sort_decomposition(out.expected);
    return out;
}

inline KnotInput as_knot_input(const GeneratedInput& g, const std::string& name) {
    KnotInput in;
    in.name = name;
    in.tier = InputTier::cfd;
    in.cfd = g.cfd;
    return in;
}

} // namespace dtangle::testsupport
