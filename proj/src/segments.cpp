#include "dtangle/segments.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

#include "dtangle/errors.hpp"
#include "dtangle/ingest.hpp"

namespace dtangle {

namespace {

using namespace torus_alg;

HalfInt halfl(int l) { return HalfInt::half(l); }

const char* kind_name(SegmentKind k) {
    switch (k) {
        case SegmentKind::u: return "u";
        case SegmentKind::v: return "v";
        case SegmentKind::d: return "d";
    }
    return "?";
}

} // namespace

TypeDComplex segment_template(SegmentKind kind, int param, std::optional<DA> shift,
                              const std::string& prefix) {
    if (kind == SegmentKind::d) {
        if (param % 2 != 0)
            throw DomainError("d segment slope must be even, got " + std::to_string(param));
        if (shift && (shift->delta != HalfInt(0) || shift->alex != HalfInt(0)))
            throw DomainError("d segments admit no shift");
    } else if (param < 1) {
        throw DomainError("u/v segment length must be >= 1, got " + std::to_string(param));
    }

    const DA off = shift.value_or(DA{});
    const bool graded = shift.has_value();
    auto dot_grading = [&](HalfInt delta, HalfInt alex) -> std::optional<Grading> {
        if (!graded) return std::nullopt;
        return Grading::knot(DA{delta + off.delta, alex + off.alex});
    };

    TypeDComplex c;
    c.algebra_id = AlgebraId::torus;
    const int dot = 0, circ = 1;

    if (kind == SegmentKind::d && param == 0) {
        int L = c.add_generator(prefix + "L", dot, dot_grading(HalfInt(0), HalfInt(0)));
        int R = c.add_generator(prefix + "R", dot, dot_grading(HalfInt(0), HalfInt(0)));
        c.add_arrow_basis(L, R, s12);
        return c;
    }

    const int l = (kind == SegmentKind::d) ? std::abs(param) : param;
    DA gL, gR;
    switch (kind) {
        case SegmentKind::u:
            gL = DA{halfl(l) - HalfInt(1), -halfl(l)};
            gR = DA{-halfl(l), halfl(l)};
            break;
        case SegmentKind::v:
            gL = DA{-halfl(l), -halfl(l)};
            gR = DA{halfl(l) - HalfInt(1), halfl(l)};
            break;
        case SegmentKind::d:
            if (param > 0) {
                gL = DA{halfl(l), -halfl(l)};
                gR = DA{halfl(l), halfl(l)};
            } else {
                gL = DA{-halfl(l), -halfl(l)};
                gR = DA{-halfl(l), halfl(l)};
            }
            break;
    }
    int L = c.add_generator(prefix + "L", dot, dot_grading(gL.delta, gL.alex));
    std::vector<int> w(l);
    for (int i = 0; i < l; ++i)
        w[i] = c.add_generator(prefix + "w" + std::to_string(i + 1), circ, std::nullopt);
    int R = c.add_generator(prefix + "R", dot, dot_grading(gR.delta, gR.alex));

    const bool starts_s3 = (kind == SegmentKind::u) || (kind == SegmentKind::d && param > 0);
    c.add_arrow_basis(L, w[0], starts_s3 ? s3 : s123);
    for (int i = 0; i + 1 < l; ++i) c.add_arrow_basis(w[i], w[i + 1], s23);
    const bool ends_s2 = (kind == SegmentKind::u) || (kind == SegmentKind::d && param < 0);
    if (ends_s2)
        c.add_arrow_basis(w[l - 1], R, s2);
    else
        c.add_arrow_basis(R, w[l - 1], s1);
    return c;
}

std::vector<TypeDComplex> split_at_bullets(const TypeDComplex& cfd_in) {
    if (cfd_in.algebra_id != AlgebraId::torus)
        throw DomainError("splitting applies to knot-side complexes");
    TypeDComplex cfd = expand_local_systems(cfd_in);
    require_valid(cfd, "splitting");

    const int n = static_cast<int>(cfd.gens.size());
    struct Edge {
        int src, tgt, bit;
    };
    std::vector<Edge> edges;
    std::vector<int> ends(n, 0);
    const auto& alg = algebra(AlgebraId::torus);
    for (const auto& [key, m] : cfd.arrows)
        for (int b = 0; b < alg.dim; ++b)
            if (m & basis_bit(b)) {
                edges.push_back({key.first, key.second, b});
                ++ends[key.first];
                ++ends[key.second];
            }
    for (int i = 0; i < n; ++i)
        if (ends[i] != 2)
            throw DomainError("not loop-type: generator '" + cfd.gens[i].name + "' has " +
                              std::to_string(ends[i]) + " arrow-ends (expected 2)");

    TypeDComplex split;
    split.algebra_id = AlgebraId::torus;
    std::vector<std::array<int, 2>> dot_copy(n, {-1, -1});
    std::vector<int> circ_copy(n, -1);
    std::vector<int> next_end(n, 0);
    for (int i = 0; i < n; ++i) {
        if (cfd.gens[i].idem == 0) {
            dot_copy[i][0] = split.add_generator(cfd.gens[i].name + "+", 0, cfd.gens[i].grading);
            dot_copy[i][1] = split.add_generator(cfd.gens[i].name + "-", 0, cfd.gens[i].grading);
        } else {
            circ_copy[i] = split.add_generator(cfd.gens[i].name, 1, std::nullopt);
        }
    }
    auto take_end = [&](int gen) {
        return cfd.gens[gen].idem == 0 ? dot_copy[gen][next_end[gen]++] : circ_copy[gen];
    };
    for (const Edge& e : edges) {
        int s = take_end(e.src);
        int t = take_end(e.tgt);
        split.add_arrow_basis(s, t, e.bit);
    }
    return connected_components(split);
}

CurveSegment classify_segment(const TypeDComplex& piece) {
    require_valid(piece, "segment classification");
    std::vector<int> dots, circles;
    for (size_t i = 0; i < piece.gens.size(); ++i)
        (piece.gens[i].idem == 0 ? dots : circles).push_back(static_cast<int>(i));
    if (dots.size() != 2)
        throw DomainError("segment piece must have exactly two dot ends, found " +
                          std::to_string(dots.size()));
    const int l = static_cast<int>(circles.size());
    const bool graded = piece.graded();

    if (l == 0) {
        // Only the d[0] shape has no circles: one s12 arrow between the dots.
        if (piece.arrows.size() != 1)
            throw DomainError("two-generator segment piece must have exactly one arrow");
        const auto& [key, m] = *piece.arrows.begin();
        if (m != basis_bit(s12))
            throw DomainError("two-generator segment piece must be labeled s12");
        std::vector<int> order{key.first, key.second};
        auto tmpl = segment_template(SegmentKind::d, 0,
                                     graded ? std::optional<DA>(DA{}) : std::nullopt, "t");
        require_same_shape(piece, order, tmpl, "classify d[0]");
        return CurveSegment{SegmentKind::d, 0, std::nullopt};
    }

    // Locate the unique dot emitting s3 or s123; the walk starts there.
    int bL = -1, start_bit = -1, w_first = -1;
    for (const auto& [key, m] : piece.arrows) {
        if (piece.gens[key.first].idem != 0) continue;
        for (int b : {static_cast<int>(s3), static_cast<int>(s123)}) {
            if (!(m & basis_bit(b))) continue;
            if (bL != -1)
                throw DomainError("segment piece has more than one chain start");
            bL = key.first;
            start_bit = b;
            w_first = key.second;
        }
    }
    if (bL == -1) throw DomainError("segment piece has no s3/s123 chain start");

    // Follow the circle chain: each circle has exactly one incidence besides
    // the one we entered through.
    std::vector<int> chain{w_first};
    std::set<int> seen{w_first};
    std::tuple<int, int, int> entered{bL, w_first, start_bit}; // (src, tgt, bit)
    int bR = -1;
    bool terminal_receives_s2 = false;
    for (;;) {
        const int cur = chain.back();
        std::vector<std::tuple<int, int, int>> incidences;
        const auto& alg = algebra(AlgebraId::torus);
        for (const auto& [key, m] : piece.arrows) {
            if (key.first != cur && key.second != cur) continue;
            for (int b = 0; b < alg.dim; ++b)
                if (m & basis_bit(b)) {
                    std::tuple<int, int, int> end{key.first, key.second, b};
                    if (end != entered) incidences.push_back(end);
                }
        }
        if (incidences.size() != 1)
            throw DomainError("segment chain is not a simple path at circle '" +
                              piece.gens[cur].name + "'");
        auto [src, tgt, bit] = incidences[0];
        if (src == cur && bit == s23 && piece.gens[tgt].idem == 1) {
            if (!seen.insert(tgt).second)
                throw DomainError("segment chain revisits a circle");
            chain.push_back(tgt);
            entered = incidences[0];
            continue;
        }
        if (src == cur && bit == s2 && piece.gens[tgt].idem == 0) {
            bR = tgt;
            terminal_receives_s2 = true;
            break;
        }
        if (tgt == cur && bit == s1 && piece.gens[src].idem == 0) {
            bR = src;
            terminal_receives_s2 = false;
            break;
        }
        throw DomainError("unexpected label in segment chain at circle '" +
                          piece.gens[cur].name + "'");
    }
    if (bR == bL) throw DomainError("segment chain returns to its starting dot");
    if (static_cast<int>(chain.size()) != l)
        throw DomainError("segment piece has circles outside its chain");

    SegmentKind kind;
    int param;
    if (start_bit == s3) {
        // s3 start: u if the chain exits via s2, d[+l] if the far dot feeds s1 in.
        kind = terminal_receives_s2 ? SegmentKind::u : SegmentKind::d;
        param = l;
    } else {
        // s123 start: d[-l] if the chain exits via s2, v otherwise.
        kind = terminal_receives_s2 ? SegmentKind::d : SegmentKind::v;
        param = terminal_receives_s2 ? -l : l;
    }
    if (kind == SegmentKind::d && l % 2 != 0)
        throw DomainError("d segment with odd slope " + std::to_string(param));

    std::optional<DA> shift;
    if (graded) {
        const DA gL = piece.gens[bL].grading->as_knot();
        DA anchor;
        switch (kind) {
            case SegmentKind::u: anchor = DA{halfl(l) - HalfInt(1), -halfl(l)}; break;
            case SegmentKind::v: anchor = DA{-halfl(l), -halfl(l)}; break;
            case SegmentKind::d:
                anchor = (param > 0) ? DA{halfl(l), -halfl(l)} : DA{-halfl(l), -halfl(l)};
                break;
        }
        shift = DA{gL.delta - anchor.delta, gL.alex - anchor.alex};
        if (kind == SegmentKind::d && (shift->delta != HalfInt(0) || shift->alex != HalfInt(0)))
            throw DomainError("d segment is shifted away from its normalized position");
    }

    std::vector<int> order;
    order.push_back(bL);
    for (int wgen : chain) order.push_back(wgen);
    order.push_back(bR);
    auto tmpl = segment_template(kind, param, shift, "t");
    require_same_shape(piece, order, tmpl, std::string("classify ") + kind_name(kind));
    if (kind == SegmentKind::d) shift.reset(); // d shifts are pinned to zero, never stored
    return CurveSegment{kind, param, shift};
}

SegmentDecomposition decompose(const KnotInput& input) {
    SegmentDecomposition dec;
    switch (input.tier) {
        case InputTier::cfd: {
            dec.graded = input.cfd.graded();
            for (const TypeDComplex& piece : split_at_bullets(input.cfd))
                dec.segments.push_back(classify_segment(piece));
            break;
        }
        case InputTier::segments:
            dec = input.decomposition;
            break;
        case InputTier::hfk_minus: {
            dec.graded = false;
            dec.segments.push_back(CurveSegment{SegmentKind::d, 2 * input.hfk.tau, std::nullopt});
            for (int l : input.hfk.torsion) {
                dec.segments.push_back(CurveSegment{SegmentKind::u, l, std::nullopt});
                dec.segments.push_back(CurveSegment{SegmentKind::v, l, std::nullopt});
            }
            break;
        }
    }
    validate_decomposition(dec);
    sort_decomposition(dec);
    return dec;
}

int tau_of(const SegmentDecomposition& dec) {
    for (const CurveSegment& s : dec.segments)
        if (s.kind == SegmentKind::d) return s.param / 2;
    throw DomainError("decomposition has no d segment");
}

void validate_decomposition(const SegmentDecomposition& dec) {
    int d_count = 0;
    std::map<int, int> u_count, v_count;
    std::map<std::tuple<int, int, int>, int> u_graded, v_graded; // (l, 2*delta, +-2*alex)
    for (const CurveSegment& s : dec.segments) {
        switch (s.kind) {
            case SegmentKind::d:
                ++d_count;
                if (s.param % 2 != 0)
                    throw DomainError("d segment slope must be even, got " + std::to_string(s.param));
                if (s.shift) throw DomainError("d segment carries a shift");
                break;
            case SegmentKind::u:
            case SegmentKind::v: {
                if (s.param < 1)
                    throw DomainError("u/v segment length must be >= 1, got " + std::to_string(s.param));
                auto& count = (s.kind == SegmentKind::u) ? u_count : v_count;
                ++count[s.param];
                if (dec.graded != s.shift.has_value())
                    throw DomainError(std::string("segment gradedness mismatch: ") + render_segment(s));
                if (s.shift) {
                    // Mirror pairing compares u at (r, s) with v at (r, -s).
                    if (s.kind == SegmentKind::u)
                        ++u_graded[{s.param, s.shift->delta.twice, s.shift->alex.twice}];
                    else
                        ++v_graded[{s.param, s.shift->delta.twice, -s.shift->alex.twice}];
                }
                break;
            }
        }
    }
    if (d_count != 1)
        throw DomainError("decomposition must contain exactly one d segment, found " +
                          std::to_string(d_count));
    if (u_count != v_count)
        throw DomainError("u and v segment length multisets differ");
    if (dec.graded && u_graded != v_graded)
        throw DomainError("graded u/v segments are not mirror-symmetric");
}

void sort_decomposition(SegmentDecomposition& dec) {
    auto key = [](const CurveSegment& s) {
        int rank = (s.kind == SegmentKind::d) ? 0 : (s.kind == SegmentKind::u) ? 1 : 2;
        int dd = s.shift ? s.shift->delta.twice : 0;
        int aa = s.shift ? s.shift->alex.twice : 0;
        return std::make_tuple(rank, s.param, dd, aa);
    };
    std::stable_sort(dec.segments.begin(), dec.segments.end(),
                     [&](const CurveSegment& a, const CurveSegment& b) { return key(a) < key(b); });
}

std::string render_segment(const CurveSegment& seg) {
    std::string out = std::string(kind_name(seg.kind)) + "[" + std::to_string(seg.param) + "]";
    if (seg.shift) out += " d=" + seg.shift->delta.str() + " a=" + seg.shift->alex.str();
    return out;
}

std::string render_decomposition(const SegmentDecomposition& dec) {
    std::string out;
    for (const CurveSegment& s : dec.segments) out += render_segment(s) + "\n";
    return out;
}

} // namespace dtangle
