#include "dtangle/curves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "dtangle/doubling.hpp"
#include "dtangle/errors.hpp"
#include "dtangle/ingest.hpp"

namespace dtangle {

namespace {

using namespace tangle_alg;

const char* kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::r: return "r";
        case CurveKind::s: return "s";
        case CurveKind::sbar: return "sbar";
    }
    return "?";
}

constexpr int kIdemA = 0, kIdemB = 1, kIdemC = 2, kIdemD = 3;

} // namespace

TypeDComplex curve_template(CurveKind kind, int param, std::optional<DAA> shift,
                            const std::string& prefix) {
    if (kind == CurveKind::r) {
        if (param % 2 != 0)
            throw DomainError("r slope must be even, got " + std::to_string(param));
        if (shift && *shift != DAA{})
            throw DomainError("r components admit no shift");
    } else if (param < 2 || param % 2 != 0) {
        throw DomainError("s/sbar length must be even and >= 2, got " + std::to_string(param));
    }
    const bool graded = shift.has_value();
    const DAA off = shift.value_or(DAA{});
    auto g = [&](HalfInt d, HalfInt a1, HalfInt a2) -> std::optional<Grading> {
        if (!graded) return std::nullopt;
        return Grading::tangle(DAA{d + off.delta, a1 + off.a1, a2 + off.a2});
    };

    TypeDComplex c;
    c.algebra_id = AlgebraId::peculiar_tangle;

    if (kind == CurveKind::r && param == 0) {
        int T = c.add_generator(prefix + "T", kIdemA, g(HalfInt(0), HalfInt(0), HalfInt(0)));
        int B = c.add_generator(prefix + "B", kIdemC, g(HalfInt(0), HalfInt(0), HalfInt(0)));
        c.add_arrow(B, T, static_cast<Mask>(basis_bit(p23) | basis_bit(q14)));
        return c;
    }

    const int l = (kind == CurveKind::r ? std::abs(param) : param) / 2;
    int idem_T, idem_B;
    HalfInt delta_T, delta_B;
    switch (kind) {
        case CurveKind::s:
            idem_T = kIdemA; delta_T = HalfInt(0);
            idem_B = kIdemA; delta_B = HalfInt(-1);
            break;
        case CurveKind::sbar:
            idem_T = kIdemC; delta_T = HalfInt(-1);
            idem_B = kIdemC; delta_B = HalfInt(0);
            break;
        case CurveKind::r:
            idem_T = (param > 0) ? kIdemC : kIdemA; delta_T = HalfInt(0);
            idem_B = (param > 0) ? kIdemA : kIdemC; delta_B = HalfInt(0);
            break;
    }
    // Chains sit at delta +1/2 only for positive r slopes, else -1/2.
    const HalfInt chain_delta = (kind == CurveKind::r && param > 0) ? HalfInt::half(1) : HalfInt::half(-1);

    int T = c.add_generator(prefix + "T", idem_T, g(delta_T, HalfInt(l), HalfInt(l)));
    std::vector<int> left(2 * l), right(2 * l);
    for (int i = 0; i < 2 * l; ++i) {
        // Left chain alternates b, d bottom-to-top; Alexander steps by (+1, +1).
        left[i] = c.add_generator(prefix + "L" + std::to_string(i + 1), (i % 2 == 0) ? kIdemB : kIdemD,
                                  g(chain_delta, HalfInt(-l + i), HalfInt(1 - l + i)));
    }
    for (int i = 0; i < 2 * l; ++i) {
        right[i] = c.add_generator(prefix + "R" + std::to_string(i + 1), (i % 2 == 0) ? kIdemD : kIdemB,
                                   g(chain_delta, HalfInt(1 - l + i), HalfInt(-l + i)));
    }
    int B = c.add_generator(prefix + "B", idem_B, g(delta_B, HalfInt(-l), HalfInt(-l)));

    for (int i = 0; i + 1 < 2 * l; ++i) {
        c.add_arrow_basis(left[i], left[i + 1], (i % 2 == 0) ? p12 : q21);
        c.add_arrow_basis(right[i], right[i + 1], (i % 2 == 0) ? q21 : p12);
    }
    const int tt1 = left[2 * l - 1], tt2 = right[2 * l - 1];
    const int bb1 = left[0], bb2 = right[0];
    if (idem_T == kIdemA) {
        c.add_arrow_basis(tt1, T, q1);
        c.add_arrow_basis(tt2, T, p2);
    } else {
        c.add_arrow_basis(T, tt1, q4);
        c.add_arrow_basis(T, tt2, p3);
    }
    if (idem_B == kIdemA) {
        c.add_arrow_basis(B, bb1, q2);
        c.add_arrow_basis(B, bb2, p1);
    } else {
        c.add_arrow_basis(B, bb1, q214);
        c.add_arrow_basis(B, bb2, p123);
    }
    return c;
}

TangleCurve recognize(const TypeDComplex& piece) {
    if (piece.algebra_id != AlgebraId::peculiar_tangle)
        throw DomainError("component recognition applies to tangle-side complexes");
    require_valid(piece, "component recognition");
    auto fail = [](const std::string& why) { return DomainError("unrecognized component: " + why); };

    const int n = static_cast<int>(piece.gens.size());
    const bool graded = piece.graded();
    std::vector<int> extremal, interior;
    for (int i = 0; i < n; ++i) {
        int idem = piece.gens[i].idem;
        ((idem == kIdemA || idem == kIdemC) ? extremal : interior).push_back(i);
    }
    if (extremal.size() != 2) throw fail(std::to_string(extremal.size()) + " extremal generators");

    if (n == 2) {
        // Only r[0] has two generators: c -> a labeled p23 + q14.
        int T = (piece.gens[extremal[0]].idem == kIdemA) ? extremal[0] : extremal[1];
        int B = (T == extremal[0]) ? extremal[1] : extremal[0];
        auto tmpl = curve_template(CurveKind::r, 0,
                                   graded ? std::optional<DAA>(DAA{}) : std::nullopt, "t");
        require_same_shape(piece, {T, B}, tmpl, "unrecognized component (r[0] candidate)");
        return TangleCurve{CurveKind::r, 0, std::nullopt, 1};
    }
    if (n % 4 != 2 || n < 6) throw fail("generator count " + std::to_string(n));
    const int l = (n - 2) / 4;

    // The interior must split into two directed chains of length 2l; chain
    // arrows run bottom-to-top, so each chain's bottom end has its single
    // interior incidence outgoing.
    std::map<int, std::vector<std::pair<int, bool>>> adj; // gen -> (other, outgoing?)
    std::set<int> interior_set(interior.begin(), interior.end());
    for (const auto& [key, m] : piece.arrows) {
        if (!interior_set.count(key.first) || !interior_set.count(key.second)) continue;
        adj[key.first].push_back({key.second, true});
        adj[key.second].push_back({key.first, false});
    }
    std::vector<std::vector<int>> chains;
    std::set<int> seen;
    for (int start : interior) {
        if (seen.count(start)) continue;
        // Find the bottom of this chain: walk against arrow direction.
        int bottom = start;
        std::set<int> guard;
        for (;;) {
            if (!guard.insert(bottom).second) throw fail("interior cycle");
            int prev = -1;
            for (const auto& [other, out] : adj[bottom])
                if (!out) {
                    if (prev != -1) throw fail("interior branching");
                    prev = other;
                }
            if (prev == -1) break;
            bottom = prev;
        }
        std::vector<int> chain{bottom};
        seen.insert(bottom);
        for (;;) {
            int next = -1;
            for (const auto& [other, out] : adj[chain.back()])
                if (out) {
                    if (next != -1) throw fail("interior branching");
                    next = other;
                }
            if (next == -1) break;
            if (!seen.insert(next).second) throw fail("interior cycle");
            chain.push_back(next);
        }
        chains.push_back(std::move(chain));
    }
    if (chains.size() != 2) throw fail(std::to_string(chains.size()) + " interior chains");
    for (const auto& chain : chains)
        if (static_cast<int>(chain.size()) != 2 * l) throw fail("interior chain length off");

    // Left chain starts at a b generator, right chain at a d generator.
    const std::vector<int>* left = nullptr;
    const std::vector<int>* right = nullptr;
    for (const auto& chain : chains) {
        int idem = piece.gens[chain.front()].idem;
        if (idem == kIdemB && !left)
            left = &chain;
        else if (idem == kIdemD && !right)
            right = &chain;
        else
            throw fail("chain bottoms are not one b and one d");
    }

    // The top extremal is the one whose arrows touch the chain tops.
    const int tt1 = left->back(), tt2 = right->back();
    const int bb1 = left->front(), bb2 = right->front();
    auto touches = [&](int e) {
        std::set<int> out;
        for (const auto& [key, m] : piece.arrows) {
            if (key.first == e && interior_set.count(key.second)) out.insert(key.second);
            if (key.second == e && interior_set.count(key.first)) out.insert(key.first);
        }
        return out;
    };
    int T = -1, B = -1;
    for (int e : extremal) {
        std::set<int> t = touches(e);
        if (t == std::set<int>{tt1, tt2})
            T = e;
        else if (t == std::set<int>{bb1, bb2})
            B = e;
        else
            throw fail("extremal generator '" + piece.gens[e].name + "' attaches to the wrong chain ends");
    }
    if (T == -1 || B == -1) throw fail("missing top or bottom extremal");

    CurveKind kind;
    int param;
    const int it = piece.gens[T].idem, ib = piece.gens[B].idem;
    if (it == kIdemA && ib == kIdemA) {
        kind = CurveKind::s;
        param = 2 * l;
    } else if (it == kIdemC && ib == kIdemC) {
        kind = CurveKind::sbar;
        param = 2 * l;
    } else {
        kind = CurveKind::r;
        param = (it == kIdemC) ? 2 * l : -2 * l;
    }

    std::optional<DAA> shift;
    if (graded) {
        const DAA gT = piece.gens[T].grading->as_tangle();
        const HalfInt anchor_delta = (kind == CurveKind::sbar) ? HalfInt(-1) : HalfInt(0);
        shift = DAA{gT.delta - anchor_delta, gT.a1 - HalfInt(l), gT.a2 - HalfInt(l)};
        if (kind == CurveKind::r && *shift != DAA{}) throw fail("shifted r component");
    }

    std::vector<int> order;
    order.push_back(T);
    order.insert(order.end(), left->begin(), left->end());
    order.insert(order.end(), right->begin(), right->end());
    order.push_back(B);
    auto tmpl = curve_template(kind, param, graded ? shift : std::nullopt, "t");
    require_same_shape(piece, order, tmpl,
                       std::string("unrecognized component (") + kind_name(kind) + " candidate)");
    if (kind == CurveKind::r) shift.reset(); // r gradings are pinned, never stored as a shift
    return TangleCurve{kind, param, shift, 1};
}

Multicurve fast_double(const SegmentDecomposition& dec) {
    validate_decomposition(dec);
    Multicurve mc;
    mc.graded = dec.graded;
    for (const CurveSegment& seg : dec.segments) {
        switch (seg.kind) {
            case SegmentKind::d:
                mc.components.push_back(TangleCurve{CurveKind::r, 2 * seg.param, std::nullopt, 1});
                break;
            case SegmentKind::u:
            case SegmentKind::v: {
                std::optional<DAA> shift;
                if (seg.shift) {
                    const HalfInt r = seg.shift->delta, s = seg.shift->alex;
                    const HalfInt two_s = s + s;
                    shift = (seg.kind == SegmentKind::u) ? DAA{r + s, two_s, two_s}
                                                         : DAA{r - s, two_s, two_s};
                }
                mc.components.push_back(TangleCurve{
                    (seg.kind == SegmentKind::u) ? CurveKind::s : CurveKind::sbar,
                    2 * seg.param, shift, 1});
                break;
            }
        }
    }
    sort_multicurve(mc);
    validate_multicurve(mc);
    return mc;
}

void validate_multicurve(const Multicurve& mc) {
    int r_count = 0;
    std::map<int, int> s_count, sbar_count;
    std::map<std::tuple<int, int, int, int>, int> s_graded, sbar_graded;
    for (const TangleCurve& c : mc.components) {
        if (c.local_dim != 1) throw DomainError("doubled components carry trivial local systems only");
        switch (c.kind) {
            case CurveKind::r:
                ++r_count;
                if (c.param % 2 != 0)
                    throw DomainError("r slope must be even, got " + std::to_string(c.param));
                if (c.shift) throw DomainError("r component carries a shift");
                break;
            case CurveKind::s:
            case CurveKind::sbar: {
                if (c.param < 2 || c.param % 2 != 0)
                    throw DomainError("s/sbar length must be even and >= 2, got " + std::to_string(c.param));
                ++((c.kind == CurveKind::s) ? s_count : sbar_count)[c.param];
                if (mc.graded != c.shift.has_value())
                    throw DomainError("component gradedness mismatch: " + render_curve(c));
                if (c.shift) {
                    // Mirror pairing compares s at (R; A1, A2) with sbar at (R; -A1, -A2).
                    if (c.kind == CurveKind::s)
                        ++s_graded[{c.param, c.shift->delta.twice, c.shift->a1.twice, c.shift->a2.twice}];
                    else
                        ++sbar_graded[{c.param, c.shift->delta.twice, -c.shift->a1.twice, -c.shift->a2.twice}];
                }
                break;
            }
        }
    }
    if (r_count != 1)
        throw DomainError("multicurve must contain exactly one r component, found " +
                          std::to_string(r_count));
    if (s_count != sbar_count) throw DomainError("s and sbar length multisets differ");
    if (mc.graded && s_graded != sbar_graded)
        throw DomainError("graded s/sbar components are not mirror-symmetric");
}

void sort_multicurve(Multicurve& mc) {
    auto key = [](const TangleCurve& c) {
        int rank = (c.kind == CurveKind::r) ? 0 : (c.kind == CurveKind::s) ? 1 : 2;
        int dd = c.shift ? c.shift->delta.twice : 0;
        int a1 = c.shift ? c.shift->a1.twice : 0;
        int a2 = c.shift ? c.shift->a2.twice : 0;
        return std::make_tuple(rank, c.param, dd, a1, a2);
    };
    std::stable_sort(mc.components.begin(), mc.components.end(),
                     [&](const TangleCurve& a, const TangleCurve& b) { return key(a) < key(b); });
}

std::string render_curve(const TangleCurve& c) {
    std::string out = std::string(kind_name(c.kind)) + "[" + std::to_string(c.param) + "]";
    if (c.shift)
        out += " d=" + c.shift->delta.str() + " a1=" + c.shift->a1.str() + " a2=" + c.shift->a2.str();
    return out;
}

std::string render_multicurve(const Multicurve& mc) {
    std::string out;
    for (const TangleCurve& c : mc.components) out += render_curve(c) + "\n";
    return out;
}

VerifyVerdict verify_main_theorem(const KnotInput& input) {
    if (input.tier != InputTier::cfd)
        throw DomainError("verification requires a cfd-tier input (both doubling routes must run)");
    VerifyVerdict v;
    v.fast = fast_double(decompose(input));
    v.oracle = double_via_oracle(input);
    v.equal = (v.fast.graded == v.oracle.graded) && (v.fast.components == v.oracle.components);
    if (!v.equal) {
        if (v.fast.graded != v.oracle.graded)
            v.diff += "gradedness differs between the two routes\n";
        std::map<std::string, int> delta;
        for (const TangleCurve& c : v.fast.components) ++delta[render_curve(c)];
        for (const TangleCurve& c : v.oracle.components) --delta[render_curve(c)];
        for (const auto& [line, d] : delta) {
            for (int i = 0; i < d; ++i) v.diff += "only fast: " + line + "\n";
            for (int i = 0; i < -d; ++i) v.diff += "only oracle: " + line + "\n";
        }
    }
    return v;
}

} // namespace dtangle
