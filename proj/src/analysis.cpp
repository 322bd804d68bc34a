#include "dtangle/analysis.hpp"

#include <cstdlib>
#include <utility>

#include "dtangle/errors.hpp"

namespace dtangle {

CurveDescriptor parse_curve_descriptor(const std::string& text) {
    CurveKind kind;
    std::size_t pos;
    if (text.rfind("sbar", 0) == 0) {
        kind = CurveKind::sbar;
        pos = 4;
    } else if (text.rfind("s", 0) == 0) {
        kind = CurveKind::s;
        pos = 1;
    } else if (text.rfind("r", 0) == 0) {
        kind = CurveKind::r;
        pos = 1;
    } else {
        throw DomainError("bad curve descriptor '" + text + "': expected r/s/sbar prefix");
    }
    std::string num = text.substr(pos);
    if (num.size() >= 2 && num.front() == '[' && num.back() == ']')
        num = num.substr(1, num.size() - 2);
    if (num.empty()) throw DomainError("bad curve descriptor '" + text + "': missing parameter");
    int param = 0;
    try {
        std::size_t used = 0;
        param = std::stoi(num, &used);
        if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
        throw DomainError("bad curve descriptor '" + text + "': bad parameter '" + num + "'");
    }
    if (param < -1000000 || param > 1000000)
        throw DomainError("curve descriptor parameter out of range: " + text);
    if (kind != CurveKind::r && param < 1)
        throw DomainError("s/sbar length must be >= 1, got " + std::to_string(param));
    return CurveDescriptor{kind, param};
}

long long floer_dim(Theory theory, CurveDescriptor left, CurveDescriptor right) {
    if (left.kind != CurveKind::r && right.kind == CurveKind::r) std::swap(left, right);
    if (left.kind != CurveKind::r)
        throw DomainError("pairing two s/sbar components is not supported");
    if (right.kind == CurveKind::r) {
        if (left.param != right.param)
            return 2 * std::llabs(static_cast<long long>(left.param) - right.param);
        return theory == Theory::HF ? 2 : 4;
    }
    if (right.kind == CurveKind::sbar && theory == Theory::Kh)
        throw DomainError("pairing against sbar is not defined in the Khovanov theory");
    if (right.param < 1)
        throw DomainError("s/sbar length must be >= 1, got " + std::to_string(right.param));
    return 2LL * right.param;
}

long long cable_hfk_dim(const SegmentDecomposition& dec, int t) {
    validate_decomposition(dec);
    const long long w = 2LL * t + 1;
    const long long tau4 = 4LL * tau_of(dec);

    // Route one: half the total pairing of the doubled multicurve with r_w.
    const CurveDescriptor cable{CurveKind::r, static_cast<int>(w)};
    Multicurve mc = fast_double(dec);
    long long pairing_total = 0;
    for (const TangleCurve& comp : mc.components)
        pairing_total += floer_dim(Theory::HF, cable, CurveDescriptor{comp.kind, comp.param});
    const long long route_pairing = pairing_total / 2;

    // Route two: torsion-order mean formula 2(d-1) lbar + |w - 4 tau|, with
    // lbar the mean u length; exact because d-1 = 2 (number of u segments).
    long long num_u = 0, sum_u = 0;
    for (const CurveSegment& seg : dec.segments)
        if (seg.kind == SegmentKind::u) {
            ++num_u;
            sum_u += seg.param;
        }
    const long long d = static_cast<long long>(dec.segments.size());
    const long long route_torsion =
        (num_u == 0 ? 0 : 2 * (d - 1) * sum_u / num_u) + std::llabs(w - tau4);

    if (route_pairing != route_torsion)
        throw VerificationFailure("cable dimension routes disagree: pairing gives " +
                                  std::to_string(route_pairing) + ", torsion formula gives " +
                                  std::to_string(route_torsion));
    return route_pairing;
}

std::vector<long long> cable_segment_counts(const SegmentDecomposition& dec, int t) {
    validate_decomposition(dec);
    const long long w = 2LL * t + 1;
    std::vector<long long> counts;
    long long total = 0;
    for (const CurveSegment& seg : dec.segments) {
        long long n;
        if (seg.kind == SegmentKind::d)
            n = 1 + 2 * ((std::llabs(w - 2LL * seg.param) - 1) / 2); // = |2t+1 - 4 tau|
        else
            n = 2LL * seg.param;
        counts.push_back(n);
        total += n;
    }
    const long long dim = cable_hfk_dim(dec, t);
    if (total != dim)
        throw VerificationFailure("per-segment counts sum to " + std::to_string(total) +
                                  " but the cable dimension is " + std::to_string(dim));
    return counts;
}

std::pair<long long, long long> cable_bounds(int d, int l_max, int tau, int t) {
    if (d < 1) throw DomainError("companion dimension must be >= 1, got " + std::to_string(d));
    if (l_max < 1) throw DomainError("torsion bound must be >= 1, got " + std::to_string(l_max));
    const long long w = 2LL * t + 1;
    const long long lower = 2LL * d - 1;
    const long long upper = 2LL * (d - 1) * l_max + std::llabs(w - 4LL * tau);
    return {lower, upper};
}

long long khovanov_cable_lower_bound(int d, int theta2, int t) {
    if (d < 1) throw DomainError("companion dimension must be >= 1, got " + std::to_string(d));
    const long long dd = d;
    return 2 * dd * dd - 2 + std::llabs(2LL * t + 1 - 2LL * theta2);
}

} // namespace dtangle
