#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "dtangle/analysis.hpp"
#include "dtangle/errors.hpp"
#include "dtangle/ingest.hpp"

using namespace dtangle;

namespace {

CurveDescriptor cd(CurveKind kind, int param) { return CurveDescriptor{kind, param}; }

} // namespace

TEST_CASE("curve descriptor parsing") {
    SUBCASE("plain and bracketed forms") {
        auto check = [](const std::string& text, CurveKind kind, int param) {
            CurveDescriptor d = parse_curve_descriptor(text);
            CHECK(d.kind == kind);
            CHECK(d.param == param);
        };
        check("r7", CurveKind::r, 7);
        check("r-2", CurveKind::r, -2);
        check("r0", CurveKind::r, 0);
        check("s2", CurveKind::s, 2);
        check("s1", CurveKind::s, 1); // pairing operands allow odd lengths
        check("sbar2", CurveKind::sbar, 2);
        check("sbar12", CurveKind::sbar, 12);
        check("r[4]", CurveKind::r, 4);
        check("r[-12]", CurveKind::r, -12);
        check("s[2]", CurveKind::s, 2);
        check("sbar[3]", CurveKind::sbar, 3);
    }
    SUBCASE("rejections") {
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("x3"),
                             "bad curve descriptor 'x3': expected r/s/sbar prefix", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor(""),
                             "bad curve descriptor '': expected r/s/sbar prefix", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("r"),
                             "bad curve descriptor 'r': missing parameter", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("sbar"),
                             "bad curve descriptor 'sbar': missing parameter", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("r[]"),
                             "bad curve descriptor 'r[]': missing parameter", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("r3.5"),
                             "bad curve descriptor 'r3.5': bad parameter '3.5'", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("rx"),
                             "bad curve descriptor 'rx': bad parameter 'x'", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("r[4"),
                             "bad curve descriptor 'r[4': bad parameter '[4'", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("s0"),
                             "s/sbar length must be >= 1, got 0", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("sbar[-2]"),
                             "s/sbar length must be >= 1, got -2", DomainError);
        CHECK_THROWS_WITH_AS(parse_curve_descriptor("r2000000"),
                             "curve descriptor parameter out of range: r2000000", DomainError);
    }
}

TEST_CASE("pairing dimension table") {
    SUBCASE("r against s and sbar") {
        CHECK(floer_dim(Theory::HF, cd(CurveKind::r, 7), cd(CurveKind::s, 2)) == 4);
        CHECK(floer_dim(Theory::HF, cd(CurveKind::r, 7), cd(CurveKind::sbar, 2)) == 4);
        CHECK(floer_dim(Theory::HF, cd(CurveKind::r, -3), cd(CurveKind::s, 5)) == 10);
        CHECK(floer_dim(Theory::Kh, cd(CurveKind::r, 7), cd(CurveKind::s, 2)) == 4);
        // Symmetry: the r operand may come second.
        CHECK(floer_dim(Theory::HF, cd(CurveKind::s, 2), cd(CurveKind::r, 7)) == 4);
        CHECK(floer_dim(Theory::HF, cd(CurveKind::sbar, 6), cd(CurveKind::r, 0)) == 12);
    }
    SUBCASE("r against r") {
        CHECK(floer_dim(Theory::HF, cd(CurveKind::r, 7), cd(CurveKind::r, 4)) == 6);
        CHECK(floer_dim(Theory::HF, cd(CurveKind::r, -3), cd(CurveKind::r, 5)) == 16);
        CHECK(floer_dim(Theory::HF, cd(CurveKind::r, 3), cd(CurveKind::r, 3)) == 2);
        CHECK(floer_dim(Theory::Kh, cd(CurveKind::r, 3), cd(CurveKind::r, 3)) == 4);
        CHECK(floer_dim(Theory::Kh, cd(CurveKind::r, 3), cd(CurveKind::r, 1)) == 4);
    }
    SUBCASE("unsupported pairings") {
        CHECK_THROWS_WITH_AS(floer_dim(Theory::Kh, cd(CurveKind::r, 7), cd(CurveKind::sbar, 2)),
                             "pairing against sbar is not defined in the Khovanov theory",
                             DomainError);
        CHECK_THROWS_WITH_AS(floer_dim(Theory::Kh, cd(CurveKind::sbar, 2), cd(CurveKind::r, 7)),
                             "pairing against sbar is not defined in the Khovanov theory",
                             DomainError);
        CHECK_THROWS_WITH_AS(floer_dim(Theory::HF, cd(CurveKind::s, 2), cd(CurveKind::sbar, 2)),
                             "pairing two s/sbar components is not supported", DomainError);
        CHECK_THROWS_WITH_AS(floer_dim(Theory::HF, cd(CurveKind::s, 2), cd(CurveKind::s, 4)),
                             "pairing two s/sbar components is not supported", DomainError);
        CHECK_THROWS_WITH_AS(floer_dim(Theory::HF, cd(CurveKind::r, 1), cd(CurveKind::s, 0)),
                             "s/sbar length must be >= 1, got 0", DomainError);
    }
}

TEST_CASE("cable dimensions of the built-in knots") {
    SUBCASE("pinned values") {
        CHECK(cable_hfk_dim(decompose(builtin_knot("trefoil")), 3) == 7);
        CHECK(cable_hfk_dim(decompose(builtin_knot("torus_3_4")), 5) == 13);
        CHECK(cable_hfk_dim(decompose(builtin_knot("unknot")), 0) == 1);
        CHECK(cable_hfk_dim(decompose(builtin_knot("figure8")), 0) == 9);
        // Negative framings move against tau.
        CHECK(cable_hfk_dim(decompose(builtin_knot("trefoil")), -2) == 11);
        CHECK(cable_hfk_dim(decompose(builtin_knot("unknot")), -1) == 1);
    }
    SUBCASE("per-segment counts sum to the dimension") {
        for (const std::string& name : builtin_knot_names()) {
            SegmentDecomposition dec = decompose(builtin_knot(name));
            for (int t = -5; t <= 5; ++t) {
                std::vector<long long> counts = cable_segment_counts(dec, t);
                REQUIRE(counts.size() == dec.segments.size());
                long long total = std::accumulate(counts.begin(), counts.end(), 0LL);
                CHECK(total == cable_hfk_dim(dec, t));
                // d contributes |2t+1 - 4 tau|; u[l] and v[l] contribute 2l.
                for (std::size_t i = 0; i < counts.size(); ++i) {
                    const CurveSegment& seg = dec.segments[i];
                    if (seg.kind == SegmentKind::d)
                        CHECK(counts[i] == std::abs(2 * t + 1 - 2 * seg.param));
                    else
                        CHECK(counts[i] == 2 * seg.param);
                }
            }
        }
    }
    SUBCASE("dimension is always odd and respects the bounds") {
        for (const std::string& name : builtin_knot_names()) {
            SegmentDecomposition dec = decompose(builtin_knot(name));
            const int d = static_cast<int>(dec.segments.size());
            int l_max = 1;
            for (const CurveSegment& seg : dec.segments)
                if (seg.kind != SegmentKind::d) l_max = std::max(l_max, seg.param);
            for (int t = -5; t <= 5; ++t) {
                const long long dim = cable_hfk_dim(dec, t);
                CHECK(dim % 2 == 1);
                auto [lo, hi] = cable_bounds(d, l_max, tau_of(dec), t);
                CHECK(lo <= dim);
                CHECK(dim <= hi);
            }
        }
    }
    SUBCASE("ungraded decompositions give the same dimensions") {
        CHECK(cable_hfk_dim(decompose(make_ungraded(builtin_knot("trefoil"))), 3) == 7);
        CHECK(cable_hfk_dim(decompose(make_ungraded(builtin_knot("torus_3_4"))), 5) == 13);
    }
}

TEST_CASE("cable bounds") {
    SUBCASE("pinned values") {
        CHECK(cable_bounds(3, 1, 1, 3) == std::pair<long long, long long>{5, 7});
        CHECK(cable_bounds(1, 1, 0, 0) == std::pair<long long, long long>{1, 1});
        CHECK(cable_bounds(5, 2, 3, 5) == std::pair<long long, long long>{9, 17});
        CHECK(cable_bounds(5, 1, 0, 0) == std::pair<long long, long long>{9, 9});
    }
    SUBCASE("rejections") {
        CHECK_THROWS_WITH_AS(cable_bounds(0, 1, 0, 0),
                             "companion dimension must be >= 1, got 0", DomainError);
        CHECK_THROWS_WITH_AS(cable_bounds(3, 0, 0, 0),
                             "torsion bound must be >= 1, got 0", DomainError);
    }
}

TEST_CASE("Khovanov-side cable lower bound") {
    CHECK(khovanov_cable_lower_bound(3, 1, 1) == 17);
    CHECK(khovanov_cable_lower_bound(1, 0, 0) == 1);
    CHECK(khovanov_cable_lower_bound(5, 3, 0) == 53);
    CHECK(khovanov_cable_lower_bound(2, -1, 2) == 13);
    CHECK_THROWS_WITH_AS(khovanov_cable_lower_bound(0, 0, 0),
                         "companion dimension must be >= 1, got 0", DomainError);
}
