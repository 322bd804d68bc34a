#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "dtangle/errors.hpp"
#include "dtangle/ingest.hpp"

using namespace dtangle;
namespace to = torus_alg;

namespace {

void expect_reject(const std::string& doc, const std::string& needle) {
    CHECK_THROWS_WITH_AS(parse_knot_input(doc), doctest::Contains(needle.c_str()), DomainError);
}

} // namespace

TEST_CASE("built-in inputs") {
    CHECK(builtin_knot_names() ==
          std::vector<std::string>{"unknot", "trefoil", "figure8", "torus_3_4"});
    CHECK(builtin_knot("unknot").tier == InputTier::cfd);
    CHECK(builtin_knot("trefoil").tier == InputTier::cfd);
    CHECK(builtin_knot("figure8").tier == InputTier::segments);
    CHECK(builtin_knot("torus_3_4").tier == InputTier::segments);
    CHECK_THROWS_WITH_AS(builtin_knot("nosuch"),
                         doctest::Contains("unknown built-in knot 'nosuch'"), DomainError);
}

TEST_CASE("render and parse are inverse on every built-in") {
    for (const std::string& name : builtin_knot_names()) {
        const KnotInput k = builtin_knot(name);
        const std::string doc = render_knot_input(k);
        CHECK(parse_knot_input(doc) == k);
        // Rendering is stable: a second round trip produces the same bytes.
        CHECK(render_knot_input(parse_knot_input(doc)) == doc);
    }
}

TEST_CASE("tier names") {
    CHECK(std::string(tier_name(InputTier::cfd)) == "cfd");
    CHECK(std::string(tier_name(InputTier::segments)) == "segments");
    CHECK(std::string(tier_name(InputTier::hfk_minus)) == "hfk_minus");
}

TEST_CASE("parsing a cfd document") {
    const std::string doc = R"({
        "name": "loop",
        "tier": "cfd",
        "generators": [
            {"id": "x", "idem": "dot", "delta": "0", "alex": "0"},
            {"id": "w", "idem": "circ"}
        ],
        "arrows": [
            {"from": "x", "to": "w", "labels": ["s3"]},
            {"from": "w", "to": "w", "labels": ["s23"], "dim": 2,
             "matrix": [[1, 1], [0, 1]]}
        ]
    })";
    KnotInput k = parse_knot_input(doc);
    CHECK(k.name == "loop");
    CHECK(k.tier == InputTier::cfd);
    REQUIRE(k.cfd.gens.size() == 2);
    CHECK(k.cfd.gens[0].idem == to::i_dot);
    CHECK(k.cfd.gens[0].grading == Grading::knot({HalfInt(0), HalfInt(0)}));
    CHECK(k.cfd.label(0, 1) == basis_bit(to::s3));
    CHECK(k.cfd.label(1, 1) == basis_bit(to::s23));
    // The matrix is checked, then discarded; only the rank is kept.
    CHECK(k.cfd.local_dims.at({1, 1}) == 2);
    const std::string rendered = render_knot_input(k);
    CHECK(rendered.find("matrix") == std::string::npos);
    CHECK(parse_knot_input(rendered) == k);
}

TEST_CASE("parsing a segments document") {
    const std::string doc = R"({
        "name": "graded",
        "tier": "segments",
        "segments": [
            {"kind": "d", "param": 2, "delta": "0", "alex": "0"},
            {"kind": "u", "param": 1, "delta": "3/2", "alex": "1/2"},
            {"kind": "v", "param": 1, "delta": "3/2", "alex": "-1/2"}
        ]
    })";
    KnotInput k = parse_knot_input(doc);
    CHECK(k.tier == InputTier::segments);
    CHECK(k.decomposition.graded);
    REQUIRE(k.decomposition.segments.size() == 3);
    CHECK(k.decomposition.segments[0] == CurveSegment{SegmentKind::d, 2, std::nullopt});
    CHECK(k.decomposition.segments[1] ==
          CurveSegment{SegmentKind::u, 1, DA{HalfInt::half(3), HalfInt::half(1)}});
    CHECK(parse_knot_input(render_knot_input(k)) == k);
}

TEST_CASE("parsing an hfk_minus document") {
    KnotInput k = parse_knot_input(
        R"({"name": "t", "tier": "hfk_minus", "tau": -2, "torsion": [1, 1, 3]})");
    CHECK(k.tier == InputTier::hfk_minus);
    CHECK(k.hfk == HfkMinusData{-2, {1, 1, 3}});
    CHECK(parse_knot_input(render_knot_input(k)) == k);
}

TEST_CASE("document-level rejections") {
    expect_reject("{", "syntax error");
    expect_reject("[1, 2]", "must be a JSON object");
    expect_reject(R"({"tier": "cfd"})", "missing key 'name'");
    expect_reject(R"({"name": "k"})", "missing key 'tier'");
    expect_reject(R"({"name": "k", "tier": "qfd"})", "unknown tier 'qfd'");
    expect_reject(R"({"name": "k", "tier": "hfk_minus", "tau": 0, "torsion": [], "x": 1})",
                  "unknown key 'x'");
    expect_reject(R"({"name": "k", "tier": "hfk_minus", "tau": "0", "torsion": []})",
                  "must be an integer");
}

TEST_CASE("cfd-tier rejections") {
    auto doc = [](const std::string& gens, const std::string& arrows) {
        return R"({"name": "k", "tier": "cfd", "generators": [)" + gens +
               R"(], "arrows": [)" + arrows + "]}";
    };
    expect_reject(doc(R"({"id": "x", "idem": "box"})", ""), "unknown idempotent 'box'");
    expect_reject(doc(R"({"id": "x", "idem": "dot"}, {"id": "x", "idem": "dot"})", ""),
                  "duplicate id");
    expect_reject(doc(R"({"id": "x", "idem": "dot", "delta": "0"})", ""),
                  "'delta' and 'alex' must appear together");
    expect_reject(doc(R"({"id": "w", "idem": "circ", "delta": "0", "alex": "0"})", ""),
                  "circle generators carry no grading");
    expect_reject(doc(R"({"id": "x", "idem": "dot", "ghost": 1})", ""), "unknown key 'ghost'");
    expect_reject(doc(R"({"id": "x", "idem": "dot", "delta": "1/4", "alex": "0"})", ""),
                  "1/4");

    const std::string xw = R"({"id": "x", "idem": "dot"}, {"id": "w", "idem": "circ"})";
    expect_reject(doc(xw, R"({"from": "x", "to": "nope", "labels": ["s1"]})"),
                  "unknown generator 'nope'");
    expect_reject(doc(xw, R"({"from": "x", "to": "w", "labels": []})"),
                  "'labels' must be a nonempty array");
    expect_reject(doc(xw, R"({"from": "x", "to": "w", "labels": ["p1"]})"),
                  "unknown algebra element 'p1'");
    expect_reject(doc(xw, R"({"from": "x", "to": "w", "labels": ["s2"]})"),
                  "incompatible with the endpoint idempotents");
    // Labels are an F2 sum: a repeated label cancels to an empty arrow, and a
    // local system must not dangle from it.
    expect_reject(doc(xw, R"({"from": "x", "to": "w", "labels": ["s1", "s1"], "dim": 2})"),
                  "labels cancel");

    const std::string loop = R"({"id": "w", "idem": "circ"})";
    expect_reject(doc(loop, R"({"from": "w", "to": "w", "labels": ["s23"],
                                "matrix": [[1, 0], [1, 1], [0, 1]]})"),
                  "'matrix' must be square");
    expect_reject(doc(loop, R"({"from": "w", "to": "w", "labels": ["s23"],
                                "matrix": [[1, 1], [1, 1]]})"),
                  "not invertible");
    expect_reject(doc(loop, R"({"from": "w", "to": "w", "labels": ["s23"],
                                "dim": 3, "matrix": [[1, 1], [0, 1]]})"),
                  "'dim' disagrees with the matrix size");
    expect_reject(doc(loop, R"({"from": "w", "to": "w", "labels": ["s23"],
                                "matrix": [[2]]})"),
                  "entries must be 0 or 1");
    expect_reject(doc(loop, R"({"from": "w", "to": "w", "labels": ["s23"], "dim": 0})"),
                  "out of range");

    // Structural validation runs on the parsed complex: d^2 must vanish.
    expect_reject(doc(R"({"id": "x", "idem": "dot"}, {"id": "w", "idem": "circ"},
                        {"id": "y", "idem": "dot"})",
                      R"({"from": "x", "to": "w", "labels": ["s1"]},
                        {"from": "w", "to": "y", "labels": ["s2"]})"),
                  "d^2 != 0");
}

TEST_CASE("segments-tier rejections") {
    auto doc = [](const std::string& segs) {
        return R"({"name": "k", "tier": "segments", "segments": [)" + segs + "]}";
    };
    expect_reject(doc(""), "'segments' must be a nonempty array");
    expect_reject(doc(R"({"kind": "w", "param": 1})"), "unknown kind 'w'");
    expect_reject(doc(R"({"kind": "u", "param": 1, "delta": "0"})"),
                  "'delta' and 'alex' must appear together");
    expect_reject(doc(R"({"kind": "d", "param": 0},
                         {"kind": "u", "param": 1, "delta": "0", "alex": "0"})"),
                  "mixed graded and ungraded segments");
    expect_reject(doc(R"({"kind": "d", "param": 2, "delta": "1", "alex": "0"})"),
                  "d segments require delta = alex = \"0\"");
    expect_reject(doc(R"({"kind": "d", "param": 3})"), "even");
    expect_reject(doc(R"({"kind": "d", "param": 0}, {"kind": "u", "param": 0},
                         {"kind": "v", "param": 0})"),
                  "length");
    expect_reject(doc(R"({"kind": "u", "param": 1}, {"kind": "v", "param": 1})"),
                  "exactly one d segment, found 0");
    expect_reject(doc(R"({"kind": "d", "param": 0}, {"kind": "d", "param": 0})"),
                  "exactly one d");
    expect_reject(doc(R"({"kind": "d", "param": 0}, {"kind": "u", "param": 1})"),
                  "multiset");
    expect_reject(doc(R"({"kind": "u", "param": 9999})"), "out of range");
}

TEST_CASE("mirror symmetry of graded segment documents is enforced") {
    // u at shift (0, 1) needs v at (0, -1); v at (0, 1) does not qualify.
    expect_reject(R"({"name": "k", "tier": "segments", "segments": [
        {"kind": "d", "param": 0, "delta": "0", "alex": "0"},
        {"kind": "u", "param": 1, "delta": "0", "alex": "1"},
        {"kind": "v", "param": 1, "delta": "0", "alex": "1"}]})",
                  "mirror");
}

TEST_CASE("hfk-tier rejections") {
    expect_reject(R"({"name": "k", "tier": "hfk_minus", "tau": 1, "torsion": [0]})",
                  "torsion orders must be integers in [1, 1000]");
    expect_reject(R"({"name": "k", "tier": "hfk_minus", "tau": 1, "torsion": 3})",
                  "'torsion' must be an array");
    expect_reject(R"({"name": "k", "tier": "hfk_minus", "tau": 5000, "torsion": []})",
                  "out of range");
}

TEST_CASE("grading removal per tier") {
    KnotInput cfd = make_ungraded(builtin_knot("trefoil"));
    CHECK(!cfd.cfd.graded());
    for (const auto& g : cfd.cfd.gens) CHECK(!g.grading.has_value());

    KnotInput segs = make_ungraded(builtin_knot("figure8"));
    CHECK(!segs.decomposition.graded);
    for (const auto& s : segs.decomposition.segments) CHECK(!s.shift.has_value());

    KnotInput hfk = parse_knot_input(
        R"({"name": "t", "tier": "hfk_minus", "tau": 1, "torsion": [2]})");
    CHECK(make_ungraded(hfk) == hfk);
}

TEST_CASE("debug JSON rendering of a tangle-side complex") {
    TypeDComplex c;
    c.algebra_id = AlgebraId::peculiar_tangle;
    int a = c.add_generator("g1", tangle_alg::i_a,
                            Grading::tangle({HalfInt::half(1), HalfInt(-1), HalfInt(0)}));
    int d = c.add_generator("g2", tangle_alg::i_d,
                            Grading::tangle({HalfInt::half(-1), HalfInt(0), HalfInt(0)}));
    c.add_arrow_basis(a, d, tangle_alg::p1);
    const std::string doc = render_complex_json(c);
    CHECK(doc.find("\"idem\": \"a\"") != std::string::npos);
    CHECK(doc.find("\"idem\": \"d\"") != std::string::npos);
    CHECK(doc.find("\"alex1\": \"-1\"") != std::string::npos);
    CHECK(doc.find("\"alex2\": \"0\"") != std::string::npos);
    CHECK(doc.find("\"p1\"") != std::string::npos);
}
