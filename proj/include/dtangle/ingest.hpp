#pragma once

// Knot input documents. Three tiers, in decreasing order of information:
//
//   cfd        - a full knot-complement complex over the torus-side algebra;
//                supports everything, including the algebraic doubling oracle.
//   segments   - a segment decomposition (the invariant content of a loop-type
//                cfd); supports the fast doubling path and cable formulas.
//   hfk_minus  - concordance/torsion data {tau, torsion orders}; determines
//                the ungraded decomposition {d[2 tau]} + {u[l_i], v[l_i]}.
//
// JSON shapes (all rationals are strings "p", "p/1" or "p/2"):
//
// {"name": "...", "tier": "cfd",
//  "generators": [{"id": "x1", "idem": "dot"|"circ",
//                  "delta": "1", "alex": "1"}, ...],        (both keys or neither)
//  "arrows": [{"from": "x1", "to": "c1", "labels": ["s1"],
//              "dim": 2, "matrix": [[1,1],[0,1]]}, ...]}     (dim/matrix optional)
//
// {"name": "...", "tier": "segments",
//  "segments": [{"kind": "u"|"v"|"d", "param": 1,
//                "delta": "3/2", "alex": "1/2"}, ...]}       (both keys or neither;
//                                                             d requires "0"/"0")
//
// {"name": "...", "tier": "hfk_minus", "tau": 1, "torsion": [1, 2]}
//
// Unknown keys are rejected. Local systems: "dim" is the rank; "matrix" (rows
// of 0/1 over F2) is accepted, checked square + invertible + consistent with
// "dim", and then discarded — only the rank affects any output.

#include <string>
#include <vector>

#include "dtangle/complex.hpp"
#include "dtangle/segments.hpp"

namespace dtangle {

enum class InputTier { cfd, segments, hfk_minus };

const char* tier_name(InputTier tier);

struct HfkMinusData {
    int tau = 0;
    std::vector<int> torsion; // torsion orders, each >= 1
    friend bool operator==(const HfkMinusData&, const HfkMinusData&) = default;
};

struct KnotInput {
    std::string name;
    InputTier tier = InputTier::cfd;
    TypeDComplex cfd;                    // tier == cfd
    SegmentDecomposition decomposition;  // tier == segments
    HfkMinusData hfk;                    // tier == hfk_minus
};

bool operator==(const KnotInput& a, const KnotInput& b);

// Parses one document. Syntax errors carry the JSON parser's line/column;
// semantic errors name the offending generator/arrow/segment. The parsed
// complex (cfd tier) is fully validated, and segment documents must satisfy
// the decomposition invariants.
KnotInput parse_knot_input(const std::string& json_text);

// Serializes back to JSON. render -> parse is the identity on every valid
// document (up to rational normalization and dropped local-system matrices).
std::string render_knot_input(const KnotInput& input);

// Built-in inputs: "unknot" and "trefoil" (cfd tier), "figure8" and
// "torus_3_4" (segments tier).
KnotInput builtin_knot(const std::string& name);
std::vector<std::string> builtin_knot_names();

// Drops all gradings (cfd gradings or segment shifts) from the input.
KnotInput make_ungraded(KnotInput input);

// Debug rendering of any complex in the cfd JSON shape; tangle-side
// generators use idempotent names a/b/c/d and grading keys alex1/alex2.
std::string render_complex_json(const TypeDComplex& c);

} // namespace dtangle
