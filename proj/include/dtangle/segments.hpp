#pragma once

// Loop-type knot-complement complexes decompose into standard segments after
// splitting every dot generator into two one-ended copies. A segment is a
// directed chain of circle generators between two dot ends, and its label
// pattern determines its kind:
//
//   u[l]   dot --s3--> w1 --s23--> ... --s23--> wl --s2--> dot
//   v[l]   dot --s123--> w1 --s23--> ... wl <--s1-- dot
//   d[+l]  dot --s3--> w1 --s23--> ... wl <--s1-- dot        (l even)
//   d[-l]  dot --s123--> w1 --s23--> ... wl --s2--> dot      (l even)
//   d[0]   dot --s12--> dot
//
// with l the number of circles. Graded templates (delta; alex) on the dots:
//
//   u[l]:  (l/2 - 1, -l/2) at the s3 end,   (-l/2, l/2) at the s2 end
//   v[l]:  (-l/2, -l/2) at the s123 end,    (l/2 - 1, l/2) at the s1 end
//   d[+l]: (l/2, -l/2) and (l/2, l/2)       d[-l]: (-l/2, -l/2) and (-l/2, l/2)
//   d[0]:  (0, 0) at both ends
//
// u and v segments may be shifted by (r, s) in (delta, alex); d segments are
// pinned at shift zero (this is the Maslov normalization of the input). A
// valid decomposition contains exactly one d segment and equally many u[l] as
// v[l] for every l; when graded, the u multiset at shift (r, s) mirrors the v
// multiset at (r, -s).

#include <optional>
#include <string>
#include <vector>

#include "dtangle/complex.hpp"
#include "dtangle/halfint.hpp"

namespace dtangle {

struct KnotInput; // see ingest.hpp

enum class SegmentKind { u, v, d };

struct CurveSegment {
    SegmentKind kind = SegmentKind::d;
    int param = 0;                 // u/v: length l >= 1; d: slope (even, possibly negative or zero)
    std::optional<DA> shift;       // u/v only, and only for graded decompositions

    friend bool operator==(const CurveSegment&, const CurveSegment&) = default;
};

struct SegmentDecomposition {
    std::vector<CurveSegment> segments;
    bool graded = false;
    friend bool operator==(const SegmentDecomposition&, const SegmentDecomposition&) = default;
};

// Builds the standard split piece for one segment: two one-ended dot
// generators ("<prefix>L", "<prefix>R") around circles "<prefix>w1..wl".
// Passing a shift produces the graded piece; d segments accept only a zero or
// absent shift. Throws DomainError for out-of-range parameters (u/v length
// < 1, odd d slope).
TypeDComplex segment_template(SegmentKind kind, int param, std::optional<DA> shift,
                              const std::string& prefix = "");

// Expands local systems, checks the complex is loop-type (every generator has
// exactly two incident arrow-ends, counting label summands separately), and
// splits every dot generator x into one-ended copies "x+" and "x-" that
// inherit its grading. Returns the connected components of the result, each a
// segment-shaped piece, ordered by smallest generator name.
std::vector<TypeDComplex> split_at_bullets(const TypeDComplex& cfd);

// Identifies which segment a split piece is, including its shift when the
// piece is graded. Internally regenerates the template for the identified
// (kind, param, shift) and requires an exact match, so any deviation from the
// template shapes (stray arrows, inconsistent gradings, a shifted d) is a
// DomainError.
CurveSegment classify_segment(const TypeDComplex& piece);

// Tier dispatch: cfd inputs are split and classified; segment inputs are
// validated and passed through; hfk_minus inputs {tau, torsion orders l_i}
// become the ungraded multiset {d[2 tau]} + {u[l_i], v[l_i]}.
SegmentDecomposition decompose(const KnotInput& input);

// Slope of the unique d segment divided by 2.
int tau_of(const SegmentDecomposition& dec);

// Structure checks (throws DomainError): exactly one d with even slope; u/v
// length multisets equal; shifts present exactly on graded decompositions and
// mirror-symmetric ((r, s) on u[l] paired with (r, -s) on v[l]).
void validate_decomposition(const SegmentDecomposition& dec);

// Canonical order: the d segment first, then u ascending by (length, shift),
// then v likewise.
void sort_decomposition(SegmentDecomposition& dec);

// One-line form: "u[1] d=3/2 a=1/2", "d[2]"; shift omitted when ungraded.
std::string render_segment(const CurveSegment& seg);

// All segments, one per line, in the order they are stored.
std::string render_decomposition(const SegmentDecomposition& dec);

} // namespace dtangle
