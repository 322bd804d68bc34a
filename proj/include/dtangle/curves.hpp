#pragma once

// Multicurve components of doubled complexes. Every component of a reduced,
// doubled complex is one of three shapes over the tangle-side algebra,
// determined by its two extremal (a- or c-idempotent) generators and two
// alternating b/d chains of equal length 2l between them (4l + 2 generators
// total; the l = 0 case "r[0]" is just c -> a labeled p23 + q14):
//
//   r[k]     one a and one c extremal; k = +-2l with the sign read off the
//            c end (it emits q4/p3 toward the chain tops for k > 0 and
//            q214/p123 toward the chain bottoms for k < 0); pinned gradings.
//   s[2l]    both extremals a; shifted by (delta; a1, a2) against a fixed
//            template whose top a sits at (0; l, l).
//   sbar[2l] both extremals c; template top at (-1; l, l).
//
// Chain interiors step by (+1, +1) in (alex1, alex2) from bottom to top; the
// left chain runs b --p12--> d --q21--> b ... ending at a d, the right chain
// d --q21--> b --p12--> ... ending at a b.
//
// Doubling a decomposition maps segments to components one-to-one:
//
//   d[2t]          -> r[4t]
//   u[l] @ (r, s)  -> s[2l]    @ (r + s; 2s, 2s)
//   v[l] @ (r, s)  -> sbar[2l] @ (r - s; 2s, 2s)
//
// fast_double applies this table directly; the algebraic oracle (doubling.hpp)
// recomputes the same multicurve from a cfd without using it, which is what
// verify_main_theorem cross-checks.

#include <optional>
#include <string>
#include <vector>

#include "dtangle/complex.hpp"
#include "dtangle/halfint.hpp"
#include "dtangle/segments.hpp"

namespace dtangle {

struct KnotInput; // see ingest.hpp

enum class CurveKind { r, s, sbar };

struct TangleCurve {
    CurveKind kind = CurveKind::r;
    int param = 0;                // r: slope +-2l (even); s/sbar: length 2l (even, >= 2)
    std::optional<DAA> shift;     // s/sbar only, and only for graded multicurves
    int local_dim = 1;            // always 1 for doubled complexes

    friend bool operator==(const TangleCurve&, const TangleCurve&) = default;
};

struct Multicurve {
    std::vector<TangleCurve> components;
    bool graded = false;
    friend bool operator==(const Multicurve&, const Multicurve&) = default;
};

// Builds the standard complex of one component. Generator names are
// "<prefix>T", "<prefix>L1..", "<prefix>R1..", "<prefix>B" (top, left chain
// bottom-to-top, right chain bottom-to-top, bottom). Passing a shift produces
// the graded complex; r components accept only a zero or absent shift.
TypeDComplex curve_template(CurveKind kind, int param, std::optional<DAA> shift,
                            const std::string& prefix = "");

// Identifies which component a reduced connected tangle-side complex is,
// including its shift when graded; regenerates the template for the
// identified (kind, param, shift) and requires an exact match. Anything else
// is a DomainError ("unrecognized component: ...").
TangleCurve recognize(const TypeDComplex& piece);

// Applies the doubling table to a validated decomposition.
Multicurve fast_double(const SegmentDecomposition& dec);

// Structure checks (throws DomainError): exactly one r with even slope and no
// shift; s/sbar lengths even and >= 2 with equal multisets; shifts present
// exactly on graded multicurves and mirror-symmetric ((R; A1, A2) on s[2l]
// paired with (R; -A1, -A2) on sbar[2l]); every local_dim == 1.
void validate_multicurve(const Multicurve& mc);

// Canonical order: the r component first, then s ascending by (length,
// shift), then sbar likewise; shifts compare lexicographically.
void sort_multicurve(Multicurve& mc);

// One-line form: "r[4]", "s[2] d=2 a1=1 a2=1"; shift omitted when ungraded.
std::string render_curve(const TangleCurve& c);

// All components, one per line, in the order they are stored.
std::string render_multicurve(const Multicurve& mc);

// Cross-check of the two doubling routes on a cfd input: the fast path
// (decompose + table) against the algebraic oracle (box tensor + reduction +
// recognition). `equal` compares the two multicurves as multisets; `diff`
// lists the discrepancies one per line ("only fast: ...", "only oracle: ...").
struct VerifyVerdict {
    bool equal = false;
    Multicurve fast;
    Multicurve oracle;
    std::string diff;
};
VerifyVerdict verify_main_theorem(const KnotInput& input);

} // namespace dtangle
