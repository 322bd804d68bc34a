// Algebraic doubling route: a fixed type AD bimodule (torus algebra acting on
// the left, tangle algebra reported on the right) encodes how the doubling
// pattern transforms a knot-side complex.  Box tensoring a reduced torus-side
// complex with the bimodule yields a tangle-side complex; cancelling identity
// arrows and recognizing the connected components then produces the same
// multicurve that the segment table computes directly.
//
// The bimodule has eight generators.  Four sit over the dot idempotent
// (c, a, b, b') and four over the circle idempotent (B, D, B', D'); their
// right idempotents are c, a, b, b / b, d, b, d respectively.  Its structure
// maps consume at most one torus algebra input and emit exactly one tangle
// algebra basis element (possibly an idempotent, which is what the later
// cancellation step removes).
//
// Gradings are not tensored formally: the doubled complex is regraded by
// seeding the extremal generators x (tensor) a at (m + n; 2n, 2n) and
// x (tensor) c at (m - n; 2n, 2n) for each knot-side dot x with grading
// (m, n), then propagating along arrows via delta(src) + 1 = delta(label) +
// delta(tgt) and A(src) = A(label) + A(tgt).

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "dtangle/complex.hpp"
#include "dtangle/curves.hpp"

namespace dtangle {

struct KnotInput; // see ingest.hpp

// Bimodule generator indices (bp/Bp/Dp are the primed generators).
namespace doubling_gen {
enum : int { c, a, b, bp, B, D, Bp, Dp, count };
} // namespace doubling_gen

// One structure map: src consumes `input` (a torus basis index, or -1 for
// none) and moves to tgt, emitting the tangle basis element `output`.
struct BimoduleAction {
    int src = 0;
    int input = -1;
    int output = 0;
    int tgt = 0;
};

struct DoublingBimodule {
    std::array<std::string, doubling_gen::count> names;
    std::array<int, doubling_gen::count> left_idem;  // torus idempotent index
    std::array<int, doubling_gen::count> right_idem; // tangle idempotent index
    std::vector<BimoduleAction> actions;
};

// The fixed bimodule table; validated (idempotent compatibility of every
// action) on first access.
const DoublingBimodule& doubling_bimodule();

// Box tensor product of a torus-side complex with the doubling bimodule.
struct BoxProduct {
    TypeDComplex source;                      // expanded input actually tensored
    TypeDComplex complex;                     // resulting tangle-side complex
    std::vector<std::pair<int, int>> origin;  // result gen -> (source gen, bimodule gen)
};

// Local systems are expanded first; arrows with idempotent summands are
// rejected (the input must be reduced).  The result is validated (d^2 = 0)
// and carries no gradings; see seed_and_propagate_gradings.
BoxProduct box_tensor(const TypeDComplex& cfd);

// Regrade box.complex from box.source (which must be graded): seed the
// extremal generators from the knot-side dots, propagate along arrows in both
// directions, then verify every arrow summand for consistency.  Throws
// DomainError when the input gradings are inconsistent or a generator is
// unreachable from the seeds.
void seed_and_propagate_gradings(BoxProduct& box);

// Full oracle pipeline: box tensor, regrade when the input is graded, cancel
// identity arrows, split into components, recognize each as a curve.  Checks
// along the way (VerificationFailure): the number of components equals the
// number of knot-side dots, and every s/sbar shift is diagonal (a1 == a2).
Multicurve double_via_oracle(const KnotInput& input);

// Small closed-up torus-side test complexes for exercising the oracle on
// inputs the segment route cannot see.  Valid parameters: 0 (one dot, s12
// self-arrow; doubles to r[0]), 1 (dot and circle, s123/s2 cycle; doubles to
// r[-2]) and -2 (dot and two circles, s1/s3/s23; doubles to r[4]).  All are
// ungraded.
TypeDComplex pairing_fixture(int parameter);

} // namespace dtangle
