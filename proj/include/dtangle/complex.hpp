#pragma once

// Type D structures ("curved-free differential modules") over one of the two
// quiver algebras, stored as labeled directed multigraphs:
//
//   * generators carry an idempotent of the algebra and, optionally, a grading
//     (delta + one Alexander component on the torus side, delta + two on the
//     tangle side);
//   * an arrow x -> y labeled by an F2 sum of basis elements encodes those
//     summands of the differential of x that land on y. Parallel arrows are
//     kept as one bitmask per (source, target); inserting an arrow XORs masks,
//     so duplicate summands cancel, matching F2 coefficients.
//
// The structure equation d^2 = 0 reads: for every generator pair (x, z),
// sum over y of label(y->z) * label(x->y) vanishes, with the product applying
// the x->y leg first.
//
// The main reduction is cancellation of identity-labeled arrows (one step of
// Gaussian elimination over the algebra): cancelling u -> v labeled by an
// idempotent removes u, v and adds, for every x -> v labeled eta and every
// u -> y labeled xi, a new arrow x -> y labeled xi * eta.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtangle/algebra.hpp"
#include "dtangle/halfint.hpp"

namespace dtangle {

struct Generator {
    std::string name;
    int idem = 0;
    std::optional<Grading> grading;
    friend bool operator==(const Generator&, const Generator&) = default;
};

struct TypeDComplex {
    AlgebraId algebra_id = AlgebraId::torus;
    std::vector<Generator> gens;
    std::map<std::pair<int, int>, Mask> arrows;     // (src index, tgt index) -> F2 label
    std::map<std::pair<int, int>, int> local_dims;  // rank-n local systems; only n > 1 recorded

    int add_generator(std::string name, int idem, std::optional<Grading> grading = std::nullopt);
    void add_arrow(int src, int tgt, Mask label);         // XOR-insert, erases when it cancels to 0
    void add_arrow_basis(int src, int tgt, int basis_index);
    int index_of(const std::string& name) const;          // -1 when absent
    Mask label(int src, int tgt) const;                   // 0 when no arrow

    // True when the generators that can carry gradings all do (torus side:
    // the dot generators; tangle side: everything). False for empty complexes.
    bool graded() const;

    friend bool operator==(const TypeDComplex&, const TypeDComplex&) = default;
};

// Structural validation; returns a list of human-readable problems (empty =
// valid). Checks: unique names, idempotent compatibility of every label
// summand, no identity-labeled self-loops, d^2 = 0, grading placement
// (torus side: gradings only on dot generators, all or none, one Alexander
// component; tangle side: all or none, two components, and per-arrow
// consistency delta(x) + 1 = delta(xi) + delta(y), A(x) = A(xi) + A(y)),
// and local-system payload consistency (constant on each component).
std::vector<std::string> validate(const TypeDComplex& c);

// Throws DomainError("<stage>: <first problems>") when validate() is non-empty.
void require_valid(const TypeDComplex& c, const std::string& stage);

// Splits into connected components of the underlying undirected graph,
// ordered by their smallest generator name; generator order inside each
// component follows the parent complex.
std::vector<TypeDComplex> connected_components(const TypeDComplex& c);

// Cancels identity-labeled arrows until none remain. An arrow is cancellable
// when its full label is exactly one idempotent summand (an extra parallel
// summand blocks it until cancellation elsewhere removes it). With
// order_seed == 0 arrows are processed in lexicographic (source name, target
// name) order, which is the deterministic order used everywhere; a nonzero
// seed picks random cancellable arrows instead (exposed to let tests verify
// that the recognized outcome is order-independent). Throws DomainError if
// identity-labeled arrows survive (cannot happen for d^2 = 0 inputs) or if an
// identity self-loop is encountered.
TypeDComplex cancel_identity_arrows(const TypeDComplex& c, unsigned order_seed = 0);

// Replaces every component carrying a rank-n local system (n > 1) by n
// parallel unlabeled copies; copy k of generator g is named "g~k". The result
// carries no local-system payload.
TypeDComplex expand_local_systems(const TypeDComplex& c);

// Removes all gradings.
TypeDComplex strip_gradings(TypeDComplex c);

// Checks that `piece` is exactly `tmpl` under the generator identification
// order[i] (a piece index) -> i (the template index): same idempotents,
// gradings, and arrow labels. Throws DomainError("<what>: ...") on mismatch.
// This is how the segment and curve recognizers confirm a traversal: identify
// the shape, regenerate its template, then demand an exact match.
void require_same_shape(const TypeDComplex& piece, const std::vector<int>& order,
                        const TypeDComplex& tmpl, const std::string& what);

// Canonical text form (generators sorted by name, arrows sorted), used by
// tests to compare complexes up to generator order.
std::string debug_string(const TypeDComplex& c);

} // namespace dtangle
