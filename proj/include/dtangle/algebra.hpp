#pragma once

// The two path algebras over F2 that label differentials in this library.
//
// Torus side (8-dimensional), used for knot-complement complexes. Quiver on
// two idempotents, "dot" and "circ":
//
//     s1: dot->circ   s2: circ->dot   s3: dot->circ
//     s12 = s2*s1 (dot->dot)      s23 = s3*s2 (circ->circ)
//     s123 = s3*s2*s1 (dot->circ)
//     relations: s1*s2 = 0, s2*s3 = 0
//
// Tangle side (16-dimensional), used for the doubled complexes. Quiver on four
// idempotents a, b, c, d:
//
//     p1: a->d   p2: b->a   p3: c->b      q1: d->a   q2: a->b   q4: c->d
//     p12 = p1*p2 (b->d)   p23 = p2*p3 (c->a)   p123 = p1*p2*p3 (c->d)
//     q21 = q2*q1 (d->b)   q14 = q1*q4 (c->a)   q214 = q2*q1*q4 (c->b)
//     relations: p1*q1 = q1*p1 = p2*q2 = q2*p2 = 0
//
// Products compose right-to-left: multiply(x, y) applies y first, so it is
// nonzero only when source(x) == target(y). Each product of basis elements is
// again a basis element or zero, so the whole multiplication is a small table.
// Elements of the algebra are F2 sums of basis elements, stored as bitmasks.
//
// Tangle-side basis elements carry a (delta; alex1, alex2) grading; the six
// letters have delta = 1/2 and the grading is additive on nonzero products.
// Knot-side basis elements are not graded (knot-side gradings live on the
// dot generators of a complex, not on the algebra).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dtangle/errors.hpp"
#include "dtangle/halfint.hpp"

namespace dtangle {

enum class AlgebraId { torus, peculiar_tangle };

// F2 sum of basis elements, bit i = basis element i.
using Mask = std::uint16_t;

namespace torus_alg {
enum : int { i_dot, i_circ, s1, s2, s3, s12, s23, s123, count };
}
namespace tangle_alg {
enum : int { i_a, i_b, i_c, i_d, p1, p2, p3, q1, q2, q4, p12, p23, q21, q14, p123, q214, count };
}

struct BasisInfo {
    std::string name;
    int src = 0;          // idempotent index the element maps from
    int tgt = 0;          // idempotent index the element maps to
    bool idempotent = false;
    DAA grading;          // tangle side only; zeros on the torus side
};

struct AlgebraInfo {
    AlgebraId id;
    int dim = 0;
    int num_idempotents = 0;
    std::vector<BasisInfo> basis;
    std::vector<std::string> idempotent_names;         // index -> name ("dot", "circ" / "a".."d")
    std::array<std::array<int, 16>, 16> mul{};         // basis x basis -> basis index, -1 when zero

    int index_of(const std::string& name) const;       // -1 when unknown
    int idempotent_index(const std::string& name) const;
    Mask idempotent_bit(int idem) const;               // the basis bit of idempotent #idem
};

// Returns the table for one algebra; tables are built once and validated
// (associativity, endpoint compatibility, grading additivity) on first use.
const AlgebraInfo& algebra(AlgebraId id);

// Product of two basis elements; -1 when the product is zero.
int multiply_basis(AlgebraId id, int x, int y);

// Full bilinear product of two F2 sums.
Mask multiply(AlgebraId id, Mask x, Mask y);

// (source idempotent, target idempotent) of a basis element.
std::pair<int, int> idempotents_of(AlgebraId id, int x);

// (delta; alex1, alex2) of a tangle-side basis element. Throws for the torus
// side, whose basis carries no grading.
DAA tangle_grading(int basis_index);

// Re-runs the startup consistency checks; throws on any violation. Exposed so
// the tests and the selftest can exercise it directly.
void validate_algebra_tables();

// --- mask helpers -----------------------------------------------------------

inline Mask basis_bit(int index) { return static_cast<Mask>(1u << index); }
bool mask_is_single_idempotent(AlgebraId id, Mask m);

// Names of the set bits, sorted by basis index, joined with '+' (e.g. "p23+q14").
std::string mask_to_string(AlgebraId id, Mask m);

// Parses one basis-element name; throws DomainError on an unknown name.
int parse_basis_name(AlgebraId id, const std::string& name);

} // namespace dtangle
