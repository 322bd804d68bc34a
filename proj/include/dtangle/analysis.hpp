// Pairing dimensions and cable formulas.
//
// Floer pairing of a slope-k line r_k against the components produced by
// doubling:
//   dim(r_k, s[m])    = 2m          (both theories)
//   dim(r_k, sbar[m]) = 2m          (HF only; undefined in the Khovanov case)
//   dim(r_k, r_k')    = 2|k - k'|   (k != k')
//   dim(r_k, r_k)     = 2 in HF, 4 in Kh
// Pairing s/sbar against s/sbar is not supported.
//
// For the (2, 2t+1)-cable of a companion whose decomposition is
// {d[2 tau], u[l_i], v[l_i]}, dim HFK-hat of the cable is
//   |2t+1 - 4 tau| + 4 sum(l_i),
// computed two independent ways (half the total pairing of the doubled
// multicurve against r_{2t+1}, and the torsion-order mean formula
// 2(d-1) lbar + |2t+1 - 4 tau| with d the number of segments); the two
// routes must agree.  It is bounded below by 2d-1 and above by
// 2(d-1) l_max + |2t+1 - 4 tau| where l_max bounds the torsion orders.
// The Khovanov-side analogue bounds the reduced cable homology of the
// double from below by 2d^2 - 2 + |2t+1 - 2 theta2|.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dtangle/curves.hpp"
#include "dtangle/segments.hpp"

namespace dtangle {

enum class Theory { HF, Kh };

// A pairing operand.  Unlike doubled components, the r slope here may be odd
// (cables pair against r_{2t+1}) and s/sbar lengths may be any positive int.
struct CurveDescriptor {
    CurveKind kind = CurveKind::r;
    int param = 0;
};

// Accepts "r7", "r-2", "s2", "sbar2" and the bracketed forms "r[4]",
// "s[2]", "sbar[-2]" (same validation: s/sbar lengths >= 1).
CurveDescriptor parse_curve_descriptor(const std::string& text);

// Dimension of the pairing per the table above; symmetric in its operands.
// Unsupported combinations throw DomainError.
long long floer_dim(Theory theory, CurveDescriptor left, CurveDescriptor right);

// dim HFK-hat of the (2, 2t+1)-cable, computed by both routes and
// cross-checked (VerificationFailure on disagreement).
long long cable_hfk_dim(const SegmentDecomposition& dec, int t);

// Generator count contributed by each segment (aligned with dec.segments):
// u[l]/v[l] contribute 2l, the d segment contributes |2t+1 - 4 tau|.  The
// total is cross-checked against cable_hfk_dim.
std::vector<long long> cable_segment_counts(const SegmentDecomposition& dec, int t);

// {lower, upper} bounds on the cable dimension from the companion's HFK-hat
// dimension d and a bound l_max on its torsion orders.
std::pair<long long, long long> cable_bounds(int d, int l_max, int tau, int t);

// Khovanov-side lower bound 2d^2 - 2 + |2t+1 - 2 theta2| for cables of the
// double.
long long khovanov_cable_lower_bound(int d, int theta2, int t);

} // namespace dtangle
