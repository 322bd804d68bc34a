#pragma once

// Exact arithmetic in (1/2)Z.
//
// Every grading in this library (delta, Alexander components, shifts) lives in
// the half-integers. We store twice the value as an int, so all arithmetic is
// exact and comparisons are trivial. Serialized form: integers render as "p",
// proper halves as "p/2" (e.g. "3/2", "-1/2"); the parser accepts "p", "p/1"
// and "p/2" and nothing else.

#include <compare>
#include <string>
#include <vector>

#include "dtangle/errors.hpp"

namespace dtangle {

struct HalfInt {
    int twice = 0; // the represented value is twice/2

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int whole) : twice(2 * whole) {}

    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice = t;
        return h;
    }
    static constexpr HalfInt half(int numerator) { return from_twice(numerator); }

    constexpr bool is_integer() const { return twice % 2 == 0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice - b.twice); }
    constexpr HalfInt operator-() const { return from_twice(-twice); }
    HalfInt& operator+=(HalfInt o) { twice += o.twice; return *this; }
    HalfInt& operator-=(HalfInt o) { twice -= o.twice; return *this; }
    friend constexpr HalfInt operator*(int k, HalfInt a) { return from_twice(k * a.twice); }

    friend constexpr bool operator==(HalfInt a, HalfInt b) = default;
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

    std::string str() const {
        if (twice % 2 == 0) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

// Parses "p", "p/1" or "p/2" with p a (possibly negative) decimal integer.
HalfInt parse_half_int(const std::string& text);

// A (delta, Alexander) pair: the grading of a knot-side generator, and also the
// shift of a u/v segment against its template.
struct DA {
    HalfInt delta;
    HalfInt alex;
    friend constexpr bool operator==(const DA&, const DA&) = default;
    friend constexpr auto operator<=>(const DA&, const DA&) = default;
};

// A (delta, alex1, alex2) triple: the grading of a tangle-side generator, and
// the shift of an s/sbar curve against its template.
struct DAA {
    HalfInt delta;
    HalfInt a1;
    HalfInt a2;
    friend constexpr bool operator==(const DAA&, const DAA&) = default;
    friend constexpr auto operator<=>(const DAA&, const DAA&) = default;
};

// Generator grading, uniform over both sides: one Alexander component on the
// knot side, two on the tangle side.
struct Grading {
    HalfInt delta;
    std::vector<HalfInt> alex; // size 1 or 2

    static Grading knot(DA g) { return Grading{g.delta, {g.alex}}; }
    static Grading tangle(DAA g) { return Grading{g.delta, {g.a1, g.a2}}; }
    DA as_knot() const;
    DAA as_tangle() const;

    friend bool operator==(const Grading&, const Grading&) = default;
};

} // namespace dtangle
