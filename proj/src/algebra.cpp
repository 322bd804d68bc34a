#include "dtangle/algebra.hpp"

#include <mutex>

namespace dtangle {

HalfInt parse_half_int(const std::string& text) {
    // Accepted forms: "p", "p/1", "p/2".
    auto bad = [&] { throw DomainError("invalid rational '" + text + "' (expected p, p/1 or p/2)"); };
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
        if (den != "1" && den != "2") bad();
    }
    if (num.empty() || (num.size() == 1 && (num[0] == '-' || num[0] == '+'))) bad();
    size_t start = (num[0] == '-') ? 1 : 0;
    if (num[0] == '+') bad();
    for (size_t i = start; i < num.size(); ++i)
        if (num[i] < '0' || num[i] > '9') bad();
    long long p = 0;
    try {
        p = std::stoll(num);
    } catch (const std::exception&) {
        bad();
    }
    long long twice = (den == "2") ? p : 2 * p;
    if (twice > 1000000 || twice < -1000000) bad(); // keep gradings small and overflow-proof
    return HalfInt::from_twice(static_cast<int>(twice));
}

DA Grading::as_knot() const {
    if (alex.size() != 1) throw DomainError("grading has " + std::to_string(alex.size()) + " Alexander components, expected 1");
    return DA{delta, alex[0]};
}

DAA Grading::as_tangle() const {
    if (alex.size() != 2) throw DomainError("grading has " + std::to_string(alex.size()) + " Alexander components, expected 2");
    return DAA{delta, alex[0], alex[1]};
}

namespace {

constexpr HalfInt kHalf = HalfInt::half(1);

AlgebraInfo build_torus() {
    using namespace torus_alg;
    AlgebraInfo a;
    a.id = AlgebraId::torus;
    a.dim = count;
    a.num_idempotents = 2;
    a.idempotent_names = {"dot", "circ"};
    a.basis.resize(count);
    auto set = [&](int i, const char* name, int src, int tgt, bool idem) {
        a.basis[i] = BasisInfo{name, src, tgt, idem, {}};
    };
    const int dot = 0, circ = 1;
    set(i_dot, "i_dot", dot, dot, true);
    set(i_circ, "i_circ", circ, circ, true);
    set(s1, "s1", dot, circ, false);
    set(s2, "s2", circ, dot, false);
    set(s3, "s3", dot, circ, false);
    set(s12, "s12", dot, dot, false);
    set(s23, "s23", circ, circ, false);
    set(s123, "s123", dot, circ, false);

    for (auto& row : a.mul) row.fill(-1);
    // Idempotent laws.
    for (int x = 0; x < count; ++x) {
        a.mul[x][a.basis[x].src == dot ? i_dot : i_circ] = x;
        a.mul[a.basis[x].tgt == dot ? i_dot : i_circ][x] = x;
    }
    // All nonzero products of non-idempotents; everything else is killed by
    // s1*s2 = s2*s3 = 0 or by endpoint mismatch.
    a.mul[s2][s1] = s12;
    a.mul[s3][s2] = s23;
    a.mul[s3][s12] = s123;
    a.mul[s23][s1] = s123;
    return a;
}

AlgebraInfo build_tangle() {
    using namespace tangle_alg;
    AlgebraInfo a;
    a.id = AlgebraId::peculiar_tangle;
    a.dim = count;
    a.num_idempotents = 4;
    a.idempotent_names = {"a", "b", "c", "d"};
    a.basis.resize(count);
    const int ia = 0, ib = 1, ic = 2, id = 3;
    auto set = [&](int i, const char* name, int src, int tgt, bool idem, HalfInt delta, int a1, int a2) {
        a.basis[i] = BasisInfo{name, src, tgt, idem, DAA{delta, HalfInt(a1), HalfInt(a2)}};
    };
    set(i_a, "i_a", ia, ia, true, HalfInt(0), 0, 0);
    set(i_b, "i_b", ib, ib, true, HalfInt(0), 0, 0);
    set(i_c, "i_c", ic, ic, true, HalfInt(0), 0, 0);
    set(i_d, "i_d", id, id, true, HalfInt(0), 0, 0);
    set(p1, "p1", ia, id, false, kHalf, -1, 0);
    set(p2, "p2", ib, ia, false, kHalf, 0, -1);
    set(p3, "p3", ic, ib, false, kHalf, 0, 1);
    set(q1, "q1", id, ia, false, kHalf, -1, 0);
    set(q2, "q2", ia, ib, false, kHalf, 0, -1);
    set(q4, "q4", ic, id, false, kHalf, 1, 0);
    // Gradings of composites are the sums of their letters.
    set(p12, "p12", ib, id, false, HalfInt(1), -1, -1);
    set(p23, "p23", ic, ia, false, HalfInt(1), 0, 0);
    set(q21, "q21", id, ib, false, HalfInt(1), -1, -1);
    set(q14, "q14", ic, ia, false, HalfInt(1), 0, 0);
    set(p123, "p123", ic, id, false, HalfInt::half(3), -1, 0);
    set(q214, "q214", ic, ib, false, HalfInt::half(3), 0, -1);

    for (auto& row : a.mul) row.fill(-1);
    for (int x = 0; x < count; ++x) {
        a.mul[x][a.basis[x].src] = x; // idempotent indices coincide with basis indices 0..3
        a.mul[a.basis[x].tgt][x] = x;
    }
    // All nonzero products of non-idempotents; every other endpoint-compatible
    // pair dies on p1*q1 = q1*p1 = p2*q2 = q2*p2 = 0.
    a.mul[p1][p2] = p12;
    a.mul[p2][p3] = p23;
    a.mul[p1][p23] = p123;
    a.mul[p12][p3] = p123;
    a.mul[q2][q1] = q21;
    a.mul[q1][q4] = q14;
    a.mul[q2][q14] = q214;
    a.mul[q21][q4] = q214;
    return a;
}

void validate_one(const AlgebraInfo& a) {
    const char* label = a.id == AlgebraId::torus ? "torus" : "tangle";
    auto fail = [&](const std::string& msg) {
        throw DomainError(std::string("algebra table validation failed (") + label + "): " + msg);
    };
    // Idempotents are orthogonal and complete.
    for (int i = 0; i < a.dim; ++i) {
        if (!a.basis[i].idempotent) continue;
        for (int j = 0; j < a.dim; ++j) {
            if (!a.basis[j].idempotent) continue;
            int exp = (i == j) ? i : -1;
            if (a.mul[i][j] != exp) fail("idempotent orthogonality at " + a.basis[i].name + "*" + a.basis[j].name);
        }
    }
    for (int x = 0; x < a.dim; ++x) {
        const auto& b = a.basis[x];
        if (a.mul[x][b.src] != x || a.mul[b.tgt][x] != x)
            fail("idempotent unit law at " + b.name);
    }
    // Endpoint compatibility: nonzero products require source(x) == target(y)
    // and compose endpoints like functions.
    for (int x = 0; x < a.dim; ++x) {
        for (int y = 0; y < a.dim; ++y) {
            int p = a.mul[x][y];
            if (p == -1) continue;
            if (a.basis[x].src != a.basis[y].tgt) fail("product across mismatched idempotents: " + a.basis[x].name + "*" + a.basis[y].name);
            if (a.basis[p].src != a.basis[y].src || a.basis[p].tgt != a.basis[x].tgt)
                fail("product endpoints wrong: " + a.basis[x].name + "*" + a.basis[y].name);
        }
    }
    // Exhaustive associativity over all basis triples.
    for (int x = 0; x < a.dim; ++x)
        for (int y = 0; y < a.dim; ++y)
            for (int z = 0; z < a.dim; ++z) {
                int xy = a.mul[x][y];
                int yz = a.mul[y][z];
                int left = (xy == -1) ? -1 : a.mul[xy][z];
                int right = (yz == -1) ? -1 : a.mul[x][yz];
                if (left != right)
                    fail("associativity: (" + a.basis[x].name + "*" + a.basis[y].name + ")*" + a.basis[z].name);
            }
    // Grading additivity on nonzero products (tangle side only).
    if (a.id == AlgebraId::peculiar_tangle) {
        for (int x = 0; x < a.dim; ++x)
            for (int y = 0; y < a.dim; ++y) {
                int p = a.mul[x][y];
                if (p == -1) continue;
                const DAA &gx = a.basis[x].grading, &gy = a.basis[y].grading, &gp = a.basis[p].grading;
                if (gp.delta != gx.delta + gy.delta || gp.a1 != gx.a1 + gy.a1 || gp.a2 != gx.a2 + gy.a2)
                    fail("grading not additive on " + a.basis[x].name + "*" + a.basis[y].name);
            }
    }
}

const AlgebraInfo& torus_info() {
    static const AlgebraInfo a = build_torus();
    return a;
}

const AlgebraInfo& tangle_info() {
    static const AlgebraInfo a = build_tangle();
    return a;
}

std::once_flag g_validated;

void ensure_validated() {
    std::call_once(g_validated, [] {
        validate_one(torus_info());
        validate_one(tangle_info());
    });
}

} // namespace

const AlgebraInfo& algebra(AlgebraId id) {
    ensure_validated();
    return id == AlgebraId::torus ? torus_info() : tangle_info();
}

void validate_algebra_tables() {
    validate_one(torus_info());
    validate_one(tangle_info());
}

int AlgebraInfo::index_of(const std::string& name) const {
    for (int i = 0; i < dim; ++i)
        if (basis[i].name == name) return i;
    return -1;
}

int AlgebraInfo::idempotent_index(const std::string& name) const {
    for (int i = 0; i < num_idempotents; ++i)
        if (idempotent_names[i] == name) return i;
    return -1;
}

Mask AlgebraInfo::idempotent_bit(int idem) const {
    for (int i = 0; i < dim; ++i)
        if (basis[i].idempotent && basis[i].src == idem) return basis_bit(i);
    throw DomainError("no idempotent with index " + std::to_string(idem));
}

int multiply_basis(AlgebraId id, int x, int y) {
    return algebra(id).mul[x][y];
}

Mask multiply(AlgebraId id, Mask x, Mask y) {
    const auto& a = algebra(id);
    Mask out = 0;
    for (int i = 0; i < a.dim; ++i) {
        if (!(x & basis_bit(i))) continue;
        for (int j = 0; j < a.dim; ++j) {
            if (!(y & basis_bit(j))) continue;
            int p = a.mul[i][j];
            if (p != -1) out ^= basis_bit(p); // F2: parallel summands cancel
        }
    }
    return out;
}

std::pair<int, int> idempotents_of(AlgebraId id, int x) {
    const auto& b = algebra(id).basis.at(x);
    return {b.src, b.tgt};
}

DAA tangle_grading(int basis_index) {
    const auto& a = algebra(AlgebraId::peculiar_tangle);
    if (basis_index < 0 || basis_index >= a.dim)
        throw DomainError("basis index out of range: " + std::to_string(basis_index));
    return a.basis[basis_index].grading;
}

bool mask_is_single_idempotent(AlgebraId id, Mask m) {
    const auto& a = algebra(id);
    if (m == 0 || (m & (m - 1)) != 0) return false; // not exactly one bit
    for (int i = 0; i < a.dim; ++i)
        if (m == basis_bit(i)) return a.basis[i].idempotent;
    return false;
}

std::string mask_to_string(AlgebraId id, Mask m) {
    const auto& a = algebra(id);
    std::string out;
    for (int i = 0; i < a.dim; ++i) {
        if (!(m & basis_bit(i))) continue;
        if (!out.empty()) out += "+";
        out += a.basis[i].name;
    }
    return out.empty() ? "0" : out;
}

int parse_basis_name(AlgebraId id, const std::string& name) {
    int i = algebra(id).index_of(name);
    if (i == -1) throw DomainError("unknown algebra element '" + name + "'");
    return i;
}

} // namespace dtangle
