#include "dtangle/doubling.hpp"

#include <deque>
#include <map>
#include <set>

#include "dtangle/algebra.hpp"
#include "dtangle/errors.hpp"
#include "dtangle/ingest.hpp"

namespace dtangle {

namespace {

DoublingBimodule build_bimodule() {
    using namespace doubling_gen;
    namespace t = torus_alg;
    namespace p = tangle_alg;
    DoublingBimodule m;
    m.names = {"c", "a", "b", "b'", "B", "D", "B'", "D'"};
    m.left_idem = {t::i_dot, t::i_dot, t::i_dot, t::i_dot,
                   t::i_circ, t::i_circ, t::i_circ, t::i_circ};
    m.right_idem = {p::i_c, p::i_a, p::i_b, p::i_b, p::i_b, p::i_d, p::i_b, p::i_d};
    m.actions = {
        {c, t::s1, p::p3, B},
        {b, t::s1, p::i_b, Bp},
        {c, -1, p::q214, b},
        {a, -1, p::q2, bp},
        {D, -1, p::q21, B},
        {Dp, -1, p::q21, Bp},
        {a, t::s3, p::p1, D},
        {bp, t::s3, p::p12, Dp},
        {B, t::s23, p::p12, D},
        {Bp, t::s23, p::p12, Dp},
        {B, t::s2, p::p2, a},
        {Bp, t::s2, p::i_b, bp},
        {c, t::s12, p::p23, a},
        {c, t::s12, p::q14, a},
        {b, t::s12, p::i_b, bp},
        {c, t::s123, p::p123, D},
        {b, t::s123, p::p12, Dp},
        {c, t::s1, p::q4, Dp},
        {Dp, t::s2, p::q1, a},
    };
    return m;
}

void validate_bimodule(const DoublingBimodule& m) {
    const AlgebraInfo& torus = algebra(AlgebraId::torus);
    const AlgebraInfo& tangle = algebra(AlgebraId::peculiar_tangle);
    std::set<std::string> names(m.names.begin(), m.names.end());
    if (static_cast<int>(names.size()) != doubling_gen::count)
        throw DomainError("doubling bimodule: duplicate generator names");
    for (int i = 0; i < doubling_gen::count; ++i) {
        if (m.left_idem[i] < 0 || m.left_idem[i] >= torus.num_idempotents)
            throw DomainError("doubling bimodule: bad left idempotent");
        if (m.right_idem[i] < 0 || m.right_idem[i] >= tangle.num_idempotents)
            throw DomainError("doubling bimodule: bad right idempotent");
    }
    std::set<std::tuple<int, int, int, int>> dedup;
    for (const BimoduleAction& act : m.actions) {
        if (act.src < 0 || act.src >= doubling_gen::count || act.tgt < 0 ||
            act.tgt >= doubling_gen::count)
            throw DomainError("doubling bimodule: action endpoint out of range");
        if (!dedup.insert({act.src, act.input, act.output, act.tgt}).second)
            throw DomainError("doubling bimodule: duplicate action");
        if (act.input == -1) {
            if (m.left_idem[act.src] != m.left_idem[act.tgt])
                throw DomainError("doubling bimodule: input-free action changes the left idempotent");
        } else {
            if (act.input < 0 || act.input >= torus.dim || torus.basis[act.input].idempotent)
                throw DomainError("doubling bimodule: bad action input");
            if (torus.basis[act.input].src != m.left_idem[act.src] ||
                torus.basis[act.input].tgt != m.left_idem[act.tgt])
                throw DomainError("doubling bimodule: action input incompatible with left idempotents");
        }
        if (act.output < 0 || act.output >= tangle.dim)
            throw DomainError("doubling bimodule: bad action output");
        if (tangle.basis[act.output].src != m.right_idem[act.src] ||
            tangle.basis[act.output].tgt != m.right_idem[act.tgt])
            throw DomainError("doubling bimodule: action output incompatible with right idempotents");
    }
}

} // namespace

const DoublingBimodule& doubling_bimodule() {
    static const DoublingBimodule table = [] {
        DoublingBimodule m = build_bimodule();
        validate_bimodule(m);
        return m;
    }();
    return table;
}

BoxProduct box_tensor(const TypeDComplex& cfd) {
    if (cfd.algebra_id != AlgebraId::torus)
        throw DomainError("box tensor expects a torus-side complex");
    BoxProduct box;
    box.source = expand_local_systems(cfd);
    require_valid(box.source, "box tensor input");
    const AlgebraInfo& torus = algebra(AlgebraId::torus);
    for (const auto& [key, mask] : box.source.arrows)
        for (int bit = 0; bit < torus.dim; ++bit)
            if (((mask >> bit) & 1) && torus.basis[bit].idempotent)
                throw DomainError("box tensor input must be reduced: identity-labeled arrow " +
                                  box.source.gens[key.first].name + " -> " +
                                  box.source.gens[key.second].name);

    const DoublingBimodule& bm = doubling_bimodule();
    box.complex.algebra_id = AlgebraId::peculiar_tangle;
    const int ngen = static_cast<int>(box.source.gens.size());
    std::vector<std::array<int, doubling_gen::count>> pair_index(ngen);
    for (int x = 0; x < ngen; ++x) {
        pair_index[x].fill(-1);
        for (int m = 0; m < doubling_gen::count; ++m) {
            if (bm.left_idem[m] != box.source.gens[x].idem) continue;
            pair_index[x][m] = box.complex.add_generator(
                box.source.gens[x].name + "⊗" + bm.names[m], bm.right_idem[m]);
            box.origin.push_back({x, m});
        }
    }
    // Input-free actions fire once per matching source generator.
    for (int x = 0; x < ngen; ++x)
        for (const BimoduleAction& act : bm.actions)
            if (act.input == -1 && pair_index[x][act.src] != -1)
                box.complex.add_arrow_basis(pair_index[x][act.src], pair_index[x][act.tgt],
                                            act.output);
    // Each source arrow summand feeds every action consuming it.
    for (const auto& [key, mask] : box.source.arrows)
        for (int bit = 0; bit < torus.dim; ++bit) {
            if (!((mask >> bit) & 1)) continue;
            for (const BimoduleAction& act : bm.actions)
                if (act.input == bit)
                    box.complex.add_arrow_basis(pair_index[key.first][act.src],
                                                pair_index[key.second][act.tgt], act.output);
        }
    require_valid(box.complex, "box tensor output");
    return box;
}

void seed_and_propagate_gradings(BoxProduct& box) {
    if (!box.source.graded())
        throw DomainError("cannot seed gradings from an ungraded source");
    TypeDComplex& c = box.complex;
    const int n = static_cast<int>(c.gens.size());
    const AlgebraInfo& tangle = algebra(AlgebraId::peculiar_tangle);

    std::vector<std::optional<DAA>> g(n);
    std::deque<int> queue;
    for (int i = 0; i < n; ++i) {
        auto [sx, bg] = box.origin[i];
        if (bg != doubling_gen::a && bg != doubling_gen::c) continue;
        const DA da = box.source.gens[sx].grading->as_knot();
        const HalfInt two_n = da.alex + da.alex;
        g[i] = DAA{(bg == doubling_gen::a) ? da.delta + da.alex : da.delta - da.alex,
                   two_n, two_n};
        queue.push_back(i);
    }
    if (queue.empty()) throw DomainError("no grading seeds: source has no dot generators");

    std::vector<std::vector<std::pair<int, int>>> incident(n);
    for (const auto& [key, mask] : c.arrows) {
        incident[key.first].push_back(key);
        if (key.second != key.first) incident[key.second].push_back(key);
    }
    auto first_summand = [&](Mask mask) {
        for (int bit = 0; bit < tangle.dim; ++bit)
            if ((mask >> bit) & 1) return bit;
        return -1;
    };
    while (!queue.empty()) {
        const int w = queue.front();
        queue.pop_front();
        for (const auto& key : incident[w]) {
            const DAA gl = tangle_grading(first_summand(c.arrows.at(key)));
            if (key.first == w && !g[key.second]) {
                g[key.second] = DAA{g[w]->delta + HalfInt(1) - gl.delta, g[w]->a1 - gl.a1,
                                    g[w]->a2 - gl.a2};
                queue.push_back(key.second);
            }
            if (key.second == w && !g[key.first]) {
                g[key.first] = DAA{gl.delta + g[w]->delta - HalfInt(1), gl.a1 + g[w]->a1,
                                   gl.a2 + g[w]->a2};
                queue.push_back(key.first);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        if (!g[i])
            throw DomainError("grading propagation cannot reach generator '" + c.gens[i].name + "'");
    // Every summand of every arrow must agree with the propagated values.
    for (const auto& [key, mask] : c.arrows)
        for (int bit = 0; bit < tangle.dim; ++bit) {
            if (!((mask >> bit) & 1)) continue;
            const DAA gl = tangle_grading(bit);
            const DAA& gu = *g[key.first];
            const DAA& gv = *g[key.second];
            if (gu.delta + HalfInt(1) != gl.delta + gv.delta || gu.a1 != gl.a1 + gv.a1 ||
                gu.a2 != gl.a2 + gv.a2)
                throw DomainError("inconsistent input gradings at arrow " +
                                  c.gens[key.first].name + " -> " + c.gens[key.second].name +
                                  " (summand " + tangle.basis[bit].name + ")");
        }
    for (int i = 0; i < n; ++i) c.gens[i].grading = Grading::tangle(*g[i]);
    require_valid(c, "regraded box tensor");
}

Multicurve double_via_oracle(const KnotInput& input) {
    if (input.tier != InputTier::cfd)
        throw DomainError("oracle doubling requires a cfd-tier input");
    BoxProduct box = box_tensor(input.cfd);
    const bool graded = box.source.graded();
    if (graded) seed_and_propagate_gradings(box);

    TypeDComplex reduced = cancel_identity_arrows(box.complex);
    require_valid(reduced, "reduced box tensor");

    int dots = 0;
    for (const Generator& gen : box.source.gens)
        if (gen.idem == torus_alg::i_dot) ++dots;
    std::vector<TypeDComplex> pieces = connected_components(reduced);
    if (static_cast<int>(pieces.size()) != dots)
        throw VerificationFailure("oracle produced " + std::to_string(pieces.size()) +
                                  " components for a rank-" + std::to_string(dots) + " input");

    Multicurve mc;
    mc.graded = graded;
    for (const TypeDComplex& piece : pieces) {
        TangleCurve curve = recognize(piece);
        if (curve.shift && curve.shift->a1 != curve.shift->a2)
            throw VerificationFailure("oracle produced an off-diagonal shift: " +
                                      render_curve(curve));
        mc.components.push_back(curve);
    }
    sort_multicurve(mc);
    validate_multicurve(mc);
    return mc;
}

TypeDComplex pairing_fixture(int parameter) {
    TypeDComplex c;
    c.algebra_id = AlgebraId::torus;
    using namespace torus_alg;
    if (parameter == 0) {
        int x = c.add_generator("x", i_dot);
        c.add_arrow_basis(x, x, s12);
    } else if (parameter == 1) {
        int x = c.add_generator("x", i_dot);
        int y = c.add_generator("y", i_circ);
        c.add_arrow_basis(x, y, s123);
        c.add_arrow_basis(y, x, s2);
    } else if (parameter == -2) {
        int x = c.add_generator("x", i_dot);
        int y1 = c.add_generator("y1", i_circ);
        int y2 = c.add_generator("y2", i_circ);
        c.add_arrow_basis(x, y1, s1);
        c.add_arrow_basis(x, y2, s3);
        c.add_arrow_basis(y2, y1, s23);
    } else {
        throw DomainError("no pairing fixture with parameter " + std::to_string(parameter));
    }
    require_valid(c, "pairing fixture");
    return c;
}

} // namespace dtangle
