#include "dtangle/complex.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "dtangle/errors.hpp"

namespace dtangle {

int TypeDComplex::add_generator(std::string name, int idem, std::optional<Grading> grading) {
    gens.push_back(Generator{std::move(name), idem, std::move(grading)});
    return static_cast<int>(gens.size()) - 1;
}

void TypeDComplex::add_arrow(int src, int tgt, Mask label) {
    if (label == 0) return;
    auto key = std::make_pair(src, tgt);
    Mask& slot = arrows[key];
    slot ^= label;
    if (slot == 0) arrows.erase(key);
}

void TypeDComplex::add_arrow_basis(int src, int tgt, int basis_index) {
    add_arrow(src, tgt, basis_bit(basis_index));
}

int TypeDComplex::index_of(const std::string& name) const {
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].name == name) return static_cast<int>(i);
    return -1;
}

Mask TypeDComplex::label(int src, int tgt) const {
    auto it = arrows.find({src, tgt});
    return it == arrows.end() ? Mask{0} : it->second;
}

bool TypeDComplex::graded() const {
    bool any = false;
    for (const auto& g : gens) {
        bool can_carry = (algebra_id != AlgebraId::torus) || g.idem == 0; // torus: only dot generators
        if (!can_carry) continue;
        any = true;
        if (!g.grading) return false;
    }
    return any;
}

std::vector<std::string> validate(const TypeDComplex& c) {
    std::vector<std::string> problems;
    const auto& alg = algebra(c.algebra_id);
    const int n = static_cast<int>(c.gens.size());

    std::set<std::string> names;
    for (const auto& g : c.gens) {
        if (g.name.empty()) problems.push_back("generator with empty name");
        if (!names.insert(g.name).second) problems.push_back("duplicate generator name '" + g.name + "'");
        if (g.idem < 0 || g.idem >= alg.num_idempotents)
            problems.push_back("generator '" + g.name + "' has idempotent index out of range");
    }

    const size_t expected_alex = (c.algebra_id == AlgebraId::torus) ? 1 : 2;
    if (c.algebra_id == AlgebraId::torus) {
        // Gradings live on dot generators only, and on all of them or none.
        int dots = 0, graded_dots = 0;
        for (const auto& g : c.gens) {
            if (g.idem != 0) {
                if (g.grading) problems.push_back("circle generator '" + g.name + "' carries a grading");
                continue;
            }
            ++dots;
            if (g.grading) {
                ++graded_dots;
                if (g.grading->alex.size() != expected_alex)
                    problems.push_back("generator '" + g.name + "' has wrong Alexander arity");
            }
        }
        if (graded_dots != 0 && graded_dots != dots)
            problems.push_back("partially graded complex: " + std::to_string(graded_dots) + " of " +
                               std::to_string(dots) + " dot generators graded");
    } else {
        int graded_count = 0;
        for (const auto& g : c.gens) {
            if (!g.grading) continue;
            ++graded_count;
            if (g.grading->alex.size() != expected_alex)
                problems.push_back("generator '" + g.name + "' has wrong Alexander arity");
        }
        if (graded_count != 0 && graded_count != n)
            problems.push_back("partially graded complex: " + std::to_string(graded_count) + " of " +
                               std::to_string(n) + " generators graded");
    }
    if (!problems.empty()) return problems; // the checks below assume sane structure

    for (const auto& [key, mask] : c.arrows) {
        auto [src, tgt] = key;
        if (src < 0 || src >= n || tgt < 0 || tgt >= n) {
            problems.push_back("arrow endpoint out of range");
            continue;
        }
        if (mask == 0) {
            problems.push_back("empty label on arrow " + c.gens[src].name + " -> " + c.gens[tgt].name);
            continue;
        }
        for (int i = 0; i < alg.dim; ++i) {
            if (!(mask & basis_bit(i))) continue;
            const auto& b = alg.basis[i];
            if (b.src != c.gens[src].idem || b.tgt != c.gens[tgt].idem)
                problems.push_back("label " + b.name + " on arrow " + c.gens[src].name + " -> " +
                                   c.gens[tgt].name + " is incompatible with the endpoint idempotents");
            if (b.idempotent && src == tgt)
                problems.push_back("identity self-loop on generator '" + c.gens[src].name + "'");
            // Tangle-side grading consistency: delta(x) + 1 = delta(xi) + delta(y),
            // A(x) = A(xi) + A(y) componentwise, for every basic summand xi.
            if (c.algebra_id == AlgebraId::peculiar_tangle && c.gens[src].grading && c.gens[tgt].grading) {
                const DAA gx = c.gens[src].grading->as_tangle();
                const DAA gy = c.gens[tgt].grading->as_tangle();
                const DAA& gl = b.grading;
                if (gx.delta + HalfInt(1) != gl.delta + gy.delta || gx.a1 != gl.a1 + gy.a1 || gx.a2 != gl.a2 + gy.a2)
                    problems.push_back("grading inconsistency along arrow " + c.gens[src].name + " -> " +
                                       c.gens[tgt].name + " (summand " + b.name + ")");
            }
        }
    }

    // d^2 = 0: for every (x, z), sum over y of label(y->z) * label(x->y) = 0.
    std::map<std::pair<int, int>, Mask> square;
    for (const auto& [key1, m1] : c.arrows) {
        auto [x, y] = key1;
        for (const auto& [key2, m2] : c.arrows) {
            if (key2.first != y) continue;
            int z = key2.second;
            Mask prod = multiply(c.algebra_id, m2, m1);
            if (prod == 0) continue;
            Mask& slot = square[{x, z}];
            slot ^= prod;
        }
    }
    for (const auto& [key, m] : square)
        if (m != 0)
            problems.push_back("d^2 != 0 from '" + c.gens[key.first].name + "' to '" + c.gens[key.second].name +
                               "': " + mask_to_string(c.algebra_id, m));

    // Local-system payload: keys must be arrows and the rank must be constant
    // on each connected component.
    if (!c.local_dims.empty()) {
        std::vector<int> comp(n, -1);
        {
            std::vector<std::vector<int>> adj(n);
            for (const auto& [key, m] : c.arrows) {
                adj[key.first].push_back(key.second);
                adj[key.second].push_back(key.first);
            }
            int next = 0;
            for (int i = 0; i < n; ++i) {
                if (comp[i] != -1) continue;
                std::vector<int> stack{i};
                comp[i] = next;
                while (!stack.empty()) {
                    int g = stack.back();
                    stack.pop_back();
                    for (int h : adj[g])
                        if (comp[h] == -1) {
                            comp[h] = next;
                            stack.push_back(h);
                        }
                }
                ++next;
            }
        }
        std::map<int, int> comp_dim;
        for (const auto& [key, dim] : c.local_dims) {
            if (!c.arrows.count(key)) {
                problems.push_back("local-system rank attached to a missing arrow");
                continue;
            }
            if (dim < 1) problems.push_back("local-system rank < 1");
            auto [it, fresh] = comp_dim.try_emplace(comp[key.first], dim);
            if (!fresh && it->second != dim)
                problems.push_back("conflicting local-system ranks on one component");
        }
    }

    return problems;
}

void require_valid(const TypeDComplex& c, const std::string& stage) {
    auto problems = validate(c);
    if (problems.empty()) return;
    std::string msg = stage + ": invalid complex:";
    for (size_t i = 0; i < problems.size() && i < 3; ++i) msg += " [" + problems[i] + "]";
    if (problems.size() > 3) msg += " (+" + std::to_string(problems.size() - 3) + " more)";
    throw DomainError(msg);
}

std::vector<TypeDComplex> connected_components(const TypeDComplex& c) {
    const int n = static_cast<int>(c.gens.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (const auto& [key, m] : c.arrows) {
        adj[key.first].push_back(key.second);
        adj[key.second].push_back(key.first);
    }
    int count = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[i] != -1) continue;
        std::vector<int> stack{i};
        comp[i] = count;
        while (!stack.empty()) {
            int g = stack.back();
            stack.pop_back();
            for (int h : adj[g])
                if (comp[h] == -1) {
                    comp[h] = count;
                    stack.push_back(h);
                }
        }
        ++count;
    }
    // Order components by their smallest generator name.
    std::vector<std::string> min_name(count);
    for (int i = 0; i < n; ++i) {
        const std::string& nm = c.gens[i].name;
        if (min_name[comp[i]].empty() || nm < min_name[comp[i]]) min_name[comp[i]] = nm;
    }
    std::vector<int> order(count);
    for (int k = 0; k < count; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return min_name[a] < min_name[b]; });
    std::vector<int> rank(count);
    for (int k = 0; k < count; ++k) rank[order[k]] = k;

    std::vector<TypeDComplex> out(count);
    std::vector<int> new_index(n, -1);
    for (auto& piece : out) piece.algebra_id = c.algebra_id;
    for (int i = 0; i < n; ++i) {
        TypeDComplex& piece = out[rank[comp[i]]];
        new_index[i] = piece.add_generator(c.gens[i].name, c.gens[i].idem, c.gens[i].grading);
    }
    for (const auto& [key, m] : c.arrows)
        out[rank[comp[key.first]]].arrows[{new_index[key.first], new_index[key.second]}] = m;
    for (const auto& [key, dim] : c.local_dims)
        out[rank[comp[key.first]]].local_dims[{new_index[key.first], new_index[key.second]}] = dim;
    return out;
}

TypeDComplex cancel_identity_arrows(const TypeDComplex& c, unsigned order_seed) {
    if (!c.local_dims.empty())
        throw DomainError("cancellation requires local systems to be expanded first");
    const int n = static_cast<int>(c.gens.size());
    auto arrows = c.arrows;
    std::vector<bool> alive(n, true);
    std::mt19937 rng(order_seed);

    for (;;) {
        std::vector<std::pair<int, int>> candidates;
        for (const auto& [key, m] : arrows)
            if (mask_is_single_idempotent(c.algebra_id, m)) candidates.push_back(key);
        if (candidates.empty()) break;

        std::pair<int, int> pick;
        if (order_seed == 0) {
            pick = *std::min_element(candidates.begin(), candidates.end(),
                                     [&](const auto& a, const auto& b) {
                                         return std::tie(c.gens[a.first].name, c.gens[a.second].name) <
                                                std::tie(c.gens[b.first].name, c.gens[b.second].name);
                                     });
        } else {
            pick = candidates[rng() % candidates.size()];
        }
        const auto [u, v] = pick;
        if (u == v)
            throw DomainError("identity self-loop on generator '" + c.gens[u].name + "' cannot be cancelled");

        std::vector<std::pair<int, Mask>> into_v, out_of_u;
        for (const auto& [key, m] : arrows) {
            if (key.second == v && key.first != u) into_v.emplace_back(key.first, m);
            if (key.first == u && key.second != v) out_of_u.emplace_back(key.second, m);
        }
        for (auto it = arrows.begin(); it != arrows.end();) {
            const auto& [s, t] = it->first;
            if (s == u || s == v || t == u || t == v)
                it = arrows.erase(it);
            else
                ++it;
        }
        alive[u] = alive[v] = false;
        // Zig-zag arrows: x -> v (eta) followed back through u -> y (xi)
        // contribute x -> y labeled xi * eta.
        for (const auto& [x, eta] : into_v)
            for (const auto& [y, xi] : out_of_u) {
                Mask prod = multiply(c.algebra_id, xi, eta);
                if (prod == 0) continue;
                auto key = std::make_pair(x, y);
                Mask& slot = arrows[key];
                slot ^= prod;
                if (slot == 0) arrows.erase(key);
            }
    }

    const auto& alg = algebra(c.algebra_id);
    for (const auto& [key, m] : arrows)
        for (int i = 0; i < alg.dim; ++i)
            if (alg.basis[i].idempotent && (m & basis_bit(i)))
                throw DomainError("identity-labeled arrow " + c.gens[key.first].name + " -> " +
                                  c.gens[key.second].name + " is not cancellable");

    TypeDComplex out;
    out.algebra_id = c.algebra_id;
    std::vector<int> new_index(n, -1);
    for (int i = 0; i < n; ++i)
        if (alive[i]) new_index[i] = out.add_generator(c.gens[i].name, c.gens[i].idem, c.gens[i].grading);
    for (const auto& [key, m] : arrows)
        out.arrows[{new_index[key.first], new_index[key.second]}] = m;
    return out;
}

TypeDComplex expand_local_systems(const TypeDComplex& c) {
    if (c.local_dims.empty()) {
        TypeDComplex out = c;
        return out;
    }
    require_valid(c, "local-system expansion");
    const int n = static_cast<int>(c.gens.size());
    std::vector<int> comp(n, -1);
    {
        std::vector<std::vector<int>> adj(n);
        for (const auto& [key, m] : c.arrows) {
            adj[key.first].push_back(key.second);
            adj[key.second].push_back(key.first);
        }
        int next = 0;
        for (int i = 0; i < n; ++i) {
            if (comp[i] != -1) continue;
            std::vector<int> stack{i};
            comp[i] = next;
            while (!stack.empty()) {
                int g = stack.back();
                stack.pop_back();
                for (int h : adj[g])
                    if (comp[h] == -1) {
                        comp[h] = next;
                        stack.push_back(h);
                    }
            }
            ++next;
        }
    }
    std::map<int, int> comp_dim;
    for (const auto& [key, dim] : c.local_dims) comp_dim[comp[key.first]] = dim;

    TypeDComplex out;
    out.algebra_id = c.algebra_id;
    std::vector<std::vector<int>> copies(n);
    std::set<std::string> names;
    for (int i = 0; i < n; ++i) {
        auto it = comp_dim.find(comp[i]);
        const int dim = (it == comp_dim.end()) ? 1 : it->second;
        for (int k = 1; k <= dim; ++k) {
            std::string nm = (dim == 1) ? c.gens[i].name : c.gens[i].name + "~" + std::to_string(k);
            if (!names.insert(nm).second)
                throw DomainError("local-system expansion produced a duplicate generator name '" + nm + "'");
            copies[i].push_back(out.add_generator(std::move(nm), c.gens[i].idem, c.gens[i].grading));
        }
    }
    for (const auto& [key, m] : c.arrows) {
        const auto& src_copies = copies[key.first];
        const auto& tgt_copies = copies[key.second];
        for (size_t k = 0; k < src_copies.size(); ++k) out.arrows[{src_copies[k], tgt_copies[k]}] = m;
    }
    return out;
}

TypeDComplex strip_gradings(TypeDComplex c) {
    for (auto& g : c.gens) g.grading.reset();
    return c;
}

void require_same_shape(const TypeDComplex& piece, const std::vector<int>& order,
                        const TypeDComplex& tmpl, const std::string& what) {
    if (order.size() != tmpl.gens.size() || piece.gens.size() != tmpl.gens.size())
        throw DomainError(what + ": generator count does not match the template");
    std::vector<int> to_tmpl(piece.gens.size(), -1);
    for (size_t i = 0; i < order.size(); ++i) {
        if (order[i] < 0 || order[i] >= static_cast<int>(piece.gens.size()) || to_tmpl[order[i]] != -1)
            throw DomainError(what + ": malformed traversal");
        to_tmpl[order[i]] = static_cast<int>(i);
    }
    for (size_t i = 0; i < piece.gens.size(); ++i) {
        const Generator& g = piece.gens[i];
        const Generator& t = tmpl.gens[to_tmpl[i]];
        if (g.idem != t.idem) throw DomainError(what + ": idempotent mismatch at '" + g.name + "'");
        if (g.grading != t.grading) throw DomainError(what + ": grading mismatch at '" + g.name + "'");
    }
    std::map<std::pair<int, int>, Mask> remapped;
    for (const auto& [key, m] : piece.arrows)
        remapped[{to_tmpl[key.first], to_tmpl[key.second]}] = m;
    if (remapped != tmpl.arrows) throw DomainError(what + ": arrows do not match the template");
}

std::string debug_string(const TypeDComplex& c) {
    const auto& alg = algebra(c.algebra_id);
    std::vector<int> order(c.gens.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return c.gens[a].name < c.gens[b].name; });
    std::string out = (c.algebra_id == AlgebraId::torus) ? "algebra torus\n" : "algebra tangle\n";
    for (int i : order) {
        const auto& g = c.gens[i];
        out += "gen " + g.name + " idem=" + alg.idempotent_names[g.idem];
        if (g.grading) {
            out += " delta=" + g.grading->delta.str();
            for (size_t k = 0; k < g.grading->alex.size(); ++k)
                out += " a" + std::to_string(k + 1) + "=" + g.grading->alex[k].str();
        }
        out += "\n";
    }
    std::vector<std::tuple<std::string, std::string, std::string, int>> lines;
    for (const auto& [key, m] : c.arrows) {
        auto it = c.local_dims.find(key);
        lines.emplace_back(c.gens[key.first].name, c.gens[key.second].name,
                           mask_to_string(c.algebra_id, m), it == c.local_dims.end() ? 1 : it->second);
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& [s, t, l, dim] : lines) {
        out += "arrow " + s + " -> " + t + " : " + l;
        if (dim > 1) out += " dim=" + std::to_string(dim);
        out += "\n";
    }
    return out;
}

} // namespace dtangle
