#include "dtangle/ingest.hpp"

#include <algorithm>
#include <cstdint>

#include <json.hpp>

#include "dtangle/errors.hpp"

namespace dtangle {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw DomainError(what + ": unknown key '" + it.key() + "'");
    }
}

const json& require_field(const json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) throw DomainError(what + ": missing key '" + key + "'");
    return *it;
}

std::string require_string(const json& j, const char* key, const std::string& what) {
    const json& f = require_field(j, key, what);
    if (!f.is_string()) throw DomainError(what + ": key '" + key + "' must be a string");
    return f.get<std::string>();
}

long long require_int(const json& j, const char* key, const std::string& what, long long lo, long long hi) {
    const json& f = require_field(j, key, what);
    if (!f.is_number_integer()) throw DomainError(what + ": key '" + key + "' must be an integer");
    long long v = f.get<long long>();
    if (v < lo || v > hi)
        throw DomainError(what + ": key '" + key + "' out of range [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
    return v;
}

// Parses the optional local-system payload of one arrow: "dim" is the rank,
// "matrix" must be square, 0/1, invertible over F2, and agree with "dim".
int parse_local_system(const json& arrow, const std::string& what) {
    int dim = 1;
    bool have_dim = false;
    if (arrow.contains("dim")) {
        dim = static_cast<int>(require_int(arrow, "dim", what, 1, 16));
        have_dim = true;
    }
    if (arrow.contains("matrix")) {
        const json& m = arrow.at("matrix");
        if (!m.is_array() || m.empty() || m.size() > 16)
            throw DomainError(what + ": 'matrix' must be a nonempty array of at most 16 rows");
        const int n = static_cast<int>(m.size());
        std::vector<std::uint32_t> rows(n, 0);
        for (int i = 0; i < n; ++i) {
            if (!m[i].is_array() || static_cast<int>(m[i].size()) != n)
                throw DomainError(what + ": 'matrix' must be square");
            for (int j = 0; j < n; ++j) {
                if (!m[i][j].is_number_integer() || (m[i][j] != 0 && m[i][j] != 1))
                    throw DomainError(what + ": 'matrix' entries must be 0 or 1");
                if (m[i][j] == 1) rows[i] |= (1u << j);
            }
        }
        // Gaussian elimination over F2; a missing pivot means singular.
        std::vector<std::uint32_t> work = rows;
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int r = col; r < n; ++r)
                if (work[r] & (1u << col)) {
                    pivot = r;
                    break;
                }
            if (pivot == -1) throw DomainError(what + ": 'matrix' is not invertible over F2");
            std::swap(work[col], work[pivot]);
            for (int r = 0; r < n; ++r)
                if (r != col && (work[r] & (1u << col))) work[r] ^= work[col];
        }
        if (have_dim && dim != n)
            throw DomainError(what + ": 'dim' disagrees with the matrix size");
        dim = n;
    }
    return dim;
}

TypeDComplex parse_cfd_payload(const json& j, const std::string& name) {
    TypeDComplex c;
    c.algebra_id = AlgebraId::torus;
    const auto& alg = algebra(AlgebraId::torus);
    const json& gens = require_field(j, "generators", "input '" + name + "'");
    if (!gens.is_array()) throw DomainError("input '" + name + "': 'generators' must be an array");
    for (const json& g : gens) {
        const std::string what = "input '" + name + "' generator";
        if (!g.is_object()) throw DomainError(what + ": must be an object");
        check_keys(g, {"id", "idem", "delta", "alex"}, what);
        std::string id = require_string(g, "id", what);
        std::string idem_name = require_string(g, "idem", what);
        int idem = alg.idempotent_index(idem_name);
        if (idem == -1) throw DomainError(what + " '" + id + "': unknown idempotent '" + idem_name + "'");
        if (c.index_of(id) != -1) throw DomainError(what + " '" + id + "': duplicate id");
        const bool has_delta = g.contains("delta"), has_alex = g.contains("alex");
        if (has_delta != has_alex)
            throw DomainError(what + " '" + id + "': 'delta' and 'alex' must appear together");
        std::optional<Grading> grading;
        if (has_delta) {
            if (idem != 0)
                throw DomainError(what + " '" + id + "': circle generators carry no grading");
            grading = Grading::knot(DA{parse_half_int(require_string(g, "delta", what)),
                                       parse_half_int(require_string(g, "alex", what))});
        }
        c.add_generator(id, idem, grading);
    }
    const json& arrows = require_field(j, "arrows", "input '" + name + "'");
    if (!arrows.is_array()) throw DomainError("input '" + name + "': 'arrows' must be an array");
    for (const json& a : arrows) {
        if (!a.is_object()) throw DomainError("input '" + name + "': arrow must be an object");
        std::string from = require_string(a, "from", "input '" + name + "' arrow");
        std::string to = require_string(a, "to", "input '" + name + "' arrow");
        const std::string what = "input '" + name + "' arrow " + from + " -> " + to;
        check_keys(a, {"from", "to", "labels", "dim", "matrix"}, what);
        int src = c.index_of(from), tgt = c.index_of(to);
        if (src == -1) throw DomainError(what + ": unknown generator '" + from + "'");
        if (tgt == -1) throw DomainError(what + ": unknown generator '" + to + "'");
        const json& labels = require_field(a, "labels", what);
        if (!labels.is_array() || labels.empty())
            throw DomainError(what + ": 'labels' must be a nonempty array");
        Mask mask = 0;
        for (const json& l : labels) {
            if (!l.is_string()) throw DomainError(what + ": labels must be strings");
            mask ^= basis_bit(parse_basis_name(AlgebraId::torus, l.get<std::string>()));
        }
        c.add_arrow(src, tgt, mask);
        int dim = parse_local_system(a, what);
        if (dim > 1) {
            auto [it, fresh] = c.local_dims.try_emplace({src, tgt}, dim);
            if (!fresh && it->second != dim)
                throw DomainError(what + ": conflicting local-system ranks");
        }
    }
    for (const auto& [key, dim] : c.local_dims)
        if (!c.arrows.count(key))
            throw DomainError("input '" + name + "': local system attached to an arrow whose labels cancel");
    require_valid(c, "input '" + name + "'");
    return c;
}

SegmentDecomposition parse_segments_payload(const json& j, const std::string& name) {
    SegmentDecomposition dec;
    const json& segs = require_field(j, "segments", "input '" + name + "'");
    if (!segs.is_array() || segs.empty())
        throw DomainError("input '" + name + "': 'segments' must be a nonempty array");
    bool first = true;
    for (const json& s : segs) {
        const std::string what = "input '" + name + "' segment";
        if (!s.is_object()) throw DomainError(what + ": must be an object");
        check_keys(s, {"kind", "param", "delta", "alex"}, what);
        std::string kind_str = require_string(s, "kind", what);
        SegmentKind kind;
        if (kind_str == "u")
            kind = SegmentKind::u;
        else if (kind_str == "v")
            kind = SegmentKind::v;
        else if (kind_str == "d")
            kind = SegmentKind::d;
        else
            throw DomainError(what + ": unknown kind '" + kind_str + "'");
        int param = static_cast<int>(require_int(s, "param", what, -2000, 2000));
        const bool has_delta = s.contains("delta"), has_alex = s.contains("alex");
        if (has_delta != has_alex)
            throw DomainError(what + ": 'delta' and 'alex' must appear together");
        if (first)
            dec.graded = has_delta;
        else if (dec.graded != has_delta)
            throw DomainError("input '" + name + "': mixed graded and ungraded segments");
        first = false;
        std::optional<DA> shift;
        if (has_delta) {
            DA da{parse_half_int(require_string(s, "delta", what)),
                  parse_half_int(require_string(s, "alex", what))};
            if (kind == SegmentKind::d) {
                if (da.delta != HalfInt(0) || da.alex != HalfInt(0))
                    throw DomainError(what + ": d segments require delta = alex = \"0\"");
            } else {
                shift = da;
            }
        }
        dec.segments.push_back(CurveSegment{kind, param, shift});
    }
    validate_decomposition(dec);
    return dec;
}

HfkMinusData parse_hfk_payload(const json& j, const std::string& name) {
    HfkMinusData h;
    const std::string what = "input '" + name + "'";
    h.tau = static_cast<int>(require_int(j, "tau", what, -1000, 1000));
    const json& torsion = require_field(j, "torsion", what);
    if (!torsion.is_array()) throw DomainError(what + ": 'torsion' must be an array");
    for (const json& t : torsion) {
        if (!t.is_number_integer() || t.get<long long>() < 1 || t.get<long long>() > 1000)
            throw DomainError(what + ": torsion orders must be integers in [1, 1000]");
        h.torsion.push_back(t.get<int>());
    }
    return h;
}

json complex_to_json(const TypeDComplex& c) {
    const auto& alg = algebra(c.algebra_id);
    json gens = json::array();
    for (const Generator& g : c.gens) {
        json jg;
        jg["id"] = g.name;
        jg["idem"] = alg.idempotent_names[g.idem];
        if (g.grading) {
            jg["delta"] = g.grading->delta.str();
            if (g.grading->alex.size() == 1) {
                jg["alex"] = g.grading->alex[0].str();
            } else {
                jg["alex1"] = g.grading->alex[0].str();
                jg["alex2"] = g.grading->alex[1].str();
            }
        }
        gens.push_back(std::move(jg));
    }
    json arrows = json::array();
    for (const auto& [key, m] : c.arrows) {
        json ja;
        ja["from"] = c.gens[key.first].name;
        ja["to"] = c.gens[key.second].name;
        json labels = json::array();
        for (int b = 0; b < alg.dim; ++b)
            if (m & basis_bit(b)) labels.push_back(alg.basis[b].name);
        ja["labels"] = std::move(labels);
        if (auto it = c.local_dims.find(key); it != c.local_dims.end()) ja["dim"] = it->second;
        arrows.push_back(std::move(ja));
    }
    json out;
    out["generators"] = std::move(gens);
    out["arrows"] = std::move(arrows);
    return out;
}

} // namespace

const char* tier_name(InputTier tier) {
    switch (tier) {
        case InputTier::cfd: return "cfd";
        case InputTier::segments: return "segments";
        case InputTier::hfk_minus: return "hfk_minus";
    }
    return "?";
}

bool operator==(const KnotInput& a, const KnotInput& b) {
    return a.name == b.name && a.tier == b.tier && a.cfd == b.cfd &&
           a.decomposition == b.decomposition && a.hfk == b.hfk;
}

KnotInput parse_knot_input(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("syntax error: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("input document must be a JSON object");
    KnotInput k;
    k.name = require_string(j, "name", "input document");
    std::string tier = require_string(j, "tier", "input '" + k.name + "'");
    if (tier == "cfd") {
        k.tier = InputTier::cfd;
        check_keys(j, {"name", "tier", "generators", "arrows"}, "input '" + k.name + "'");
        k.cfd = parse_cfd_payload(j, k.name);
    } else if (tier == "segments") {
        k.tier = InputTier::segments;
        check_keys(j, {"name", "tier", "segments"}, "input '" + k.name + "'");
        k.decomposition = parse_segments_payload(j, k.name);
    } else if (tier == "hfk_minus") {
        k.tier = InputTier::hfk_minus;
        check_keys(j, {"name", "tier", "tau", "torsion"}, "input '" + k.name + "'");
        k.hfk = parse_hfk_payload(j, k.name);
    } else {
        throw DomainError("input '" + k.name + "': unknown tier '" + tier + "'");
    }
    return k;
}

std::string render_knot_input(const KnotInput& input) {
    json out;
    out["name"] = input.name;
    out["tier"] = tier_name(input.tier);
    switch (input.tier) {
        case InputTier::cfd: {
            json payload = complex_to_json(input.cfd);
            out["generators"] = std::move(payload["generators"]);
            out["arrows"] = std::move(payload["arrows"]);
            break;
        }
        case InputTier::segments: {
            json segs = json::array();
            for (const CurveSegment& s : input.decomposition.segments) {
                json js;
                js["kind"] = (s.kind == SegmentKind::u) ? "u" : (s.kind == SegmentKind::v) ? "v" : "d";
                js["param"] = s.param;
                if (input.decomposition.graded) {
                    DA shift = s.shift.value_or(DA{}); // d segments sit at shift zero
                    js["delta"] = shift.delta.str();
                    js["alex"] = shift.alex.str();
                }
                segs.push_back(std::move(js));
            }
            out["segments"] = std::move(segs);
            break;
        }
        case InputTier::hfk_minus:
            out["tau"] = input.hfk.tau;
            out["torsion"] = input.hfk.torsion;
            break;
    }
    return out.dump(2) + "\n";
}

KnotInput builtin_knot(const std::string& name) {
    if (name == "unknot") {
        KnotInput k;
        k.name = "unknot";
        k.tier = InputTier::cfd;
        k.cfd.algebra_id = AlgebraId::torus;
        int x = k.cfd.add_generator("x1", 0, Grading::knot(DA{HalfInt(0), HalfInt(0)}));
        k.cfd.add_arrow_basis(x, x, torus_alg::s12);
        return k;
    }
    if (name == "trefoil") {
        using namespace torus_alg;
        KnotInput k;
        k.name = "trefoil";
        k.tier = InputTier::cfd;
        k.cfd.algebra_id = AlgebraId::torus;
        auto dot = [&](const char* id, int delta, int alex) {
            return k.cfd.add_generator(id, 0, Grading::knot(DA{HalfInt(delta), HalfInt(alex)}));
        };
        auto circ = [&](const char* id) { return k.cfd.add_generator(id, 1, std::nullopt); };
        int x1 = dot("x1", 1, 1), x3 = dot("x3", 1, 0), x5 = dot("x5", 1, -1);
        int c1 = circ("c1"), c2 = circ("c2"), c3 = circ("c3"), c4 = circ("c4");
        k.cfd.add_arrow_basis(x1, c1, s1);
        k.cfd.add_arrow_basis(c2, x1, s2);
        k.cfd.add_arrow_basis(x3, c2, s3);
        k.cfd.add_arrow_basis(x3, c3, s1);
        k.cfd.add_arrow_basis(x5, c3, s123);
        k.cfd.add_arrow_basis(x5, c4, s3);
        k.cfd.add_arrow_basis(c4, c1, s23);
        return k;
    }
    if (name == "figure8") {
        KnotInput k;
        k.name = "figure8";
        k.tier = InputTier::segments;
        k.decomposition.graded = true;
        auto uv = [&](SegmentKind kind, int l, int d2, int a2) {
            k.decomposition.segments.push_back(
                CurveSegment{kind, l, DA{HalfInt::half(d2), HalfInt::half(a2)}});
        };
        k.decomposition.segments.push_back(CurveSegment{SegmentKind::d, 0, std::nullopt});
        uv(SegmentKind::u, 1, 1, -1);
        uv(SegmentKind::u, 1, 1, 1);
        uv(SegmentKind::v, 1, 1, -1);
        uv(SegmentKind::v, 1, 1, 1);
        return k;
    }
    if (name == "torus_3_4") {
        KnotInput k;
        k.name = "torus_3_4";
        k.tier = InputTier::segments;
        k.decomposition.graded = true;
        auto uv = [&](SegmentKind kind, int l, int d2, int a2) {
            k.decomposition.segments.push_back(
                CurveSegment{kind, l, DA{HalfInt::half(d2), HalfInt::half(a2)}});
        };
        k.decomposition.segments.push_back(CurveSegment{SegmentKind::d, 6, std::nullopt});
        uv(SegmentKind::u, 1, 7, 5);
        uv(SegmentKind::u, 2, 6, -2);
        uv(SegmentKind::v, 1, 7, -5);
        uv(SegmentKind::v, 2, 6, 2);
        return k;
    }
    throw DomainError("unknown built-in knot '" + name + "' (available: unknot, trefoil, figure8, torus_3_4)");
}

std::vector<std::string> builtin_knot_names() { return {"unknot", "trefoil", "figure8", "torus_3_4"}; }

KnotInput make_ungraded(KnotInput input) {
    switch (input.tier) {
        case InputTier::cfd:
            input.cfd = strip_gradings(std::move(input.cfd));
            break;
        case InputTier::segments:
            for (CurveSegment& s : input.decomposition.segments) s.shift.reset();
            input.decomposition.graded = false;
            break;
        case InputTier::hfk_minus:
            break;
    }
    return input;
}

std::string render_complex_json(const TypeDComplex& c) {
    json out = complex_to_json(c);
    out["algebra"] = (c.algebra_id == AlgebraId::torus) ? "torus" : "tangle";
    return out.dump(2) + "\n";
}

} // namespace dtangle
