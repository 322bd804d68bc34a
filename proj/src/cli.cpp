#include "dtangle/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtangle/analysis.hpp"
#include "dtangle/curves.hpp"
#include "dtangle/doubling.hpp"
#include "dtangle/errors.hpp"
#include "dtangle/ingest.hpp"
#include "dtangle/segments.hpp"

namespace dtangle {

namespace {

using nlohmann::json;

// Error-stream reasons are single lines; fold any embedded newlines.
std::string one_line(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '\n') {
            if (!out.empty() && out.back() != ' ') out += "; ";
        } else {
            out += ch;
        }
    }
    while (!out.empty() && (out.back() == ' ' || out.back() == ';')) out.pop_back();
    return out;
}

KnotInput load_input(const std::string& knot, const std::string& file, bool ungraded) {
    if (knot.empty() == file.empty())
        throw UsageError("provide exactly one of --knot or --file");
    KnotInput in;
    if (!knot.empty()) {
        in = builtin_knot(knot);
    } else {
        std::ifstream stream(file);
        if (!stream) throw DomainError("cannot read file: " + file);
        std::ostringstream text;
        text << stream.rdbuf();
        in = parse_knot_input(text.str());
        if (in.name.empty()) in.name = file;
    }
    if (ungraded) in = make_ungraded(std::move(in));
    return in;
}

Multicurve compute_double(const KnotInput& in) {
    if (in.tier == InputTier::cfd) {
        // cfd inputs admit both routes; cross-check them automatically.
        VerifyVerdict v = verify_main_theorem(in);
        if (!v.equal)
            throw VerificationFailure("doubling routes disagree for '" + in.name + "': " +
                                      one_line(v.diff));
        return v.fast;
    }
    return fast_double(decompose(in));
}

const char* kind_str(CurveKind k) {
    switch (k) {
        case CurveKind::r: return "r";
        case CurveKind::s: return "s";
        case CurveKind::sbar: return "sbar";
    }
    return "?";
}

json curves_json(const Multicurve& mc) {
    json arr = json::array();
    for (const TangleCurve& c : mc.components) {
        json j;
        j["kind"] = kind_str(c.kind);
        j["param"] = c.param;
        if (c.shift) {
            j["delta"] = c.shift->delta.str();
            j["alex1"] = c.shift->a1.str();
            j["alex2"] = c.shift->a2.str();
        }
        arr.push_back(j);
    }
    return arr;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"multicurve invariants of doubled tangles"};
    app.require_subcommand(1);

    struct InputOpts {
        std::string knot, file;
        bool ungraded = false;
    };
    std::map<std::string, InputOpts> inputs;
    std::map<std::string, std::string> formats;
    auto add_input_opts = [&](CLI::App* cmd) {
        InputOpts& o = inputs[cmd->get_name()];
        cmd->add_option("--knot", o.knot, "builtin input name (see selftest for the list)");
        cmd->add_option("--file", o.file, "path to a JSON input document");
        cmd->add_flag("--ungraded", o.ungraded, "strip gradings before computing");
    };
    auto add_format_opt = [&](CLI::App* cmd) {
        std::string& f = formats[cmd->get_name()];
        f = "text";
        cmd->add_option("--format", f, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* cmd_double = app.add_subcommand("double", "multicurve of the doubled tangle");
    add_input_opts(cmd_double);
    add_format_opt(cmd_double);

    CLI::App* cmd_segments = app.add_subcommand("segments", "segment decomposition of the companion");
    add_input_opts(cmd_segments);
    add_format_opt(cmd_segments);

    CLI::App* cmd_verify = app.add_subcommand("verify", "compare the fast and oracle doubling routes");
    add_input_opts(cmd_verify);
    add_format_opt(cmd_verify);

    CLI::App* cmd_pair = app.add_subcommand("pair", "pairing dimension of two curves");
    std::string pair_left, pair_right, pair_theory = "hf";
    cmd_pair->add_option("--left", pair_left, "curve descriptor, e.g. r7 or s2")->required();
    cmd_pair->add_option("--right", pair_right, "curve descriptor, e.g. r4 or sbar2")->required();
    cmd_pair->add_option("--theory", pair_theory, "pairing theory")
        ->check(CLI::IsMember({"hf", "kh"}));
    add_format_opt(cmd_pair);

    CLI::App* cmd_cable = app.add_subcommand("cable", "(2,2t+1)-cable dimension with bounds");
    add_input_opts(cmd_cable);
    add_format_opt(cmd_cable);
    int cable_t = 0, cable_d = 0, cable_lmax = 0, cable_tau = 0;
    cmd_cable->add_option("--t", cable_t, "cable parameter t")
        ->required()
        ->check(CLI::Range(-1000000, 1000000));
    CLI::Option* opt_d = cmd_cable->add_option("--d", cable_d, "override the companion dimension used for bounds");
    CLI::Option* opt_lmax = cmd_cable->add_option("--lmax", cable_lmax, "override the torsion bound used for bounds");
    CLI::Option* opt_tau = cmd_cable->add_option("--tau", cable_tau, "override tau used for bounds");

    CLI::App* cmd_kh = app.add_subcommand("kh-bound", "Khovanov-side cable lower bound");
    int kh_d = 0, kh_theta2 = 0, kh_t = 0;
    cmd_kh->add_option("--d", kh_d, "reduced Khovanov dimension of the companion")->required();
    cmd_kh->add_option("--theta2", kh_theta2, "companion theta_2 invariant")->required();
    cmd_kh->add_option("--t", kh_t, "cable parameter t")
        ->required()
        ->check(CLI::Range(-1000000, 1000000));
    add_format_opt(cmd_kh);

    CLI::App* cmd_selftest = app.add_subcommand("selftest", "run built-in fixtures and examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(cmd_double)) {
            const InputOpts& o = inputs["double"];
            KnotInput in = load_input(o.knot, o.file, o.ungraded);
            Multicurve mc = compute_double(in);
            if (formats["double"] == "json") {
                json j;
                j["name"] = in.name;
                j["curves"] = curves_json(mc);
                out << j.dump(2) << "\n";
            } else {
                out << render_multicurve(mc);
            }
        } else if (app.got_subcommand(cmd_segments)) {
            const InputOpts& o = inputs["segments"];
            KnotInput in = load_input(o.knot, o.file, o.ungraded);
            SegmentDecomposition dec = decompose(in);
            if (formats["segments"] == "json") {
                KnotInput doc;
                doc.name = in.name;
                doc.tier = InputTier::segments;
                doc.decomposition = dec;
                out << render_knot_input(doc);
            } else {
                out << render_decomposition(dec);
            }
        } else if (app.got_subcommand(cmd_verify)) {
            const InputOpts& o = inputs["verify"];
            KnotInput in = load_input(o.knot, o.file, o.ungraded);
            VerifyVerdict v = verify_main_theorem(in);
            if (formats["verify"] == "json") {
                json j;
                j["name"] = in.name;
                j["equal"] = v.equal;
                j["fast"] = curves_json(v.fast);
                j["oracle"] = curves_json(v.oracle);
                out << j.dump(2) << "\n";
            } else {
                out << (v.equal ? std::string("equal\n") : v.diff);
            }
            if (!v.equal) {
                err << "verification failure: doubling routes disagree for '" << in.name << "'\n";
                return 3;
            }
        } else if (app.got_subcommand(cmd_pair)) {
            Theory theory = (pair_theory == "kh") ? Theory::Kh : Theory::HF;
            long long dim = floer_dim(theory, parse_curve_descriptor(pair_left),
                                      parse_curve_descriptor(pair_right));
            if (formats["pair"] == "json") {
                json j;
                j["dim"] = dim;
                out << j.dump(2) << "\n";
            } else {
                out << "dim=" << dim << "\n";
            }
        } else if (app.got_subcommand(cmd_cable)) {
            const InputOpts& o = inputs["cable"];
            KnotInput in = load_input(o.knot, o.file, o.ungraded);
            SegmentDecomposition dec = decompose(in);
            const long long dim = cable_hfk_dim(dec, cable_t);
            cable_segment_counts(dec, cable_t); // cross-checks the per-segment total
            int d = static_cast<int>(dec.segments.size());
            int lmax = 1;
            for (const CurveSegment& seg : dec.segments)
                if (seg.kind == SegmentKind::u) lmax = std::max(lmax, seg.param);
            const bool overridden = opt_d->count() || opt_lmax->count() || opt_tau->count();
            auto [lower, upper] = cable_bounds(opt_d->count() ? cable_d : d,
                                               opt_lmax->count() ? cable_lmax : lmax,
                                               opt_tau->count() ? cable_tau : tau_of(dec),
                                               cable_t);
            if (!overridden && (dim < lower || dim > upper))
                throw VerificationFailure("cable dimension " + std::to_string(dim) +
                                          " falls outside [" + std::to_string(lower) + ", " +
                                          std::to_string(upper) + "]");
            if (formats["cable"] == "json") {
                json j;
                j["dim"] = dim;
                j["lower"] = lower;
                j["upper"] = upper;
                out << j.dump(2) << "\n";
            } else {
                out << "dim=" << dim << " lower=" << lower << " upper=" << upper << "\n";
            }
        } else if (app.got_subcommand(cmd_kh)) {
            const long long bound = khovanov_cable_lower_bound(kh_d, kh_theta2, kh_t);
            if (formats["kh-bound"] == "json") {
                json j;
                j["bound"] = bound;
                out << j.dump(2) << "\n";
            } else {
                out << "bound=" << bound << "\n";
            }
        } else if (app.got_subcommand(cmd_selftest)) {
            int failures = 0;
            auto check = [&](const std::string& name, auto&& fn) {
                try {
                    fn();
                    out << "ok " << name << "\n";
                } catch (const std::exception& e) {
                    ++failures;
                    out << "FAIL " << name << ": " << one_line(e.what()) << "\n";
                }
            };
            auto expect = [](const std::string& got, const std::string& want) {
                if (got != want)
                    throw VerificationFailure("got \"" + one_line(got) + "\", wanted \"" +
                                              one_line(want) + "\"");
            };
            const std::map<int, std::string> fixture_goldens = {
                {0, "r[0]\n"}, {1, "r[-2]\n"}, {-2, "r[4]\n"}};
            for (const auto& [param, golden] : fixture_goldens)
                check("pairing fixture " + std::to_string(param), [&, param, golden] {
                    KnotInput in;
                    in.name = "fixture " + std::to_string(param);
                    in.tier = InputTier::cfd;
                    in.cfd = pairing_fixture(param);
                    expect(render_multicurve(double_via_oracle(in)), golden);
                });
            const std::map<std::string, std::string> goldens = {
                {"unknot", "r[0]\n"},
                {"trefoil",
                 "r[4]\n"
                 "s[2] d=2 a1=1 a2=1\n"
                 "sbar[2] d=2 a1=-1 a2=-1\n"},
                {"figure8",
                 "r[0]\n"
                 "s[2] d=0 a1=-1 a2=-1\n"
                 "s[2] d=1 a1=1 a2=1\n"
                 "sbar[2] d=0 a1=1 a2=1\n"
                 "sbar[2] d=1 a1=-1 a2=-1\n"},
                {"torus_3_4",
                 "r[12]\n"
                 "s[2] d=6 a1=5 a2=5\n"
                 "s[4] d=2 a1=-2 a2=-2\n"
                 "sbar[2] d=6 a1=-5 a2=-5\n"
                 "sbar[4] d=2 a1=2 a2=2\n"}};
            for (const std::string& name : builtin_knot_names()) {
                check("double " + name, [&] {
                    expect(render_multicurve(compute_double(builtin_knot(name))),
                           goldens.at(name));
                });
                if (builtin_knot(name).tier == InputTier::cfd)
                    check("routes agree on " + name, [&] {
                        VerifyVerdict v = verify_main_theorem(builtin_knot(name));
                        if (!v.equal) throw VerificationFailure(one_line(v.diff));
                    });
            }
            check("cable trefoil t=3", [&] {
                if (cable_hfk_dim(decompose(builtin_knot("trefoil")), 3) != 7)
                    throw VerificationFailure("expected dimension 7");
            });
            check("cable torus_3_4 t=5", [&] {
                if (cable_hfk_dim(decompose(builtin_knot("torus_3_4")), 5) != 13)
                    throw VerificationFailure("expected dimension 13");
            });
            if (failures) {
                err << "selftest: " << failures << " check(s) failed\n";
                return 3;
            }
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const VerificationFailure& e) {
        err << "verification failure: " << one_line(e.what()) << "\n";
        return 3;
    } catch (const DomainError& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return 1;
    }
}

} // namespace dtangle
