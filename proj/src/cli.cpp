#include "twistplane/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twistplane/json_io.hpp"

namespace twistplane::cli {

namespace {

using nlohmann::json;

long default_depth() {
    if (const char* env = std::getenv("TWISTPLANE_DEPTH")) {
        try {
            long v = std::stol(env);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    return 64;
}

std::vector<long> parse_seq(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stol(item));
    }
    if (out.empty()) throw ParseError("empty sequence");
    return out;
}

void print_matrix_text(std::ostream& out, const BandMatrix& m) {
    out << "field " << m.field().to_string() << ", n " << m.size() << ", exact_rows "
        << m.exact_rows() << "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.row(i).empty() && i >= m.exact_rows()) continue;
        out << "  row " << i << ":";
        for (const auto& [j, v] : m.row(i)) out << " [" << j << "] " << v.to_string();
        out << "\n";
    }
}

void print_report_text(std::ostream& out, const verify::VerifyReport& rep) {
    for (const auto& c : rep.checks) {
        out << (c.pass ? "pass" : "FAIL") << " " << c.id << " k=" << c.k
            << " window=" << c.window;
        if (c.failure)
            out << " at (" << c.failure->i << "," << c.failure->j << "): " << c.failure->lhs
                << " != " << c.failure->rhs;
        out << "\n";
    }
}

struct CommandContext {
    std::string format = "text";
    std::string field_text = "q";
    Field field() const { return Field::parse(field_text == "q" ? "rational" : field_text); }
    bool json_mode() const { return format == "json"; }
};

void add_common(CLI::App* cmd, CommandContext& ctx) {
    cmd->add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--field", ctx.field_text, "base field: q or fp:<p>");
}

/// Emits a verification report and folds its outcome into the exit code.
int emit_report(const CommandContext& ctx, std::ostream& out, const verify::VerifyReport& rep,
                json* attach_to) {
    if (ctx.json_mode() && attach_to)
        (*attach_to)["report"] = to_json(rep);
    else if (!ctx.json_mode())
        print_report_text(out, rep);
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact computations with graded twisted planes"};
    app.require_subcommand(1);

    CommandContext ctx;
    int exit_code = 0;

    // ---------------------------------------------------------- quad-classify
    auto* classify = app.add_subcommand("quad-classify",
                                        "decide existence for a degree-two relation");
    std::string cl_a = "1", cl_b, cl_c;
    long cl_depth = default_depth();
    classify->add_option("--a", cl_a, "leading coefficient");
    classify->add_option("--b", cl_b)->required();
    classify->add_option("--c", cl_c)->required();
    classify->add_option("--depth", cl_depth, "scan bound")->check(CLI::PositiveNumber);
    add_common(classify, ctx);
    classify->callback([&] {
        Field f = ctx.field();
        auto rep = quadratic::classify(Scalar::parse(f, cl_a), Scalar::parse(f, cl_b),
                                       Scalar::parse(f, cl_c), cl_depth);
        if (ctx.json_mode()) {
            out << to_json(rep).dump(2) << "\n";
        } else {
            out << "verdict: " << quadratic::to_string(rep.verdict) << "\n";
            out << "method: " << quadratic::to_string(rep.method);
            if (!rep.case_tag.empty()) out << " (" << rep.case_tag << ")";
            out << "\n";
            if (rep.witness_n) out << "witness_n: " << *rep.witness_n << "\n";
            if (rep.scan_bound) out << "scan_bound: " << *rep.scan_bound << "\n";
            if (rep.eigenvalues)
                out << "eigenvalues: " << rep.eigenvalues->first.to_string() << ", "
                    << rep.eigenvalues->second.to_string() << "\n";
            if (rep.algebra_type) {
                out << "algebra_type: " << rep.algebra_type->label();
                if (rep.algebra_type->q) out << " q=" << rep.algebra_type->q->to_string();
                out << "\n";
            }
            if (!rep.note.empty()) out << "note: " << rep.note << "\n";
        }
    });

    // ------------------------------------------------------------- quad-build
    auto* qbuild = app.add_subcommand("quad-build", "build the degree-two twisting matrix");
    std::string qb_b, qb_c;
    std::size_t qb_rows = 0;
    long qb_verify = -1;
    qbuild->add_option("--b", qb_b)->required();
    qbuild->add_option("--c", qb_c)->required();
    qbuild->add_option("--rows", qb_rows)->required();
    qbuild->add_option("--verify", qb_verify, "check the commutation identity to this degree")->check(CLI::PositiveNumber);
    add_common(qbuild, ctx);
    qbuild->callback([&] {
        Field f = ctx.field();
        Scalar b = Scalar::parse(f, qb_b), c = Scalar::parse(f, qb_c);
        BandMatrix m = quadratic::build_quadratic(b, c, qb_rows);
        json doc = to_json(m);
        if (!ctx.json_mode()) print_matrix_text(out, m);
        if (qb_verify >= 0) {
            verify::VerifyReport rep = verify::verify_quadratic_identity(m, b, c);
            auto twist = verify::verify_twist_identity_m(m, qb_verify);
            rep.checks.insert(rep.checks.end(), twist.checks.begin(), twist.checks.end());
            exit_code = emit_report(ctx, out, rep, &doc);
        }
        if (ctx.json_mode()) out << doc.dump(2) << "\n";
    });

    // --------------------------------------------------------------- a0-build
    auto* a0 = app.add_subcommand("a0-build", "build the bidiagonal (a = 0) matrix");
    std::string a0_b, a0_c;
    std::size_t a0_rows = 0;
    long a0_verify = -1;
    a0->add_option("--b", a0_b)->required();
    a0->add_option("--c", a0_c)->required();
    a0->add_option("--rows", a0_rows)->required();
    a0->add_option("--verify", a0_verify)->check(CLI::PositiveNumber);
    add_common(a0, ctx);
    a0->callback([&] {
        Field f = ctx.field();
        BandMatrix m = quadratic::build_a0_case(Scalar::parse(f, a0_b), Scalar::parse(f, a0_c),
                                                a0_rows);
        json doc = to_json(m);
        if (!ctx.json_mode()) print_matrix_text(out, m);
        if (a0_verify >= 0)
            exit_code = emit_report(ctx, out, verify::verify_twist_identity_m(m, a0_verify), &doc);
        if (ctx.json_mode()) out << doc.dump(2) << "\n";
    });

    // -------------------------------------------------------------- exc-build
    auto* exc = app.add_subcommand("exc-build", "build one of the special-branch matrices");
    std::string exc_case, exc_b = "0", exc_c = "0";
    std::size_t exc_rows = 0;
    bool exc_verify = false;
    exc->add_option("--case", exc_case, "beqnegc | ceqzero | equaleigen | beqneg1")->required();
    exc->add_option("--b", exc_b);
    exc->add_option("--c", exc_c);
    exc->add_option("--rows", exc_rows)->required();
    exc->add_flag("--verify", exc_verify, "check the displayed identity");
    add_common(exc, ctx);
    exc->callback([&] {
        Field f = ctx.field();
        Scalar b = Scalar::parse(f, exc_b), c = Scalar::parse(f, exc_c);
        quadratic::ExceptionalCase which;
        Scalar param = c;
        Scalar vb = b, vc = c;  // identity coefficients
        if (exc_case == "beqnegc") {
            which = quadratic::ExceptionalCase::BEqNegC;
            vb = -c;
        } else if (exc_case == "ceqzero") {
            which = quadratic::ExceptionalCase::CEqZero;
            param = b;
            vc = Scalar::zero(f);
        } else if (exc_case == "equaleigen") {
            which = quadratic::ExceptionalCase::EqualEigen0Quarter;
            param = Scalar::zero(f);
            vb = Scalar::zero(f);
            vc = Scalar::parse(f, "1/4");
        } else if (exc_case == "beqneg1") {
            which = quadratic::ExceptionalCase::BEqNeg1;
            vb = -Scalar::one(f);
        } else {
            throw CLI::ValidationError("--case", "unknown case '" + exc_case + "'");
        }
        BandMatrix m = quadratic::build_exceptional(which, param, exc_rows);
        json doc = to_json(m);
        if (!ctx.json_mode()) print_matrix_text(out, m);
        if (exc_verify)
            exit_code = emit_report(ctx, out, verify::verify_quadratic_identity(m, vb, vc), &doc);
        if (ctx.json_mode()) out << doc.dump(2) << "\n";
    });

    // ------------------------------------------------------------- afam-build
    auto* afb = app.add_subcommand("afam-build", "build an n-block family matrix");
    long af_n = 2;
    std::string af_d, af_a;
    std::size_t af_rows = 0;
    long af_verify = -1;
    bool af_m_form = false;
    afb->add_option("--n", af_n)->required();
    afb->add_option("--d", af_d)->required();
    afb->add_option("--a", af_a)->required();
    afb->add_option("--rows", af_rows)->required();
    afb->add_option("--verify", af_verify)->check(CLI::PositiveNumber);
    afb->add_flag("--m-form", af_m_form, "emit M = Mtilde + Y instead of Mtilde");
    add_common(afb, ctx);
    afb->callback([&] {
        Field f = ctx.field();
        afamily::AFamilyParams params{af_n, Scalar::parse(f, af_d), Scalar::parse(f, af_a)};
        BandMatrix mt = afamily::build_a_family(params, af_rows);
        std::size_t k_top = (af_rows - 1) / static_cast<std::size_t>(af_n);
        afamily::KSequences seqs = afamily::k_sequences(params, k_top);
        BandMatrix emitted =
            af_m_form ? mt.add(BandMatrix::shift_y(f, mt.size())) : mt;
        json doc = to_json(emitted);
        doc["sidecar"] = to_json(seqs);
        if (!ctx.json_mode()) print_matrix_text(out, emitted);
        if (af_verify >= 0)
            exit_code = emit_report(ctx, out, verify::verify_twist_identity(mt, af_verify), &doc);
        if (ctx.json_mode()) out << doc.dump(2) << "\n";
    });

    // ------------------------------------------------------------- afam-roots
    auto* afr = app.add_subcommand("afam-roots", "root check for the family obstruction");
    long ar_n = 2;
    std::string ar_d, ar_a;
    long ar_depth = default_depth();
    afr->add_option("--n", ar_n)->required();
    afr->add_option("--d", ar_d)->required();
    afr->add_option("--a", ar_a)->required();
    afr->add_option("--depth", ar_depth)->check(CLI::PositiveNumber);
    add_common(afr, ctx);
    afr->callback([&] {
        Field f = ctx.field();
        afamily::AFamilyParams params{ar_n, Scalar::parse(f, ar_d), Scalar::parse(f, ar_a)};
        afamily::RootReport rep = afamily::r_root_check(params, ar_depth);
        const char* verdict = rep.verdict == afamily::RootVerdict::Clean       ? "clean"
                              : rep.verdict == afamily::RootVerdict::RootAt    ? "root-at"
                                                                               : "undetermined";
        if (ctx.json_mode()) {
            json doc{{"verdict", verdict}, {"bound", rep.bound}, {"basis", rep.basis}};
            doc["k"] = rep.k ? json(*rep.k) : json(nullptr);
            out << doc.dump(2) << "\n";
        } else {
            out << "verdict: " << verdict << "\n";
            if (rep.k) out << "k: " << *rep.k << "\n";
            out << "basis: " << rep.basis << " (bound " << rep.bound << ")\n";
        }
    });

    // ------------------------------------------------------------- bfam-build
    auto* bfb = app.add_subcommand("bfam-build", "build a marker-family matrix");
    long bf_n = 2;
    std::string bf_a, bf_seq;
    std::size_t bf_rows = 0;
    long bf_verify = -1;
    bfb->add_option("--n", bf_n)->required();
    bfb->add_option("--a", bf_a)->required();
    bfb->add_option("--seq", bf_seq, "comma separated markers")->required();
    bfb->add_option("--rows", bf_rows)->required();
    bfb->add_option("--verify", bf_verify)->check(CLI::PositiveNumber);
    add_common(bfb, ctx);
    bfb->callback([&] {
        Field f = ctx.field();
        bfamily::BFamilyParams params(Scalar::parse(f, bf_a),
                                      bfamily::SeqPrefix(bf_n, parse_seq(bf_seq)));
        BandMatrix mt = bfamily::build_b_matrix_truncation(params, bf_rows);
        json doc = to_json(mt);
        if (!ctx.json_mode()) print_matrix_text(out, mt);
        if (bf_verify >= 0) {
            verify::VerifyReport rep = verify::verify_b_conditions(params, bf_verify);
            auto twist = verify::verify_twist_identity(mt, bf_verify);
            rep.checks.insert(rep.checks.end(), twist.checks.begin(), twist.checks.end());
            exit_code = emit_report(ctx, out, rep, &doc);
        }
        if (ctx.json_mode()) out << doc.dump(2) << "\n";
    });

    // -------------------------------------------------------------- seq-check
    auto* sc = app.add_subcommand("seq-check", "almost-balance check for a marker prefix");
    long sc_n = 2;
    std::string sc_seq;
    sc->add_option("--n", sc_n)->required();
    sc->add_option("--seq", sc_seq)->required();
    add_common(sc, ctx);
    sc->callback([&] {
        bfamily::SeqPrefix prefix(sc_n, parse_seq(sc_seq));
        auto witness = bfamily::violation_witness(prefix);
        if (ctx.json_mode()) {
            json doc{{"almost_balanced", !witness.has_value()}};
            doc["witness"] =
                witness ? json{{"r", witness->r}, {"j", witness->j}, {"delta", witness->delta},
                               {"kind", witness->kind}}
                        : json(nullptr);
            out << doc.dump(2) << "\n";
        } else {
            out << "almost_balanced: " << (witness ? "false" : "true") << "\n";
            if (witness)
                out << "witness: r=" << witness->r << " j=" << witness->j
                    << " delta=" << witness->delta << " kind=" << witness->kind << "\n";
        }
        if (witness) exit_code = 1;
    });

    // ---------------------------------------------------------- seq-enumerate
    auto* se = app.add_subcommand("seq-enumerate", "all almost-balanced prefixes of a length");
    long se_n = 2;
    std::size_t se_r = 1;
    se->add_option("--n", se_n)->required();
    se->add_option("--r", se_r)->required();
    add_common(se, ctx);
    se->callback([&] {
        auto prefixes = bfamily::enumerate_prefixes(se_n, se_r);
        if (ctx.json_mode()) {
            json arr = json::array();
            for (const auto& p : prefixes) arr.push_back(p.values());
            out << json{{"n", se_n}, {"r", se_r}, {"count", prefixes.size()},
                        {"prefixes", std::move(arr)}}
                       .dump(2)
                << "\n";
        } else {
            for (const auto& p : prefixes) {
                for (std::size_t i = 0; i < p.length(); ++i)
                    out << (i ? "," : "") << p.at(i + 1);
                out << "\n";
            }
        }
    });

    // ------------------------------------------------------------- seq-extend
    auto* sx = app.add_subcommand("seq-extend", "admissible continuations of a prefix");
    long sx_n = 2;
    std::string sx_seq;
    sx->add_option("--n", sx_n)->required();
    sx->add_option("--seq", sx_seq)->required();
    add_common(sx, ctx);
    sx->callback([&] {
        auto extensions = bfamily::extend_prefix(bfamily::SeqPrefix(sx_n, parse_seq(sx_seq)));
        if (ctx.json_mode()) {
            json arr = json::array();
            for (const auto& p : extensions) arr.push_back(p.values());
            out << json{{"extensions", std::move(arr)}}.dump(2) << "\n";
        } else {
            for (const auto& p : extensions) {
                for (std::size_t i = 0; i < p.length(); ++i)
                    out << (i ? "," : "") << p.at(i + 1);
                out << "\n";
            }
        }
    });

    // ----------------------------------------------------------------- verify
    auto* vf = app.add_subcommand("verify", "re-check an emitted matrix");
    std::string vf_input;
    long vf_twist = -1;
    bool vf_quadratic = false, vf_nilpotency = false;
    std::string vf_b, vf_c, vf_a;
    long vf_n = 2;
    vf->add_option("--input", vf_input, "matrix JSON file, or - for stdin")->required();
    vf->add_option("--twist", vf_twist, "commutation identity up to this degree")->check(CLI::PositiveNumber);
    vf->add_flag("--quadratic", vf_quadratic, "degree-two identity (needs --b, --c)");
    vf->add_flag("--nilpotency", vf_nilpotency, "square-zero checks (needs --a, --n)");
    vf->add_option("--b", vf_b);
    vf->add_option("--c", vf_c);
    vf->add_option("--a", vf_a);
    vf->add_option("--n", vf_n);
    add_common(vf, ctx);
    vf->callback([&] {
        json doc;
        if (vf_input == "-") {
            std::cin >> doc;
        } else {
            std::ifstream in(vf_input);
            if (!in) throw ParseError("cannot open '" + vf_input + "'");
            in >> doc;
        }
        if (doc.contains("matrix")) doc = doc["matrix"];
        BandMatrix m = band_matrix_from_json(doc);
        verify::VerifyReport rep;
        bool ran = false;
        if (vf_twist >= 0) {
            // accept either the difference form (row 0 = (1,-1)) or M itself
            bool difference_form = m.entry(0, 1) == -Scalar::one(m.field());
            auto r = difference_form ? verify::verify_twist_identity(m, vf_twist)
                                     : verify::verify_twist_identity_m(m, vf_twist);
            rep.checks.insert(rep.checks.end(), r.checks.begin(), r.checks.end());
            ran = true;
        }
        if (vf_quadratic) {
            Field f = m.field();
            auto r = verify::verify_quadratic_identity(m, Scalar::parse(f, vf_b),
                                                       Scalar::parse(f, vf_c));
            rep.checks.insert(rep.checks.end(), r.checks.begin(), r.checks.end());
            ran = true;
        }
        if (vf_nilpotency) {
            Field f = m.field();
            auto r = verify::verify_nilpotency(m, Scalar::parse(f, vf_a), vf_n);
            rep.checks.insert(rep.checks.end(), r.checks.begin(), r.checks.end());
            ran = true;
        }
        if (!ran) throw CLI::ValidationError("verify", "pick --twist, --quadratic or --nilpotency");
        if (ctx.json_mode())
            out << to_json(rep).dump(2) << "\n";
        else
            print_report_text(out, rep);
        exit_code = rep.all_pass() ? 0 : 1;
    });

    // -------------------------------------------------------------- branch-2n
    auto* br = app.add_subcommand("branch-2n", "determined continuations past the second marker");
    long br_n = 2;
    std::string br_a, br_case = "all";
    br->add_option("--n", br_n)->required();
    br->add_option("--a", br_a)->required();
    br->add_option("--case", br_case, "which continuation to emit")
        ->check(CLI::IsMember({"late-marker-primary", "late-marker-secondary",
                               "early-marker-primary", "early-marker-secondary", "all"}));
    add_common(br, ctx);
    br->callback([&] {
        Field f = ctx.field();
        auto fixtures = verify::branch_rows_2n(br_n, Scalar::parse(f, br_a));
        json arr = json::array();
        for (const auto& fx : fixtures) {
            if (br_case != "all" && fx.name != br_case) continue;
            if (ctx.json_mode()) {
                arr.push_back(to_json(fx));
            } else {
                out << fx.name << (fx.undetermined_tail ? " (open tail)" : "") << "\n";
                for (std::size_t i = 0; i < fx.rows.size(); ++i) {
                    out << "  row " << i << ":";
                    for (const auto& [j, v] : fx.rows[i]) out << " [" << j << "] " << v.to_string();
                    out << "\n";
                }
            }
        }
        if (ctx.json_mode()) out << arr.dump(2) << "\n";
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace twistplane::cli
