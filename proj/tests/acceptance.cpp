// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "twistplane/afamily.hpp"
#include "twistplane/bfamily.hpp"
#include "twistplane/poly2.hpp"
#include "twistplane/quadratic.hpp"
#include "twistplane/verifier.hpp"

using namespace twistplane;
namespace quad = twistplane::quadratic;
namespace af = twistplane::afamily;
namespace bf = twistplane::bfamily;
namespace vf = twistplane::verify;

namespace {

const Field Q = Field::rationals();
int failures = 0;

struct Criterion {
    std::ostringstream log;
    bool ok = true;
    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            log << (log.str().empty() ? "" : "; ") << what;
        }
    }
};

void run_criterion(int number, const std::string& title, double budget_seconds,
                   const std::function<void(Criterion&)>& body) {
    Criterion c;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.log << "exception: " << e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_seconds) {
        c.ok = false;
        c.log << "; exceeded " << budget_seconds << " s budget";
    }
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << title << " ("
              << static_cast<long>(elapsed * 1000) << " ms)";
    if (!c.ok) std::cout << " -- " << c.log.str();
    std::cout << "\n";
    if (!c.ok) ++failures;
}

Scalar frac(long n, long d) { return Scalar::fraction(n, d); }

}  // namespace

int main() {
    std::cout << "acceptance suite\n";

    // ------------------------------------------------------------------ 1
    run_criterion(1, "displayed obstruction polynomials", 1.0, [](Criterion& c) {
        Scalar one = Scalar::integer(1);
        Poly2 b = Poly2::monomial(1, 0, one), cc = Poly2::monomial(0, 1, one);
        Poly2 unit = Poly2::constant(one);
        c.require(quad::q_poly(2) == unit - cc, "degree 2");
        c.require(quad::q_poly(3) == unit - cc.scaled(Scalar::integer(2)) - b * cc, "degree 3");
        Poly2 q4 = unit - cc.scaled(Scalar::integer(3)) - (b * cc).scaled(Scalar::integer(2)) -
                   b * b * cc + cc * cc;
        c.require(quad::q_poly(4) == q4, "degree 4");
    });

    // ------------------------------------------------------------------ 2
    run_criterion(2, "degree-two construction at (2, 3)", 5.0, [](Criterion& c) {
        Scalar b = Scalar::integer(2), cc = Scalar::integer(3);
        BandMatrix m16 = quad::build_quadratic(b, cc, 16);
        BandMatrix m40 = quad::build_quadratic(b, cc, 40);
        for (std::size_t i = 0; i < 16; ++i)
            for (std::size_t j = 0; j < 16; ++j)
                c.require(m16.entry(i, j) == m40.entry(i, j), "restriction mismatch");
        c.require(vf::verify_quadratic_identity(m40, b, cc).all_pass(), "degree-two identity");
        c.require(vf::verify_twist_identity_m(m40, 12).all_pass(), "commutation to degree 12");
    });

    // ------------------------------------------------------------------ 3
    run_criterion(3, "special-branch identities", 5.0, [](Criterion& c) {
        Scalar c3 = Scalar::integer(3), b1 = Scalar::integer(1);
        BandMatrix m1 = quad::build_exceptional(quad::ExceptionalCase::BEqNegC, c3, 30);
        c.require(vf::verify_quadratic_identity(m1, -c3, c3).all_pass(), "determinant branch");

        BandMatrix m2 = quad::build_exceptional(quad::ExceptionalCase::CEqZero, b1, 30);
        c.require(vf::verify_quadratic_identity(m2, b1, Scalar::integer(0)).all_pass(),
                  "c = 0 branch");

        BandMatrix m3 =
            quad::build_exceptional(quad::ExceptionalCase::EqualEigen0Quarter, Scalar::zero(Q), 30);
        c.require(vf::verify_quadratic_identity(m3, Scalar::integer(0), frac(1, 4)).all_pass(),
                  "equal-eigenvalue point");

        BandMatrix m4 = quad::build_exceptional(quad::ExceptionalCase::BEqNeg1, c3, 30);
        auto rep = vf::verify_quadratic_identity(m4, Scalar::integer(-1), c3);
        c.require(rep.all_pass() && rep.checks.size() == 2, "b = -1 branch with square form");
    });

    // ------------------------------------------------------------------ 4
    run_criterion(4, "equal-eigenvalue root detection", 1.0, [](Criterion& c) {
        Scalar b = frac(7, 5), cc = frac(1, 25);
        auto rep = quad::classify_quadratic(b, cc, 64);
        c.require(rep.verdict == quad::Verdict::NoTwist, "verdict");
        c.require(rep.witness_n && *rep.witness_n == 6, "witness index");
        auto seq = quad::pq_sequence(b, cc, 6);
        c.require(seq[5].q.is_zero(), "recurrence confirmation");
    });

    // ------------------------------------------------------------------ 5
    run_criterion(5, "algebra-type table", 1.0, [](Criterion& c) {
        using Kind = quad::AlgebraType::Kind;
        Scalar one = Scalar::integer(1), zero = Scalar::integer(0);
        auto t1 = quad::classify_algebra_type(zero, Scalar::integer(3), zero);
        c.require(t1.kind == Kind::QuantumPlane && t1.q && *t1.q == Scalar::integer(3), "item 1");
        c.require(quad::classify_algebra_type(zero, one, one).kind == Kind::Jordan, "item 2");
        auto t3 = quad::classify_algebra_type(zero, Scalar::integer(4), one);
        c.require(t3.kind == Kind::QuantumPlane && t3.q && *t3.q == Scalar::integer(4), "item 3");
        c.require(quad::classify_algebra_type(one, Scalar::integer(-3), Scalar::integer(3)).kind ==
                      Kind::YXZero,
                  "item 4");
        c.require(quad::classify_algebra_type(one, Scalar::integer(-1), Scalar::integer(5)).kind ==
                      Kind::MinusOnePlane,
                  "item 5");
        c.require(quad::classify_algebra_type(one, Scalar::integer(5), Scalar::integer(4)).kind ==
                      Kind::Jordan,
                  "item 6");
        auto t7 = quad::classify_algebra_type(one, Scalar::integer(3), zero);
        c.require(t7.kind == Kind::QuantumPlane && t7.q &&
                      (*t7.q == Scalar::integer(3) || *t7.q == frac(1, 3)),
                  "item 7, c = 0");
        auto t7g = quad::classify_algebra_type(one, Scalar::integer(2), Scalar::integer(3));
        c.require(t7g.kind == Kind::QuantumPlane && t7g.q.has_value(), "item 7, generic");
        if (t7g.q) {
            Scalar qv = *t7g.q;
            Scalar lhs = Scalar::of(qv.field(), 5) * qv * qv +
                         Scalar::of(qv.field(), 1) * qv + Scalar::of(qv.field(), 5);
            c.require(lhs.is_zero(), "item 7 relation");
        }
    });

    // ------------------------------------------------------------------ 6
    run_criterion(6, "block-family worked entries", 1.0, [](Criterion& c) {
        af::AFamilyParams p{3, frac(1, 5), Scalar::integer(1)};
        BandMatrix mt = af::build_a_family(p, 9);
        Scalar one = Scalar::integer(1);
        Scalar denom = one - p.d - p.d * p.a;
        Scalar head = p.d * p.d * (one - p.d - p.a) / denom;
        Scalar mid = -(p.a * p.d * (one - p.d - p.a)) / denom;
        Scalar tail = p.a * p.a / denom;
        for (std::size_t i = 3; i <= 5; ++i) {
            c.require(mt.entry(i, 0) == p.d && mt.entry(i, 1) == -p.d, "first block head");
            c.require(mt.entry(i, 3) == -p.a && mt.entry(i, 4) == p.a, "first block tail");
        }
        for (std::size_t i = 6; i <= 8; ++i) {
            c.require(mt.entry(i, 0) == head && mt.entry(i, 1) == -head, "second block head");
            c.require(mt.entry(i, 3) == mid && mt.entry(i, 4) == -mid, "second block middle");
            c.require(mt.entry(i, 6) == tail && mt.entry(i, 7) == -tail, "second block tail");
        }
    });

    // ------------------------------------------------------------------ 7
    run_criterion(7, "block-family identity and commutation law", 10.0, [](Criterion& c) {
        af::AFamilyParams p{2, frac(1, 3), Scalar::integer(1)};
        auto roots = af::r_root_check(p, 8);
        c.require(roots.verdict != af::RootVerdict::RootAt, "roots clean to 8");
        BandMatrix mt = af::build_a_family(p, 40);
        c.require(vf::verify_twist_identity(mt, 10).all_pass(), "commutation to degree 10");

        af::KSequences s = af::k_sequences(p, 4);
        auto ypow = [&](std::size_t k) { return BandMatrix::shift_y_power(Q, 40, k); };
        for (std::size_t k = 1; k <= 4; ++k) {
            std::size_t kn = 2 * k;
            BandMatrix lhs = mat_mul(mt, mat_mul(ypow(kn - 1), mt)).scaled(s.d[k]);
            BandMatrix rhs = mat_mul(ypow(kn), mt).scaled(s.e[k]).sub(
                mat_mul(mt, ypow(kn)).scaled(s.a[k]));
            c.require(BandMatrix::equal_on_window(lhs, rhs),
                      "iterated law at k = " + std::to_string(k));
        }
    });

    // ------------------------------------------------------------------ 8
    run_criterion(8, "degenerate block families", 2.0, [](Criterion& c) {
        // both parameters zero: rows at and past the block vanish
        af::AFamilyParams p00{2, Scalar::integer(0), Scalar::integer(0)};
        BandMatrix z = af::a_family_degenerate(p00, 8);
        for (std::size_t i = 2; i < 8; ++i) c.require(z.row(i).empty(), "vanishing tail");

        // d = 0: alternating blocks, and the power commutation
        Scalar a = Scalar::integer(1);
        af::AFamilyParams p0{2, Scalar::integer(0), a};
        BandMatrix mt = af::a_family_degenerate(p0, 24);
        c.require(mt.entry(4, 4) == a * a && mt.entry(4, 5) == -(a * a), "block entries");
        c.require(mt.entry(5, 4) == a * a && mt.entry(5, 5) == -(a * a), "block entries");
        c.require(mt.entry(2, 2) == -a && mt.entry(2, 3) == a, "first block entries");
        c.require(mt.entry(3, 2) == -a && mt.entry(3, 3) == a, "first block entries");
        for (long k = 1; k <= 3; ++k) {
            BandMatrix lhs = mat_mul(BandMatrix::shift_y_power(Q, 24, 2 * k), mt);
            BandMatrix rhs =
                mat_mul(mt, BandMatrix::shift_y_power(Q, 24, 2 * k)).scaled((-a).pow(k));
            c.require(BandMatrix::equal_on_window(lhs, rhs),
                      "power law at k = " + std::to_string(k));
        }

        // d = 1: cumulative rows
        af::AFamilyParams p1{2, Scalar::integer(1), a};
        BandMatrix cum = af::a_family_degenerate(p1, 8);
        for (std::size_t j : {2u, 4u})
            c.require(cum.entry(4, j) == -a && cum.entry(4, j + 1) == a, "cumulative row 4");
        c.require(cum.entry(4, 0) == Scalar::integer(1) &&
                      cum.entry(4, 1) == Scalar::integer(-1),
                  "cumulative head");
    });

    // ------------------------------------------------------------------ 9
    run_criterion(9, "marker-sequence combinatorics", 10.0, [](Criterion& c) {
        // brute force over the 8 gap patterns of length 4
        std::vector<std::vector<long>> brute;
        for (unsigned mask = 0; mask < 8; ++mask) {
            std::vector<long> v{2};
            for (unsigned g = 0; g < 3; ++g) v.push_back(v.back() + 2 + ((mask >> g) & 1));
            if (bf::is_almost_balanced(bf::SeqPrefix(2, v))) brute.push_back(v);
        }
        auto enumerated = bf::enumerate_prefixes(2, 4);
        c.require(enumerated.size() == brute.size(), "enumeration count");
        for (const auto& p : enumerated) {
            bool found = false;
            for (const auto& v : brute) found = found || v == p.values();
            c.require(found, "enumerated prefix missing from brute force");
        }

        auto w1 = bf::violation_witness(bf::SeqPrefix(2, {2, 4, 7, 10}));
        c.require(w1 && w1->kind == 2 && w1->delta == 2, "wide counterexample");
        auto w2 = bf::violation_witness(bf::SeqPrefix(2, {2, 5, 7, 9}));
        c.require(w2 && w2->kind == 1 && w2->delta == -1, "narrow counterexample");

        std::mt19937_64 rng(97);
        for (int t = 0; t < 1000; ++t) {
            long n = 2 + static_cast<long>(t % 4);
            bf::SeqPrefix p(n, {n});
            std::uniform_int_distribution<std::size_t> len(1, 10);
            std::size_t target = len(rng);
            while (p.length() < target) {
                auto ext = bf::extend_prefix(p);
                if (ext.empty()) break;
                std::uniform_int_distribution<std::size_t> pick(0, ext.size() - 1);
                p = ext[pick(rng)];
            }
            c.require(!bf::extend_prefix(p).empty(), "extension set empty");
        }
    });

    // ----------------------------------------------------------------- 10
    run_criterion(10, "marker family at full degree", 10.0, [](Criterion& c) {
        Scalar a = Scalar::integer(1);
        for (const auto& markers :
             {std::vector<long>{2, 4, 6, 8, 10, 12}, std::vector<long>{2, 5, 7, 10, 12}}) {
            bf::BFamilyParams params(a, bf::SeqPrefix(2, markers));
            BandMatrix mt = bf::build_b_matrix_truncation(params, 40);
            c.require(vf::verify_twist_identity(mt, 12).all_pass(), "commutation to degree 12");
            c.require(vf::verify_b_conditions(params, 12).all_pass(), "marker conditions");

            std::size_t size = bf::covered_rows(params.prefix);
            auto dec = bf::decompose_b(params, size);
            BandMatrix strict = bf::build_b_matrix(params, size);
            BandMatrix y = BandMatrix::shift_y(Q, size);
            BandMatrix recon =
                mat_mul(dec.b, y).add(mat_mul(y, dec.m1)).sub(mat_mul(dec.m1, y));
            c.require(BandMatrix::equal_on_window(recon, strict), "three-piece reassembly");
            BandMatrix null_check =
                mat_mul(dec.b, mat_mul(y, dec.m1)).add(mat_mul(y, dec.m1)).sub(dec.m1);
            c.require(null_check.is_zero_on_window(), "column-matrix relation");
        }
    });

    // ----------------------------------------------------------------- 11
    run_criterion(11, "negative controls", 5.0, [](Criterion& c) {
        // a non-balanced member of the gap family fails with a witness
        bf::BFamilyParams bad(Scalar::integer(1), bf::SeqPrefix(2, {2, 5, 7, 9}));
        auto rep = vf::verify_b_conditions(bad, 9);
        c.require(!rep.all_pass(), "defective prefix slipped through");
        c.require(rep.first_failure() && rep.first_failure()->failure.has_value(),
                  "missing failure witness");
        BandMatrix mt_bad = bf::build_b_matrix_truncation(bad, 26);
        c.require(!vf::verify_twist_identity(mt_bad, 9).all_pass(),
                  "commutation passed for a defective prefix");

        // planted single-entry mutations flip every pass suite to fail
        Scalar b = Scalar::integer(2), cc = Scalar::integer(3);
        BandMatrix quad_m = quad::build_quadratic(b, cc, 20);
        c.require(!vf::verify_quadratic_identity(
                       quad_m.with_entry(4, 2, quad_m.entry(4, 2) + Scalar::integer(1)), b, cc)
                       .all_pass(),
                  "degree-two mutation undetected");

        BandMatrix exc = quad::build_exceptional(quad::ExceptionalCase::BEqNegC, cc, 20);
        c.require(!vf::verify_quadratic_identity(
                       exc.with_entry(5, 1, Scalar::integer(9)), -cc, cc)
                       .all_pass(),
                  "special-branch mutation undetected");

        af::AFamilyParams ap{2, frac(1, 3), Scalar::integer(1)};
        BandMatrix amt = af::build_a_family(ap, 24);
        c.require(!vf::verify_twist_identity(
                       amt.with_entry(6, 0, amt.entry(6, 0) + Scalar::integer(1)), 7)
                       .all_pass(),
                  "block-family mutation undetected");

        bf::BFamilyParams bp(Scalar::integer(1), bf::SeqPrefix(2, {2, 4, 6, 8, 10, 12}));
        BandMatrix bmt = bf::build_b_matrix_truncation(bp, 30);
        c.require(!vf::verify_twist_identity(
                       bmt.with_entry(4, 0, bmt.entry(4, 0) + Scalar::integer(1)), 10)
                       .all_pass(),
                  "marker-family mutation undetected");
    });

    // ----------------------------------------------------------------- 12
    run_criterion(12, "fixtures continue the marker family", 2.0, [](Criterion& c) {
        for (long n : {2L, 3L, 4L}) {
            Scalar a = Scalar::integer(1);
            auto fixtures = vf::branch_rows_2n(n, a);
            int compared = 0;
            for (const auto& fx : fixtures) {
                if (!fx.markers) continue;
                ++compared;
                bf::BFamilyParams params(a, bf::SeqPrefix(n, *fx.markers));
                BandMatrix mt = bf::build_b_matrix(params, 3 * static_cast<std::size_t>(n) + 3);
                for (std::size_t i = 0; i < fx.rows.size(); ++i) {
                    c.require(fx.rows[i].size() == mt.row(i).size(),
                              "row weight differs at " + std::to_string(i));
                    for (const auto& [j, v] : fx.rows[i])
                        c.require(mt.entry(i, j) == v, "entry differs at row " + std::to_string(i));
                }
            }
            c.require(compared == 2, "expected the two primary cases");
        }
    });

    // ----------------------------------------------------------------- 13
    run_criterion(13, "row extension reproduces the construction", 5.0, [](Criterion& c) {
        std::mt19937_64 rng(1123581321);
        std::uniform_int_distribution<long> num(-7, 7), den(1, 7);
        int done = 0;
        while (done < 3) {
            Scalar b = Scalar::fraction(num(rng), den(rng));
            Scalar cc = Scalar::fraction(num(rng), den(rng));
            auto seq = quad::pq_sequence(b, cc, 16);
            bool clean = true;
            for (const auto& t : seq) clean = clean && !t.q.is_zero();
            if (!clean) continue;
            ++done;
            BandMatrix m = quad::build_quadratic(b, cc, 13);
            std::vector<std::vector<Scalar>> rows;
            for (std::size_t i = 0; i < 2; ++i) rows.push_back(m.dense_row(i, i + 2));
            for (std::size_t k = 2; k <= 12; ++k) {
                rows.push_back(vf::extend_row(rows, b, cc));
                for (std::size_t j = 0; j < rows.back().size() && j < 13; ++j)
                    c.require(rows.back()[j] == m.entry(k, j),
                              "row " + std::to_string(k) + " differs");
            }
        }
    });

    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures == 0 ? 0 : 1;
}
