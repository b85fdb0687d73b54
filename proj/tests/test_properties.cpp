// Randomized cross-checks tying the constructions to the verifier and to
// closed forms, with fixed seeds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistplane/afamily.hpp"
#include "twistplane/bfamily.hpp"
#include "twistplane/json_io.hpp"
#include "twistplane/quadratic.hpp"
#include "twistplane/verifier.hpp"

using namespace twistplane;
namespace quad = twistplane::quadratic;
namespace af = twistplane::afamily;
namespace bf = twistplane::bfamily;
namespace vf = twistplane::verify;

namespace {

const Field Q = Field::rationals();
std::mt19937_64 rng(87539319);

Scalar random_rational(long span = 5) {
    std::uniform_int_distribution<long> num(-span, span), den(1, span);
    return Scalar::fraction(num(rng), den(rng));
}

bf::SeqPrefix random_gap_prefix(long n, std::size_t len) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<long> v{n};
    while (v.size() < len) v.push_back(v.back() + n + coin(rng));
    return bf::SeqPrefix(n, std::move(v));
}

}  // namespace

TEST_CASE("random clean parameters yield verified degree-two matrices") {
    int done = 0;
    while (done < 6) {
        Scalar b = random_rational(), c = random_rational();
        auto seq = quad::pq_sequence(b, c, 14);
        bool clean = true;
        for (const auto& t : seq) clean = clean && !t.q.is_zero();
        if (!clean) continue;
        ++done;
        BandMatrix m = quad::build_quadratic(b, c, 12);
        CHECK(vf::verify_quadratic_identity(m, b, c).all_pass());
        CHECK(vf::verify_twist_identity_m(m, 4).all_pass());
    }
}

TEST_CASE("random clean parameters yield verified block-family matrices") {
    int done = 0;
    while (done < 6) {
        long n = 2 + static_cast<long>(rng() % 2);
        Scalar d = random_rational(), a = random_rational();
        if (d == Scalar::integer(1) && a.is_zero()) continue;
        af::AFamilyParams p{n, d, a};
        af::KSequences s = af::k_sequences(p, 12);
        if (s.root_at) continue;
        ++done;
        BandMatrix mt = af::build_a_family(p, 20);
        CHECK(vf::verify_twist_identity(mt, 5).all_pass());
    }
}

TEST_CASE("every almost-balanced prefix yields a verified marker matrix") {
    int done = 0;
    while (done < 8) {
        long n = 2 + static_cast<long>(rng() % 3);
        bf::SeqPrefix prefix = random_gap_prefix(n, 4 + rng() % 3);
        if (!bf::is_almost_balanced(prefix)) continue;
        Scalar a = random_rational(3);
        if (a.is_zero() || a == Scalar::integer(-1)) continue;
        ++done;
        bf::BFamilyParams params(a, prefix);
        long degree = static_cast<long>(bf::covered_rows(prefix)) - 2;
        CHECK(vf::verify_b_conditions(params, degree).all_pass());
        BandMatrix mt = bf::build_b_matrix_truncation(
            params, bf::covered_rows(prefix) + static_cast<std::size_t>(degree) + 4);
        CHECK(vf::verify_twist_identity(mt, degree).all_pass());
    }
}

TEST_CASE("every unbalanced prefix is caught by the condition set") {
    int done = 0;
    while (done < 8) {
        long n = 2 + static_cast<long>(rng() % 3);
        bf::SeqPrefix prefix = random_gap_prefix(n, 5 + rng() % 3);
        if (bf::is_almost_balanced(prefix)) continue;
        Scalar a = random_rational(3);
        if (a.is_zero() || a == Scalar::integer(-1)) continue;
        ++done;
        bf::BFamilyParams params(a, prefix);
        long degree = static_cast<long>(bf::covered_rows(prefix)) - 2;
        auto rep = vf::verify_b_conditions(params, degree);
        CHECK_FALSE(rep.all_pass());
        REQUIRE(rep.first_failure());
        CHECK(rep.first_failure()->failure.has_value());
    }
}

TEST_CASE("equal-eigenvalue closed forms for the recurrence") {
    // with b = 2l - 1 and c = (l - 1)^2: P_{k+1} = (k+1) l^k and
    // Q_{k+1} = (k+1-k*l) l^k
    int done = 0;
    while (done < 10) {
        Scalar l = random_rational();
        if (l.is_zero()) continue;
        ++done;
        Scalar b = Scalar::integer(2) * l - Scalar::integer(1);
        Scalar c = (l - Scalar::integer(1)) * (l - Scalar::integer(1));
        auto seq = quad::pq_sequence(b, c, 9);
        for (long k = 0; k < 9; ++k) {
            Scalar lk = l.pow(k);
            CHECK(seq[static_cast<std::size_t>(k)].p == Scalar::integer(k + 1) * lk);
            CHECK(seq[static_cast<std::size_t>(k)].q ==
                  (Scalar::integer(k + 1) - Scalar::integer(k) * l) * lk);
        }
    }
}

TEST_CASE("displayed superdiagonal fractions") {
    // c_3 = c(b^2+b+1-c)/(1-2c-bc) and c_4 = c(1+b)(1+b^2-2c)/Q_4
    int done = 0;
    while (done < 10) {
        Scalar b = random_rational(), c = random_rational();
        auto seq = quad::pq_sequence(b, c, 4);
        if (seq[2].q.is_zero() || seq[3].q.is_zero()) continue;
        ++done;
        Scalar one = Scalar::integer(1);
        Scalar c3 = c * (b * b + b + one - c) /
                    (one - Scalar::integer(2) * c - b * c);
        CHECK(*seq[2].c_n == c3);
        Scalar q4 = one - Scalar::integer(3) * c - Scalar::integer(2) * b * c - c * b * b + c * c;
        Scalar c4 = c * (one + b) * (one + b * b - Scalar::integer(2) * c) / q4;
        CHECK(*seq[3].c_n == c4);
    }
}

TEST_CASE("matrix JSON round trips") {
    auto roundtrip = [](const BandMatrix& m) {
        BandMatrix back = band_matrix_from_json(to_json(m));
        CHECK(back.size() == m.size());
        CHECK(back.exact_rows() == m.exact_rows());
        CHECK(back.field() == m.field());
        for (std::size_t i = 0; i < m.size(); ++i) {
            CHECK(back.row(i).size() == m.row(i).size());
            for (const auto& [j, v] : m.row(i)) CHECK(back.entry(i, j) == v);
        }
    };
    roundtrip(quad::build_quadratic(Scalar::integer(2), Scalar::integer(3), 10));
    roundtrip(quad::build_quadratic(Scalar::prime(7, 4), Scalar::prime(7, 3), 10));
    bf::BFamilyParams params(Scalar::fraction(2, 3), bf::SeqPrefix(2, {2, 5, 7}));
    roundtrip(bf::build_b_matrix_truncation(params, 12));  // exact_rows < n
}
