#include "twistplane/verifier.hpp"

#include <algorithm>

namespace twistplane::verify {

bool VerifyReport::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

const Check* VerifyReport::first_failure() const {
    for (const Check& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

namespace {

Check compare(const std::string& id, long k, const BandMatrix& lhs, const BandMatrix& rhs,
              std::size_t suggested_n) {
    std::size_t window = std::min(lhs.exact_rows(), rhs.exact_rows());
    if (window == 0)
        throw HorizonExhausted("no exact rows left for check '" + id + "' at degree " +
                                   std::to_string(k),
                               suggested_n);
    Check c{id, k, true, window, std::nullopt};
    if (auto diff = BandMatrix::first_difference(lhs, rhs)) {
        c.pass = false;
        c.failure = Failure{diff->i, diff->j, diff->lhs.to_string(), diff->rhs.to_string()};
    }
    return c;
}

/// Y^left * mid * Y^right without trivial factors.
BandMatrix sandwich(const BandMatrix& mid, std::size_t left, std::size_t right) {
    const Field& f = mid.field();
    std::size_t n = mid.size();
    BandMatrix out = mid;
    if (right) out = mat_mul(out, BandMatrix::shift_y_power(f, n, right));
    if (left) out = mat_mul(BandMatrix::shift_y_power(f, n, left), out);
    return out;
}

void require_head_row(const BandMatrix& mtilde) {
    if (mtilde.exact_rows() < 1) throw BadParams("matrix has no exact rows");
    const Field& f = mtilde.field();
    if (mtilde.entry(0, 0) != Scalar::one(f) || mtilde.entry(0, 1) != -Scalar::one(f))
        throw BadParams("leading row must be (1, -1, 0, ...)");
    for (const auto& [j, v] : mtilde.row(0))
        if (j > 1 && !v.is_zero()) throw BadParams("leading row must be (1, -1, 0, ...)");
}

}  // namespace

VerifyReport verify_twist_identity(const BandMatrix& mtilde, long max_degree) {
    if (max_degree < 1) throw BadParams("degree must be positive");
    require_head_row(mtilde);
    const Field& f = mtilde.field();
    std::size_t n = mtilde.size();
    std::size_t needed = static_cast<std::size_t>(2 * max_degree + 3);
    if (n < static_cast<std::size_t>(max_degree) + 3)
        throw HorizonExhausted("truncation too small for degree " + std::to_string(max_degree),
                               needed);

    BandMatrix m = mtilde.add(BandMatrix::shift_y(f, n));
    std::vector<BandMatrix> mpow;  // mpow[p] = m^p for p >= 1
    mpow.push_back(BandMatrix::identity(f, n));
    mpow.push_back(m);
    for (long p = 2; p <= max_degree + 1; ++p) mpow.push_back(mat_mul(m, mpow.back()));

    VerifyReport rep;
    for (long k = 1; k <= max_degree; ++k) {
        if (static_cast<std::size_t>(k) >= mtilde.exact_rows())
            throw HorizonExhausted("row " + std::to_string(k) + " beyond the exactness horizon",
                                   needed);
        BandMatrix lhs = mat_mul(BandMatrix::shift_y_power(f, n, static_cast<std::size_t>(k)),
                                 mtilde);
        BandMatrix rhs = BandMatrix::zero(f, n);
        for (const auto& [j, coef] : mtilde.row(static_cast<std::size_t>(k))) {
            std::size_t power = static_cast<std::size_t>(k) + 1 - j;
            BandMatrix term = power == 0 ? BandMatrix::shift_y_power(f, n, j)
                              : j == 0   ? mpow[power]
                                         : mat_mul(mpow[power], BandMatrix::shift_y_power(f, n, j));
            rhs = rhs.add(term.scaled(coef));
        }
        rep.checks.push_back(compare("twist-identity", k, lhs, rhs, needed));
    }
    return rep;
}

VerifyReport verify_twist_identity_m(const BandMatrix& m, long max_degree) {
    BandMatrix mtilde = m.sub(BandMatrix::shift_y(m.field(), m.size()));
    return verify_twist_identity(mtilde, max_degree);
}

VerifyReport verify_quadratic_identity(const BandMatrix& m, const Scalar& b, const Scalar& c) {
    const Field& f = m.field();
    std::size_t n = m.size();
    if (m.exact_rows() < 3) throw HorizonExhausted("need at least three exact rows", 8);
    BandMatrix y = BandMatrix::shift_y(f, n);

    VerifyReport rep;
    BandMatrix lhs = mat_mul(y, m);
    BandMatrix rhs = mat_mul(m, m).add(mat_mul(m, y).scaled(b)).add(
        BandMatrix::shift_y_power(f, n, 2).scaled(c));
    rep.checks.push_back(compare("quadratic-identity", 1, lhs, rhs, 8));

    if (b == -Scalar::one(f)) {
        // equivalent square form for the opposite-eigenvalue branch
        BandMatrix diff = m.sub(y);
        BandMatrix sq = mat_mul(diff, diff);
        BandMatrix target = BandMatrix::shift_y_power(f, n, 2).scaled(Scalar::one(f) - c);
        rep.checks.push_back(compare("square-form", 1, sq, target, 8));
    }
    return rep;
}

VerifyReport verify_nilpotency(const BandMatrix& mtilde, const Scalar& a, long n) {
    const Field& f = mtilde.field();
    std::size_t size = mtilde.size();
    std::size_t needed = static_cast<std::size_t>(2 * n + 4);
    if (mtilde.exact_rows() < static_cast<std::size_t>(n) + 2)
        throw HorizonExhausted("need n + 2 exact rows", needed);

    VerifyReport rep;
    BandMatrix zero = BandMatrix::zero(f, size);
    rep.checks.push_back(compare("square-zero", 2, mat_mul(mtilde, mtilde), zero, needed));

    BandMatrix shifted = mtilde.sub(BandMatrix::shift_y(f, size).scaled(a));
    BandMatrix power = mat_pow(shifted, static_cast<std::size_t>(n) + 1);
    rep.checks.push_back(compare("shifted-nilpotent", n + 1, power, zero, needed));

    // product criterion for the top band of the (n+1)-st power
    Check prod{"superdiagonal-product", n + 1, true,
               std::min(power.exact_rows(), shifted.exact_rows()), std::nullopt};
    for (std::size_t j = 0; j + n + 1 < size && j < power.exact_rows(); ++j) {
        if (j + n >= shifted.exact_rows()) break;
        Scalar expected = Scalar::one(f);
        for (std::size_t t = 0; t <= static_cast<std::size_t>(n); ++t)
            expected = expected * shifted.entry(j + t, j + t + 1);
        Scalar got = power.entry(j, j + static_cast<std::size_t>(n) + 1);
        if (got != expected) {
            prod.pass = false;
            prod.failure = Failure{j, j + static_cast<std::size_t>(n) + 1, got.to_string(),
                                   expected.to_string()};
            break;
        }
    }
    rep.checks.push_back(prod);
    return rep;
}

VerifyReport verify_b_conditions(const bfamily::BFamilyParams& params, long max_degree) {
    if (max_degree < 1) throw BadParams("degree must be positive");
    const bfamily::SeqPrefix& prefix = params.prefix;
    const Field& f = params.a.field();
    long coverage = static_cast<long>(bfamily::covered_rows(prefix));
    if (max_degree > coverage - 2)
        throw PrefixTooShort("prefix decides degrees up to " + std::to_string(coverage - 2));

    std::size_t n = static_cast<std::size_t>(coverage + max_degree + 4);
    std::size_t needed = static_cast<std::size_t>(2 * max_degree + 4);
    BandMatrix mt = bfamily::build_b_matrix_truncation(params, n);
    BandMatrix zero = BandMatrix::zero(f, n);
    Scalar a = params.a;
    Scalar d = params.d();

    VerifyReport rep;

    // (1) Mtilde Y^k Mtilde = 0 whenever neither k nor k+1 is a marker
    for (long k = 0; k <= max_degree; ++k) {
        if (prefix.contains(k) || prefix.contains(k + 1)) continue;
        BandMatrix lhs = mat_mul(mt, sandwich(mt, static_cast<std::size_t>(k), 0));
        rep.checks.push_back(compare("marker-gap-zero", k, lhs, zero, needed));
    }

    // (2) and (3) at each marker within range
    for (std::size_t r = 1; r <= prefix.length(); ++r) {
        long lr = prefix.at(r);
        if (lr > max_degree) break;
        BandMatrix lhs2 = mat_mul(mt, sandwich(mt, static_cast<std::size_t>(lr), 0))
                              .add(sandwich(mat_mul(mt, sandwich(mt, static_cast<std::size_t>(lr) - 1, 0)), 1, 0));
        BandMatrix rhs2 = sandwich(mt, static_cast<std::size_t>(lr) + 1, 0).scaled(a);
        rep.checks.push_back(compare("marker-step", lr, lhs2, rhs2, needed));

        BandMatrix lhs3 = mat_mul(mt, sandwich(mt, static_cast<std::size_t>(lr) - 1, 0));
        BandMatrix rhs3 = BandMatrix::zero(f, n);
        for (long i = 0; i <= lr; ++i)
            rhs3 = rhs3.add(sandwich(mt, static_cast<std::size_t>(i),
                                     static_cast<std::size_t>(lr - i)));
        rhs3 = rhs3.scaled(a);
        Scalar ra2 = Scalar::of(f, static_cast<long>(r)) * a * a;
        rhs3 = rhs3.sub(
            BandMatrix::shift_y_power(f, n, static_cast<std::size_t>(lr) + 1).scaled(ra2));
        rep.checks.push_back(compare("marker-anchor", lr, lhs3, rhs3, needed));
    }

    // derived power formula, one degree at a time
    BandMatrix m = mt.add(BandMatrix::shift_y(f, n));
    BandMatrix mpow = m;  // m^{j+1}
    for (long j = 0; j <= max_degree; ++j) {
        if (j > 0) mpow = mat_mul(m, mpow);
        long r = 0;
        while (r < static_cast<long>(prefix.length()) && prefix.at(r + 1) <= j) ++r;
        BandMatrix lhs = mpow.scaled(d.pow(r));
        BandMatrix rhs = BandMatrix::zero(f, n);
        for (long i = 0; i <= j; ++i)
            rhs = rhs.add(sandwich(mt, static_cast<std::size_t>(i),
                                   static_cast<std::size_t>(j - i)));
        Scalar tail = Scalar::one(f) - Scalar::of(f, r) * a;
        rhs = rhs.add(
            BandMatrix::shift_y_power(f, n, static_cast<std::size_t>(j) + 1).scaled(tail));
        rep.checks.push_back(compare("power-formula", j, lhs, rhs, needed));
    }
    return rep;
}

std::vector<Scalar> extend_row(const std::vector<std::vector<Scalar>>& rows, const Scalar& b,
                               const Scalar& c) {
    const std::size_t k = rows.size();
    if (k < 2) throw BadParams("need rows 0 and 1 to extend");
    for (std::size_t i = 0; i < k; ++i)
        if (rows[i].size() != i + 2)
            throw BadParams("row " + std::to_string(i) + " must have length " +
                            std::to_string(i + 2));
    const Field& f = b.field();
    Scalar one = Scalar::one(f);
    if (rows[1][0] != one || rows[1][1] != b || rows[1][2] != c)
        throw BadParams("second row must be (1, b, c)");

    const Scalar pivot = rows[k - 1][k];
    if (pivot == one)
        throw PivotOne("superdiagonal pivot equals 1 at row " + std::to_string(k),
                       static_cast<long>(k));
    Scalar denom = one - pivot;

    std::vector<Scalar> bar(k + 2, Scalar::zero(f));
    for (std::size_t i = 0; i < k; ++i) bar[0] = bar[0] + rows[k - 1][i] * rows[i][0];
    for (std::size_t s = 1; s <= k; ++s) {
        Scalar acc = b * rows[k - 1][s - 1];
        for (std::size_t i = s - 1; i < k; ++i) acc = acc + rows[k - 1][i] * rows[i][s];
        bar[s] = acc;
    }
    bar[k + 1] = c + b * pivot;

    for (Scalar& v : bar) v = v / denom;
    return bar;
}

std::vector<BranchFixture> branch_rows_2n(long n, const Scalar& a) {
    if (n < 2) throw BadParams("block length must be at least 2");
    if (a.is_zero() || a == -Scalar::one(a.field()))
        throw BadParams("parameter a must avoid 0 and -1");
    const Field& f = a.field();
    Scalar one = Scalar::one(f);
    Scalar d = (one + a).inverse();
    Scalar d2 = d * d, d3 = d2 * d;

    auto su = [](long v) { return static_cast<std::size_t>(v); };
    auto pair_row = [&](const Scalar& head, const Scalar& next) {
        std::map<std::size_t, Scalar> row;
        if (!head.is_zero()) row[0] = head;
        if (!next.is_zero()) row[1] = next;
        return row;
    };

    // rows 0..2n-1 are common to all four continuations
    auto common = [&]() {
        std::vector<std::map<std::size_t, Scalar>> rows;
        for (long i = 0; i < n; ++i) rows.push_back(pair_row(one, -one));
        auto marker = pair_row(d, -one);
        marker[su(n + 1)] = a;
        rows.push_back(std::move(marker));
        for (long i = n + 1; i < 2 * n; ++i) rows.push_back(pair_row(d, -d));
        return rows;
    };

    std::vector<BranchFixture> out;

    {
        BranchFixture fx{BranchTag::LateMarkerPrimary, "late-marker-primary", n, common(),
                         false, std::vector<long>{n, 2 * n + 1, 3 * n + 1}};
        fx.rows.push_back(pair_row(d, -d));  // row 2n
        auto r2n1 = pair_row(d2, -d);
        r2n1[su(2 * n + 2)] = a;
        fx.rows.push_back(std::move(r2n1));
        for (long i = 2 * n + 2; i <= 3 * n; ++i) fx.rows.push_back(pair_row(d2, -d2));
        auto r3n1 = pair_row(d3, -d2);
        r3n1[su(3 * n + 2)] = a;
        fx.rows.push_back(std::move(r3n1));
        fx.rows.push_back(pair_row(d3, -d3));  // row 3n+2
        out.push_back(std::move(fx));
    }
    {
        BranchFixture fx{BranchTag::LateMarkerSecondary, "late-marker-secondary", n, common(),
                         true, std::nullopt};
        auto r2n = pair_row(d2, -d);
        r2n[su(n + 1)] = a * d;
        fx.rows.push_back(std::move(r2n));
        auto r2n1 = pair_row(d2, -d2);
        r2n1[su(n + 2)] = -(a * d);
        r2n1[su(2 * n + 2)] = a;
        fx.rows.push_back(std::move(r2n1));
        for (long i = 2 * n + 2; i <= 3 * n - 1; ++i) fx.rows.push_back(pair_row(d2, -d2));
        out.push_back(std::move(fx));
    }
    {
        // The marker prefix must pin down rows through 3n+2; for n = 2 that
        // needs a fourth marker, and only the wide gap keeps row 3n+2 at
        // (d^3, -d^3).
        std::vector<long> markers{n, 2 * n, 3 * n};
        if (n == 2) markers.push_back(4 * n + 1);
        BranchFixture fx{BranchTag::EarlyMarkerPrimary, "early-marker-primary", n, common(),
                         false, std::move(markers)};
        auto r2n = pair_row(d2, -d);
        r2n[su(2 * n + 1)] = a;
        fx.rows.push_back(std::move(r2n));
        fx.rows.push_back(pair_row(d2, -d2));  // row 2n+1
        for (long i = 2 * n + 2; i <= 3 * n - 1; ++i) fx.rows.push_back(pair_row(d2, -d2));
        auto r3n = pair_row(d3, -d2);
        r3n[su(3 * n + 1)] = a;
        fx.rows.push_back(std::move(r3n));
        fx.rows.push_back(pair_row(d3, -d3));  // row 3n+1
        fx.rows.push_back(pair_row(d3, -d3));  // row 3n+2
        out.push_back(std::move(fx));
    }
    {
        BranchFixture fx{BranchTag::EarlyMarkerSecondary, "early-marker-secondary", n, common(),
                         true, std::nullopt};
        auto r2n = pair_row(d, -d);
        r2n[su(n)] = -(a * d);
        r2n[su(2 * n + 1)] = a;
        fx.rows.push_back(std::move(r2n));
        auto r2n1 = pair_row(d2, -d);
        r2n1[su(n + 1)] = a * d;
        fx.rows.push_back(std::move(r2n1));
        for (long i = 2 * n + 2; i <= 3 * n - 1; ++i) fx.rows.push_back(pair_row(d2, -d2));
        out.push_back(std::move(fx));
    }
    return out;
}

}  // namespace twistplane::verify
