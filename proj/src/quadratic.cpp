#include "twistplane/quadratic.hpp"

#include <algorithm>

namespace twistplane::quadratic {

namespace {

Scalar one_of(const Scalar& s) { return Scalar::one(s.field()); }
Scalar zero_of(const Scalar& s) { return Scalar::zero(s.field()); }

bool is_char_zero(const Field& f) { return f.kind() != FieldKind::Prime; }

/// lambda = (b+1)/2 in the equal-eigenvalue branch.
Scalar half_trace(const Scalar& b) {
    return (b + one_of(b)) / Scalar::of(b.field(), 2);
}

/// Square root of s in its own field, extending the rationals when needed.
/// Returns nullopt when no representation is available (prime field with a
/// non-residue discriminant).
std::optional<Scalar> field_sqrt(const Scalar& s) {
    switch (s.field().kind()) {
        case FieldKind::Rational: {
            if (auto r = exact_sqrt(s.rational_value())) return Scalar::rational(*r);
            return Scalar::quad(s.rational_value(), 0, 1);
        }
        case FieldKind::Prime: {
            if (auto r = prime_sqrt(s.field().modulus(), s.prime_value()))
                return Scalar::prime(s.field().modulus(), static_cast<long>(*r));
            return std::nullopt;
        }
        case FieldKind::QuadExt:
            throw UnsupportedField("nested extensions are not constructed");
    }
    return std::nullopt;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::TwistExists: return "twist-exists";
        case Verdict::NoTwist: return "no-twist";
        case Verdict::Undetermined: return "undetermined";
    }
    return "undetermined";
}

const char* to_string(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed-form";
        case Method::BoundedScan: return "bounded-scan";
        case Method::ExceptionalCase: return "exceptional-case";
    }
    return "bounded-scan";
}

std::string AlgebraType::label() const {
    switch (kind) {
        case Kind::QuantumPlane: return "quantum-plane";
        case Kind::Jordan: return "jordan-plane";
        case Kind::YXZero: return "yx-zero";
        case Kind::MinusOnePlane: return "minus-one-plane";
    }
    return "";
}

QuadraticParams normalize(const Scalar& a, const Scalar& b, const Scalar& c) {
    if (a.is_zero()) return {a, b, c, one_of(b)};
    // rescale x by lambda = a, sending (a, b, c) to (1, b, c*a)
    return {one_of(a), b, c * a, a};
}

std::vector<PqTerm> pq_sequence(const Scalar& b, const Scalar& c, std::size_t count) {
    std::vector<PqTerm> out;
    out.reserve(count);
    Scalar p = one_of(b), q = one_of(b);
    for (std::size_t n = 1; n <= count; ++n) {
        PqTerm term{p, q, std::nullopt};
        if (!q.is_zero()) term.c_n = c * p / q;
        out.push_back(term);
        Scalar np = b * p + q;
        Scalar nq = q - c * p;
        p = np;
        q = nq;
    }
    return out;
}

namespace {
std::pair<Poly2, Poly2> pq_polys(std::size_t n) {
    Field f = Field::rationals();
    Scalar one = Scalar::integer(1);
    Poly2 b = Poly2::monomial(1, 0, one);
    Poly2 c = Poly2::monomial(0, 1, one);
    Poly2 p = Poly2::constant(one), q = Poly2::constant(one);
    for (std::size_t i = 1; i < n; ++i) {
        Poly2 np = b * p + q;
        Poly2 nq = q - c * p;
        p = np;
        q = nq;
    }
    return {p, q};
}
}  // namespace

Poly2 q_poly(std::size_t n) {
    if (n < 1) throw BadParams("index must be positive");
    return pq_polys(n).second;
}

Poly2 p_poly(std::size_t n) {
    if (n < 1) throw BadParams("index must be positive");
    return pq_polys(n).first;
}

ClassificationReport eigen_analyze(const Scalar& b, const Scalar& c, long n_max) {
    if (b.field().kind() == FieldKind::QuadExt || c.field().kind() == FieldKind::QuadExt)
        throw UnsupportedField("eigen analysis expects rational or prime-field input");
    if (b.field().kind() == FieldKind::Prime && b.field().modulus() == 2)
        throw UnsupportedField("eigenvalue formula needs 2 invertible");

    ClassificationReport rep;
    Scalar one = one_of(b);
    Scalar disc = (b - one) * (b - one) - Scalar::of(b.field(), 4) * c;

    Scalar l1 = zero_of(b), l2 = zero_of(b);
    if (disc.is_zero()) {
        l1 = l2 = half_trace(b);
    } else {
        auto s = field_sqrt(disc);
        if (!s)
            throw UnsupportedField("discriminant has no square root in " +
                                   b.field().to_string());
        Scalar two = Scalar::of(s->field(), 2);
        l1 = (b + one + *s) / two;
        l2 = (b + one - *s) / two;
    }
    rep.eigenvalues = {l1, l2};

    // membership tests, resolved in a fixed order
    if ((b + c).is_zero()) {
        rep.method = Method::ExceptionalCase;
        rep.case_tag = "eigen-zero";
        return rep;
    }
    if (c.is_zero()) {
        rep.method = Method::ExceptionalCase;
        rep.case_tag = "eigen-one";
        return rep;
    }
    if (disc.is_zero()) {
        rep.method = Method::ExceptionalCase;
        rep.case_tag = "eigen-equal";
        return rep;
    }
    if ((b + one).is_zero()) {
        rep.method = Method::ExceptionalCase;
        rep.case_tag = "eigen-opposite";
        return rep;
    }

    // none hold: look for (l1/l2)^n = (1 - l1)/(1 - l2) by exact iteration
    rep.method = Method::BoundedScan;
    rep.scan_bound = n_max;
    Scalar ratio = l1 / l2;
    Scalar target = (one_of(l1) - l1) / (one_of(l2) - l2);
    Scalar power = one_of(l1);
    for (long n = 1; n <= n_max; ++n) {
        power = power * ratio;
        if (power == target) {
            rep.verdict = Verdict::NoTwist;
            rep.witness_n = n;
            return rep;
        }
    }
    rep.verdict = Verdict::Undetermined;
    return rep;
}

ClassificationReport classify_quadratic(const Scalar& b, const Scalar& c, long n_max) {
    Scalar one = one_of(b);
    ClassificationReport rep;

    if (c == one) {
        // Q_2 = 1 - c vanishes identically here. Anything other than
        // b = -1 is impossible; (-1, 1) is the constant-row regime that
        // the afamily/bfamily constructions cover.
        if (b == -one) {
            rep.verdict = Verdict::Undetermined;
            rep.method = Method::ExceptionalCase;
            rep.case_tag = "c-one";
            rep.note = "not two-extensible; see the constant-row families";
            return rep;
        }
        rep.verdict = Verdict::NoTwist;
        rep.method = Method::ClosedForm;
        rep.case_tag = "c-one";
        rep.witness_n = 2;
        return rep;
    }

    Scalar disc = (b - one) * (b - one) - Scalar::of(b.field(), 4) * c;

    if ((b + c).is_zero()) {
        // Q_n = (1-c)^{n-1} never vanishes
        rep.verdict = Verdict::TwistExists;
        rep.method = Method::ClosedForm;
        rep.case_tag = "eigen-zero";
    } else if (c.is_zero()) {
        // Q_n = 1
        rep.verdict = Verdict::TwistExists;
        rep.method = Method::ClosedForm;
        rep.case_tag = "eigen-one";
    } else if (disc.is_zero()) {
        if (!is_char_zero(b.field()))
            throw UnsupportedField("equal-eigenvalue branch requires characteristic zero");
        // Q_{n+1} = (n+1-n*l)*l^n with l = (b+1)/2 != 0; a root needs
        // l = (n+1)/n, i.e. 1/(l-1) a positive integer.
        Scalar l = half_trace(b);
        rep.case_tag = "eigen-equal";
        rep.method = Method::ClosedForm;
        Scalar lm1 = l - one;
        bool root = false;
        long witness = 0;
        if (!lm1.is_zero()) {
            mpq_class inv = 1 / lm1.rational_value();
            if (inv.get_den() == 1 && inv.get_num() > 0 && inv.get_num().fits_slong_p()) {
                root = true;
                witness = inv.get_num().get_si() + 1;
            }
        }
        if (root) {
            rep.verdict = Verdict::NoTwist;
            rep.witness_n = witness;
        } else {
            rep.verdict = Verdict::TwistExists;
        }
    } else if ((b + one).is_zero()) {
        // opposite eigenvalues: the ratio condition has no solution
        rep.verdict = Verdict::TwistExists;
        rep.method = Method::ClosedForm;
        rep.case_tag = "eigen-opposite";
    } else {
        rep = eigen_analyze(b, c, n_max);
        if (rep.verdict == Verdict::NoTwist && b.field().kind() == FieldKind::Rational) {
            // cross-check the witness against the recurrence itself
            auto seq = pq_sequence(b, c, static_cast<std::size_t>(*rep.witness_n));
            if (!seq.back().q.is_zero())
                throw Error("eigen scan and recurrence disagree at n = " +
                            std::to_string(*rep.witness_n));
        }
    }

    if (!rep.eigenvalues) {
        try {
            auto eig = eigen_analyze(b, c, 1);
            rep.eigenvalues = eig.eigenvalues;
        } catch (const UnsupportedField&) {
        }
    }
    if (rep.verdict == Verdict::TwistExists) {
        try {
            rep.algebra_type = classify_algebra_type(one, b, c);
        } catch (const Error&) {
        }
    }
    return rep;
}

ClassificationReport classify(const Scalar& a, const Scalar& b, const Scalar& c, long n_max) {
    QuadraticParams params = normalize(a, b, c);
    if (params.a.is_zero()) {
        // the bidiagonal construction works for every (b, c)
        ClassificationReport rep;
        rep.verdict = Verdict::TwistExists;
        rep.method = Method::ClosedForm;
        rep.case_tag = "a-zero";
        rep.lambda = params.lambda;
        try {
            rep.algebra_type = classify_algebra_type(params.a, params.b, params.c);
        } catch (const Error&) {
        }
        return rep;
    }
    ClassificationReport rep = classify_quadratic(params.b, params.c, n_max);
    rep.lambda = params.lambda;
    return rep;
}

BandMatrix build_quadratic(const Scalar& b, const Scalar& c, std::size_t rows) {
    if (rows < 2) throw BadParams("need at least two rows");
    const Field& f = b.field();
    std::size_t n = rows;

    // superdiagonal c_i and the Q-root precondition
    auto seq = pq_sequence(b, c, n);
    std::vector<Scalar> cdiag(n, Scalar::zero(f));
    for (std::size_t i = 1; i < n; ++i) {
        if (seq[i - 1].q.is_zero())
            throw RootHit("obstruction polynomial vanishes at index " + std::to_string(i),
                          static_cast<long>(i));
        cdiag[i] = *seq[i - 1].c_n;
    }

    // diag[j][i] holds the i-th entry of the weight-j component: M_{j+i, i}.
    // Recursion: (1 - c_{i+j-1}) diag[j][i] = diag[j][i-1] (c_{i-1} + b)
    //            + sum_k diag[k][i+j-1-k] * diag[j-1-k][i]   (j >= 1)
    std::vector<std::vector<Scalar>> diag(n, std::vector<Scalar>(n, Scalar::zero(f)));
    diag[0][0] = Scalar::one(f);
    for (std::size_t i = 1; i < n; ++i) {
        Scalar denom = Scalar::one(f) - cdiag[i - 1];
        if (denom.is_zero())
            throw RootHit("obstruction polynomial vanishes at index " + std::to_string(i),
                          static_cast<long>(i));
        diag[0][i] = diag[0][i - 1] * (cdiag[i - 1] + b) / denom;
    }
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i + j < n; ++i) {
            Scalar acc = Scalar::zero(f);
            if (i > 0) acc = diag[j][i - 1] * (cdiag[i - 1] + b);
            for (std::size_t k = 0; k < j; ++k) acc = acc + diag[k][i + j - 1 - k] * diag[j - 1 - k][i];
            Scalar denom = Scalar::one(f) - cdiag[i + j - 1];
            if (denom.is_zero())
                throw RootHit("obstruction polynomial vanishes at index " + std::to_string(i + j),
                              static_cast<long>(i + j));
            diag[j][i] = acc / denom;
        }
    }

    std::vector<BandMatrix::Row> out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j <= r; ++j)
            if (!diag[j][r - j].is_zero()) out[r][r - j] = diag[j][r - j];
        if (r + 1 < n && !cdiag[r].is_zero()) out[r][r + 1] = cdiag[r];
    }
    return BandMatrix::from_rows(f, n, n, std::move(out), 1);
}

BandMatrix build_a0_case(const Scalar& b, const Scalar& c, std::size_t rows) {
    const Field& f = b.field();
    std::vector<BandMatrix::Row> out(rows);
    Scalar bpow = Scalar::one(f);   // b^k
    Scalar csum = Scalar::zero(f);  // c (b^{k-1} + ... + 1)
    for (std::size_t k = 0; k < rows; ++k) {
        if (!bpow.is_zero()) out[k][k] = bpow;
        if (k + 1 < rows && !csum.is_zero()) out[k][k + 1] = csum;
        csum = b * csum + c;
        bpow = bpow * b;
    }
    return BandMatrix::from_rows(f, rows, rows, std::move(out), 1);
}

BandMatrix build_exceptional(ExceptionalCase which, const Scalar& param, std::size_t rows) {
    const Field& f = param.field();
    Scalar one = Scalar::one(f);
    std::vector<BandMatrix::Row> out(rows);
    switch (which) {
        case ExceptionalCase::BEqNegC: {
            const Scalar& c = param;
            if (c == one) throw BadParams("needs c != 1");
            out[0][0] = one;
            for (std::size_t k = 1; k < rows; ++k) {
                out[k][0] = one;
                if (!c.is_zero()) {
                    out[k][1] = -c;
                    if (k + 1 < rows) out[k][k + 1] = c;
                }
            }
            break;
        }
        case ExceptionalCase::CEqZero: {
            const Scalar& b = param;
            // A_i = 1 + b + ... + b^i; M_{k,j} = b^j prod_{i=j}^{k-1} A_i
            std::vector<Scalar> a(rows, Scalar::zero(f));
            Scalar acc = Scalar::zero(f), bp = one;
            for (std::size_t i = 0; i < rows; ++i) {
                acc = acc + bp;
                a[i] = acc;
                bp = bp * b;
            }
            out[0][0] = one;
            for (std::size_t k = 1; k < rows; ++k) {
                Scalar tail = one;  // prod_{i=j}^{k-1} A_i, built from j = k down
                Scalar bj = Scalar::one(f);
                std::vector<Scalar> row(k + 1, Scalar::zero(f));
                for (std::size_t jj = 0; jj <= k; ++jj) {
                    std::size_t j = k - jj;  // walk j downwards to extend the tail
                    row[j] = tail;
                    if (j > 0) tail = tail * a[j - 1];
                }
                for (std::size_t j = 0; j <= k; ++j) {
                    Scalar v = row[j] * bj;
                    bj = bj * b;
                    if (!v.is_zero()) out[k][j] = v;
                }
            }
            break;
        }
        case ExceptionalCase::EqualEigen0Quarter: {
            if (!is_char_zero(f))
                throw UnsupportedField("this branch requires characteristic zero");
            out[0][0] = one;
            Scalar two_pow = one;
            for (std::size_t k = 1; k < rows; ++k) {
                two_pow = two_pow * Scalar::integer(2);
                out[k][0] = two_pow / Scalar::integer(static_cast<long>(k) + 1);
                if (k + 1 < rows)
                    out[k][k + 1] = Scalar::integer(static_cast<long>(k)) /
                                    Scalar::integer(2 * (static_cast<long>(k) + 1));
            }
            break;
        }
        case ExceptionalCase::BEqNeg1: {
            const Scalar& c = param;
            if (c == one) throw BadParams("needs c != 1");
            for (std::size_t i = 0; i < rows; ++i) {
                if (i % 2 == 0) {
                    out[i][i] = one;
                } else {
                    out[i][i - 1] = one;
                    out[i][i] = -one;
                    if (i + 1 < rows && !c.is_zero()) out[i][i + 1] = c;
                }
            }
            break;
        }
    }
    return BandMatrix::from_rows(f, rows, rows, std::move(out), 1);
}

AlgebraType classify_algebra_type(const Scalar& a, const Scalar& b, const Scalar& c) {
    Scalar one = one_of(b);
    if (a * c == one) throw OutOfTable("ac = 1 lies outside the classification table");

    if (a.is_zero()) {
        if (c.is_zero()) {
            if (b.is_zero()) throw OutOfTable("yx = 0 with zero leading coefficient");
            return {AlgebraType::Kind::QuantumPlane, b};
        }
        // scale y so that c becomes 1
        if (b == one) return {AlgebraType::Kind::Jordan, std::nullopt};
        if (b.is_zero()) return {AlgebraType::Kind::YXZero, std::nullopt};
        return {AlgebraType::Kind::QuantumPlane, b};
    }

    QuadraticParams p = normalize(a, b, c);
    const Scalar& B = p.b;
    const Scalar& C = p.c;
    if ((B + C).is_zero()) return {AlgebraType::Kind::YXZero, std::nullopt};
    if (B == -one) return {AlgebraType::Kind::MinusOnePlane, Scalar::of(B.field(), -1)};
    Scalar disc = (B - one) * (B - one) - Scalar::of(B.field(), 4) * C;
    if (disc.is_zero()) return {AlgebraType::Kind::Jordan, std::nullopt};

    // (C+B) q^2 + (2C - B^2 - 1) q + (C+B) = 0
    Scalar a2 = C + B;
    Scalar a1 = Scalar::of(B.field(), 2) * C - B * B - one;
    Scalar dq = a1 * a1 - Scalar::of(B.field(), 4) * a2 * a2;
    auto s = field_sqrt(dq);
    if (!s) throw UnsupportedField("quantum parameter needs a square root unavailable here");
    Scalar q = (-a1 + *s) / (Scalar::of(s->field(), 2) * a2);
    return {AlgebraType::Kind::QuantumPlane, q};
}

}  // namespace twistplane::quadratic
