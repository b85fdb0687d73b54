#include "twistplane/afamily.hpp"

namespace twistplane::afamily {

void AFamilyParams::validate() const {
    if (n < 2) throw BadParams("block length must be at least 2");
    if (d.field() != a.field() &&
        !(d.field().kind() == FieldKind::Rational || a.field().kind() == FieldKind::Rational))
        throw FieldMismatch("parameters live in different fields");
    if (d == Scalar::one(d.field()) && a.is_zero())
        throw BadParams("(d, a) = (1, 0) is the constant-row example, not a family member");
}

const Scalar& KSequences::c_at(std::size_t k, std::size_t r) const {
    if (k >= c.size()) {
        if (root_at)
            throw RootHit("block coefficients beyond vanishing r at index " +
                          std::to_string(*root_at), *root_at);
        throw IndexOutOfRange("block index " + std::to_string(k) + " not computed");
    }
    if (r >= c[k].size()) throw IndexOutOfRange("coefficient index out of range");
    return c[k][r];
}

KSequences k_sequences(const AFamilyParams& params, std::size_t k_count) {
    params.validate();
    const Field& f = params.d.field();
    Scalar e1 = Scalar::one(f) - params.d;
    Scalar a1 = -params.a;

    KSequences s;
    s.e.resize(k_count + 1, Scalar::zero(f));
    s.a.resize(k_count + 1, Scalar::zero(f));
    s.d.resize(k_count + 1, Scalar::zero(f));
    s.r.resize(k_count + 1, Scalar::zero(f));
    s.e[0] = s.a[0] = Scalar::one(f);
    s.r[0] = Scalar::one(f);  // e_0 + d_0
    for (std::size_t k = 1; k <= k_count; ++k) {
        s.e[k] = s.e[k - 1] * e1;
        s.a[k] = s.a[k - 1] * a1;
        s.d[k] = a1 * s.d[k - 1] + params.d * s.e[k - 1];
        s.r[k] = s.e[k] + s.d[k];
        if (!s.root_at && s.r[k].is_zero()) s.root_at = static_cast<long>(k);
    }

    // c[k][r] = c[k-1][r] d_k / r_k for r < k, c[k][k] = a_k / r_k,
    // computable only while every r_i with i <= k is nonzero.
    s.c.push_back({Scalar::one(f)});
    for (std::size_t k = 1; k <= k_count; ++k) {
        if (s.root_at && static_cast<long>(k) >= *s.root_at) break;
        std::vector<Scalar> row(k + 1, Scalar::zero(f));
        Scalar factor = s.d[k] / s.r[k];
        for (std::size_t r = 0; r < k; ++r) row[r] = s.c[k - 1][r] * factor;
        row[k] = s.a[k] / s.r[k];
        s.c.push_back(std::move(row));
    }
    return s;
}

Scalar d_closed_form(const AFamilyParams& params, long k) {
    const Field& f = params.d.field();
    Scalar e = Scalar::one(f) - params.d;
    if (e == -params.a) return Scalar::of(f, k) * params.d * e.pow(k - 1);
    return params.d * (e.pow(k) - (-params.a).pow(k)) / (e + params.a);
}

RootReport r_root_check(const AFamilyParams& params, long k_max) {
    params.validate();
    const Field& f = params.d.field();
    Scalar one = Scalar::one(f);
    Scalar e = one - params.d;
    RootReport rep;
    rep.bound = k_max;

    if (e == -params.a) {
        // r_k = e^{k-1}(k d + e); a root needs d != 0 and 1 - 1/d a
        // positive integer >= 2
        rep.basis = "closed-form";
        if (params.d.is_zero() || f.kind() != FieldKind::Rational) {
            if (params.d.is_zero()) {
                rep.verdict = RootVerdict::Clean;
                return rep;
            }
            // prime fields: k d + e = 0 has the single solution k = -e/d,
            // hit at every k in that residue class
            Scalar kk = -(e / params.d);
            for (long k = 2; k <= k_max; ++k)
                if (Scalar::of(f, k) == kk) {
                    rep.verdict = RootVerdict::RootAt;
                    rep.k = k;
                    return rep;
                }
            rep.verdict = RootVerdict::Clean;
            return rep;
        }
        mpq_class kq = mpq_class(1) - 1 / params.d.rational_value();
        if (kq.get_den() == 1 && kq.get_num() >= 2 && kq.get_num().fits_slong_p()) {
            rep.verdict = RootVerdict::RootAt;
            rep.k = kq.get_num().get_si();
        } else {
            rep.verdict = RootVerdict::Clean;
        }
        return rep;
    }

    // degenerate edges where the ratio condition cannot hold
    if (params.a.is_zero() || e.is_zero() || params.d.is_zero() || (one + params.a).is_zero()) {
        rep.verdict = RootVerdict::Clean;
        rep.basis = "degenerate-edge";
        return rep;
    }

    // r_k = 0 iff (-a/e)^k = (1+a)/(1-e); scan by exact iteration
    rep.basis = "exact-scan";
    Scalar ratio = (-params.a) / e;
    Scalar target = (one + params.a) / (one - e);
    Scalar power = one;
    for (long k = 1; k <= k_max; ++k) {
        power = power * ratio;
        if (power == target) {
            rep.verdict = RootVerdict::RootAt;
            rep.k = k;
            return rep;
        }
        if (f.kind() == FieldKind::Rational) {
            // |ratio| != 1 here, so |power| is strictly monotone: once it
            // passes |target| no later k can match
            mpq_class ap = abs(power.rational_value());
            mpq_class at = abs(target.rational_value());
            mpq_class ar = abs(ratio.rational_value());
            if ((ar > 1 && ap > at) || (ar < 1 && ap < at)) {
                rep.verdict = RootVerdict::Clean;
                rep.basis = "exact-scan+monotone-bound";
                return rep;
            }
            if (ar == 1) {
                // ratio = -1 (e = a): powers alternate between two values
                if (k >= 2) {
                    rep.verdict = RootVerdict::Clean;
                    rep.basis = "exact-scan+period-bound";
                    return rep;
                }
            }
        }
    }
    rep.verdict = RootVerdict::Undetermined;
    // the absolute-value localization that settles this over the complex
    // numbers has no exact-field analogue, so the scan stays bounded here
    rep.basis = "exact-scan; no magnitude bound available in this field";
    return rep;
}

namespace {

BandMatrix assemble_block_rows(const Field& f, long n, std::size_t row_count,
                               const std::vector<std::vector<Scalar>>& coeff) {
    std::vector<BandMatrix::Row> rows(row_count);
    for (std::size_t i = 0; i < row_count; ++i) {
        std::size_t k = i / static_cast<std::size_t>(n);
        for (std::size_t r = 0; r < coeff[k].size(); ++r) {
            const Scalar& v = coeff[k][r];
            if (v.is_zero()) continue;
            std::size_t col = r * static_cast<std::size_t>(n);
            if (col < row_count) rows[i][col] = v;
            if (col + 1 < row_count) rows[i][col + 1] = -v;
        }
    }
    return BandMatrix::from_rows(f, row_count, row_count, std::move(rows), 1);
}

}  // namespace

BandMatrix build_a_family(const AFamilyParams& params, std::size_t row_count) {
    params.validate();
    if (row_count < 1) throw BadParams("empty truncation");
    long n = params.n;
    std::size_t k_top = (row_count - 1) / static_cast<std::size_t>(n);
    KSequences s = k_sequences(params, k_top);
    if (s.root_at && *s.root_at <= static_cast<long>(k_top))
        throw RootHit("family obstruction vanishes at index " + std::to_string(*s.root_at),
                      *s.root_at);
    return assemble_block_rows(params.d.field(), n, row_count, s.c);
}

BandMatrix build_special_example(std::size_t row_count, const Field& f) {
    std::vector<BandMatrix::Row> rows(row_count);
    for (std::size_t i = 0; i < row_count; ++i) {
        rows[i][0] = Scalar::one(f);
        if (row_count > 1) rows[i][1] = -Scalar::one(f);
    }
    return BandMatrix::from_rows(f, row_count, row_count, std::move(rows), 1);
}

BandMatrix a_family_degenerate(const AFamilyParams& params, std::size_t row_count) {
    params.validate();
    const Field& f = params.d.field();
    Scalar one = Scalar::one(f);
    long n = params.n;
    std::size_t k_top = row_count == 0 ? 0 : (row_count - 1) / static_cast<std::size_t>(n);

    std::vector<std::vector<Scalar>> coeff;
    if (params.a.is_zero()) {
        // geometric rows d^k (E_0 - E_1)
        Scalar dk = one;
        for (std::size_t k = 0; k <= k_top; ++k) {
            coeff.push_back({dk});
            dk = dk * params.d;
        }
    } else if (params.d.is_zero()) {
        // block k carries (-a)^k at columns (kn, kn+1) only
        Scalar ak = one;
        for (std::size_t k = 0; k <= k_top; ++k) {
            std::vector<Scalar> row(k + 1, Scalar::zero(f));
            row[k] = ak;
            coeff.push_back(std::move(row));
            ak = ak * (-params.a);
        }
    } else if (params.d == one) {
        // cumulative rows (1, -1, -a, a, -a, a, ...)
        for (std::size_t k = 0; k <= k_top; ++k) {
            std::vector<Scalar> row(k + 1, -params.a);
            row[0] = one;
            coeff.push_back(std::move(row));
        }
    } else {
        throw BadParams("degenerate members have d = 0, a = 0 or d = 1");
    }
    return assemble_block_rows(f, n, row_count, coeff);
}

}  // namespace twistplane::afamily
