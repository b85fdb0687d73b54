#include "twistplane/bfamily.hpp"

#include <algorithm>
#include <string>

namespace twistplane::bfamily {

SeqPrefix::SeqPrefix(long n, std::vector<long> values) : n_(n), values_(std::move(values)) {
    if (n_ < 2) throw BadParams("marker step must be at least 2");
    if (values_.empty()) throw BadParams("empty prefix");
    if (values_.front() != n_)
        throw BadParams("prefix must start at " + std::to_string(n_));
    for (std::size_t i = 1; i < values_.size(); ++i) {
        long gap = values_[i] - values_[i - 1];
        if (gap != n_ && gap != n_ + 1)
            throw BadParams("gap " + std::to_string(gap) + " outside {n, n+1}");
    }
}

long SeqPrefix::at(std::size_t r) const {
    if (r < 1 || r > values_.size())
        throw IndexOutOfRange("marker index " + std::to_string(r) + " out of range");
    return values_[r - 1];
}

bool SeqPrefix::contains(long value) const {
    return std::binary_search(values_.begin(), values_.end(), value);
}

long delta(const SeqPrefix& prefix, std::size_t r, std::size_t j) {
    if (!(0 < j && j < r && r <= prefix.length()))
        throw IndexOutOfRange("defect indices need 0 < j < r <= length");
    return prefix.at(r) - prefix.at(j) - prefix.at(r - j);
}

bool is_almost_balanced(const SeqPrefix& prefix) {
    for (std::size_t r = 2; r <= prefix.length(); ++r)
        for (std::size_t j = 1; j < r; ++j) {
            long d = delta(prefix, r, j);
            if (d != 0 && d != 1) return false;
        }
    return true;
}

std::vector<SeqPrefix> extend_prefix(const SeqPrefix& prefix) {
    if (!is_almost_balanced(prefix)) throw NotAlmostBalanced("prefix is not almost balanced");
    std::vector<SeqPrefix> out;
    for (long gap : {prefix.n(), prefix.n() + 1}) {
        std::vector<long> v = prefix.values();
        v.push_back(prefix.last() + gap);
        SeqPrefix candidate(prefix.n(), std::move(v));
        if (is_almost_balanced(candidate)) out.push_back(std::move(candidate));
    }
    return out;
}

std::vector<SeqPrefix> enumerate_prefixes(long n, std::size_t r) {
    if (r < 1) throw BadParams("length must be positive");
    std::vector<SeqPrefix> frontier{SeqPrefix(n, {n})};
    for (std::size_t len = 1; len < r; ++len) {
        std::vector<SeqPrefix> next;
        for (const SeqPrefix& p : frontier)
            for (SeqPrefix& q : extend_prefix(p)) next.push_back(std::move(q));
        frontier = std::move(next);
    }
    return frontier;  // DFS by increasing gap keeps lexicographic order
}

std::optional<Violation> violation_witness(const SeqPrefix& prefix) {
    for (std::size_t r = 2; r <= prefix.length(); ++r)
        for (std::size_t j = 1; j < r; ++j) {
            long d = delta(prefix, r, j);
            if (d != 0 && d != 1) return Violation{r, j, d, d < 0 ? 1 : 2};
        }
    return std::nullopt;
}

BFamilyParams::BFamilyParams(Scalar a_, SeqPrefix prefix_)
    : a(std::move(a_)), prefix(std::move(prefix_)) {
    if (a.is_zero() || a == -Scalar::one(a.field()))
        throw BadParams("parameter a must avoid 0 and -1");
}

Scalar BFamilyParams::d() const { return (Scalar::one(a.field()) + a).inverse(); }

std::size_t covered_rows(const SeqPrefix& prefix) {
    return static_cast<std::size_t>(prefix.last() + prefix.n());
}

namespace {

/// m_i for 0 <= i < count: 1 up to the first marker, then d^r on
/// (L_r, L_{r+1}].
std::vector<Scalar> m_values(const SeqPrefix& prefix, const Scalar& d, std::size_t count) {
    std::vector<Scalar> m(count, Scalar::one(d.field()));
    Scalar power = Scalar::one(d.field());
    std::size_t r = 0;  // markers passed
    for (std::size_t i = 0; i < count; ++i) {
        m[i] = power;
        if (r < prefix.length() && static_cast<long>(i) == prefix.at(r + 1)) {
            power = power * d;
            ++r;
        }
    }
    return m;
}

}  // namespace

BandMatrix build_b_matrix(const BFamilyParams& params, std::size_t row_count) {
    std::size_t covered = covered_rows(params.prefix);
    if (row_count > covered)
        throw PrefixTooShort("prefix pins down " + std::to_string(covered) +
                             " rows, requested " + std::to_string(row_count));
    return build_b_matrix_truncation(params, row_count);
}

BandMatrix build_b_matrix_truncation(const BFamilyParams& params, std::size_t n_size) {
    if (n_size == 0) throw BadParams("empty truncation");
    const SeqPrefix& L = params.prefix;
    const Field& f = params.a.field();
    Scalar d = params.d();
    Scalar one = Scalar::one(f);

    std::size_t covered = covered_rows(L);
    std::size_t exact = std::min(covered, n_size);

    std::vector<BandMatrix::Row> rows(n_size);
    Scalar dpow = one;  // d^k after passing k markers
    std::size_t k = 0;
    for (std::size_t j = 0; j < std::min(covered, n_size); ++j) {
        bool marker = k < L.length() && static_cast<long>(j) == L.at(k + 1);
        if (marker) {
            Scalar head = dpow * d;
            rows[j][0] = head;
            if (n_size > 1) rows[j][1] = -dpow;
            if (j + 1 < n_size) rows[j][j + 1] = params.a;
            dpow = head;
            ++k;
        } else {
            rows[j][0] = dpow;
            if (n_size > 1) rows[j][1] = -dpow;
        }
    }
    return BandMatrix::from_rows(f, n_size, exact, std::move(rows), 1);
}

BDecomposition decompose_b(const BFamilyParams& params, std::size_t n_size) {
    const SeqPrefix& L = params.prefix;
    const Field& f = params.a.field();
    std::size_t covered = covered_rows(L);
    if (n_size > covered)
        throw PrefixTooShort("prefix pins down " + std::to_string(covered) +
                             " rows, requested " + std::to_string(n_size));

    std::vector<Scalar> m = m_values(L, params.d(), n_size + 1);

    std::vector<Scalar> nvec(n_size, Scalar::zero(f));
    for (std::size_t i = 0; i < n_size; ++i)
        if (L.contains(static_cast<long>(i))) nvec[i] = params.a;

    std::vector<BandMatrix::Row> m1_rows(n_size);
    for (std::size_t i = 0; i < n_size; ++i) m1_rows[i][0] = m[i];
    BandMatrix m1 = BandMatrix::from_rows(f, n_size, n_size, std::move(m1_rows), 0);
    BandMatrix b = BandMatrix::diagonal(nvec);

    return BDecomposition{std::move(m1), std::move(b), std::move(m), std::move(nvec)};
}

}  // namespace twistplane::bfamily
