#include "twistplane/band_matrix.hpp"

#include <algorithm>

namespace twistplane {

void BandMatrix::put(std::size_t i, std::size_t j, const Scalar& v) {
    if (v.is_zero())
        rows_[i].erase(j);
    else
        rows_[i][j] = v;
}

BandMatrix BandMatrix::zero(const Field& f, std::size_t n) {
    BandMatrix m(f, n);
    m.exact_rows_ = n;
    m.upper_band_ = 0;
    return m;
}

BandMatrix BandMatrix::identity(const Field& f, std::size_t n) {
    BandMatrix m(f, n);
    for (std::size_t i = 0; i < n; ++i) m.put(i, i, Scalar::one(f));
    m.exact_rows_ = n;
    m.upper_band_ = 1;  // counts as banded for the window rule
    return m;
}

BandMatrix BandMatrix::shift_y(const Field& f, std::size_t n) { return shift_y_power(f, n, 1); }

BandMatrix BandMatrix::shift_z(const Field& f, std::size_t n) { return shift_z_power(f, n, 1); }

BandMatrix BandMatrix::shift_y_power(const Field& f, std::size_t n, std::size_t k) {
    if (n == 0) throw SizeMismatch("empty truncation");
    BandMatrix m(f, n);
    for (std::size_t i = 0; i + k < n; ++i) m.put(i, i + k, Scalar::one(f));
    m.exact_rows_ = n;
    m.upper_band_ = static_cast<int>(k);
    return m;
}

BandMatrix BandMatrix::shift_z_power(const Field& f, std::size_t n, std::size_t k) {
    if (n == 0) throw SizeMismatch("empty truncation");
    BandMatrix m(f, n);
    for (std::size_t i = k; i < n; ++i) m.put(i, i - k, Scalar::one(f));
    m.exact_rows_ = n;
    m.upper_band_ = -static_cast<int>(k);
    return m;
}

BandMatrix BandMatrix::diagonal(const std::vector<Scalar>& entries) {
    if (entries.empty()) throw SizeMismatch("empty diagonal");
    BandMatrix m(entries.front().field(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.put(i, i, entries[i]);
    m.exact_rows_ = entries.size();
    m.upper_band_ = 0;
    return m;
}

BandMatrix BandMatrix::from_rows(const Field& f, std::size_t n, std::size_t exact_rows,
                                 std::vector<Row> rows, int upper_band) {
    if (n == 0) throw SizeMismatch("empty truncation");
    if (rows.size() > n) throw SizeMismatch("more rows than the truncation holds");
    if (exact_rows > n) throw SizeMismatch("exact_rows exceeds truncation size");
    BandMatrix m(f, n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [j, v] : rows[i]) {
            if (j >= n) throw SizeMismatch("column index outside truncation");
            m.put(i, j, v);
        }
    m.exact_rows_ = exact_rows;
    m.upper_band_ = upper_band;
    return m;
}

Scalar BandMatrix::entry(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) return Scalar::zero(field_);
    auto it = rows_[i].find(j);
    return it == rows_[i].end() ? Scalar::zero(field_) : it->second;
}

std::vector<Scalar> BandMatrix::dense_row(std::size_t i, std::size_t len) const {
    std::vector<Scalar> out(len, Scalar::zero(field_));
    if (i < n_)
        for (const auto& [j, v] : rows_[i])
            if (j < len) out[j] = v;
    return out;
}

BandMatrix BandMatrix::add(const BandMatrix& rhs) const {
    if (n_ != rhs.n_) throw SizeMismatch("size mismatch in addition");
    BandMatrix out = *this;
    out.exact_rows_ = std::min(exact_rows_, rhs.exact_rows_);
    out.upper_band_ = std::max(upper_band_, rhs.upper_band_);
    for (std::size_t i = 0; i < n_; ++i)
        for (const auto& [j, v] : rhs.rows_[i]) out.put(i, j, out.entry(i, j) + v);
    return out;
}

BandMatrix BandMatrix::sub(const BandMatrix& rhs) const { return add(rhs.negated()); }

BandMatrix BandMatrix::negated() const {
    BandMatrix out = *this;
    for (auto& row : out.rows_)
        for (auto& [j, v] : row) v = -v;
    return out;
}

BandMatrix BandMatrix::scaled(const Scalar& c) const {
    BandMatrix out(field_, n_);
    out.exact_rows_ = exact_rows_;
    out.upper_band_ = upper_band_;
    if (c.is_zero()) return out;
    for (std::size_t i = 0; i < n_; ++i)
        for (const auto& [j, v] : rows_[i]) out.put(i, j, v * c);
    return out;
}

BandMatrix BandMatrix::with_entry(std::size_t i, std::size_t j, const Scalar& v) const {
    if (i >= n_ || j >= n_) throw SizeMismatch("entry outside truncation");
    BandMatrix out = *this;
    out.put(i, j, v);
    out.upper_band_ = std::max<long>(out.upper_band_, static_cast<long>(j) - static_cast<long>(i));
    return out;
}

BandMatrix BandMatrix::with_exact_rows(std::size_t e) const {
    if (e > exact_rows_) throw SizeMismatch("cannot raise the exactness horizon");
    BandMatrix out = *this;
    out.exact_rows_ = e;
    return out;
}

bool BandMatrix::is_zero_on_window() const {
    for (std::size_t i = 0; i < exact_rows_; ++i)
        if (!rows_[i].empty()) return false;
    return true;
}

std::optional<BandMatrix::Difference> BandMatrix::first_difference(const BandMatrix& a,
                                                                   const BandMatrix& b) {
    if (a.n_ != b.n_) throw SizeMismatch("size mismatch in comparison");
    std::size_t window = std::min(a.exact_rows_, b.exact_rows_);
    for (std::size_t i = 0; i < window; ++i) {
        std::size_t limit = 0;
        if (!a.rows_[i].empty()) limit = std::max(limit, a.rows_[i].rbegin()->first + 1);
        if (!b.rows_[i].empty()) limit = std::max(limit, b.rows_[i].rbegin()->first + 1);
        for (std::size_t j = 0; j < limit; ++j) {
            Scalar x = a.entry(i, j), y = b.entry(i, j);
            if (x != y) return Difference{i, j, x, y};
        }
    }
    return std::nullopt;
}

bool BandMatrix::equal_on_window(const BandMatrix& a, const BandMatrix& b) {
    return !first_difference(a, b).has_value();
}

BandMatrix mat_mul(const BandMatrix& a, const BandMatrix& b) {
    if (a.size() != b.size()) throw SizeMismatch("size mismatch in product");
    if (a.field() != b.field() &&
        !(a.field().kind() == FieldKind::Rational || b.field().kind() == FieldKind::Rational))
        throw FieldMismatch("field mismatch in product");
    const Field& f = a.field().kind() == FieldKind::Rational ? b.field() : a.field();

    long e = std::min<long>(static_cast<long>(a.exact_rows()) - 1,
                            static_cast<long>(b.exact_rows()) - a.upper_band());
    e = std::min<long>(e, static_cast<long>(a.size()));
    if (e <= 0)
        throw HorizonExhausted("product has no exact rows left", a.size() + 2);

    BandMatrix out = BandMatrix::zero(f, a.size());
    out.exact_rows_ = static_cast<std::size_t>(e);
    out.upper_band_ = a.upper_band() + b.upper_band();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (const auto& [l, av] : a.row(i)) {
            for (const auto& [j, bv] : b.row(l)) {
                out.put(i, j, out.entry(i, j) + av * bv);
            }
        }
    }
    return out;
}

BandMatrix mat_pow(const BandMatrix& a, std::size_t k) {
    if (k == 0) return BandMatrix::identity(a.field(), a.size());
    BandMatrix acc = a;
    for (std::size_t i = 1; i < k; ++i) acc = mat_mul(a, acc);
    return acc;
}

std::optional<long> valuation(const BandMatrix& m) {
    std::optional<long> best;
    for (std::size_t i = 0; i < m.exact_rows(); ++i)
        for (const auto& [j, v] : m.row(i)) {
            long w = static_cast<long>(i) - static_cast<long>(j);
            if (!best || w < *best) best = w;
        }
    return best;
}

BandMatrix homogeneous_component(const BandMatrix& m, long k) {
    std::vector<BandMatrix::Row> rows(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& [j, v] : m.row(i))
            if (static_cast<long>(i) - static_cast<long>(j) == k) rows[i][j] = v;
    return BandMatrix::from_rows(m.field(), m.size(), m.exact_rows(), std::move(rows),
                                 static_cast<int>(-k));
}

}  // namespace twistplane
