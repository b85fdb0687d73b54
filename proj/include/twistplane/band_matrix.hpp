#pragma once

#include <map>
#include <optional>
#include <vector>

#include "twistplane/scalar.hpp"

namespace twistplane {

/// Finite truncation of an infinite matrix over an exact field.
///
/// A BandMatrix stores the leading N x N block together with two pieces of
/// metadata about the infinite matrix it truncates:
///
///  * exact_rows: the stored entries of rows i < exact_rows agree with the
///    infinite matrix (restricted to columns < N).
///  * upper_band: a conservative bound u such that every entry of the
///    infinite matrix satisfies j <= i + u. The twisting matrices of
///    interest all satisfy the band condition j <= i + 1; only the shift
///    powers Y^k, Z^k and single homogeneous components carry other values.
///
/// Multiplying by a matrix with upper_band u consumes exactness: row i of
/// A*B reads rows <= i + u of B, and the last exact row of A may be missing
/// entries in columns >= N, so
///
///     exact_rows(A*B) = min(exact_rows(A) - 1, exact_rows(B) - u(A)).
///
/// All values are immutable after construction and safe to share.
class BandMatrix {
public:
    using Row = std::map<std::size_t, Scalar>;

    static BandMatrix zero(const Field& f, std::size_t n);
    static BandMatrix identity(const Field& f, std::size_t n);
    /// Superdiagonal shift Y, Y_{i,j} = [j == i+1].
    static BandMatrix shift_y(const Field& f, std::size_t n);
    /// Subdiagonal shift Z, Z_{i,j} = [i == j+1].
    static BandMatrix shift_z(const Field& f, std::size_t n);
    /// Y^k and Z^k built directly, with full truncation exactness.
    static BandMatrix shift_y_power(const Field& f, std::size_t n, std::size_t k);
    static BandMatrix shift_z_power(const Field& f, std::size_t n, std::size_t k);
    static BandMatrix diagonal(const std::vector<Scalar>& entries);
    /// General constructor. Rows beyond `rows.size()` are zero-filled.
    static BandMatrix from_rows(const Field& f, std::size_t n, std::size_t exact_rows,
                                std::vector<Row> rows, int upper_band = 1);

    const Field& field() const { return field_; }
    std::size_t size() const { return n_; }
    std::size_t exact_rows() const { return exact_rows_; }
    int upper_band() const { return upper_band_; }

    Scalar entry(std::size_t i, std::size_t j) const;
    const Row& row(std::size_t i) const { return rows_[i]; }
    /// Row as a dense vector of the first `len` columns.
    std::vector<Scalar> dense_row(std::size_t i, std::size_t len) const;

    BandMatrix add(const BandMatrix& rhs) const;
    BandMatrix sub(const BandMatrix& rhs) const;
    BandMatrix negated() const;
    BandMatrix scaled(const Scalar& c) const;
    /// Copy with one entry replaced; exactness metadata is preserved.
    BandMatrix with_entry(std::size_t i, std::size_t j, const Scalar& v) const;
    /// Copy with the exactness horizon lowered to `e`.
    BandMatrix with_exact_rows(std::size_t e) const;

    bool is_zero_on_window() const;

    /// First position where the two matrices differ on the joint exact
    /// window, scanning rows then columns.
    struct Difference {
        std::size_t i, j;
        Scalar lhs, rhs;
    };
    static std::optional<Difference> first_difference(const BandMatrix& a, const BandMatrix& b);
    static bool equal_on_window(const BandMatrix& a, const BandMatrix& b);

private:
    BandMatrix(Field f, std::size_t n) : field_(std::move(f)), n_(n), rows_(n) {}

    Field field_;
    std::size_t n_ = 0;
    std::size_t exact_rows_ = 0;
    int upper_band_ = 1;
    std::vector<Row> rows_;

    void put(std::size_t i, std::size_t j, const Scalar& v);
    friend BandMatrix mat_mul(const BandMatrix&, const BandMatrix&);
};

/// Truncated product. Throws SizeMismatch on unequal sizes and
/// HorizonExhausted when no exact rows would survive.
BandMatrix mat_mul(const BandMatrix& a, const BandMatrix& b);

/// Left-multiplication power A^k (k >= 0).
BandMatrix mat_pow(const BandMatrix& a, std::size_t k);

/// Valuation w(M) = inf{i - j : M_{i,j} != 0} over the exact window;
/// nullopt encodes +infinity (the zero matrix).
std::optional<long> valuation(const BandMatrix& m);

/// Homogeneous component of weight k: entries with i - j == k.
BandMatrix homogeneous_component(const BandMatrix& m, long k);

}  // namespace twistplane
