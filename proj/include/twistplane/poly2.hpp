#pragma once

#include <map>
#include <string>
#include <utility>

#include "twistplane/scalar.hpp"

namespace twistplane {

/// Sparse bivariate polynomial with exact coefficients. The two variables
/// are anonymous; exponent pairs (i, j) index the first and second slot.
/// No zero coefficient is ever stored.
class Poly2 {
public:
    using Exponents = std::pair<long, long>;

    explicit Poly2(const Field& f = Field::rationals()) : field_(f) {}

    static Poly2 constant(const Scalar& c);
    static Poly2 monomial(long i, long j, const Scalar& coef);

    const Field& field() const { return field_; }
    const std::map<Exponents, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(long i, long j) const;

    Poly2 operator+(const Poly2& rhs) const;
    Poly2 operator-(const Poly2& rhs) const;
    Poly2 operator*(const Poly2& rhs) const;
    Poly2 scaled(const Scalar& c) const;
    bool operator==(const Poly2& rhs) const;
    bool operator!=(const Poly2& rhs) const { return !(*this == rhs); }

    /// Exact evaluation at (first, second) by Horner accumulation along
    /// the first variable, then the second.
    Scalar eval(const Scalar& first, const Scalar& second) const;

    std::string to_string(const std::string& v1 = "b", const std::string& v2 = "c") const;

private:
    Field field_;
    std::map<Exponents, Scalar> terms_;
    void insert(long i, long j, const Scalar& c);
};

}  // namespace twistplane
