#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>

#include "twistplane/errors.hpp"

namespace twistplane {

enum class FieldKind { Rational, Prime, QuadExt };

/// Base field descriptor: the rationals, a small prime field, or a quadratic
/// extension Q(sqrt(D)) with D a non-square rational.
class Field {
public:
    Field() = default;  // the rationals
    static Field rationals();
    static Field prime(unsigned long p);          // p prime, p < 2^31
    static Field quad_ext(const mpq_class& d);    // d non-square, nonzero

    FieldKind kind() const { return kind_; }
    unsigned long modulus() const;
    const mpq_class& radicand() const;

    bool operator==(const Field& other) const;
    bool operator!=(const Field& other) const { return !(*this == other); }

    std::string to_string() const;                // "rational" | "fp:7" | "quadext:-3/4"
    static Field parse(const std::string& text);

private:
    FieldKind kind_ = FieldKind::Rational;
    unsigned long p_ = 0;
    mpq_class d_;
};

/// Exact field element. Immutable value type; all operations return new
/// values. Rationals embed canonically into any Q(sqrt(D)), so mixed
/// rational/quad-extension operands are promoted instead of rejected;
/// every other mix throws FieldMismatch.
class Scalar {
public:
    Scalar();  // rational zero

    static Scalar rational(mpq_class v);
    static Scalar integer(long v);
    static Scalar fraction(long num, long den);
    static Scalar prime(unsigned long p, long v);
    static Scalar quad(const mpq_class& d, mpq_class x, mpq_class y);
    static Scalar zero(const Field& f);
    static Scalar one(const Field& f);
    static Scalar of(const Field& f, long v);     // the image of an integer

    const Field& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& rhs) const;
    Scalar operator-(const Scalar& rhs) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& rhs) const;
    Scalar operator/(const Scalar& rhs) const;
    Scalar inverse() const;                       // throws DivisionByZero on 0

    bool operator==(const Scalar& rhs) const;
    bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

    Scalar pow(long e) const;                     // negative e inverts

    /// Rational part accessors. rational_value throws on non-rational input.
    const mpq_class& rational_value() const;
    const mpq_class& quad_x() const { return x_; }
    const mpq_class& quad_y() const { return y_; }
    unsigned long prime_value() const { return r_; }

    std::string to_string() const;                // "p/q" | "r mod p" | "x+y*sqrt(D)"
    static Scalar parse(const Field& f, const std::string& text);

private:
    Field field_;
    mpq_class x_;       // rational value, or x of x + y*sqrt(D)
    mpq_class y_;       // y of x + y*sqrt(D)
    unsigned long r_ = 0;  // residue for prime fields

    static Field join(const Field& a, const Field& b);
    Scalar promoted(const Field& f) const;
};

/// Exact square root of a nonnegative rational, when it is a perfect square.
std::optional<mpq_class> exact_sqrt(const mpq_class& v);

/// Square root in F_p by exhaustive search (fields in use are small).
std::optional<unsigned long> prime_sqrt(unsigned long p, unsigned long v);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace twistplane
