#include "twistplane/scalar.hpp"

#include <cctype>
#include <ostream>
#include <regex>
#include <sstream>

namespace twistplane {

namespace {

bool is_prime_ul(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

unsigned long mod_add(unsigned long a, unsigned long b, unsigned long p) {
    return (a + b) % p;
}

unsigned long mod_mul(unsigned long a, unsigned long b, unsigned long p) {
    return (a * b) % p;  // p < 2^31 keeps the product inside 64 bits
}

unsigned long mod_pow(unsigned long a, unsigned long e, unsigned long p) {
    unsigned long acc = 1 % p;
    while (e) {
        if (e & 1) acc = mod_mul(acc, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return acc;
}

mpq_class parse_rational_text(const std::string& text) {
    static const std::regex re(R"(^\s*(-?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw ParseError("cannot parse rational: '" + text + "'");
    mpq_class q(m[2].matched ? m[1].str() + "/" + m[2].str() : m[1].str());
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::string rational_text(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::rationals() {
    Field f;
    f.kind_ = FieldKind::Rational;
    return f;
}

Field Field::prime(unsigned long p) {
    if (p >= (1ul << 31)) throw BadParams("prime modulus too large");
    if (!is_prime_ul(p)) throw BadParams("modulus " + std::to_string(p) + " is not prime");
    Field f;
    f.kind_ = FieldKind::Prime;
    f.p_ = p;
    return f;
}

Field Field::quad_ext(const mpq_class& d) {
    if (d == 0) throw BadParams("radicand must be nonzero");
    if (exact_sqrt(d))
        throw BadParams("radicand " + rational_text(d) + " is a square; use the rationals");
    Field f;
    f.kind_ = FieldKind::QuadExt;
    f.d_ = d;
    return f;
}

unsigned long Field::modulus() const {
    if (kind_ != FieldKind::Prime) throw BadParams("field has no modulus");
    return p_;
}

const mpq_class& Field::radicand() const {
    if (kind_ != FieldKind::QuadExt) throw BadParams("field has no radicand");
    return d_;
}

bool Field::operator==(const Field& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case FieldKind::Rational: return true;
        case FieldKind::Prime: return p_ == other.p_;
        case FieldKind::QuadExt: return d_ == other.d_;
    }
    return false;
}

std::string Field::to_string() const {
    switch (kind_) {
        case FieldKind::Rational: return "rational";
        case FieldKind::Prime: return "fp:" + std::to_string(p_);
        case FieldKind::QuadExt: return "quadext:" + rational_text(d_);
    }
    return "rational";
}

Field Field::parse(const std::string& text) {
    if (text == "rational" || text == "q") return rationals();
    if (text.rfind("fp:", 0) == 0) {
        unsigned long p = std::stoul(text.substr(3));
        return prime(p);
    }
    if (text.rfind("quadext:", 0) == 0)
        return quad_ext(parse_rational_text(text.substr(8)));
    throw ParseError("unknown field descriptor: '" + text + "'");
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() : field_(Field::rationals()), x_(0) {}

Scalar Scalar::rational(mpq_class v) {
    Scalar s;
    s.field_ = Field::rationals();
    s.x_ = std::move(v);
    return s;
}

Scalar Scalar::integer(long v) { return rational(mpq_class(v)); }

Scalar Scalar::fraction(long num, long den) {
    if (den == 0) throw DivisionByZero("fraction with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return rational(q);
}

Scalar Scalar::prime(unsigned long p, long v) {
    Scalar s;
    s.field_ = Field::prime(p);
    long r = v % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    s.r_ = static_cast<unsigned long>(r);
    return s;
}

Scalar Scalar::quad(const mpq_class& d, mpq_class x, mpq_class y) {
    Scalar s;
    s.field_ = Field::quad_ext(d);
    s.x_ = std::move(x);
    s.y_ = std::move(y);
    return s;
}

Scalar Scalar::zero(const Field& f) {
    Scalar s;
    s.field_ = f;
    return s;
}

Scalar Scalar::one(const Field& f) {
    Scalar s;
    s.field_ = f;
    if (f.kind() == FieldKind::Prime)
        s.r_ = 1 % f.modulus();
    else
        s.x_ = 1;
    return s;
}

Scalar Scalar::of(const Field& f, long v) {
    if (f.kind() == FieldKind::Prime) return prime(f.modulus(), v);
    Scalar s;
    s.field_ = f;
    s.x_ = v;
    return s;
}

bool Scalar::is_zero() const {
    switch (field_.kind()) {
        case FieldKind::Rational: return x_ == 0;
        case FieldKind::Prime: return r_ == 0;
        case FieldKind::QuadExt: return x_ == 0 && y_ == 0;
    }
    return false;
}

bool Scalar::is_one() const {
    switch (field_.kind()) {
        case FieldKind::Rational: return x_ == 1;
        case FieldKind::Prime: return r_ == 1 % field_.modulus();
        case FieldKind::QuadExt: return x_ == 1 && y_ == 0;
    }
    return false;
}

Field Scalar::join(const Field& a, const Field& b) {
    if (a == b) return a;
    if (a.kind() == FieldKind::Rational && b.kind() == FieldKind::QuadExt) return b;
    if (b.kind() == FieldKind::Rational && a.kind() == FieldKind::QuadExt) return a;
    throw FieldMismatch("incompatible fields " + a.to_string() + " and " + b.to_string());
}

Scalar Scalar::promoted(const Field& f) const {
    if (field_ == f) return *this;
    // rational -> quadratic extension is the only admitted promotion
    Scalar s;
    s.field_ = f;
    s.x_ = x_;
    s.y_ = 0;
    return s;
}

Scalar Scalar::operator+(const Scalar& rhs) const {
    Field f = join(field_, rhs.field_);
    Scalar a = promoted(f), b = rhs.promoted(f), out = Scalar::zero(f);
    switch (f.kind()) {
        case FieldKind::Rational: out.x_ = a.x_ + b.x_; break;
        case FieldKind::Prime: out.r_ = mod_add(a.r_, b.r_, f.modulus()); break;
        case FieldKind::QuadExt:
            out.x_ = a.x_ + b.x_;
            out.y_ = a.y_ + b.y_;
            break;
    }
    return out;
}

Scalar Scalar::operator-() const {
    Scalar out = Scalar::zero(field_);
    switch (field_.kind()) {
        case FieldKind::Rational: out.x_ = -x_; break;
        case FieldKind::Prime: out.r_ = r_ == 0 ? 0 : field_.modulus() - r_; break;
        case FieldKind::QuadExt:
            out.x_ = -x_;
            out.y_ = -y_;
            break;
    }
    return out;
}

Scalar Scalar::operator-(const Scalar& rhs) const { return *this + (-rhs); }

Scalar Scalar::operator*(const Scalar& rhs) const {
    Field f = join(field_, rhs.field_);
    Scalar a = promoted(f), b = rhs.promoted(f), out = Scalar::zero(f);
    switch (f.kind()) {
        case FieldKind::Rational: out.x_ = a.x_ * b.x_; break;
        case FieldKind::Prime: out.r_ = mod_mul(a.r_, b.r_, f.modulus()); break;
        case FieldKind::QuadExt:
            // (x1 + y1 s)(x2 + y2 s) = x1x2 + D y1y2 + (x1y2 + x2y1) s
            out.x_ = a.x_ * b.x_ + f.radicand() * a.y_ * b.y_;
            out.y_ = a.x_ * b.y_ + a.y_ * b.x_;
            break;
    }
    return out;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    Scalar out = Scalar::zero(field_);
    switch (field_.kind()) {
        case FieldKind::Rational: out.x_ = 1 / x_; break;
        case FieldKind::Prime:
            out.r_ = mod_pow(r_, field_.modulus() - 2, field_.modulus());
            break;
        case FieldKind::QuadExt: {
            // 1/(x + y s) = (x - y s)/(x^2 - D y^2); the norm only vanishes at 0
            mpq_class norm = x_ * x_ - field_.radicand() * y_ * y_;
            out.x_ = x_ / norm;
            out.y_ = -y_ / norm;
            break;
        }
    }
    return out;
}

Scalar Scalar::operator/(const Scalar& rhs) const { return *this * rhs.inverse(); }

bool Scalar::operator==(const Scalar& rhs) const {
    Field f;
    try {
        f = join(field_, rhs.field_);
    } catch (const FieldMismatch&) {
        return false;
    }
    Scalar a = promoted(f), b = rhs.promoted(f);
    switch (f.kind()) {
        case FieldKind::Rational: return a.x_ == b.x_;
        case FieldKind::Prime: return a.r_ == b.r_;
        case FieldKind::QuadExt: return a.x_ == b.x_ && a.y_ == b.y_;
    }
    return false;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar acc = Scalar::one(field_);
    Scalar base = *this;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

const mpq_class& Scalar::rational_value() const {
    if (field_.kind() == FieldKind::Prime)
        throw FieldMismatch("prime-field element has no rational value");
    if (field_.kind() == FieldKind::QuadExt && y_ != 0)
        throw FieldMismatch("extension element with nonzero radical part");
    return x_;
}

std::string Scalar::to_string() const {
    switch (field_.kind()) {
        case FieldKind::Rational: return rational_text(x_);
        case FieldKind::Prime:
            return std::to_string(r_) + " mod " + std::to_string(field_.modulus());
        case FieldKind::QuadExt: {
            mpq_class ay = abs(y_);
            return rational_text(x_) + (y_ < 0 ? "-" : "+") + rational_text(ay) +
                   "*sqrt(" + rational_text(field_.radicand()) + ")";
        }
    }
    return "0";
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
    switch (f.kind()) {
        case FieldKind::Rational: return rational(parse_rational_text(text));
        case FieldKind::Prime: {
            static const std::regex re(R"(^\s*(-?[0-9]+)(?:\s*mod\s*([0-9]+))?\s*$)");
            std::smatch m;
            if (!std::regex_match(text, m, re))
                throw ParseError("cannot parse prime-field element: '" + text + "'");
            if (m[2].matched && std::stoul(m[2]) != f.modulus())
                throw FieldMismatch("element written mod " + m[2].str() +
                                    " in field fp:" + std::to_string(f.modulus()));
            return prime(f.modulus(), std::stol(m[1]));
        }
        case FieldKind::QuadExt: {
            static const std::regex re(
                R"(^\s*(-?[0-9]+(?:/[0-9]+)?)\s*([+-])\s*([0-9]+(?:/[0-9]+)?)\s*\*\s*sqrt\(\s*(-?[0-9]+(?:/[0-9]+)?)\s*\)\s*$)");
            std::smatch m;
            if (std::regex_match(text, m, re)) {
                mpq_class d = parse_rational_text(m[4]);
                if (d != f.radicand())
                    throw FieldMismatch("radicand " + m[4].str() + " does not match field");
                mpq_class y = parse_rational_text(m[3]);
                if (m[2] == "-") y = -y;
                Scalar s = Scalar::zero(f);
                s.x_ = parse_rational_text(m[1]);
                s.y_ = y;
                return s;
            }
            // plain rationals embed
            Scalar s = Scalar::zero(f);
            s.x_ = parse_rational_text(text);
            return s;
        }
    }
    throw ParseError("unreachable");
}

std::optional<mpq_class> exact_sqrt(const mpq_class& v) {
    if (v < 0) return std::nullopt;
    const mpz_class& num = v.get_num();
    const mpz_class& den = v.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
}

std::optional<unsigned long> prime_sqrt(unsigned long p, unsigned long v) {
    v %= p;
    for (unsigned long r = 0; r < p; ++r)
        if (mod_mul(r, r, p) == v) return r;
    return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace twistplane
