#include "twistplane/poly2.hpp"

#include <sstream>
#include <vector>

namespace twistplane {

Poly2 Poly2::constant(const Scalar& c) { return monomial(0, 0, c); }

Poly2 Poly2::monomial(long i, long j, const Scalar& coef) {
    Poly2 p(coef.field());
    p.insert(i, j, coef);
    return p;
}

void Poly2::insert(long i, long j, const Scalar& c) {
    if (c.is_zero()) return;
    auto key = Exponents{i, j};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, c);
    } else {
        Scalar sum = it->second + c;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = sum;
    }
}

Scalar Poly2::coeff(long i, long j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

Poly2 Poly2::operator+(const Poly2& rhs) const {
    Poly2 out = *this;
    for (const auto& [e, c] : rhs.terms_) out.insert(e.first, e.second, c);
    return out;
}

Poly2 Poly2::operator-(const Poly2& rhs) const {
    Poly2 out = *this;
    for (const auto& [e, c] : rhs.terms_) out.insert(e.first, e.second, -c);
    return out;
}

Poly2 Poly2::operator*(const Poly2& rhs) const {
    Poly2 out(field_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : rhs.terms_)
            out.insert(ea.first + eb.first, ea.second + eb.second, ca * cb);
    return out;
}

Poly2 Poly2::scaled(const Scalar& c) const {
    Poly2 out(field_);
    for (const auto& [e, v] : terms_) out.insert(e.first, e.second, v * c);
    return out;
}

bool Poly2::operator==(const Poly2& rhs) const {
    return (*this - rhs).is_zero();
}

Scalar Poly2::eval(const Scalar& first, const Scalar& second) const {
    // Group terms by the first exponent, Horner over the second inside each
    // group, then Horner over the first.
    std::map<long, std::map<long, Scalar>> grouped;
    for (const auto& [e, c] : terms_) grouped[e.first][e.second] = c;

    Scalar total = Scalar::zero(field_);
    long prev_i = 0;
    bool started = false;
    for (auto it = grouped.rbegin(); it != grouped.rend(); ++it) {
        Scalar inner = Scalar::zero(field_);
        long prev_j = 0;
        bool inner_started = false;
        for (auto jt = it->second.rbegin(); jt != it->second.rend(); ++jt) {
            if (inner_started) inner = inner * second.pow(prev_j - jt->first);
            inner = inner + jt->second;
            prev_j = jt->first;
            inner_started = true;
        }
        inner = inner * second.pow(prev_j);
        if (started) total = total * first.pow(prev_i - it->first);
        total = total + inner;
        prev_i = it->first;
        started = true;
    }
    if (started) total = total * first.pow(prev_i);
    return total;
}

std::string Poly2::to_string(const std::string& v1, const std::string& v2) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ")";
        if (e.first) os << "*" << v1 << "^" << e.first;
        if (e.second) os << "*" << v2 << "^" << e.second;
        first = false;
    }
    return os.str();
}

}  // namespace twistplane
