#include "taut/laurent.hpp"

#include "taut/error.hpp"

#include <sstream>

namespace taut {

LaurentT::LaurentT(const Rational& constant) {
    add_term(0, constant);
}

LaurentT LaurentT::monomial(const Rational& coeff, int exponent) {
    LaurentT f;
    f.add_term(exponent, coeff);
    return f;
}

void LaurentT::add_term(int exponent, const Rational& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational LaurentT::coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentT::min_exponent() const {
    if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "zero Laurent polynomial");
    return terms_.begin()->first;
}

int LaurentT::max_exponent() const {
    if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "zero Laurent polynomial");
    return terms_.rbegin()->first;
}

LaurentT LaurentT::inverse_monomial() const {
    if (terms_.empty()) throw Error(ErrorKind::DivisionByZero, "inverse of zero weight");
    if (terms_.size() != 1) throw Error(ErrorKind::InvalidArgument, "weight is not a monomial in t");
    const auto& [e, c] = *terms_.begin();
    return monomial(c.inverse(), -e);
}

LaurentT& LaurentT::operator+=(const LaurentT& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentT& LaurentT::operator-=(const LaurentT& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentT& LaurentT::operator*=(const LaurentT& o) {
    LaurentT product;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) product.add_term(e1 + e2, c1 * c2);
    *this = std::move(product);
    return *this;
}

LaurentT operator-(const LaurentT& a) {
    LaurentT r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
}

std::string LaurentT::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        if (e == 0) {
            out << c;
        } else {
            out << c << "*t";
            if (e != 1) out << '^' << e;
        }
    }
    return out.str();
}

} // namespace taut
