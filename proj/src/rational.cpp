#include "taut/rational.hpp"

#include "taut/error.hpp"

#include <algorithm>

namespace taut {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw Error(ErrorKind::InvalidArgument, "not a rational: '" + text + "'");
    if (q.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + text + "'");
    return Rational(q);
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
    value_ /= o.value_;
    return *this;
}

Rational binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return Rational(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

Rational factorial(long n) {
    if (n < 0) throw Error(ErrorKind::InvalidRange, "factorial of negative");
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(r);
}

Rational ipow(long base, long exponent) {
    return Rational(base).pow(exponent);
}

} // namespace taut
