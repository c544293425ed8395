#pragma once

#include "taut/rational.hpp"

#include <map>
#include <string>

namespace taut {

/// Laurent polynomial in the equivariant weight t with exact coefficients.
/// Zero coefficients are never stored.
class LaurentT {
public:
    LaurentT() = default;
    LaurentT(const Rational& constant); // NOLINT(google-explicit-constructor)

    /// c · t^e
    static LaurentT monomial(const Rational& coeff, int exponent);
    static LaurentT t() { return monomial(1, 1); }

    const std::map<int, Rational>& terms() const noexcept { return terms_; }
    Rational coefficient(int exponent) const;
    /// t⁰ coefficient: the non-equivariant limit.
    Rational constant_term() const { return coefficient(0); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }
    int min_exponent() const;
    int max_exponent() const;

    /// Inverse of a single-term c·t^e. Throws DivisionByZero for zero and
    /// InvalidArgument for multi-term input.
    LaurentT inverse_monomial() const;

    LaurentT& operator+=(const LaurentT& o);
    LaurentT& operator-=(const LaurentT& o);
    LaurentT& operator*=(const LaurentT& o);

    friend LaurentT operator+(LaurentT a, const LaurentT& b) { return a += b; }
    friend LaurentT operator-(LaurentT a, const LaurentT& b) { return a -= b; }
    friend LaurentT operator*(LaurentT a, const LaurentT& b) { return a *= b; }
    friend LaurentT operator-(const LaurentT& a);

    bool operator==(const LaurentT&) const = default;

    /// e.g. "3*t^-1 + 5 + 2*t"
    std::string to_string() const;

private:
    void add_term(int exponent, const Rational& coeff);
    std::map<int, Rational> terms_;
};

} // namespace taut
