#pragma once

#include "taut/laurent.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace taut {

/// A nilpotent generator living on one moduli factor: a cotangent class ψ
/// (degree 1) or a Hodge class λ_j (degree j >= 1). λ_0 = 1 is never a
/// generator.
struct Generator {
    enum class Kind { Psi, Lambda };

    int factor = 0;
    Kind kind = Kind::Psi;
    int index = 0;

    static Generator psi(int factor, int index = 0) { return {factor, Kind::Psi, index}; }
    static Generator lambda(int factor, int j) { return {factor, Kind::Lambda, j}; }

    int degree() const noexcept { return kind == Kind::Psi ? 1 : index; }

    auto operator<=>(const Generator&) const = default;
    bool operator==(const Generator&) const = default;
};

/// Sorted (generator, exponent) pairs; the empty monomial is 1.
using Monomial = std::vector<std::pair<Generator, int>>;

/// Per-factor metadata: display name and truncation degree. A monomial
/// whose degree in one factor's generators exceeds that factor's bound is
/// zero.
struct FactorInfo {
    std::string name;
    int bound = 0;
    bool operator==(const FactorInfo&) const = default;
};

/// Truncated graded polynomial in nilpotent generators with LaurentT
/// coefficients.
class FormalClass {
public:
    FormalClass() = default;
    FormalClass(const LaurentT& scalar); // NOLINT(google-explicit-constructor)

    static FormalClass one() { return FormalClass(LaurentT(Rational(1))); }

    /// Registers a factor. Registering an existing id with a different bound
    /// or name throws InvalidArgument.
    void declare_factor(int id, const FactorInfo& info);
    /// The class consisting of the single generator g (truncated).
    static FormalClass generator(const Generator& g, const FactorInfo& factor);

    const std::map<Monomial, LaurentT>& terms() const noexcept { return terms_; }
    const std::map<int, FactorInfo>& factors() const noexcept { return factors_; }

    LaurentT coefficient(const Monomial& m) const;
    bool is_zero() const noexcept { return terms_.empty(); }
    /// True if the class equals a pure LaurentT (only the empty monomial).
    bool is_scalar() const noexcept;

    FormalClass& operator+=(const FormalClass& o);
    FormalClass& operator-=(const FormalClass& o);
    FormalClass& operator*=(const FormalClass& o);
    friend FormalClass operator+(FormalClass a, const FormalClass& b) { return a += b; }
    friend FormalClass operator-(FormalClass a, const FormalClass& b) { return a -= b; }
    friend FormalClass operator*(FormalClass a, const FormalClass& b) { return a *= b; }

    bool operator==(const FormalClass& o) const { return terms_ == o.terms_; }

    std::string monomial_name(const Monomial& m) const;
    std::string to_string() const;

private:
    void merge_factors(const std::map<int, FactorInfo>& other);
    bool survives(const Monomial& m) const;
    void add_term(const Monomial& m, const LaurentT& c);

    std::map<Monomial, LaurentT> terms_;
    std::map<int, FactorInfo> factors_;
};

/// 1/(w − g) expanded as Σ_{a=0}^{truncation} g^a / w^{a+1}, where w is a
/// monomial c·t^e. Throws DivisionByZero for w = 0.
FormalClass formal_geom_expand(const LaurentT& weight, const Generator& g, const FactorInfo& factor);
FormalClass formal_geom_expand(const LaurentT& weight, const Generator& g, int truncation);

} // namespace taut
