#include "taut/formal_class.hpp"

#include "taut/error.hpp"

#include <sstream>

namespace taut {

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

FormalClass::FormalClass(const LaurentT& scalar) {
    add_term({}, scalar);
}

void FormalClass::declare_factor(int id, const FactorInfo& info) {
    auto [it, inserted] = factors_.try_emplace(id, info);
    if (!inserted && !(it->second == info))
        throw Error(ErrorKind::InvalidArgument, "factor " + std::to_string(id) + " redeclared");
    if (info.bound < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation bound");
}

FormalClass FormalClass::generator(const Generator& g, const FactorInfo& factor) {
    FormalClass c;
    c.declare_factor(g.factor, factor);
    c.add_term({{g, 1}}, LaurentT(Rational(1)));
    return c;
}

void FormalClass::merge_factors(const std::map<int, FactorInfo>& other) {
    for (const auto& [id, info] : other) declare_factor(id, info);
}

bool FormalClass::survives(const Monomial& m) const {
    std::map<int, int> degree;
    for (const auto& [g, e] : m) degree[g.factor] += g.degree() * e;
    for (const auto& [factor, deg] : degree) {
        auto it = factors_.find(factor);
        if (it == factors_.end())
            throw Error(ErrorKind::InvalidArgument, "generator on undeclared factor " + std::to_string(factor));
        if (deg > it->second.bound) return false;
    }
    return true;
}

void FormalClass::add_term(const Monomial& m, const LaurentT& c) {
    if (c.is_zero() || !survives(m)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentT FormalClass::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? LaurentT() : it->second;
}

bool FormalClass::is_scalar() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

FormalClass& FormalClass::operator+=(const FormalClass& o) {
    merge_factors(o.factors_);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

FormalClass& FormalClass::operator-=(const FormalClass& o) {
    merge_factors(o.factors_);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

FormalClass& FormalClass::operator*=(const FormalClass& o) {
    FormalClass product;
    product.factors_ = factors_;
    product.merge_factors(o.factors_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) product.add_term(multiply(m1, m2), c1 * c2);
    *this = std::move(product);
    return *this;
}

std::string FormalClass::monomial_name(const Monomial& m) const {
    if (m.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [g, e] : m) {
        if (!first) out << '*';
        first = false;
        auto it = factors_.find(g.factor);
        const std::string where = it == factors_.end() ? std::to_string(g.factor) : it->second.name;
        if (g.kind == Generator::Kind::Psi) {
            out << "psi[" << where;
            if (g.index > 0) out << ':' << g.index;
            out << ']';
        } else {
            out << "lambda" << g.index << '[' << where << ']';
        }
        if (e != 1) out << '^' << e;
    }
    return out.str();
}

std::string FormalClass::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << '(' << c.to_string() << ')';
        if (!m.empty()) out << '*' << monomial_name(m);
    }
    return out.str();
}

FormalClass formal_geom_expand(const LaurentT& weight, const Generator& g, const FactorInfo& factor) {
    const LaurentT inv = weight.inverse_monomial();
    FormalClass result;
    result.declare_factor(g.factor, factor);
    LaurentT coeff = inv;
    const int max_power = g.degree() == 0 ? 0 : factor.bound / g.degree();
    for (int a = 0; a <= max_power; ++a) {
        FormalClass term(coeff);
        term.declare_factor(g.factor, factor);
        if (a > 0) {
            FormalClass power = FormalClass::one();
            for (int i = 0; i < a; ++i) power *= FormalClass::generator(g, factor);
            term *= power;
        }
        result += term;
        coeff *= inv;
    }
    return result;
}

FormalClass formal_geom_expand(const LaurentT& weight, const Generator& g, int truncation) {
    return formal_geom_expand(weight, g, FactorInfo{"f" + std::to_string(g.factor), truncation});
}

} // namespace taut
