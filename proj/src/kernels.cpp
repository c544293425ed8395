#include "taut/kernels.hpp"

#include "taut/error.hpp"

#include <mutex>

namespace taut {

Rational injection_sum_s(std::span<const int> alpha_dp, std::span<const int> beta_p) {
    const int la = static_cast<int>(alpha_dp.size());
    const int lb = static_cast<int>(beta_p.size());
    Rational total = 0;
    if (la > lb) return total;
    std::vector<bool> hit(lb);
    for_each_injection(la, lb, [&](const std::vector<int>& image) {
        Rational term = 1;
        std::fill(hit.begin(), hit.end(), false);
        for (int j = 0; j < la; ++j) {
            term *= ipow(beta_p[image[j]], -(alpha_dp[j] - 1));
            hit[image[j]] = true;
        }
        for (int i = 0; i < lb; ++i)
            if (!hit[i]) term /= Rational(beta_p[i]);
        total += term;
    });
    return total;
}

Rational injection_sum_s(const Partition& alpha_dp, const Partition& beta_p) {
    return injection_sum_s(alpha_dp.parts(), beta_p.parts());
}

Rational injection_sum_t(std::span<const int> q_dp, std::span<const int> p_dp) {
    for (int x : q_dp)
        if (x < 2) throw Error(ErrorKind::InvalidSubpartition, "T argument q″ has a part < 2");
    for (int x : p_dp)
        if (x < 2) throw Error(ErrorKind::InvalidSubpartition, "T argument p″ has a part < 2");
    const int lq = static_cast<int>(q_dp.size());
    const int lp = static_cast<int>(p_dp.size());
    Rational total = 0;
    if (lq > lp) return total;
    for_each_injection(lq, lp, [&](const std::vector<int>& image) {
        Rational term = 1;
        for (int j = 0; j < lq && !term.is_zero(); ++j) {
            const int q = q_dp[j];
            const int p = p_dp[image[j]];
            if (q == 2 && p == 2) term *= 2;
            term *= binomial(p - 1, q - 1) * ipow(-1, q - 1) * ipow(q, p - 2);
        }
        total += term;
    });
    return total;
}

Rational injection_sum_t(const Partition& q_dp, const Partition& p_dp) {
    return injection_sum_t(q_dp.parts(), p_dp.parts());
}

Rational eta_part_factor(int part) {
    // 1 / ((−1)^b b!/b^b) = (−1)^b b^b / b!
    return ipow(-1, part) * ipow(part, part) / factorial(part);
}

Rational eta(const Pop& beta) {
    Rational value = Rational(1) / Rational(Integer(aut_order(beta.unordered)));
    for (int b : beta.ordered) value *= eta_part_factor(b);
    for (int b : beta.unordered.parts()) value *= eta_part_factor(b);
    return value;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidRange, what);
}

// Σ_{q=1}^{p} binom(p−1,q−1)(−1)^{q−1} q^{exponent(q)} 2^{δ(2,p,q)·doubled}
template <typename Exponent>
Rational signed_binomial_sum(int p, Exponent exponent, bool doubled) {
    Rational total = 0;
    for (int q = 1; q <= p; ++q) {
        Rational term = binomial(p - 1, q - 1) * ipow(-1, q - 1) * ipow(q, exponent(q));
        if (doubled && p == 2 && q == 2) term *= 2;
        total += term;
    }
    return total;
}

} // namespace

Rational closed_sum_alpha(int p_tilde, int r_tilde) {
    require(r_tilde >= 1 && p_tilde >= r_tilde, "(α) needs p̃ >= r̃ >= 1");
    return signed_binomial_sum(p_tilde, [&](int) { return p_tilde - 1 - r_tilde; }, false);
}

Rational closed_sum_beta(int p_hat) {
    require(p_hat >= 2, "(β) needs p̂ >= 2");
    return signed_binomial_sum(p_hat, [&](int) { return p_hat - 3; }, true);
}

Rational closed_sum_beta_prime(int p_hat) {
    require(p_hat >= 2, "(β′) needs p̂ >= 2");
    return signed_binomial_sum(p_hat, [&](int) { return p_hat - 2; }, true);
}

Rational closed_sum_gamma(int p_hat, int r_hat) {
    require(r_hat >= 2 && p_hat >= r_hat, "(γ) needs p̂ >= r̂ >= 2");
    return signed_binomial_sum(p_hat, [&](int) { return p_hat - 1 - r_hat; }, true);
}

Rational closed_sum_alpha_expected(int p_tilde, int r_tilde) {
    require(r_tilde >= 1 && p_tilde >= r_tilde, "(α) needs p̃ >= r̃ >= 1");
    return r_tilde < p_tilde ? Rational(0) : Rational(1) / Rational(p_tilde);
}

Rational closed_sum_beta_expected(int p_hat) {
    require(p_hat >= 2, "(β) needs p̂ >= 2");
    return 0;
}

Rational closed_sum_beta_prime_expected(int p_hat) {
    require(p_hat >= 2, "(β′) needs p̂ >= 2");
    return p_hat == 2 ? Rational(-1) : Rational(0);
}

Rational closed_sum_gamma_expected(int p_hat, int r_hat) {
    require(r_hat >= 2 && p_hat >= r_hat, "(γ) needs p̂ >= r̂ >= 2");
    if (r_hat < p_hat || p_hat == 2) return 0;
    return Rational(1) / Rational(p_hat);
}

Rational binom_power_sum(int n, int a) {
    require(n >= 0 && a >= 0, "binomial power sum needs n, a >= 0");
    Rational total = 0;
    for (int k = 0; k <= n; ++k) total += binomial(n, k) * ipow(-1, k) * ipow(k, a);
    return total;
}

Rational binom_reciprocal_sum(int n) {
    require(n >= 0, "binomial reciprocal sum needs n >= 0");
    Rational total = 0;
    for (int k = 0; k <= n; ++k) total += binomial(n, k) * ipow(-1, k) / Rational(k + 1);
    return total;
}

std::pair<Rational, Rational> binom_identities(int n, int a) {
    require(n >= 0 && a >= 0 && a <= n - 1, "binomial identity needs 0 <= a <= n-1");
    return {binom_power_sum(n, a), binom_reciprocal_sum(n)};
}

Rational principal_scaling(const MultiPop& beta) {
    Rational s = 1;
    for (const auto& b : beta.components) s *= ipow(-1, b.order() + b.unordered.length()) * eta(b);
    return s;
}

Rational principal_prefactor(const MultiPop& alpha, const MultiPop& beta) {
    if (alpha.components.size() != beta.components.size())
        throw Error(ErrorKind::IncomparableShapes, "component counts differ");
    Rational value = 1;
    for (std::size_t i = 0; i < alpha.components.size(); ++i) {
        const Pop& a = alpha.components[i];
        const Pop& b = beta.components[i];
        if (a.degree != b.degree || a.order() != b.order())
            throw Error(ErrorKind::IncomparableShapes, a.to_string() + " vs " + b.to_string());
        for (int j = 0; j < a.order(); ++j) value *= ipow(b.ordered[j], -(a.ordered[j] - 1));
        value *= injection_sum_s(a.double_prime(), b.unordered);
        value *= ipow(-1, b.order() + b.unordered.length()) * eta(b);
    }
    return value;
}

template <typename Compute>
Rational KernelCache::lookup(std::map<Key, Rational>& table, Key key, Compute&& compute) {
    {
        std::shared_lock lock(mutex_);
        if (auto it = table.find(key); it != table.end()) return it->second;
    }
    Rational value = compute();
    std::unique_lock lock(mutex_);
    table.try_emplace(std::move(key), value);
    return value;
}

Rational KernelCache::s(const Partition& alpha_dp, const Partition& beta_p) {
    return lookup(s_, {alpha_dp.parts(), beta_p.parts()},
                  [&] { return injection_sum_s(alpha_dp, beta_p); });
}

Rational KernelCache::t(const Partition& q_dp, const Partition& p_dp) {
    return lookup(t_, {q_dp.parts(), p_dp.parts()}, [&] { return injection_sum_t(q_dp, p_dp); });
}

Rational KernelCache::eta(const Pop& beta) {
    auto ordered = beta.ordered;
    return lookup(eta_, {std::move(ordered), beta.unordered.parts()}, [&] { return taut::eta(beta); });
}

std::size_t KernelCache::entries() const {
    std::shared_lock lock(mutex_);
    return s_.size() + t_.size() + eta_.size();
}

} // namespace taut
