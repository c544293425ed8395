#pragma once

#include "taut/partitions.hpp"
#include "taut/rational.hpp"

#include <map>
#include <shared_mutex>
#include <span>
#include <utility>
#include <vector>

namespace taut {

/// Calls `visit` with every injection {0..from-1} → {0..to-1}, as the list
/// of targets, in lexicographic order of the target tuple.
template <typename Visit>
void for_each_injection(int from, int to, Visit&& visit) {
    if (from > to) return;
    std::vector<int> image(from);
    std::vector<bool> used(to, false);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == from) {
            visit(static_cast<const std::vector<int>&>(image));
            return;
        }
        for (int target = 0; target < to; ++target) {
            if (used[target]) continue;
            used[target] = true;
            image[pos] = target;
            self(self, pos + 1);
            used[target] = false;
        }
    };
    rec(rec, 0);
}

/// S[α″](β′): sum over injections ι of Π_j 1/β′_{ι(j)}^{α″_j−1} · Π_{i∉Im ι} 1/β′_i.
/// Parts may be given in any order.
Rational injection_sum_s(std::span<const int> alpha_dp, std::span<const int> beta_p);
Rational injection_sum_s(const Partition& alpha_dp, const Partition& beta_p);

/// T[q″](p″): sum over injections θ of
/// 2^{v(θ)} Π_j binom(p″_{θ(j)}−1, q″_j−1) (−1)^{q″_j−1} q″_j^{p″_{θ(j)}−2}.
/// Throws InvalidSubpartition when a part is < 2.
Rational injection_sum_t(std::span<const int> q_dp, std::span<const int> p_dp);
Rational injection_sum_t(const Partition& q_dp, const Partition& p_dp);

/// η(β̄) = 1/|Aut(β′)| · Π over all parts b of b^b / ((−1)^b b!).
Rational eta(const Pop& beta);

/// Summand factor of η for a single part: 1/((−1)^b b!/b^b).
Rational eta_part_factor(int part);

// Closed sums. Each returns the direct summation; the stated right sides are
// available separately so the identity itself can be checked.
Rational closed_sum_alpha(int p_tilde, int r_tilde);
Rational closed_sum_beta(int p_hat);
Rational closed_sum_beta_prime(int p_hat);
Rational closed_sum_gamma(int p_hat, int r_hat);

Rational closed_sum_alpha_expected(int p_tilde, int r_tilde);
Rational closed_sum_beta_expected(int p_hat);
Rational closed_sum_beta_prime_expected(int p_hat);
Rational closed_sum_gamma_expected(int p_hat, int r_hat);

/// Σ_k binom(n,k)(−1)^k k^a (0 ≤ a ≤ n−1) and Σ_k binom(n,k)(−1)^k/(k+1).
Rational binom_power_sum(int n, int a);
Rational binom_reciprocal_sum(int n);
/// Both sums at once; `a` must lie in [0, n−1] (InvalidRange otherwise).
std::pair<Rational, Rational> binom_identities(int n, int a);

/// Sign-and-η scaling s(β̄) = Π_i (−1)^{|n_i|+ℓ(β′[i])} η(β̄[i]).
Rational principal_scaling(const MultiPop& beta);

/// Lemma-3 prefactor of the principal term of type β̄ in the relation
/// indexed by ᾱ; equals the (ᾱ, β̄) entry of M. Throws IncomparableShapes.
Rational principal_prefactor(const MultiPop& alpha, const MultiPop& beta);

/// Thread-safe memo for the kernel functions, keyed by canonical
/// partitions. Shared across matrix builds.
class KernelCache {
public:
    Rational s(const Partition& alpha_dp, const Partition& beta_p);
    Rational t(const Partition& q_dp, const Partition& p_dp);
    Rational eta(const Pop& beta);

    std::size_t entries() const;

private:
    using Key = std::pair<std::vector<int>, std::vector<int>>;
    template <typename Compute>
    Rational lookup(std::map<Key, Rational>& table, Key key, Compute&& compute);

    mutable std::shared_mutex mutex_;
    std::map<Key, Rational> s_;
    std::map<Key, Rational> t_;
    std::map<Key, Rational> eta_;
};

} // namespace taut
