#pragma once

#include "taut/indexed_matrix.hpp"
#include "taut/kernels.hpp"
#include "taut/partitions.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace taut {

/// Shared construction options. `cache` may be null; `jobs` fans entry
/// construction out over rows.
struct BuildOptions {
    KernelCache* cache = nullptr;
    int jobs = 1;
};

// Single entries. Connected entries take POPs of equal (d, n).
Rational a_entry(const Pop& p, const Pop& q, KernelCache* cache = nullptr);
Rational a_entry(const MultiPop& p, const MultiPop& q, KernelCache* cache = nullptr);
Rational b_entry(const Pop& p, const Pop& q, KernelCache* cache = nullptr);

/// M(𝐝,𝐧,k): principal-term prefactors over Π(𝐝,𝐧,k).
IndexedMatrix build_m(std::span<const int> degrees, const std::vector<std::vector<int>>& marking_sets,
                      Slack k, const BuildOptions& options = {});
/// A(𝐝,𝐧,k)(p̄,q̄) = Π_i [Π_j 1/(p[i]_j)^{q[i]_j−1} · S[q″[i]](p′[i])].
IndexedMatrix build_a(std::span<const int> degrees, const std::vector<std::vector<int>>& marking_sets,
                      Slack k, const BuildOptions& options = {});
IndexedMatrix build_a(int degree, int order, Slack k, const BuildOptions& options = {});
/// B(d,n,k) over the connected index set.
IndexedMatrix build_b(int degree, int order, Slack k, const BuildOptions& options = {});
/// Experimental multi-component B: Kronecker product of the component
/// B(d_i,|n_i|,∞) restricted to Π(𝐝,𝐧,k).
IndexedMatrix build_b_multi(std::span<const int> degrees, const std::vector<std::vector<int>>& marking_sets,
                            Slack k, const BuildOptions& options = {});

/// Restriction of a matrix over the connected index set to a subset given
/// as POPs (kept in compare_pop order).
IndexedMatrix restrict_to(const IndexedMatrix& m, const std::vector<Pop>& subset);

struct TriangularityReport {
    bool unit_upper_triangular = false;
    std::optional<std::pair<MultiPop, MultiPop>> first_violation;
    IndexedMatrix c;
};

/// Hook applied to B before the product; used to inject faults in tests.
using MatrixMutator = std::function<void(IndexedMatrix&)>;

/// C(d,n,k) = B·A and its unit upper triangularity under compare_pop order.
TriangularityReport verify_c(int degree, int order, Slack k, const BuildOptions& options = {},
                             const MatrixMutator& mutate_b = {});
/// Experimental multi-component analogue using build_b_multi.
TriangularityReport verify_c_multi(std::span<const int> degrees,
                                   const std::vector<std::vector<int>>& marking_sets, Slack k,
                                   const BuildOptions& options = {});

struct EntryWitness {
    MultiPop row;
    MultiPop col;
    Rational expected;
    Rational actual;
};

struct TransposeScalingReport {
    bool pass = false;
    std::optional<EntryWitness> witness;
};

/// Checks M(ᾱ,β̄) = A(β̄,ᾱ)·s(β̄) entrywise.
TransposeScalingReport verify_m_transpose_scaling(std::span<const int> degrees,
                                                  const std::vector<std::vector<int>>& marking_sets,
                                                  Slack k, const BuildOptions& options = {});

struct InvertibilityReport {
    Rational det;
    bool invertible = false;
    std::size_t size = 0;
};

InvertibilityReport verify_m_invertible(std::span<const int> degrees,
                                        const std::vector<std::vector<int>>& marking_sets, Slack k,
                                        const BuildOptions& options = {});

struct KroneckerReport {
    bool pass = false;
    std::size_t size = 0;
    std::optional<EntryWitness> witness;
};

/// A(𝐝,𝐧,k) against ⊗_i A(d_i,|n_i|,d_i−|n_i|) under the component-tuple
/// bijection. Throws PreconditionViolated when k < d − Σ|n_i|.
KroneckerReport verify_kronecker(std::span<const int> degrees,
                                 const std::vector<std::vector<int>>& marking_sets, Slack k,
                                 const BuildOptions& options = {});

/// Membership of q̄ in Π_p̄ = {q̄ : q ≤ p, 1^{ℓ(p″)−ℓ(q″)} q″ ≤ p″}.
bool in_lowering_cone(const Pop& p, const Pop& q);

struct XiClosureReport {
    bool closed = false;
    /// Present only when `closed`.
    std::optional<bool> c_triangular_on_xi;
    /// First (p̄, q̄) with q̄ ∈ Π_p̄ but q̄ ∉ Ξ.
    std::optional<std::pair<Pop, Pop>> missing;
    std::optional<std::pair<Pop, Pop>> first_violation;
};

XiClosureReport verify_xi_closure(int degree, int order, const std::vector<Pop>& xi,
                                  const BuildOptions& options = {});

} // namespace taut
