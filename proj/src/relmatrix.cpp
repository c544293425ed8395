#include "taut/relmatrix.hpp"

#include "taut/error.hpp"
#include "taut/parallel.hpp"

#include <algorithm>
#include <map>

namespace taut {

namespace {

Rational cached_s(KernelCache* cache, const Partition& a, const Partition& b) {
    return cache ? cache->s(a, b) : injection_sum_s(a, b);
}

Rational cached_t(KernelCache* cache, const Partition& a, const Partition& b) {
    return cache ? cache->t(a, b) : injection_sum_t(a, b);
}

Rational cached_eta(KernelCache* cache, const Pop& p) {
    return cache ? cache->eta(p) : eta(p);
}

std::vector<MultiPop> connected_index(int degree, int order, Slack k) {
    std::vector<MultiPop> index;
    for (const auto& p : enumerate_pop(degree, order, k)) index.push_back(as_multi(p));
    return index;
}

template <typename Entry>
IndexedMatrix fill(std::vector<MultiPop> index, const BuildOptions& options, Entry&& entry) {
    IndexedMatrix m(std::move(index));
    const auto& idx = m.index();
    parallel_for(m.size(), options.jobs, [&](std::size_t i) {
        for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, j) = entry(idx[i], idx[j]);
    });
    return m;
}

Rational prefactor_cached(const MultiPop& alpha, const MultiPop& beta, KernelCache* cache) {
    if (!cache) return principal_prefactor(alpha, beta);
    if (alpha.components.size() != beta.components.size())
        throw Error(ErrorKind::IncomparableShapes, "component counts differ");
    Rational value = 1;
    for (std::size_t i = 0; i < alpha.components.size(); ++i) {
        const Pop& a = alpha.components[i];
        const Pop& b = beta.components[i];
        if (a.degree != b.degree || a.order() != b.order())
            throw Error(ErrorKind::IncomparableShapes, a.to_string() + " vs " + b.to_string());
        for (int j = 0; j < a.order(); ++j) value *= ipow(b.ordered[j], -(a.ordered[j] - 1));
        value *= cache->s(a.double_prime(), b.unordered);
        value *= ipow(-1, b.order() + b.unordered.length()) * cache->eta(b);
    }
    return value;
}

Rational scaling_cached(const MultiPop& beta, KernelCache* cache) {
    Rational s = 1;
    for (const auto& b : beta.components)
        s *= ipow(-1, b.order() + b.unordered.length()) * cached_eta(cache, b);
    return s;
}

std::optional<std::pair<MultiPop, MultiPop>> violation_pair(const IndexedMatrix& c) {
    if (auto v = unit_upper_violation(c)) return std::make_pair(c.index()[v->first], c.index()[v->second]);
    return std::nullopt;
}

} // namespace

Rational a_entry(const Pop& p, const Pop& q, KernelCache* cache) {
    if (p.degree != q.degree || p.order() != q.order())
        throw Error(ErrorKind::IncomparableShapes, p.to_string() + " vs " + q.to_string());
    Rational value = 1;
    for (int j = 0; j < p.order(); ++j) value *= ipow(p.ordered[j], -(q.ordered[j] - 1));
    return value * cached_s(cache, q.double_prime(), p.unordered);
}

Rational a_entry(const MultiPop& p, const MultiPop& q, KernelCache* cache) {
    if (p.components.size() != q.components.size())
        throw Error(ErrorKind::IncomparableShapes, "component counts differ");
    Rational value = 1;
    for (std::size_t i = 0; i < p.components.size() && !value.is_zero(); ++i)
        value *= a_entry(p.components[i], q.components[i], cache);
    return value;
}

Rational b_entry(const Pop& p, const Pop& q, KernelCache* cache) {
    if (p.degree != q.degree || p.order() != q.order())
        throw Error(ErrorKind::IncomparableShapes, p.to_string() + " vs " + q.to_string());
    Rational value = 1;
    for (int j = 0; j < p.order(); ++j) {
        const int pj = p.ordered[j], qj = q.ordered[j];
        value *= binomial(pj - 1, qj - 1);
        if (value.is_zero()) return value;
        value *= ipow(-1, qj - 1) * ipow(qj, pj - 2);
    }
    const Partition p2 = p.double_prime();
    const Partition q2 = q.double_prime();
    value *= cached_t(cache, q2, p2);
    if (value.is_zero()) return value;
    for (int ph : p.ordered) value *= ph;
    const Partition p3 = p.triple_prime();
    for (int x : p3.parts()) value *= x;
    value /= Rational(Integer(aut_order(p2))) * Rational(Integer(aut_order(q2)));
    return value;
}

IndexedMatrix build_m(std::span<const int> degrees, const std::vector<std::vector<int>>& marking_sets,
                      Slack k, const BuildOptions& options) {
    return fill(enumerate_pop_multi(degrees, marking_sets, k), options,
                [&](const MultiPop& a, const MultiPop& b) { return prefactor_cached(a, b, options.cache); });
}

IndexedMatrix build_a(std::span<const int> degrees, const std::vector<std::vector<int>>& marking_sets,
                      Slack k, const BuildOptions& options) {
    return fill(enumerate_pop_multi(degrees, marking_sets, k), options,
                [&](const MultiPop& p, const MultiPop& q) { return a_entry(p, q, options.cache); });
}

IndexedMatrix build_a(int degree, int order, Slack k, const BuildOptions& options) {
    return fill(connected_index(degree, order, k), options, [&](const MultiPop& p, const MultiPop& q) {
        return a_entry(p.components[0], q.components[0], options.cache);
    });
}

IndexedMatrix build_b(int degree, int order, Slack k, const BuildOptions& options) {
    return fill(connected_index(degree, order, k), options, [&](const MultiPop& p, const MultiPop& q) {
        return b_entry(p.components[0], q.components[0], options.cache);
    });
}

IndexedMatrix build_b_multi(std::span<const int> degrees, const std::vector<std::vector<int>>& marking_sets,
                            Slack k, const BuildOptions& options) {
    return fill(enumerate_pop_multi(degrees, marking_sets, k), options,
                [&](const MultiPop& p, const MultiPop& q) {
                    Rational value = 1;
                    for (std::size_t i = 0; i < p.components.size() && !value.is_zero(); ++i)
                        value *= b_entry(p.components[i], q.components[i], options.cache);
                    return value;
                });
}

IndexedMatrix restrict_to(const IndexedMatrix& m, const std::vector<Pop>& subset) {
    std::vector<Pop> sorted = subset;
    std::sort(sorted.begin(), sorted.end(), pop_precedes);
    std::vector<std::size_t> positions;
    for (const auto& p : sorted) {
        auto it = std::find_if(m.index().begin(), m.index().end(),
                               [&](const MultiPop& x) { return x.components.size() == 1 && x.components[0] == p; });
        if (it == m.index().end())
            throw Error(ErrorKind::IncompatibleIndices, p.to_string() + " is not in the matrix index");
        positions.push_back(static_cast<std::size_t>(it - m.index().begin()));
    }
    return m.submatrix(positions);
}

TriangularityReport verify_c(int degree, int order, Slack k, const BuildOptions& options,
                             const MatrixMutator& mutate_b) {
    IndexedMatrix b = build_b(degree, order, k, options);
    if (mutate_b) mutate_b(b);
    const IndexedMatrix a = build_a(degree, order, k, options);
    TriangularityReport report;
    report.c = multiply(b, a);
    report.first_violation = violation_pair(report.c);
    report.unit_upper_triangular = !report.first_violation;
    return report;
}

TriangularityReport verify_c_multi(std::span<const int> degrees,
                                   const std::vector<std::vector<int>>& marking_sets, Slack k,
                                   const BuildOptions& options) {
    const IndexedMatrix b = build_b_multi(degrees, marking_sets, k, options);
    const IndexedMatrix a = build_a(degrees, marking_sets, k, options);
    TriangularityReport report;
    report.c = multiply(b, a);
    report.first_violation = violation_pair(report.c);
    report.unit_upper_triangular = !report.first_violation;
    return report;
}

TransposeScalingReport verify_m_transpose_scaling(std::span<const int> degrees,
                                                  const std::vector<std::vector<int>>& marking_sets,
                                                  Slack k, const BuildOptions& options) {
    const IndexedMatrix m = build_m(degrees, marking_sets, k, options);
    const IndexedMatrix a = build_a(degrees, marking_sets, k, options);
    TransposeScalingReport report;
    report.pass = true;
    for (std::size_t j = 0; j < m.size() && report.pass; ++j) {
        const Rational s = scaling_cached(m.index()[j], options.cache);
        for (std::size_t i = 0; i < m.size(); ++i) {
            const Rational expected = a.at(j, i) * s;
            if (m.at(i, j) != expected) {
                report.pass = false;
                report.witness = EntryWitness{m.index()[i], m.index()[j], expected, m.at(i, j)};
                break;
            }
        }
    }
    return report;
}

InvertibilityReport verify_m_invertible(std::span<const int> degrees,
                                        const std::vector<std::vector<int>>& marking_sets, Slack k,
                                        const BuildOptions& options) {
    const IndexedMatrix m = build_m(degrees, marking_sets, k, options);
    InvertibilityReport report;
    report.size = m.size();
    report.det = determinant(m);
    report.invertible = !report.det.is_zero();
    return report;
}

KroneckerReport verify_kronecker(std::span<const int> degrees,
                                 const std::vector<std::vector<int>>& marking_sets, Slack k,
                                 const BuildOptions& options) {
    validate_multi_shape(degrees, marking_sets);
    int total_degree = 0, total_order = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        total_degree += degrees[i];
        total_order += static_cast<int>(marking_sets[i].size());
    }
    if (!k.is_infinite() && k.value() < total_degree - total_order)
        throw Error(ErrorKind::PreconditionViolated,
                    "k=" + k.to_string() + " is below d - Σ|n_i| = " + std::to_string(total_degree - total_order));

    const IndexedMatrix a = build_a(degrees, marking_sets, k, options);
    std::vector<std::vector<std::vector<Rational>>> blocks;
    std::vector<std::vector<MultiPop>> component_index;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const int ni = static_cast<int>(marking_sets[i].size());
        const IndexedMatrix ai = build_a(degrees[i], ni, Slack::finite(degrees[i] - ni), options);
        blocks.push_back(ai.rows());
        component_index.push_back(ai.index());
    }
    const auto product = kronecker(blocks);

    // Position of each MultiPop in the Kronecker layout: mixed radix over
    // the component indices, first component most significant.
    auto position = [&](const MultiPop& m) {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < m.components.size(); ++i) {
            const auto& idx = component_index[i];
            auto it = std::find_if(idx.begin(), idx.end(),
                                   [&](const MultiPop& x) { return x.components[0] == m.components[i]; });
            if (it == idx.end()) throw Error(ErrorKind::IncompatibleIndices, "component not indexed");
            pos = pos * idx.size() + static_cast<std::size_t>(it - idx.begin());
        }
        return pos;
    };

    KroneckerReport report;
    report.size = a.size();
    report.pass = a.size() == product.size();
    std::vector<std::size_t> positions;
    for (const auto& m : a.index()) positions.push_back(position(m));
    for (std::size_t i = 0; i < a.size() && report.pass; ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            const Rational& expected = product[positions[i]][positions[j]];
            if (a.at(i, j) != expected) {
                report.pass = false;
                report.witness = EntryWitness{a.index()[i], a.index()[j], expected, a.at(i, j)};
                break;
            }
        }
    }
    return report;
}

bool in_lowering_cone(const Pop& p, const Pop& q) {
    if (p.degree != q.degree || p.order() != q.order())
        throw Error(ErrorKind::IncomparableShapes, p.to_string() + " vs " + q.to_string());
    for (int j = 0; j < p.order(); ++j)
        if (q.ordered[j] > p.ordered[j]) return false;
    const auto p2 = p.double_prime().increasing();
    auto q2 = q.double_prime().increasing();
    if (q2.size() > p2.size()) return false;
    q2.insert(q2.begin(), p2.size() - q2.size(), 1);
    for (std::size_t i = 0; i < p2.size(); ++i)
        if (q2[i] > p2[i]) return false;
    return true;
}

XiClosureReport verify_xi_closure(int degree, int order, const std::vector<Pop>& xi,
                                  const BuildOptions& options) {
    const auto universe = enumerate_pop(degree, order, Slack::infinite());
    for (const auto& p : xi)
        if (std::find(universe.begin(), universe.end(), p) == universe.end())
            throw Error(ErrorKind::InvalidArgument, p.to_string() + " is not in Π(d,n,∞)");

    XiClosureReport report;
    report.closed = true;
    for (const auto& p : xi) {
        for (const auto& q : universe) {
            if (!in_lowering_cone(p, q)) continue;
            if (std::find(xi.begin(), xi.end(), q) == xi.end()) {
                report.closed = false;
                report.missing = std::make_pair(p, q);
                break;
            }
        }
        if (!report.closed) break;
    }
    if (!report.closed) return report;

    const IndexedMatrix a = restrict_to(build_a(degree, order, Slack::infinite(), options), xi);
    const IndexedMatrix b = restrict_to(build_b(degree, order, Slack::infinite(), options), xi);
    const IndexedMatrix c = multiply(b, a);
    if (auto v = unit_upper_violation(c)) {
        report.c_triangular_on_xi = false;
        report.first_violation = std::make_pair(c.index()[v->first].components[0],
                                                c.index()[v->second].components[0]);
    } else {
        report.c_triangular_on_xi = true;
    }
    return report;
}

} // namespace taut
