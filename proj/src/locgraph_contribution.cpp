#include "taut/locgraph.hpp"

#include "taut/error.hpp"

#include <algorithm>

namespace taut {

LocalizationCase classify_case(const LocalizationGraph& graph) {
    bool zero = false, inf = false;
    for (const auto& r : graph.refinements) (r.side == Side::Zero ? zero : inf) = true;
    if (zero && inf) return LocalizationCase::I;
    return inf ? LocalizationCase::III : LocalizationCase::II;
}

bool degenerate_over(const LocalizationGraph& graph, Side side) {
    const auto vs = graph.vertices_on(side);
    for (int v : vs)
        if (graph.vertices[v].genus != 0 || graph.valence(v) != 1) return false;
    const Refinement* only = nullptr;
    for (const auto& r : graph.refinements) {
        if (r.side != side) continue;
        if (only) return false;
        only = &r;
    }
    if (!only) return false;
    // Rʲ = R_δ: each vertex receives exactly the parts given by its incident
    // edge degrees. With valence 1 that is a single part equal to δ(e).
    std::vector<int> received(graph.vertices.size(), 0);
    for (const auto& comp : only->distribution)
        for (int v : comp) ++received.at(v);
    return std::all_of(vs.begin(), vs.end(), [&](int v) { return received[v] == 1; });
}

Integer multiplicity(const LocalizationGraph& graph) {
    Integer product = 1;
    for (const auto& e : graph.edges) product *= e.degree;
    if (classify_case(graph) != LocalizationCase::I) return product;
    const bool d0 = degenerate_over(graph, Side::Zero);
    const bool dinf = degenerate_over(graph, Side::Infinity);
    if (d0 && dinf) return 1;
    if (d0 || dinf) return product;
    return product * product;
}

RelativeShape side_factor_shape(const LocalizationGraph& graph, const RelativeShape& shape, Side side) {
    const auto vs = graph.vertices_on(side);
    std::vector<int> position(graph.vertices.size(), -1);
    for (std::size_t k = 0; k < vs.size(); ++k) position[vs[k]] = static_cast<int>(k);

    RelativeShape out;
    out.parameterized = false;
    int next_label = 1;
    for (int v : vs) {
        out.genera.push_back(graph.vertices[v].genus);
        out.degrees.push_back(graph.incident_degree(v));
        out.marking_sets.emplace_back();
        for (const auto& [label, at] : graph.markings)
            if (at == v) out.marking_sets.back().push_back(next_label++);
    }

    std::vector<Partition> r_delta;
    for (int v : vs) {
        std::vector<int> degrees;
        for (int e : graph.incident_edges(v)) degrees.push_back(graph.edges[e].degree);
        r_delta.push_back(Partition::canonicalize(degrees));
    }
    if (side == Side::Infinity) out.profiles.push_back(r_delta);
    for (const auto& r : graph.refinements) {
        if (r.side != side) continue;
        std::vector<std::vector<int>> parts(vs.size());
        for (std::size_t i = 0; i < r.distribution.size(); ++i) {
            const auto& mu = shape.profiles.at(r.profile).at(i).parts();
            for (std::size_t k = 0; k < r.distribution[i].size(); ++k)
                parts.at(position.at(r.distribution[i][k])).push_back(mu.at(k));
        }
        std::vector<Partition> profile;
        for (auto& p : parts) profile.push_back(Partition::canonicalize(std::move(p)));
        out.profiles.push_back(std::move(profile));
    }
    if (side == Side::Zero) out.profiles.push_back(r_delta);
    return out;
}

namespace {

LaurentT weight(int sign) { return LaurentT::monomial(sign, 1); }

int side_sign(Side s) { return s == Side::Zero ? 1 : -1; }

// The non-refinement side of a Case II/III graph and its torus weight sign.
Side vertex_side(LocalizationCase c) { return c == LocalizationCase::III ? Side::Zero : Side::Infinity; }

} // namespace

FormalClass vertex_term(const LocalizationGraph& graph, int vertex, const RelativeShape& shape) {
    (void)shape;
    if (vertex < 0 || vertex >= static_cast<int>(graph.vertices.size()))
        throw Error(ErrorKind::InvalidVertex, "vertex " + std::to_string(vertex) + " does not exist");
    const auto c = classify_case(graph);
    const Side side = graph.vertices[vertex].side;
    if (c == LocalizationCase::I || side != vertex_side(c))
        throw Error(ErrorKind::InvalidVertex, "vertex terms live on the side without refinements in Case II/III");

    const LaurentT w = weight(side_sign(side));
    const LaurentT inv_w = w.inverse_monomial();
    const int genus = graph.vertices[vertex].genus;
    const auto edges = graph.incident_edges(vertex);
    const int marked = graph.marking_valence(vertex);
    const int val = static_cast<int>(edges.size()) + marked;

    if (2 * genus - 2 + val > 0) {
        const FactorInfo info{"v" + std::to_string(vertex), 3 * genus - 3 + val};
        const int f = vertex_factor(vertex);
        FormalClass result(inv_w);
        result.declare_factor(f, info);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const LaurentT wi = w * LaurentT(Rational(1, graph.edges[edges[i]].degree));
            result *= formal_geom_expand(wi, Generator::psi(f, static_cast<int>(i) + 1), info);
        }
        FormalClass hodge;
        hodge.declare_factor(f, info);
        for (int j = 0; j <= genus; ++j) {
            LaurentT coeff = LaurentT::monomial(Rational(side_sign(side)).pow(genus - j) * Rational(j % 2 ? -1 : 1),
                                                genus - j);
            FormalClass term(coeff);
            if (j > 0) term *= FormalClass::generator(Generator::lambda(f, j), info);
            hodge += term;
        }
        return result * hodge;
    }
    if (genus == 0 && val == 2 && marked == 0 && edges.size() == 2) {
        const LaurentT sum = w * LaurentT(Rational(1, graph.edges[edges[0]].degree)) +
                             w * LaurentT(Rational(1, graph.edges[edges[1]].degree));
        return FormalClass(inv_w * sum.inverse_monomial());
    }
    if (genus == 0 && val == 2 && marked == 1) return FormalClass(inv_w);
    if (genus == 0 && val == 1 && marked == 0)
        return FormalClass(LaurentT(Rational(1, graph.edges[edges[0]].degree)));
    throw Error(ErrorKind::InvalidVertex, "vertex " + std::to_string(vertex) + " matches no vertex-term case");
}

namespace {

// 1/(w(w − ψ_q)) for the unparameterized factor over `side`, or 1/w when
// that factor is a point.
FormalClass q_factor(const LocalizationGraph& graph, const RelativeShape& shape, Side side,
                     const std::optional<int>& truncation) {
    const LaurentT w = weight(side_sign(side));
    if (degenerate_over(graph, side)) return FormalClass(w.inverse_monomial());
    const int bound = truncation ? *truncation : std::max(0, vdim_unparameterized(side_factor_shape(graph, shape, side)));
    const bool zero = side == Side::Zero;
    const FactorInfo info{zero ? "q0" : "qinf", bound};
    const int f = zero ? kFactorQZero : kFactorQInfinity;
    return FormalClass(w.inverse_monomial()) * formal_geom_expand(w, Generator::psi(f), info);
}

} // namespace

FormalClass euler_inverse(const LocalizationGraph& graph, const RelativeShape& shape, const EulerOptions& options) {
    const auto c = classify_case(graph);
    if (c == LocalizationCase::I)
        return q_factor(graph, shape, Side::Zero, options.q_zero_truncation) *
               q_factor(graph, shape, Side::Infinity, options.q_infinity_truncation);

    const Side refined = c == LocalizationCase::II ? Side::Zero : Side::Infinity;
    const Side other = opposite(refined);
    FormalClass result = q_factor(graph, shape, refined,
                                  refined == Side::Zero ? options.q_zero_truncation : options.q_infinity_truncation);
    const int s = side_sign(other);
    for (const auto& e : graph.edges) {
        // w / (w^δ δ!/δ^δ) = w^{1−δ} δ^δ / δ!
        const Rational coeff = Rational(s).pow(1 - e.degree) * ipow(e.degree, e.degree) / factorial(e.degree);
        result *= FormalClass(LaurentT::monomial(coeff, 1 - e.degree));
    }
    for (int v : graph.vertices_on(other)) result *= vertex_term(graph, v, shape);
    return result;
}

GraphContribution contribution(const LocalizationGraph& graph, const RelativeShape& shape) {
    GraphContribution out;
    out.localization_case = classify_case(graph);
    out.degenerate_zero = degenerate_over(graph, Side::Zero);
    out.degenerate_infinity = degenerate_over(graph, Side::Infinity);
    out.multiplicity = multiplicity(graph);
    out.aut_order = aut_group_order(graph);
    if (out.localization_case == LocalizationCase::I && out.degenerate_zero != out.degenerate_infinity) {
        const Side other = out.degenerate_zero ? Side::Infinity : Side::Zero;
        int count = 0;
        for (const auto& r : graph.refinements) count += r.side == other;
        out.flagged = count >= 2;
    }
    out.euler_inverse = euler_inverse(graph, shape);
    return out;
}

std::optional<MultiPop> classify_principal(const LocalizationGraph& graph, int n_ordered, const Partition& alpha_dp,
                                           const RelativeShape& shape) {
    const int c = shape.components();
    const int middle_end = n_ordered + alpha_dp.length();
    for (const auto& r : graph.refinements)
        if (r.side != Side::Zero) return std::nullopt;

    std::vector<int> hub(c, -1);
    for (int v : graph.vertices_on(Side::Zero)) {
        const auto& vx = graph.vertices[v];
        if (vx.component < 0 || vx.component >= c || hub[vx.component] >= 0) return std::nullopt;
        if (vx.genus != shape.genera[vx.component]) return std::nullopt;
        hub[vx.component] = v;
    }
    for (int i = 0; i < c; ++i)
        if (hub[i] < 0) return std::nullopt;

    std::vector<int> label_at(graph.vertices.size(), 0);
    for (const auto& [label, v] : graph.markings) {
        const bool extra = label > middle_end;
        const auto& vx = graph.vertices[v];
        if (extra) {
            if (v != hub[vx.component]) return std::nullopt;
            continue;
        }
        if (vx.side != Side::Infinity || label_at[v] != 0) return std::nullopt;
        label_at[v] = label;
    }

    std::vector<std::vector<int>> ordered(c), unordered(c);
    std::vector<std::vector<int>> ordered_labels(c);
    for (int v : graph.vertices_on(Side::Infinity)) {
        const auto& vx = graph.vertices[v];
        const auto edges = graph.incident_edges(v);
        if (vx.genus != 0 || edges.size() != 1) return std::nullopt;
        const Edge& e = graph.edges[edges.front()];
        const int other = e.ends[0] == v ? e.ends[1] : e.ends[0];
        if (other != hub[vx.component]) return std::nullopt;
        if (label_at[v] >= 1 && label_at[v] <= n_ordered) {
            ordered_labels[vx.component].push_back(label_at[v]);
            ordered[vx.component].push_back(e.degree);
        } else {
            unordered[vx.component].push_back(e.degree);
        }
    }

    MultiPop beta;
    for (int i = 0; i < c; ++i) {
        std::vector<int> expected;
        for (int label : shape.marking_sets[i])
            if (label <= n_ordered) expected.push_back(label);
        std::sort(expected.begin(), expected.end());
        // β[i]_j is read from the vertex carrying the j-th ordered marking.
        std::vector<int> order(ordered_labels[i].size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return ordered_labels[i][a] < ordered_labels[i][b]; });
        std::vector<int> labels, parts;
        for (int k : order) {
            labels.push_back(ordered_labels[i][k]);
            parts.push_back(ordered[i][k]);
        }
        if (labels != expected) return std::nullopt;
        try {
            beta.components.push_back(Pop::make(shape.degrees[i], parts, unordered[i]));
        } catch (const Error&) {
            return std::nullopt;
        }
        beta.marking_sets.push_back(labels);
    }
    return beta;
}

LocalizationGraph principal_graph(const MultiPop& beta, const RelativeShape& shape, int n_ordered,
                                  const std::vector<std::pair<int, int>>& middle_edges) {
    const int c = beta.component_count();
    if (c != shape.components()) throw Error(ErrorKind::InvalidShape, "component count mismatch");
    LocalizationGraph g;
    std::vector<std::vector<int>> unordered_vertex(c);
    for (int i = 0; i < c; ++i) g.vertices.push_back({shape.genera[i], Side::Zero, i});
    for (int i = 0; i < c; ++i) {
        const auto& p = beta.components[i];
        auto attach = [&](int degree) {
            const int v = static_cast<int>(g.vertices.size());
            g.vertices.push_back({0, Side::Infinity, i});
            g.edges.push_back({{i, v}, degree});
            return v;
        };
        for (std::size_t j = 0; j < p.ordered.size(); ++j) {
            const int v = attach(p.ordered[j]);
            g.markings[beta.marking_sets[i].at(j)] = v;
        }
        for (int part : p.unordered.parts()) unordered_vertex[i].push_back(attach(part));
    }
    for (std::size_t q = 0; q < middle_edges.size(); ++q) {
        const auto [i, k] = middle_edges[q];
        g.markings[n_ordered + 1 + static_cast<int>(q)] = unordered_vertex.at(i).at(k);
    }
    const int first_extra = n_ordered + static_cast<int>(middle_edges.size()) + 1;
    for (int label = first_extra; label <= shape.marking_count(); ++label) {
        const int i = shape.component_of_marking(label);
        if (i < 0) throw Error(ErrorKind::InvalidShape, "marking " + std::to_string(label) + " has no component");
        g.markings[label] = i;
    }
    for (int j = 0; j < shape.profile_count(); ++j) {
        Refinement r{j, Side::Zero, {}};
        for (int i = 0; i < c; ++i) r.distribution.emplace_back(shape.profiles[j][i].length(), i);
        g.refinements.push_back(std::move(r));
    }
    return g;
}

} // namespace taut
