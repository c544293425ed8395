#pragma once

#include "taut/formal_class.hpp"
#include "taut/partitions.hpp"
#include "taut/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taut {

enum class Side : std::uint8_t { Zero = 0, Infinity = 1 };

inline Side opposite(Side s) { return s == Side::Zero ? Side::Infinity : Side::Zero; }
std::string_view to_string(Side s);

/// Discrete data of a moduli space of stable relative maps with c ordered
/// domain components.
struct RelativeShape {
    std::vector<int> genera;
    /// Ordered set partition of the p-markings {1..n}; blocks may be empty.
    std::vector<std::vector<int>> marking_sets;
    std::vector<int> degrees;
    /// profiles[j][i] is μʲ[i], a partition of d_i.
    std::vector<std::vector<Partition>> profiles;
    bool parameterized = true;
    /// Number of trailing marking labels that are free "extra" markings.
    int extra_markings = 0;

    int components() const noexcept { return static_cast<int>(degrees.size()); }
    int profile_count() const noexcept { return static_cast<int>(profiles.size()); }
    int total_degree() const noexcept;
    int total_genus() const noexcept;
    int marking_count() const noexcept;
    /// Σ g_i − c + 1
    int arithmetic_genus() const noexcept;
    /// Total length of μʲ over all components.
    int profile_length(int j) const;
    /// Component holding marking `label`, or -1.
    int component_of_marking(int label) const;

    /// Throws InvalidShape when an invariant fails.
    void validate() const;
};

/// Convenience for connected shapes.
RelativeShape connected_shape(int genus, int markings, int degree, const std::vector<Partition>& profiles,
                              bool parameterized = true);

struct Vertex {
    int genus = 0;
    Side side = Side::Zero;
    int component = 0;
    bool operator==(const Vertex&) const = default;
};

struct Edge {
    std::array<int, 2> ends{0, 0};
    int degree = 1;
    bool operator==(const Edge&) const = default;
};

/// Rʲ: a side and, for every component i and every part index k of μʲ[i]
/// (canonical order), the vertex receiving that part.
struct Refinement {
    int profile = 0;
    Side side = Side::Zero;
    std::vector<std::vector<int>> distribution;
    bool operator==(const Refinement&) const = default;
};

/// Bipartite decorated graph (V, E, N, γ, π, δ, R¹..Rᵐ). Vertex and edge
/// identifiers are positions in the vectors.
struct LocalizationGraph {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    /// marking label → vertex
    std::map<int, int> markings;
    std::vector<Refinement> refinements;

    std::vector<int> incident_edges(int v) const;
    int edge_valence(int v) const;
    int marking_valence(int v) const;
    /// Incident edges plus incident p-markings.
    int valence(int v) const { return edge_valence(v) + marking_valence(v); }
    int incident_degree(int v) const;
    std::vector<int> vertices_on(Side s) const;

    bool operator==(const LocalizationGraph&) const = default;
};

struct ValidationResult {
    bool valid = true;
    std::vector<std::string> violations;
};

/// Checks the nine localization-graph conditions against `shape`.
ValidationResult validate_graph(const LocalizationGraph& graph, const RelativeShape& shape);

struct EnumerationBounds {
    int max_degree = 4;
    int max_genus = 3;
    int max_profiles = 3;
};

/// Every valid graph for a parameterized shape, one canonical
/// representative per isomorphism class, sorted by canonical encoding.
/// Throws EnumerationBoundExceeded or InvalidShape.
std::vector<LocalizationGraph> enumerate_graphs(const RelativeShape& shape, const EnumerationBounds& bounds = {});

/// Integer encoding of the graph under its current labeling.
std::vector<int> encode(const LocalizationGraph& graph);
/// Relabels the graph (vertex permutation; edges sorted) so that its
/// encoding is lexicographically minimal.
LocalizationGraph canonical_form(const LocalizationGraph& graph, int max_vertices = 12);
/// Applies a vertex permutation (old id → new id) and edge permutation.
LocalizationGraph relabel(const LocalizationGraph& graph, std::span<const int> vertex_map,
                          std::span<const int> edge_order);

enum class LocalizationCase { I, II, III };
std::string_view to_string(LocalizationCase c);

LocalizationCase classify_case(const LocalizationGraph& graph);
bool degenerate_over(const LocalizationGraph& graph, Side side);

/// m(Γ).
Integer multiplicity(const LocalizationGraph& graph);
/// |Aut(Γ)| by enumeration of structure-preserving vertex permutations,
/// multiplied by the parallel-edge symmetries.
Integer graph_automorphism_count(const LocalizationGraph& graph, int max_vertices = 12);
/// |A_Γ| = Π_e δ(e) · |Aut(Γ)|. Throws EnumerationBoundExceeded when the
/// graph has more than `max_vertices` vertices.
Integer aut_group_order(const LocalizationGraph& graph, int max_vertices = 12);

/// Factor identifiers used for generators in Euler-class expansions.
inline constexpr int kFactorQZero = 0;
inline constexpr int kFactorQInfinity = 1;
inline int vertex_factor(int v) { return 2 + v; }

/// The unparameterized relative-map factor over one side: side vertices as
/// components, side refinements plus R_δ as profiles.
RelativeShape side_factor_shape(const LocalizationGraph& graph, const RelativeShape& shape, Side side);

/// 1/N(v) for a vertex on the non-refinement side (Case II: side ∞ with
/// weight −t; Case III: side 0 with weight t). Throws InvalidVertex.
FormalClass vertex_term(const LocalizationGraph& graph, int vertex, const RelativeShape& shape);

struct EulerOptions {
    /// Override the ψ_{q0}/ψ_{q∞} truncation (default: factor dimension).
    std::optional<int> q_zero_truncation;
    std::optional<int> q_infinity_truncation;
};

/// Truncated expansion of 1/e(N^vir_Γ).
FormalClass euler_inverse(const LocalizationGraph& graph, const RelativeShape& shape,
                          const EulerOptions& options = {});

struct GraphContribution {
    Integer multiplicity;
    Integer aut_order;
    LocalizationCase localization_case = LocalizationCase::I;
    bool degenerate_zero = false;
    bool degenerate_infinity = false;
    /// Case I with exactly one degenerate side while the other side carries
    /// several refinements; the multiplicity there is a chosen convention.
    bool flagged = false;
    FormalClass euler_inverse;
};

GraphContribution contribution(const LocalizationGraph& graph, const RelativeShape& shape);

/// Type β̄ of a principal graph in the relation with `n_ordered` ordered
/// markings and middle markings for the parts of `alpha_dp`; nullopt when
/// any principal-type condition fails.
std::optional<MultiPop> classify_principal(const LocalizationGraph& graph, int n_ordered,
                                           const Partition& alpha_dp, const RelativeShape& shape);

/// Builds the star graph of type β̄: middle markings are placed, in order,
/// on the edges listed in `middle_edges` (component, index into β′[i]);
/// extra markings (labels after the middle ones) sit on the side-0 vertex
/// of their component. All refinements are on side 0.
LocalizationGraph principal_graph(const MultiPop& beta, const RelativeShape& shape, int n_ordered,
                                  const std::vector<std::pair<int, int>>& middle_edges);

/// Expected dimensions; disconnected shapes use the arithmetic genus.
int vdim_parameterized(const RelativeShape& shape);
int vdim_unparameterized(const RelativeShape& shape);

/// 2g − 2 + 2d = Σ (d − ℓ(μⁱ)). Throws InvalidShape on size mismatch.
bool hurwitz_condition(int genus, const std::vector<Partition>& profiles);

struct OmegaDimensionReport {
    int lhs = 0;
    int rhs = 0;
    bool equal = false;
    int omega_degree_by_terms = 0;
    int omega_degree_formula = 0;
};

/// Dimension of ω ∩ [M†] versus ω_β̄ ∩ [M(β̄)], each computed from the
/// expected dimension minus the class degree. `r` has n′ entries, `s` has
/// one per profile. `shape` supplies genera, degrees and profiles.
OmegaDimensionReport omega_dimension_check(const MultiPop& alpha, const MultiPop& beta, const RelativeShape& shape,
                                           std::span<const int> r, std::span<const int> s, int k);

} // namespace taut
