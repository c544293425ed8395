#include "taut/locgraph.hpp"

#include "taut/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace taut {

std::string_view to_string(Side s) { return s == Side::Zero ? "0" : "inf"; }

std::string_view to_string(LocalizationCase c) {
    switch (c) {
    case LocalizationCase::I: return "I";
    case LocalizationCase::II: return "II";
    case LocalizationCase::III: return "III";
    }
    return "?";
}

int RelativeShape::total_degree() const noexcept { return std::accumulate(degrees.begin(), degrees.end(), 0); }
int RelativeShape::total_genus() const noexcept { return std::accumulate(genera.begin(), genera.end(), 0); }

int RelativeShape::marking_count() const noexcept {
    int n = 0;
    for (const auto& block : marking_sets) n += static_cast<int>(block.size());
    return n;
}

int RelativeShape::arithmetic_genus() const noexcept { return total_genus() - components() + 1; }

int RelativeShape::profile_length(int j) const {
    if (j < 0 || j >= profile_count()) throw Error(ErrorKind::InvalidArgument, "profile index out of range");
    int len = 0;
    for (const auto& p : profiles[j]) len += p.length();
    return len;
}

int RelativeShape::component_of_marking(int label) const {
    for (int i = 0; i < static_cast<int>(marking_sets.size()); ++i)
        if (std::find(marking_sets[i].begin(), marking_sets[i].end(), label) != marking_sets[i].end()) return i;
    return -1;
}

void RelativeShape::validate() const {
    const int c = components();
    if (c < 1) throw Error(ErrorKind::InvalidShape, "shape needs at least one component");
    if (static_cast<int>(genera.size()) != c || static_cast<int>(marking_sets.size()) != c)
        throw Error(ErrorKind::InvalidShape, "genera, marking sets and degrees differ in length");
    for (int i = 0; i < c; ++i) {
        if (degrees[i] < 1) throw Error(ErrorKind::InvalidShape, "component degree must be positive");
        if (genera[i] < 0) throw Error(ErrorKind::InvalidShape, "negative genus");
    }
    std::vector<int> labels;
    for (const auto& block : marking_sets) labels.insert(labels.end(), block.begin(), block.end());
    std::sort(labels.begin(), labels.end());
    for (int k = 0; k < static_cast<int>(labels.size()); ++k)
        if (labels[k] != k + 1) throw Error(ErrorKind::InvalidShape, "marking sets must partition {1..n}");
    const int m = profile_count();
    if (parameterized ? m < 1 : m < 2)
        throw Error(ErrorKind::InvalidShape, parameterized ? "need at least one profile"
                                                           : "unparameterized shapes need at least two profiles");
    for (const auto& profile : profiles) {
        if (static_cast<int>(profile.size()) != c)
            throw Error(ErrorKind::InvalidShape, "profile must have one partition per component");
        for (int i = 0; i < c; ++i)
            if (profile[i].size() != degrees[i])
                throw Error(ErrorKind::InvalidShape, "profile part " + profile[i].to_string() + " is not a partition of " +
                                                         std::to_string(degrees[i]));
    }
    if (extra_markings < 0 || extra_markings > static_cast<int>(labels.size()))
        throw Error(ErrorKind::InvalidShape, "extra marking count out of range");
}

RelativeShape connected_shape(int genus, int markings, int degree, const std::vector<Partition>& profiles,
                              bool parameterized) {
    RelativeShape s;
    s.genera = {genus};
    s.degrees = {degree};
    s.marking_sets.emplace_back();
    for (int k = 1; k <= markings; ++k) s.marking_sets[0].push_back(k);
    for (const auto& p : profiles) s.profiles.push_back({p});
    s.parameterized = parameterized;
    return s;
}

std::vector<int> LocalizationGraph::incident_edges(int v) const {
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (edges[e].ends[0] == v || edges[e].ends[1] == v) out.push_back(e);
    return out;
}

int LocalizationGraph::edge_valence(int v) const {
    int n = 0;
    for (const auto& e : edges) n += (e.ends[0] == v) + (e.ends[1] == v);
    return n;
}

int LocalizationGraph::marking_valence(int v) const {
    int n = 0;
    for (const auto& [label, at] : markings) n += at == v;
    return n;
}

int LocalizationGraph::incident_degree(int v) const {
    int n = 0;
    for (const auto& e : edges)
        if (e.ends[0] == v || e.ends[1] == v) n += e.degree;
    return n;
}

std::vector<int> LocalizationGraph::vertices_on(Side s) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(vertices.size()); ++v)
        if (vertices[v].side == s) out.push_back(v);
    return out;
}

ValidationResult validate_graph(const LocalizationGraph& graph, const RelativeShape& shape) {
    ValidationResult r;
    auto fail = [&](std::string msg) {
        r.valid = false;
        r.violations.push_back(std::move(msg));
    };
    try {
        shape.validate();
    } catch (const Error& e) {
        fail(std::string("shape: ") + e.what());
        return r;
    }

    const int c = shape.components();
    const int nv = static_cast<int>(graph.vertices.size());
    auto vertex_ok = [&](int v) { return v >= 0 && v < nv; };

    for (int v = 0; v < nv; ++v) {
        const auto& vx = graph.vertices[v];
        if (vx.component < 0 || vx.component >= c) fail("vertex " + std::to_string(v) + " has no component");
        if (vx.genus < 0) fail("vertex " + std::to_string(v) + " has negative genus");
    }
    if (!r.valid) return r;

    for (int e = 0; e < static_cast<int>(graph.edges.size()); ++e) {
        const auto& ed = graph.edges[e];
        const std::string tag = "edge " + std::to_string(e);
        if (!vertex_ok(ed.ends[0]) || !vertex_ok(ed.ends[1])) {
            fail(tag + " has an endpoint out of range");
            continue;
        }
        if (ed.degree < 1) fail(tag + " has degree < 1");
        if (ed.ends[0] == ed.ends[1]) fail(tag + " is a self edge");
        else if (graph.vertices[ed.ends[0]].side == graph.vertices[ed.ends[1]].side)
            fail(tag + " joins two vertices on the same side");
        if (graph.vertices[ed.ends[0]].component != graph.vertices[ed.ends[1]].component)
            fail(tag + " joins two components");
    }
    if (!r.valid) return r;

    std::vector<int> vcount(c, 0), ecount(c, 0), gsum(c, 0), dsum(c, 0);
    for (const auto& vx : graph.vertices) {
        ++vcount[vx.component];
        gsum[vx.component] += vx.genus;
    }
    for (const auto& ed : graph.edges) {
        const int i = graph.vertices[ed.ends[0]].component;
        ++ecount[i];
        dsum[i] += ed.degree;
    }
    for (int i = 0; i < c; ++i) {
        const std::string tag = "component " + std::to_string(i + 1);
        if (vcount[i] == 0) {
            fail(tag + " has no vertices");
            continue;
        }
        std::vector<int> members;
        for (int v = 0; v < nv; ++v)
            if (graph.vertices[v].component == i) members.push_back(v);
        std::set<int> seen{members.front()};
        std::vector<int> stack{members.front()};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const auto& ed : graph.edges) {
                int other = -1;
                if (ed.ends[0] == v) other = ed.ends[1];
                else if (ed.ends[1] == v) other = ed.ends[0];
                if (other >= 0 && seen.insert(other).second) stack.push_back(other);
            }
        }
        if (static_cast<int>(seen.size()) != vcount[i]) fail(tag + " is not connected");
        const int h1 = ecount[i] - vcount[i] + 1;
        if (shape.genera[i] != gsum[i] + h1)
            fail(tag + " genus " + std::to_string(gsum[i] + h1) + " != " + std::to_string(shape.genera[i]));
        if (shape.degrees[i] != dsum[i])
            fail(tag + " degree " + std::to_string(dsum[i]) + " != " + std::to_string(shape.degrees[i]));
    }

    const int n = shape.marking_count();
    if (static_cast<int>(graph.markings.size()) != n) fail("marking count differs from shape");
    for (const auto& [label, v] : graph.markings) {
        const std::string tag = "marking " + std::to_string(label);
        if (label < 1 || label > n) {
            fail(tag + " is not in {1..n}");
            continue;
        }
        if (!vertex_ok(v)) {
            fail(tag + " sits on a missing vertex");
            continue;
        }
        if (graph.vertices[v].component != shape.component_of_marking(label))
            fail(tag + " is on the wrong component");
    }

    const int m = shape.profile_count();
    if (static_cast<int>(graph.refinements.size()) != m) {
        fail("refinement count differs from profile count");
        return r;
    }
    for (int j = 0; j < m; ++j) {
        const auto& ref = graph.refinements[j];
        const std::string tag = "refinement " + std::to_string(j + 1);
        if (ref.profile != j) fail(tag + " refers to profile " + std::to_string(ref.profile + 1));
        if (static_cast<int>(ref.distribution.size()) != c) {
            fail(tag + " lacks a per-component distribution");
            continue;
        }
        std::vector<int> received(nv, 0);
        bool placed = true;
        for (int i = 0; i < c; ++i) {
            const auto& parts = shape.profiles[j][i].parts();
            if (ref.distribution[i].size() != parts.size()) {
                fail(tag + " distributes the wrong number of parts on component " + std::to_string(i + 1));
                placed = false;
                continue;
            }
            for (std::size_t k = 0; k < parts.size(); ++k) {
                const int v = ref.distribution[i][k];
                if (!vertex_ok(v) || graph.vertices[v].component != i || graph.vertices[v].side != ref.side) {
                    fail(tag + " places a part off its component or side");
                    placed = false;
                    continue;
                }
                received[v] += parts[k];
            }
        }
        if (!placed) continue;
        for (int v = 0; v < nv; ++v) {
            if (graph.vertices[v].side != ref.side) continue;
            if (received[v] != graph.incident_degree(v))
                fail(tag + " part sum " + std::to_string(received[v]) + " at vertex " + std::to_string(v) +
                     " != incident degree " + std::to_string(graph.incident_degree(v)));
        }
    }
    return r;
}

LocalizationGraph relabel(const LocalizationGraph& graph, std::span<const int> vertex_map,
                          std::span<const int> edge_order) {
    const int nv = static_cast<int>(graph.vertices.size());
    if (static_cast<int>(vertex_map.size()) != nv || edge_order.size() != graph.edges.size())
        throw Error(ErrorKind::InvalidArgument, "relabeling size mismatch");
    LocalizationGraph out;
    out.vertices.resize(nv);
    for (int v = 0; v < nv; ++v) out.vertices[vertex_map[v]] = graph.vertices[v];
    for (int e : edge_order) {
        Edge ed = graph.edges[e];
        ed.ends = {vertex_map[ed.ends[0]], vertex_map[ed.ends[1]]};
        out.edges.push_back(ed);
    }
    for (const auto& [label, v] : graph.markings) out.markings[label] = vertex_map[v];
    out.refinements = graph.refinements;
    for (auto& ref : out.refinements)
        for (auto& comp : ref.distribution)
            for (int& v : comp) v = vertex_map[v];
    return out;
}

namespace {

using EdgeKey = std::tuple<int, int, int>;

EdgeKey edge_key(const Edge& e) {
    return {std::min(e.ends[0], e.ends[1]), std::max(e.ends[0], e.ends[1]), e.degree};
}

// Encoding of the graph after applying `map` (old id → new id). The vertex
// data block is only included by encode(); under block permutations it is
// constant.
void encode_structure(const LocalizationGraph& g, const std::vector<int>& map, std::vector<int>& out) {
    std::vector<EdgeKey> keys;
    keys.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        Edge m = e;
        m.ends = {map[e.ends[0]], map[e.ends[1]]};
        keys.push_back(edge_key(m));
    }
    std::sort(keys.begin(), keys.end());
    for (const auto& [a, b, d] : keys) {
        out.push_back(a);
        out.push_back(b);
        out.push_back(d);
    }
    for (const auto& [label, v] : g.markings) {
        out.push_back(label);
        out.push_back(map[v]);
    }
    for (const auto& ref : g.refinements) {
        out.push_back(ref.profile);
        out.push_back(static_cast<int>(ref.side));
        for (const auto& comp : ref.distribution) {
            out.push_back(static_cast<int>(comp.size()));
            for (int v : comp) out.push_back(map[v]);
        }
    }
}

auto vertex_block_key(const Vertex& v) { return std::tuple(v.component, static_cast<int>(v.side), v.genus); }

// Vertices grouped into (component, side, genus) blocks in key order. The
// concatenation of the blocks gives the base relabeling.
std::vector<std::vector<int>> vertex_blocks(const LocalizationGraph& g) {
    std::vector<int> order(g.vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return vertex_block_key(g.vertices[a]) < vertex_block_key(g.vertices[b]);
    });
    std::vector<std::vector<int>> blocks;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || vertex_block_key(g.vertices[order[k]]) != vertex_block_key(g.vertices[order[k - 1]]))
            blocks.emplace_back();
        blocks.back().push_back(order[k]);
    }
    return blocks;
}

// Calls visit(map) for every relabeling that permutes vertices within blocks.
template <class Visit>
void for_each_block_relabeling(const LocalizationGraph& g, Visit&& visit) {
    auto blocks = vertex_blocks(g);
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::vector<int> map(g.vertices.size());
    while (true) {
        int pos = 0;
        for (const auto& b : blocks)
            for (int v : b) map[v] = pos++;
        visit(map);
        std::size_t k = 0;
        while (k < blocks.size() && !std::next_permutation(blocks[k].begin(), blocks[k].end())) ++k;
        if (k == blocks.size()) return;
    }
}

void check_vertex_bound(const LocalizationGraph& g, int max_vertices) {
    if (static_cast<int>(g.vertices.size()) > max_vertices)
        throw Error(ErrorKind::EnumerationBoundExceeded,
                    std::to_string(g.vertices.size()) + " vertices exceed the bound " + std::to_string(max_vertices));
}

} // namespace

std::vector<int> encode(const LocalizationGraph& graph) {
    std::vector<int> out{static_cast<int>(graph.vertices.size()), static_cast<int>(graph.edges.size()),
                         static_cast<int>(graph.markings.size()), static_cast<int>(graph.refinements.size())};
    for (const auto& v : graph.vertices) {
        out.push_back(v.component);
        out.push_back(static_cast<int>(v.side));
        out.push_back(v.genus);
    }
    std::vector<int> identity(graph.vertices.size());
    std::iota(identity.begin(), identity.end(), 0);
    encode_structure(graph, identity, out);
    return out;
}

LocalizationGraph canonical_form(const LocalizationGraph& graph, int max_vertices) {
    check_vertex_bound(graph, max_vertices);
    std::vector<int> best_code, best_map, code;
    for_each_block_relabeling(graph, [&](const std::vector<int>& map) {
        code.clear();
        encode_structure(graph, map, code);
        if (best_map.empty() || code < best_code) {
            best_code = code;
            best_map = map;
        }
    });
    std::vector<int> edge_order(graph.edges.size());
    std::iota(edge_order.begin(), edge_order.end(), 0);
    LocalizationGraph out = relabel(graph, best_map, edge_order);
    for (auto& e : out.edges)
        if (e.ends[0] > e.ends[1]) std::swap(e.ends[0], e.ends[1]);
    std::sort(out.edges.begin(), out.edges.end(),
              [](const Edge& a, const Edge& b) { return edge_key(a) < edge_key(b); });
    return out;
}

Integer graph_automorphism_count(const LocalizationGraph& graph, int max_vertices) {
    check_vertex_bound(graph, max_vertices);
    std::vector<int> reference, code;
    Integer vertex_symmetries = 0;
    for_each_block_relabeling(graph, [&](const std::vector<int>& map) {
        code.clear();
        encode_structure(graph, map, code);
        if (reference.empty() && vertex_symmetries == 0) reference = code;
        if (code == reference) ++vertex_symmetries;
    });
    std::map<EdgeKey, int> classes;
    for (const auto& e : graph.edges) ++classes[edge_key(e)];
    Integer total = vertex_symmetries;
    for (const auto& [key, count] : classes) total *= factorial(count).numerator();
    return total;
}

Integer aut_group_order(const LocalizationGraph& graph, int max_vertices) {
    Integer kernel = 1;
    for (const auto& e : graph.edges) kernel *= e.degree;
    return kernel * graph_automorphism_count(graph, max_vertices);
}

} // namespace taut
