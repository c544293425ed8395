#include "taut/locgraph.hpp"

#include "taut/error.hpp"

#include <functional>
#include <set>

namespace taut {

namespace {

bool connected(int nv, const std::vector<Edge>& edges) {
    std::vector<int> parent(nv);
    for (int v = 0; v < nv; ++v) parent[v] = v;
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    int groups = nv;
    for (const auto& e : edges) {
        const int a = find(e.ends[0]), b = find(e.ends[1]);
        if (a != b) {
            parent[a] = b;
            --groups;
        }
    }
    return groups == 1;
}

void weak_compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == parts - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int x = 0; x <= total; ++x) {
        cur.push_back(x);
        weak_compositions(total - x, parts, cur, out);
        cur.pop_back();
    }
}

// Bare bipartite multigraphs (all genera zero, no markings) of one
// component with total edge degree d and first Betti number at most g.
std::vector<LocalizationGraph> bare_skeletons(int d, int g) {
    std::set<std::vector<int>> seen;
    std::vector<LocalizationGraph> out;
    for (const auto& degrees : partitions_of(d)) {
        const int ne = degrees.length();
        for (int a = 1; a <= ne; ++a) {
            for (int b = 1; a + b <= ne + 1; ++b) {
                if (ne - a - b + 1 > g) continue;
                const int pairs = a * b;
                std::vector<int> choice(ne, 0);
                while (true) {
                    LocalizationGraph G;
                    for (int v = 0; v < a + b; ++v) G.vertices.push_back({0, v < a ? Side::Zero : Side::Infinity, 0});
                    for (int k = 0; k < ne; ++k)
                        G.edges.push_back({{choice[k] / b, a + choice[k] % b}, degrees.parts()[k]});
                    if (connected(a + b, G.edges)) {
                        auto canon = canonical_form(G);
                        if (seen.insert(encode(canon)).second) out.push_back(std::move(canon));
                    }
                    int k = 0;
                    while (k < ne && ++choice[k] == pairs) choice[k++] = 0;
                    if (k == ne) break;
                }
            }
        }
    }
    return out;
}

// Component-level skeletons: bare graphs decorated with vertex genera and
// the component's markings, up to isomorphism.
std::vector<LocalizationGraph> component_skeletons(int d, int g, const std::vector<int>& labels) {
    std::set<std::vector<int>> seen;
    std::vector<LocalizationGraph> out;
    for (const auto& bare : bare_skeletons(d, g)) {
        const int nv = static_cast<int>(bare.vertices.size());
        const int h1 = static_cast<int>(bare.edges.size()) - nv + 1;
        std::vector<std::vector<int>> genera;
        std::vector<int> cur;
        weak_compositions(g - h1, nv, cur, genera);
        for (const auto& gv : genera) {
            std::vector<int> place(labels.size(), 0);
            while (true) {
                LocalizationGraph G = bare;
                for (int v = 0; v < nv; ++v) G.vertices[v].genus = gv[v];
                for (std::size_t k = 0; k < labels.size(); ++k) G.markings[labels[k]] = place[k];
                auto canon = canonical_form(G);
                if (seen.insert(encode(canon)).second) out.push_back(std::move(canon));
                std::size_t k = 0;
                while (k < place.size() && ++place[k] == nv) place[k++] = 0;
                if (k == place.size()) break;
            }
        }
    }
    return out;
}

// All assignments of labeled parts to vertices with the given capacities
// such that every capacity is met exactly.
void distribute(const std::vector<int>& parts, std::size_t k, const std::vector<int>& targets,
                std::vector<int>& capacity, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (k == parts.size()) {
        for (int c : capacity)
            if (c != 0) return;
        out.push_back(cur);
        return;
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
        if (capacity[t] < parts[k]) continue;
        capacity[t] -= parts[k];
        cur.push_back(targets[t]);
        distribute(parts, k + 1, targets, capacity, cur, out);
        cur.pop_back();
        capacity[t] += parts[k];
    }
}

// Every refinement Rʲ on `side` for the skeleton, as per-component lists.
std::vector<Refinement> refinements_on(const LocalizationGraph& skeleton, const RelativeShape& shape, int j,
                                       Side side) {
    const int c = shape.components();
    std::vector<std::vector<std::vector<int>>> per_component(c);
    for (int i = 0; i < c; ++i) {
        std::vector<int> targets, capacity;
        for (int v = 0; v < static_cast<int>(skeleton.vertices.size()); ++v) {
            if (skeleton.vertices[v].component != i || skeleton.vertices[v].side != side) continue;
            targets.push_back(v);
            capacity.push_back(skeleton.incident_degree(v));
        }
        std::vector<int> cur;
        distribute(shape.profiles[j][i].parts(), 0, targets, capacity, cur, per_component[i]);
        if (per_component[i].empty()) return {};
    }
    std::vector<Refinement> out;
    std::vector<std::size_t> idx(c, 0);
    while (true) {
        Refinement r{j, side, {}};
        for (int i = 0; i < c; ++i) r.distribution.push_back(per_component[i][idx[i]]);
        out.push_back(std::move(r));
        int i = c - 1;
        while (i >= 0 && ++idx[i] == per_component[i].size()) idx[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

} // namespace

std::vector<LocalizationGraph> enumerate_graphs(const RelativeShape& shape, const EnumerationBounds& bounds) {
    shape.validate();
    if (!shape.parameterized)
        throw Error(ErrorKind::InvalidShape, "graph enumeration is defined for parameterized shapes");
    if (shape.total_degree() > bounds.max_degree)
        throw Error(ErrorKind::EnumerationBoundExceeded, "degree " + std::to_string(shape.total_degree()) +
                                                             " exceeds bound " + std::to_string(bounds.max_degree));
    if (shape.total_genus() > bounds.max_genus)
        throw Error(ErrorKind::EnumerationBoundExceeded,
                    "genus " + std::to_string(shape.total_genus()) + " exceeds bound " + std::to_string(bounds.max_genus));
    if (shape.profile_count() > bounds.max_profiles)
        throw Error(ErrorKind::EnumerationBoundExceeded, "profile count " + std::to_string(shape.profile_count()) +
                                                             " exceeds bound " + std::to_string(bounds.max_profiles));

    const int c = shape.components();
    std::vector<std::vector<LocalizationGraph>> parts(c);
    for (int i = 0; i < c; ++i) {
        parts[i] = component_skeletons(shape.degrees[i], shape.genera[i], shape.marking_sets[i]);
        if (parts[i].empty()) return {};
    }

    std::map<std::vector<int>, LocalizationGraph> found;
    std::vector<std::size_t> idx(c, 0);
    while (true) {
        LocalizationGraph skeleton;
        for (int i = 0; i < c; ++i) {
            const auto& piece = parts[i][idx[i]];
            const int offset = static_cast<int>(skeleton.vertices.size());
            for (auto v : piece.vertices) {
                v.component = i;
                skeleton.vertices.push_back(v);
            }
            for (auto e : piece.edges) {
                e.ends = {e.ends[0] + offset, e.ends[1] + offset};
                skeleton.edges.push_back(e);
            }
            for (const auto& [label, v] : piece.markings) skeleton.markings[label] = v + offset;
        }

        const int m = shape.profile_count();
        std::vector<std::vector<Refinement>> options(m);
        bool feasible = true;
        for (int j = 0; j < m && feasible; ++j) {
            for (Side s : {Side::Zero, Side::Infinity}) {
                auto r = refinements_on(skeleton, shape, j, s);
                options[j].insert(options[j].end(), r.begin(), r.end());
            }
            feasible = !options[j].empty();
        }
        if (feasible) {
            std::vector<std::size_t> pick(m, 0);
            while (true) {
                LocalizationGraph G = skeleton;
                for (int j = 0; j < m; ++j) G.refinements.push_back(options[j][pick[j]]);
                auto canon = canonical_form(G);
                auto key = encode(canon);
                found.try_emplace(std::move(key), std::move(canon));
                int j = m - 1;
                while (j >= 0 && ++pick[j] == options[j].size()) pick[j--] = 0;
                if (j < 0) break;
            }
        }

        int i = c - 1;
        while (i >= 0 && ++idx[i] == parts[i].size()) idx[i--] = 0;
        if (i < 0) break;
    }

    std::vector<LocalizationGraph> out;
    out.reserve(found.size());
    for (auto& [key, g] : found) out.push_back(std::move(g));
    return out;
}

} // namespace taut
