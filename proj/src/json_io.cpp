#include "taut/json_io.hpp"

#include "taut/error.hpp"

#include <sstream>

namespace taut {

json to_json(const Pop& p) {
    return {{"d", p.degree}, {"ordered", p.ordered}, {"unordered", p.unordered.parts()}};
}

json to_json(const MultiPop& p) {
    json comps = json::array();
    for (const auto& c : p.components) comps.push_back(to_json(c));
    return {{"components", comps}, {"markingSets", p.marking_sets}};
}

Pop pop_from_json(const json& j) {
    try {
        return Pop::make(j.at("d").get<int>(), j.at("ordered").get<std::vector<int>>(),
                         j.at("unordered").get<std::vector<int>>());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed POP JSON: ") + e.what());
    }
}

MultiPop multi_pop_from_json(const json& j) {
    try {
        MultiPop p;
        for (const auto& c : j.at("components")) p.components.push_back(pop_from_json(c));
        p.marking_sets = j.at("markingSets").get<std::vector<std::vector<int>>>();
        return p;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed MultiPOP JSON: ") + e.what());
    }
}

json to_json(const IndexedMatrix& m) {
    json index = json::array();
    for (const auto& p : m.index()) index.push_back(to_json(p));
    json entries = json::array();
    for (std::size_t r = 0; r < m.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m.at(r, c).to_string());
        entries.push_back(std::move(row));
    }
    return {{"index", index}, {"entries", entries}};
}

std::string to_csv(const IndexedMatrix& m) {
    std::ostringstream out;
    for (std::size_t k = 0; k < m.size(); ++k) out << "# " << k << ": " << m.index()[k].to_string() << '\n';
    for (std::size_t r = 0; r < m.size(); ++r) {
        for (std::size_t c = 0; c < m.size(); ++c) out << (c ? "," : "") << m.at(r, c).to_string();
        out << '\n';
    }
    return out.str();
}

json to_json(const RelativeShape& s) {
    json profiles = json::array();
    for (const auto& mu : s.profiles) {
        json p = json::array();
        for (const auto& part : mu) p.push_back(part.parts());
        profiles.push_back(std::move(p));
    }
    return {{"genera", s.genera},
            {"markingSets", s.marking_sets},
            {"degrees", s.degrees},
            {"profiles", profiles},
            {"parameterized", s.parameterized},
            {"extraMarkings", s.extra_markings}};
}

json to_json(const LocalizationGraph& g) {
    json vertices = json::array();
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        vertices.push_back({{"id", v},
                            {"genus", g.vertices[v].genus},
                            {"side", std::string(to_string(g.vertices[v].side))},
                            {"component", g.vertices[v].component + 1}});
    json edges = json::array();
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        edges.push_back({{"id", e}, {"ends", g.edges[e].ends}, {"degree", g.edges[e].degree}});
    json markings = json::object();
    for (const auto& [label, v] : g.markings) markings[std::to_string(label)] = v;
    json refinements = json::array();
    for (const auto& r : g.refinements) {
        json dist = json::object();
        for (std::size_t i = 0; i < r.distribution.size(); ++i) dist[std::to_string(i + 1)] = r.distribution[i];
        refinements.push_back(
            {{"profileIndex", r.profile + 1}, {"side", std::string(to_string(r.side))}, {"distribution", dist}});
    }
    return {{"vertices", vertices}, {"edges", edges}, {"markings", markings}, {"refinements", refinements}};
}

namespace {

Side side_from(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "0") return Side::Zero;
    if (s == "inf") return Side::Infinity;
    throw Error(ErrorKind::InvalidArgument, "unknown side '" + s + "'");
}

} // namespace

LocalizationGraph graph_from_json(const json& j) {
    try {
        LocalizationGraph g;
        for (const auto& v : j.at("vertices"))
            g.vertices.push_back({v.at("genus").get<int>(), side_from(v.at("side")), v.at("component").get<int>() - 1});
        for (const auto& e : j.at("edges"))
            g.edges.push_back({e.at("ends").get<std::array<int, 2>>(), e.at("degree").get<int>()});
        for (const auto& [label, v] : j.at("markings").items()) g.markings[std::stoi(label)] = v.get<int>();
        for (const auto& r : j.at("refinements")) {
            Refinement ref{r.at("profileIndex").get<int>() - 1, side_from(r.at("side")), {}};
            const auto& dist = r.at("distribution");
            for (std::size_t i = 1; i <= dist.size(); ++i)
                ref.distribution.push_back(dist.at(std::to_string(i)).get<std::vector<int>>());
            g.refinements.push_back(std::move(ref));
        }
        return g;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed graph JSON: ") + e.what());
    }
}

json to_json(const FormalClass& c) {
    json terms = json::array();
    for (const auto& [m, coeff] : c.terms()) {
        json coeffs = json::object();
        for (const auto& [e, r] : coeff.terms()) coeffs[std::to_string(e)] = r.to_string();
        terms.push_back({{"monomial", c.monomial_name(m)}, {"coefficients", coeffs}});
    }
    return terms;
}

json to_json(const GraphContribution& c) {
    return {{"multiplicity", c.multiplicity.get_str()},
            {"autOrder", c.aut_order.get_str()},
            {"case", std::string(to_string(c.localization_case))},
            {"degenerateAt0", c.degenerate_zero},
            {"degenerateAtInf", c.degenerate_infinity},
            {"flagged", c.flagged},
            {"eulerInverse", to_json(c.euler_inverse)}};
}

} // namespace taut
