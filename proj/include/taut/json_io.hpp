#pragma once

#include "taut/formal_class.hpp"
#include "taut/indexed_matrix.hpp"
#include "taut/locgraph.hpp"
#include "taut/partitions.hpp"

#include <json.hpp>

#include <string>

namespace taut {

using json = nlohmann::json;

json to_json(const Pop& p);
json to_json(const MultiPop& p);
Pop pop_from_json(const json& j);
MultiPop multi_pop_from_json(const json& j);

/// {"index": [...], "entries": [["num/den", ...], ...]}
json to_json(const IndexedMatrix& m);
/// Legend lines ("# row/col k: <pop>") followed by one CSV row per matrix row.
std::string to_csv(const IndexedMatrix& m);

json to_json(const RelativeShape& s);
json to_json(const LocalizationGraph& g);
LocalizationGraph graph_from_json(const json& j);

/// Term list: [{"monomial": "psi[q0]", "coefficients": {"-3": "1/2", ...}}, ...]
json to_json(const FormalClass& c);
json to_json(const GraphContribution& c);

} // namespace taut
