#pragma once

#include "taut/json_io.hpp"
#include "taut/relmatrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace taut {

/// Outcome of one verification sweep. Witnesses are collected for every
/// failing case; the sweep never stops early.
struct SuiteResult {
    std::string suite;
    json parameters = json::object();
    std::size_t cases = 0;
    json witnesses = json::array();

    bool pass() const { return witnesses.empty(); }
};

json to_json(const SuiteResult& r);

/// A degree vector with consecutive marking sets of the given sizes.
struct MultiShape {
    std::vector<int> degrees;
    std::vector<int> sizes;
    std::vector<std::vector<int>> marking_sets() const;
};

/// Every 𝐝 with 1 <= Σdᵢ <= max_total and every size vector 1 <= |nᵢ| <= dᵢ.
std::vector<MultiShape> multi_shapes(int max_total);

/// Sweep bound from TAUT_MAX_D, else `fallback`.
int default_max_d(int fallback = 6);

SuiteResult suite_triangularity(int max_d, int jobs, const MatrixMutator& fault_b = {});
SuiteResult suite_invertibility(int max_total, int jobs);
SuiteResult suite_transpose_scaling(int max_total, int jobs);
SuiteResult suite_kronecker(int max_total, int jobs);
/// which: alpha | beta | betaprime | gamma | binom | all
SuiteResult suite_closed_sums(const std::string& which, int max, int binom_max);
SuiteResult suite_stability(int max_d);
SuiteResult suite_closure(int max_d);
SuiteResult suite_total_order(int max_d);
SuiteResult suite_worked_instance();
/// Enumerated graphs for connected parameterized shapes within the bounds:
/// validity, canonical idempotence, relabeling invariance, degenerate and
/// multiply-back checks, principal-type properties.
SuiteResult suite_graphs(int max_d, int max_g, int max_m, int relabel_trials, std::uint64_t seed, int jobs);
SuiteResult suite_dimension(int trials, std::uint64_t seed, int max_hurwitz_genus);

/// The un-expanded denominator of a Case I Euler inverse, using the factor
/// bounds recorded in `expansion`.
FormalClass case_one_denominator(const LocalizationGraph& graph, const FormalClass& expansion);

/// Uniform index in [0, n) from a 64-bit draw; `rng() % n` for portability.
template <typename Rng>
std::size_t draw(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

template <typename Rng>
std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[draw(rng, i + 1)]);
    return p;
}

struct VerifyAllOptions {
    int max_d = 6;
    int jobs = 1;
    std::uint64_t seed = 1;
    int trials = 1000;
    MatrixMutator fault_b;
};

/// Aggregate report; `pass` is true iff every suite passes.
json verify_all(const VerifyAllOptions& options);

} // namespace taut
