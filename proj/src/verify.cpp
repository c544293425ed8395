#include "taut/verify.hpp"

#include "taut/error.hpp"
#include "taut/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

namespace taut {

json to_json(const SuiteResult& r) {
    return {{"suite", r.suite},
            {"parameters", r.parameters},
            {"cases", r.cases},
            {"pass", r.pass()},
            {"witnesses", r.witnesses}};
}

std::vector<std::vector<int>> MultiShape::marking_sets() const { return consecutive_marking_sets(sizes); }

namespace {

void compositions(int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (total == 0) {
        out.push_back(cur);
        return;
    }
    for (int first = 1; first <= total; ++first) {
        cur.push_back(first);
        compositions(total - first, cur, out);
        cur.pop_back();
    }
}

std::vector<Slack> slacks(int max_k) {
    std::vector<Slack> out;
    for (int k = 0; k <= max_k; ++k) out.push_back(Slack::finite(k));
    out.push_back(Slack::infinite());
    return out;
}

json shape_json(const MultiShape& s, const Slack& k) {
    return {{"degrees", s.degrees}, {"sizes", s.sizes}, {"k", k.to_string()}};
}

// Runs `cell(i, witnesses)` for every cell in parallel and gathers witnesses
// in cell order, so the result does not depend on the job count.
template <typename Cell>
void run_cells(SuiteResult& result, std::size_t count, int jobs, Cell&& cell) {
    std::vector<json> found(count, json::array());
    parallel_for(count, jobs, [&](std::size_t i) {
        try {
            cell(i, found[i]);
        } catch (const Error& e) {
            found[i].push_back({{"cell", i}, {"error", e.what()}});
        }
    });
    result.cases += count;
    for (auto& w : found)
        for (auto& item : w) result.witnesses.push_back(std::move(item));
}

struct MultiCell {
    MultiShape shape;
    Slack k = Slack::infinite();
};

std::vector<MultiCell> multi_cells(int max_total) {
    std::vector<MultiCell> cells;
    for (const auto& s : multi_shapes(max_total)) {
        int d = 0;
        for (int x : s.degrees) d += x;
        for (const auto& k : slacks(d)) cells.push_back({s, k});
    }
    return cells;
}

} // namespace

std::vector<MultiShape> multi_shapes(int max_total) {
    std::vector<MultiShape> out;
    for (int total = 1; total <= max_total; ++total) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(total, cur, comps);
        for (const auto& degrees : comps) {
            std::vector<int> sizes(degrees.size(), 1);
            while (true) {
                out.push_back({degrees, sizes});
                std::size_t i = 0;
                while (i < sizes.size() && ++sizes[i] > degrees[i]) sizes[i++] = 1;
                if (i == sizes.size()) break;
            }
        }
    }
    return out;
}

int default_max_d(int fallback) {
    if (const char* env = std::getenv("TAUT_MAX_D")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
    }
    return fallback;
}

SuiteResult suite_triangularity(int max_d, int jobs, const MatrixMutator& fault_b) {
    SuiteResult r{"triangularity", {{"maxD", max_d}}};
    struct Cell {
        int d, n;
        Slack k;
    };
    std::vector<Cell> cells;
    for (int d = 1; d <= max_d; ++d)
        for (int n = 1; n <= d; ++n)
            for (const auto& k : slacks(d - n)) cells.push_back({d, n, k});
    // Matrices are built single-threaded inside each cell; the cells fan out.
    run_cells(r, cells.size(), jobs, [&](std::size_t i, json& w) {
        const auto& c = cells[i];
        auto rep = verify_c(c.d, c.n, c.k, {}, fault_b);
        if (!rep.unit_upper_triangular) {
            json item = {{"d", c.d}, {"n", c.n}, {"k", c.k.to_string()}};
            if (rep.first_violation) {
                item["row"] = to_json(rep.first_violation->first);
                item["col"] = to_json(rep.first_violation->second);
            }
            w.push_back(std::move(item));
        }
    });
    return r;
}

SuiteResult suite_invertibility(int max_total, int jobs) {
    SuiteResult r{"invertibility", {{"maxTotalDegree", max_total}}};
    const auto cells = multi_cells(max_total);
    run_cells(r, cells.size(), jobs, [&](std::size_t i, json& w) {
        const auto& c = cells[i];
        auto rep = verify_m_invertible(c.shape.degrees, c.shape.marking_sets(), c.k);
        if (!rep.invertible) {
            json item = shape_json(c.shape, c.k);
            item["det"] = rep.det.to_string();
            w.push_back(std::move(item));
        }
    });
    return r;
}

SuiteResult suite_transpose_scaling(int max_total, int jobs) {
    SuiteResult r{"transpose-scaling", {{"maxTotalDegree", max_total}}};
    const auto cells = multi_cells(max_total);
    run_cells(r, cells.size(), jobs, [&](std::size_t i, json& w) {
        const auto& c = cells[i];
        auto rep = verify_m_transpose_scaling(c.shape.degrees, c.shape.marking_sets(), c.k);
        if (!rep.pass) {
            json item = shape_json(c.shape, c.k);
            if (rep.witness) {
                item["row"] = to_json(rep.witness->row);
                item["col"] = to_json(rep.witness->col);
                item["expected"] = rep.witness->expected.to_string();
                item["actual"] = rep.witness->actual.to_string();
            }
            w.push_back(std::move(item));
        }
    });
    return r;
}

SuiteResult suite_kronecker(int max_total, int jobs) {
    SuiteResult r{"kronecker", {{"maxTotalDegree", max_total}}};
    std::vector<MultiCell> cells;
    for (const auto& c : multi_cells(max_total)) {
        int d = 0, n = 0;
        for (int x : c.shape.degrees) d += x;
        for (int x : c.shape.sizes) n += x;
        if (c.k.is_infinite() || c.k.value() >= d - n) cells.push_back(c);
    }
    run_cells(r, cells.size(), jobs, [&](std::size_t i, json& w) {
        const auto& c = cells[i];
        auto rep = verify_kronecker(c.shape.degrees, c.shape.marking_sets(), c.k);
        if (!rep.pass) {
            json item = shape_json(c.shape, c.k);
            if (rep.witness) {
                item["row"] = to_json(rep.witness->row);
                item["col"] = to_json(rep.witness->col);
                item["expected"] = rep.witness->expected.to_string();
                item["actual"] = rep.witness->actual.to_string();
            }
            w.push_back(std::move(item));
        }
    });
    return r;
}

SuiteResult suite_closed_sums(const std::string& which, int max, int binom_max) {
    if (max < 2) throw Error(ErrorKind::InvalidRange, "closed-sum sweeps need max >= 2");
    static const std::set<std::string> known{"alpha", "beta", "betaprime", "gamma", "binom", "all"};
    if (!known.count(which)) throw Error(ErrorKind::InvalidArgument, "unknown suite '" + which + "'");
    SuiteResult r{"sums", {{"suite", which}, {"max", max}}};
    const bool all = which == "all";
    auto check = [&](const char* name, json args, const Rational& actual, const Rational& expected) {
        ++r.cases;
        if (actual != expected)
            r.witnesses.push_back(
                {{"sum", name}, {"args", args}, {"actual", actual.to_string()}, {"expected", expected.to_string()}});
    };
    if (all || which == "alpha")
        for (int p = 1; p <= max; ++p)
            for (int q = 1; q <= p; ++q)
                check("alpha", {p, q}, closed_sum_alpha(p, q), closed_sum_alpha_expected(p, q));
    if (all || which == "beta")
        for (int p = 2; p <= max; ++p) check("beta", {p}, closed_sum_beta(p), closed_sum_beta_expected(p));
    if (all || which == "betaprime")
        for (int p = 2; p <= max; ++p)
            check("betaprime", {p}, closed_sum_beta_prime(p), closed_sum_beta_prime_expected(p));
    if (all || which == "gamma")
        for (int p = 2; p <= max; ++p)
            for (int q = 2; q <= p; ++q)
                check("gamma", {p, q}, closed_sum_gamma(p, q), closed_sum_gamma_expected(p, q));
    if (all || which == "binom") {
        r.parameters["binomMax"] = binom_max;
        for (int n = 1; n <= binom_max; ++n) {
            for (int a = 0; a <= n - 1; ++a) {
                const auto [power, recip] = binom_identities(n, a);
                check("binom-power", {n, a}, power, Rational(0));
                if (a == 0) check("binom-reciprocal", {n}, recip, Rational(1, n + 1));
            }
        }
    }
    return r;
}

SuiteResult suite_stability(int max_d) {
    SuiteResult r{"stability", {{"maxD", max_d}}};
    for (int d = 1; d <= max_d; ++d)
        for (int n = 1; n <= d; ++n) {
            const auto stable = enumerate_pop(d, n, Slack::infinite());
            for (int k = d - n; k <= d + 1; ++k) {
                ++r.cases;
                if (enumerate_pop(d, n, Slack::finite(k)) != stable)
                    r.witnesses.push_back({{"d", d}, {"n", n}, {"k", k}});
            }
        }
    return r;
}

SuiteResult suite_closure(int max_d) {
    SuiteResult r{"closure", {{"maxD", max_d}}};
    for (int d = 1; d <= max_d; ++d)
        for (int n = 1; n <= d; ++n)
            for (const auto& k : slacks(d - n)) {
                const auto set = enumerate_pop(d, n, k);
                for (const auto& p : set) {
                    auto lowered = lower_ordered_parts(p);
                    const auto more = lower_unordered_parts(p);
                    lowered.insert(lowered.end(), more.begin(), more.end());
                    for (const auto& q : lowered) {
                        ++r.cases;
                        if (std::find(set.begin(), set.end(), q) == set.end())
                            r.witnesses.push_back({{"d", d},
                                                   {"n", n},
                                                   {"k", k.to_string()},
                                                   {"from", to_json(p)},
                                                   {"lowered", to_json(q)}});
                    }
                }
            }
    return r;
}

SuiteResult suite_total_order(int max_d) {
    SuiteResult r{"total-order", {{"maxD", max_d}}};
    auto fail = [&](const char* axiom, std::initializer_list<const Pop*> pops) {
        json items = json::array();
        for (const Pop* p : pops) items.push_back(to_json(*p));
        r.witnesses.push_back({{"axiom", axiom}, {"pops", items}});
    };
    for (int d = 1; d <= max_d; ++d)
        for (int n = 1; n <= d; ++n) {
            const auto set = enumerate_pop(d, n, Slack::infinite());
            const std::size_t size = set.size();
            std::vector<Precedence> cmp(size * size);
            for (std::size_t a = 0; a < size; ++a)
                for (std::size_t b = 0; b < size; ++b) {
                    ++r.cases;
                    cmp[a * size + b] = compare_pop(set[a], set[b]);
                    const bool eq = cmp[a * size + b] == Precedence::Equal;
                    if (eq != (set[a] == set[b])) fail("equal-iff-identical", {&set[a], &set[b]});
                    if (a > b) {
                        const auto ab = cmp[a * size + b], ba = cmp[b * size + a];
                        const bool anti = (ab == Precedence::Precedes && ba == Precedence::Succeeds) ||
                                          (ab == Precedence::Succeeds && ba == Precedence::Precedes) ||
                                          (ab == Precedence::Equal && ba == Precedence::Equal);
                        if (!anti) fail("antisymmetry", {&set[a], &set[b]});
                    }
                }
            for (std::size_t a = 0; a < size; ++a)
                for (std::size_t b = 0; b < size; ++b) {
                    if (cmp[a * size + b] != Precedence::Precedes) continue;
                    for (std::size_t c = 0; c < size; ++c) {
                        ++r.cases;
                        if (cmp[b * size + c] == Precedence::Precedes && cmp[a * size + c] != Precedence::Precedes)
                            fail("transitivity", {&set[a], &set[b], &set[c]});
                    }
                }
            for (std::size_t a = 0; a + 1 < size; ++a) {
                ++r.cases;
                if (cmp[a * size + a + 1] != Precedence::Precedes) fail("sorted", {&set[a], &set[a + 1]});
            }
        }
    return r;
}

SuiteResult suite_worked_instance() {
    SuiteResult r{"worked-instance", {{"d", 2}, {"n", 1}, {"k", "inf"}}};
    using Rows = std::vector<std::vector<Rational>>;
    const Rational h(1, 2);
    const Rows a_expected{{1, 1}, {1, h}};
    const Rows b_expected{{1, 0}, {2, -2}};
    const Rows c_expected{{1, 1}, {0, 1}};
    const Rows m_expected{{1, -2}, {1, -1}};
    auto check = [&](const char* name, const IndexedMatrix& m, const Rows& expected) {
        ++r.cases;
        if (m.rows() != expected) r.witnesses.push_back({{"matrix", name}, {"actual", to_json(m)}});
    };
    const auto a = build_a(2, 1, Slack::infinite());
    const auto b = build_b(2, 1, Slack::infinite());
    const auto c = multiply(b, a);
    const std::vector<int> degrees{2};
    const auto m = build_m(degrees, {{1}}, Slack::infinite());
    check("A", a, a_expected);
    check("B", b, b_expected);
    check("C", c, c_expected);
    check("M", m, m_expected);
    ++r.cases;
    if (determinant(m) != Rational(1)) r.witnesses.push_back({{"det", determinant(m).to_string()}});
    return r;
}

FormalClass case_one_denominator(const LocalizationGraph& graph, const FormalClass& expansion) {
    FormalClass out = FormalClass::one();
    for (Side side : {Side::Zero, Side::Infinity}) {
        const LaurentT w = LaurentT::monomial(side == Side::Zero ? 1 : -1, 1);
        if (degenerate_over(graph, side)) {
            out *= FormalClass(w);
            continue;
        }
        const int id = side == Side::Zero ? kFactorQZero : kFactorQInfinity;
        const auto it = expansion.factors().find(id);
        if (it == expansion.factors().end()) throw Error(ErrorKind::InvalidArgument, "expansion lacks a q factor");
        out *= FormalClass(w) * (FormalClass(w) - FormalClass::generator(Generator::psi(id), it->second));
    }
    return out;
}

SuiteResult suite_graphs(int max_d, int max_g, int max_m, int relabel_trials, std::uint64_t seed, int jobs) {
    SuiteResult r{"graphs",
                  {{"maxD", max_d}, {"maxGenus", max_g}, {"maxProfiles", max_m}, {"relabelTrials", relabel_trials}}};
    std::vector<RelativeShape> shapes;
    for (int d = 1; d <= max_d; ++d) {
        const auto parts = partitions_of(d);
        for (int g = 0; g <= max_g; ++g)
            for (int n = 0; n <= 1; ++n)
                for (int m = 1; m <= max_m; ++m) {
                    std::vector<std::size_t> pick(m, 0);
                    while (true) {
                        std::vector<Partition> profiles;
                        for (auto p : pick) profiles.push_back(parts[p]);
                        shapes.push_back(connected_shape(g, n, d, profiles));
                        int j = m - 1;
                        while (j >= 0 && ++pick[j] == parts.size()) pick[j--] = 0;
                        if (j < 0) break;
                    }
                }
    }

    std::vector<std::vector<LocalizationGraph>> graphs(shapes.size());
    std::vector<json> found(shapes.size(), json::array());
    std::vector<int> doubly(shapes.size(), 0);
    parallel_for(shapes.size(), jobs, [&](std::size_t i) {
        const auto& shape = shapes[i];
        auto fail = [&](const std::string& what, const LocalizationGraph* g) {
            json item = {{"check", what}, {"shape", to_json(shape)}};
            if (g) item["graph"] = to_json(*g);
            found[i].push_back(std::move(item));
        };
        try {
            graphs[i] = enumerate_graphs(shape);
        } catch (const Error& e) {
            fail(e.what(), nullptr);
            return;
        }
        for (const auto& g : graphs[i]) {
            try {
                if (!validate_graph(g, shape).valid) fail("validity", &g);
                if (!(canonical_form(g) == g)) fail("canonical-idempotent", &g);
                const auto contrib = contribution(g, shape);
                if (contrib.localization_case == LocalizationCase::I) {
                    if (!(contrib.euler_inverse * case_one_denominator(g, contrib.euler_inverse) == FormalClass::one()))
                        fail("multiply-back", &g);
                    if (contrib.degenerate_zero && contrib.degenerate_infinity) {
                        ++doubly[i];
                        if (!(contrib.euler_inverse == FormalClass(LaurentT::monomial(-1, -2))))
                            fail("doubly-degenerate", &g);
                        if (contrib.multiplicity != 1) fail("doubly-degenerate-multiplicity", &g);
                    }
                }
                if (auto beta = classify_principal(g, shape.marking_count(), Partition(), shape)) {
                    std::vector<int> edge_degrees, beta_parts;
                    for (const auto& e : g.edges) edge_degrees.push_back(e.degree);
                    for (const auto& p : beta->components) {
                        beta_parts.insert(beta_parts.end(), p.ordered.begin(), p.ordered.end());
                        beta_parts.insert(beta_parts.end(), p.unordered.parts().begin(), p.unordered.parts().end());
                    }
                    std::sort(edge_degrees.begin(), edge_degrees.end());
                    std::sort(beta_parts.begin(), beta_parts.end());
                    bool star = edge_degrees == beta_parts;
                    for (int v : g.vertices_on(Side::Infinity))
                        star = star && g.vertices[v].genus == 0 && g.edge_valence(v) == 1;
                    if (!star) fail("principal-type", &g);
                }
            } catch (const Error& e) {
                fail(e.what(), &g);
            }
        }
    });

    std::size_t total = 0, doubly_total = 0;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        total += graphs[i].size();
        doubly_total += doubly[i];
        for (auto& w : found[i]) r.witnesses.push_back(std::move(w));
    }
    r.cases += total;
    r.parameters["shapes"] = shapes.size();
    r.parameters["graphs"] = total;
    if (doubly_total == 0) r.witnesses.push_back({{"check", "doubly-degenerate"}, {"error", "no instance found"}});

    std::vector<std::pair<std::size_t, std::size_t>> pool;
    for (std::size_t i = 0; i < shapes.size(); ++i)
        for (std::size_t k = 0; k < graphs[i].size(); ++k) pool.emplace_back(i, k);
    if (pool.empty()) return r;
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < relabel_trials; ++trial) {
        const auto [i, k] = pool[draw(rng, pool.size())];
        const auto& g = graphs[i][k];
        const auto vmap = random_permutation(rng, static_cast<int>(g.vertices.size()));
        const auto eorder = random_permutation(rng, static_cast<int>(g.edges.size()));
        const auto h = relabel(g, vmap, eorder);
        ++r.cases;
        if (multiplicity(h) != multiplicity(g) || aut_group_order(h) != aut_group_order(g) ||
            !validate_graph(h, shapes[i]).valid || !(canonical_form(h) == g))
            r.witnesses.push_back({{"check", "relabel-invariance"}, {"trial", trial}, {"graph", to_json(g)}});
    }
    return r;
}

SuiteResult suite_dimension(int trials, std::uint64_t seed, int max_hurwitz_genus) {
    SuiteResult r{"dimension", {{"trials", trials}, {"seed", seed}, {"maxHurwitzGenus", max_hurwitz_genus}}};
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(draw(rng, static_cast<std::size_t>(hi - lo + 1))); };
    for (int trial = 0; trial < trials; ++trial) {
        const int c = pick(1, 2);
        RelativeShape shape;
        std::vector<int> sizes;
        for (int i = 0; i < c; ++i) {
            shape.degrees.push_back(pick(1, 3));
            shape.genera.push_back(pick(0, 2));
            sizes.push_back(pick(1, shape.degrees.back()));
        }
        shape.marking_sets = consecutive_marking_sets(sizes);
        const int d = shape.total_degree();
        const int m = pick(1, 3);
        for (int j = 0; j < m; ++j) {
            std::vector<Partition> mu;
            for (int di : shape.degrees) {
                const auto parts = partitions_of(di);
                mu.push_back(parts[draw(rng, parts.size())]);
            }
            shape.profiles.push_back(std::move(mu));
        }
        const int k = pick(0, d);
        const auto pops = enumerate_pop_multi(shape.degrees, shape.marking_sets, Slack::finite(k));
        const auto& alpha = pops[draw(rng, pops.size())];
        const auto& beta = pops[draw(rng, pops.size())];
        std::vector<int> rs(pick(0, 2)), ss(m);
        for (int& x : rs) x = pick(0, 2);
        for (int& x : ss) x = pick(0, 2);
        const auto rep = omega_dimension_check(alpha, beta, shape, rs, ss, k);
        ++r.cases;
        if (!rep.equal || rep.omega_degree_by_terms != rep.omega_degree_formula)
            r.witnesses.push_back({{"check", "omega-dimension"},
                                   {"trial", trial},
                                   {"alpha", to_json(alpha)},
                                   {"beta", to_json(beta)},
                                   {"shape", to_json(shape)},
                                   {"k", k},
                                   {"lhs", rep.lhs},
                                   {"rhs", rep.rhs}});
    }
    for (int g = 0; g <= max_hurwitz_genus; ++g) {
        int hits = 0, found = -1;
        for (int m = 1; m <= 2 * g + 6; ++m) {
            const std::vector<Partition> profiles(m, Partition::canonicalize({2}));
            ++r.cases;
            if (hurwitz_condition(g, profiles)) {
                ++hits;
                found = m;
                if (vdim_unparameterized(connected_shape(g, 0, 2, profiles, false)) != m - 3)
                    r.witnesses.push_back({{"check", "hurwitz-dimension"}, {"g", g}, {"m", m}});
            }
        }
        if (hits != 1 || found != 2 * g + 2)
            r.witnesses.push_back({{"check", "hyperelliptic"}, {"g", g}, {"found", found}, {"hits", hits}});
    }
    return r;
}

json verify_all(const VerifyAllOptions& o) {
    const int multi_bound = std::min(o.max_d, 5);
    std::vector<SuiteResult> suites;
    suites.push_back(suite_triangularity(o.max_d, o.jobs, o.fault_b));
    suites.push_back(suite_invertibility(multi_bound, o.jobs));
    suites.push_back(suite_transpose_scaling(multi_bound, o.jobs));
    suites.push_back(suite_kronecker(multi_bound, o.jobs));
    suites.push_back(suite_closed_sums("all", 12, 15));
    suites.push_back(suite_stability(o.max_d + 1));
    suites.push_back(suite_closure(o.max_d));
    suites.push_back(suite_total_order(o.max_d));
    suites.push_back(suite_worked_instance());
    suites.push_back(suite_graphs(std::min(o.max_d, 3), 2, 2, o.trials, o.seed, o.jobs));
    suites.push_back(suite_dimension(o.trials, o.seed, 10));

    json out = {{"suite", "verify-all"},
                {"parameters", {{"maxD", o.max_d}, {"seed", o.seed}, {"trials", o.trials}}},
                {"suites", json::array()},
                {"witnesses", json::array()}};
    bool pass = true;
    for (const auto& s : suites) {
        pass = pass && s.pass();
        out["suites"].push_back(to_json(s));
        for (const auto& w : s.witnesses) out["witnesses"].push_back({{"suite", s.suite}, {"witness", w}});
    }
    out["pass"] = pass;
    return out;
}

} // namespace taut
