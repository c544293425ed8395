#include "support.hpp"

#include "taut/error.hpp"
#include "taut/locgraph.hpp"

#include <doctest.h>

#include <random>

using namespace taut;
using support::part;

namespace {

bool throws_kind(ErrorKind kind, auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

constexpr Side Z = Side::Zero;
constexpr Side I = Side::Infinity;

LaurentT tpow(Rational c, int e) { return LaurentT::monomial(c, e); }

// Side-0 vertex, side-∞ vertex, one edge of degree d; the only refinement
// of μ = (d) sits on `side`.
LocalizationGraph single_edge(int d, Side side) {
    LocalizationGraph g;
    g.vertices = {{0, Z, 0}, {0, I, 0}};
    g.edges = {{{0, 1}, d}};
    g.refinements = {{0, side, {{side == Z ? 0 : 1}}}};
    return g;
}

// Side-0 hub v0 with edges of degree 2 and 3 to v1, v2 over ∞.
LocalizationGraph fork_23() {
    LocalizationGraph g;
    g.vertices = {{0, Z, 0}, {0, I, 0}, {0, I, 0}};
    g.edges = {{{0, 1}, 2}, {{0, 2}, 3}};
    return g;
}

} // namespace

TEST_SUITE("locgraph") {

TEST_CASE("shape validation") {
    CHECK_NOTHROW(connected_shape(0, 0, 1, {part({1})}).validate());
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { connected_shape(0, 0, 2, {part({1})}).validate(); }));
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { connected_shape(0, 0, 1, {}).validate(); }));
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { connected_shape(0, 0, 1, {part({1})}, false).validate(); }));
    CHECK_NOTHROW(connected_shape(0, 0, 1, {part({1}), part({1})}, false).validate());
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { connected_shape(-1, 0, 1, {part({1})}).validate(); }));
    const auto s = connected_shape(2, 3, 4, {part({2, 2}), part({4})});
    CHECK(s.marking_count() == 3);
    CHECK(s.profile_length(0) == 2);
    CHECK(s.component_of_marking(3) == 0);
    CHECK(s.component_of_marking(4) == -1);
}

TEST_CASE("validate_graph examples") {
    const auto shape = connected_shape(0, 0, 1, {part({1})});
    const auto g = single_edge(1, Z);
    CHECK(validate_graph(g, shape).valid);
    CHECK(oracle::valid(g, shape));

    const auto shape2 = connected_shape(0, 0, 2, {part({2})});
    LocalizationGraph bad;
    bad.vertices = {{0, Z, 0}, {0, I, 0}, {0, Z, 0}};
    bad.edges = {{{0, 1}, 1}, {{2, 1}, 1}};
    bad.refinements = {{0, Z, {{0}}}};
    const auto r = validate_graph(bad, shape2);
    CHECK_FALSE(r.valid);
    CHECK_FALSE(r.violations.empty());
    CHECK_FALSE(oracle::valid(bad, shape2));

    LocalizationGraph same_side = g;
    same_side.vertices[1].side = Z;
    CHECK_FALSE(validate_graph(same_side, shape).valid);

    LocalizationGraph too_much_genus = g;
    too_much_genus.vertices[0].genus = 1;
    CHECK_FALSE(validate_graph(too_much_genus, shape).valid);

    LocalizationGraph missing_marking = g;
    CHECK_FALSE(validate_graph(missing_marking, connected_shape(0, 1, 1, {part({1})})).valid);
    missing_marking.markings[1] = 1;
    CHECK(validate_graph(missing_marking, connected_shape(0, 1, 1, {part({1})})).valid);
}

TEST_CASE("enumeration examples") {
    const auto one = enumerate_graphs(connected_shape(0, 0, 1, {part({1})}));
    CHECK(one.size() == 2);
    const auto two = enumerate_graphs(connected_shape(0, 0, 1, {part({1}), part({1})}));
    CHECK(two.size() == 4);
    for (const auto& g : enumerate_graphs(connected_shape(1, 0, 2, {part({2})})))
        for (const auto& v : g.vertices) CHECK(v.genus <= 1);
    CHECK(throws_kind(ErrorKind::EnumerationBoundExceeded,
                      [] { enumerate_graphs(connected_shape(0, 0, 5, {part({5})})); }));
    CHECK(throws_kind(ErrorKind::EnumerationBoundExceeded,
                      [] { enumerate_graphs(connected_shape(4, 0, 1, {part({1})})); }));
    CHECK(throws_kind(ErrorKind::EnumerationBoundExceeded, [] {
        enumerate_graphs(connected_shape(0, 0, 1, {part({1}), part({1}), part({1}), part({1})}));
    }));
    CHECK(throws_kind(ErrorKind::InvalidShape,
                      [] { enumerate_graphs(connected_shape(0, 0, 1, {part({1}), part({1})}, false)); }));
    EnumerationBounds wide;
    wide.max_degree = 5;
    CHECK_NOTHROW(enumerate_graphs(connected_shape(0, 0, 5, {part({5})}), wide));
}

TEST_CASE("enumeration equals generate-and-filter on small shapes") {
    std::vector<RelativeShape> shapes{
        connected_shape(0, 0, 2, {part({1, 1})}),
        connected_shape(1, 1, 2, {part({2})}),
        connected_shape(0, 2, 2, {part({2}), part({1, 1})}),
        connected_shape(1, 0, 3, {part({2, 1})}),
    };
    RelativeShape two;
    two.genera = {0, 1};
    two.degrees = {1, 2};
    two.marking_sets = {{1}, {}};
    two.profiles = {{part({1}), part({1, 1})}};
    shapes.push_back(two);
    for (const auto& s : shapes) {
        const auto ours = enumerate_graphs(s);
        const auto ref = oracle::graphs(s);
        CHECK(ours.size() == ref.size());
        std::set<std::vector<int>> keys;
        for (const auto& g : ours) {
            keys.insert(oracle::key(g));
            CHECK(ref.count(oracle::key(g)) == 1);
        }
        CHECK(keys.size() == ours.size());
    }
}

TEST_CASE("canonical form is a relabeling invariant") {
    std::mt19937_64 rng(11);
    const auto shape = connected_shape(1, 1, 3, {part({2, 1}), part({3})});
    const auto all = enumerate_graphs(shape);
    REQUIRE_FALSE(all.empty());
    for (const auto& g : all) {
        CHECK(canonical_form(g) == g);
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<int> vmap(g.vertices.size()), eorder(g.edges.size());
            std::iota(vmap.begin(), vmap.end(), 0);
            std::iota(eorder.begin(), eorder.end(), 0);
            std::shuffle(vmap.begin(), vmap.end(), rng);
            std::shuffle(eorder.begin(), eorder.end(), rng);
            const auto h = relabel(g, vmap, eorder);
            CHECK(validate_graph(h, shape).valid);
            CHECK(canonical_form(h) == g);
            CHECK(oracle::key(h) == oracle::key(g));
        }
    }
}

TEST_CASE("case classification") {
    LocalizationGraph g = single_edge(1, Z);
    CHECK(classify_case(g) == LocalizationCase::II);
    g.refinements[0] = {0, I, {{1}}};
    CHECK(classify_case(g) == LocalizationCase::III);
    g.refinements.push_back({1, Z, {{0}}});
    CHECK(classify_case(g) == LocalizationCase::I);
}

TEST_CASE("degeneracy") {
    auto g = single_edge(2, Z);
    CHECK(degenerate_over(g, Z));
    CHECK_FALSE(degenerate_over(g, I));
    auto marked = g;
    marked.markings[1] = 0;
    CHECK_FALSE(degenerate_over(marked, Z));
    auto genus = g;
    genus.vertices[0].genus = 1;
    CHECK_FALSE(degenerate_over(genus, Z));
    auto two_refinements = g;
    two_refinements.refinements.push_back({1, Z, {{0}}});
    CHECK_FALSE(degenerate_over(two_refinements, Z));
    // μ = (1,1) on a vertex with one edge of degree 2: two parts, not R_δ.
    auto split = g;
    split.refinements = {{0, Z, {{0, 0}}}};
    CHECK_FALSE(degenerate_over(split, Z));
}

TEST_CASE("multiplicity examples") {
    auto g = fork_23();
    g.refinements = {{0, Z, {{0}}}, {1, I, {{2, 1}}}, {2, I, {{2, 1}}}};
    CHECK(multiplicity(g) == 36);
    CHECK(multiplicity(g) == oracle::multiplicity(g));

    auto single_degenerate = fork_23();
    single_degenerate.refinements = {{0, Z, {{0}}}, {1, I, {{2, 1}}}};
    CHECK(degenerate_over(single_degenerate, I));
    CHECK(multiplicity(single_degenerate) == 6);
    CHECK_FALSE(contribution(single_degenerate, connected_shape(0, 0, 5, {part({5}), part({3, 2})})).flagged);

    auto case_two = fork_23();
    case_two.refinements = {{0, Z, {{0}}}};
    CHECK(multiplicity(case_two) == 6);

    auto both = single_edge(1, Z);
    both.refinements.push_back({1, I, {{1}}});
    CHECK(multiplicity(both) == 1);
}

TEST_CASE("flagged single-degenerate convention") {
    // Degenerate over ∞, two refinements over 0.
    auto g = fork_23();
    g.refinements = {{0, Z, {{0}}}, {1, Z, {{0}}}, {2, I, {{2, 1}}}};
    const auto shape = connected_shape(0, 0, 5, {part({5}), part({5}), part({3, 2})});
    REQUIRE(validate_graph(g, shape).valid);
    const auto c = contribution(g, shape);
    CHECK(c.flagged);
    CHECK(c.degenerate_infinity);
    CHECK(c.multiplicity == 6);
}

TEST_CASE("automorphism examples") {
    for (int d = 1; d <= 4; ++d) CHECK(aut_group_order(single_edge(d, Z)) == d);

    LocalizationGraph star;
    star.vertices = {{1, Z, 0}, {0, I, 0}, {0, I, 0}};
    star.edges = {{{0, 1}, 1}, {{0, 2}, 1}};
    star.refinements = {{0, Z, {{0}}}};
    REQUIRE(validate_graph(star, connected_shape(1, 0, 2, {part({2})})).valid);
    CHECK(graph_automorphism_count(star) == 2);
    CHECK(aut_group_order(star) == 2);
    CHECK(oracle::automorphisms(star) == 2);

    LocalizationGraph parallel;
    parallel.vertices = {{0, Z, 0}, {0, I, 0}};
    parallel.edges = {{{0, 1}, 1}, {{0, 1}, 1}};
    parallel.refinements = {{0, Z, {{0}}}};
    REQUIRE(validate_graph(parallel, connected_shape(1, 0, 2, {part({2})})).valid);
    CHECK(aut_group_order(parallel) == 2);
    CHECK(oracle::automorphisms(parallel) == 2);

    auto asym = fork_23();
    asym.refinements = {{0, Z, {{0}}}};
    CHECK(graph_automorphism_count(asym) == 1);
    CHECK(aut_group_order(asym) == 6);

    // A refinement over ∞ pins the leaves.
    auto pinned = star;
    pinned.refinements.push_back({1, I, {{1, 2}}});
    CHECK(graph_automorphism_count(pinned) == 1);

    LocalizationGraph big;
    for (int v = 0; v < 13; ++v) big.vertices.push_back({0, v == 0 ? Z : I, 0});
    for (int v = 1; v < 13; ++v) big.edges.push_back({{0, v}, 1});
    CHECK(throws_kind(ErrorKind::EnumerationBoundExceeded, [&] { aut_group_order(big); }));
}

TEST_CASE("vertex term examples") {
    const auto shape3 = connected_shape(0, 0, 3, {part({3})});
    CHECK(vertex_term(single_edge(3, Z), 1, shape3) == FormalClass(LaurentT(Rational(1, 3))));

    auto marked = single_edge(1, Z);
    marked.markings[1] = 1;
    CHECK(vertex_term(marked, 1, connected_shape(0, 1, 1, {part({1})})) == FormalClass(tpow(-1, -1)));

    LocalizationGraph bridge;
    bridge.vertices = {{0, Z, 0}, {0, I, 0}, {0, Z, 0}};
    bridge.edges = {{{0, 1}, 1}, {{2, 1}, 1}};
    bridge.refinements = {{0, Z, {{0, 2}}}};
    const auto bshape = connected_shape(0, 0, 2, {part({1, 1})});
    REQUIRE(validate_graph(bridge, bshape).valid);
    CHECK(vertex_term(bridge, 1, bshape) == FormalClass(tpow(Rational(1, 2), -2)));

    // Case III puts the weight t on side 0.
    auto mirrored = single_edge(3, I);
    CHECK(vertex_term(mirrored, 0, shape3) == FormalClass(LaurentT(Rational(1, 3))));

    CHECK(throws_kind(ErrorKind::InvalidVertex, [&] { vertex_term(single_edge(3, Z), 0, shape3); }));
    CHECK(throws_kind(ErrorKind::InvalidVertex, [&] { vertex_term(single_edge(3, Z), 5, shape3); }));
}

TEST_CASE("stable vertex term") {
    LocalizationGraph g = single_edge(1, Z);
    g.vertices[1].genus = 1;
    const auto shape = connected_shape(1, 0, 1, {part({1})});
    REQUIRE(validate_graph(g, shape).valid);
    const int f = vertex_factor(1);
    const FactorInfo info{"v1", 1};
    FormalClass expected(tpow(-1, -1));
    expected.declare_factor(f, info);
    expected += (FormalClass::generator(Generator::psi(f, 1), info) -
                 FormalClass::generator(Generator::lambda(f, 1), info)) *
                FormalClass(tpow(1, -2));
    CHECK(vertex_term(g, 1, shape) == expected);
}

TEST_CASE("euler inverse: degenerate and truncated Case I") {
    auto both = single_edge(1, Z);
    both.refinements.push_back({1, I, {{1}}});
    const auto shape = connected_shape(0, 0, 1, {part({1}), part({1})});
    CHECK(euler_inverse(both, shape) == FormalClass(tpow(-1, -2)));

    LocalizationGraph g = single_edge(1, Z);
    g.vertices[0].genus = 1;
    g.vertices[1].genus = 1;
    g.refinements.push_back({1, I, {{1}}});
    const auto gshape = connected_shape(2, 0, 1, {part({1}), part({1})});
    REQUIRE(validate_graph(g, gshape).valid);
    const FactorInfo q0{"q0", 1}, qi{"qinf", 1};
    const auto p0 = FormalClass::generator(Generator::psi(kFactorQZero), q0);
    const auto pi = FormalClass::generator(Generator::psi(kFactorQInfinity), qi);
    const FormalClass tinv(tpow(1, -1));
    const auto expected = FormalClass(tpow(1, -4)) * (FormalClass::one() + p0 * tinv) * (FormalClass::one() - pi * tinv);
    EulerOptions opts;
    opts.q_zero_truncation = 1;
    opts.q_infinity_truncation = 1;
    const auto e = euler_inverse(g, gshape, opts);
    CHECK(e == expected);
    CHECK(euler_inverse(g, gshape) == expected);
    CHECK(e.coefficient({}) == tpow(1, -4));

    const auto denominator = FormalClass(LaurentT::t()) * (FormalClass(LaurentT::t()) - p0) *
                             FormalClass(tpow(-1, 1)) * (FormalClass(tpow(-1, 1)) - pi);
    CHECK(e * denominator == FormalClass::one());
}

TEST_CASE("euler inverse in Case II") {
    const auto shape = connected_shape(0, 0, 2, {part({2})});
    // Degenerate side 0: 1/t · (−t)^{−1}·2²/2! · 1/2.
    CHECK(euler_inverse(single_edge(2, Z), shape) == FormalClass(tpow(-1, -2)));
}

TEST_CASE("side factor shape") {
    auto g = fork_23();
    g.refinements = {{0, Z, {{0}}}, {1, I, {{2, 1}}}, {2, I, {{2, 1}}}};
    const auto shape = connected_shape(0, 0, 5, {part({5}), part({3, 2}), part({3, 2})});
    REQUIRE(validate_graph(g, shape).valid);
    const auto inf = side_factor_shape(g, shape, I);
    CHECK(inf.components() == 2);
    CHECK(inf.profile_count() == 3);
    CHECK_FALSE(inf.parameterized);
    CHECK(inf.degrees == std::vector<int>{2, 3});
    const auto zero = side_factor_shape(g, shape, Z);
    CHECK(zero.components() == 1);
    CHECK(zero.profiles.back() == std::vector<Partition>{part({3, 2})});
}

TEST_CASE("principal type") {
    const auto shape = connected_shape(0, 1, 2, {part({2})});
    const MultiPop beta = as_multi(Pop::make(2, {1}, {1}));
    const auto g = principal_graph(beta, shape, 1, {});
    CHECK(validate_graph(g, shape).valid);
    const auto back = classify_principal(g, 1, Partition(), shape);
    REQUIRE(back.has_value());
    CHECK(*back == beta);

    auto flipped = g;
    flipped.refinements[0].side = I;
    flipped.refinements[0].distribution = {{1, 2}};
    CHECK_FALSE(classify_principal(flipped, 1, Partition(), shape).has_value());

    LocalizationGraph chain;
    chain.vertices = {{0, Z, 0}, {0, I, 0}, {0, Z, 0}};
    chain.edges = {{{0, 1}, 1}, {{2, 1}, 1}};
    chain.markings[1] = 1;
    chain.refinements = {{0, Z, {{0, 2}}}};
    CHECK_FALSE(classify_principal(chain, 1, Partition(), connected_shape(0, 1, 2, {part({1, 1})})).has_value());

    // Middle marking on an unordered edge; the extra marking sits on the hub.
    RelativeShape s3 = connected_shape(1, 3, 4, {part({4})});
    s3.extra_markings = 1;
    const MultiPop b3 = as_multi(Pop::make(4, {1}, {2, 1}));
    const auto g3 = principal_graph(b3, s3, 1, {{0, 0}});
    CHECK(validate_graph(g3, s3).valid);
    CHECK(g3.markings.at(3) == 0);
    const auto c3 = classify_principal(g3, 1, part({2}), s3);
    REQUIRE(c3.has_value());
    CHECK(*c3 == b3);
}

TEST_CASE("dimensions") {
    CHECK(vdim_parameterized(connected_shape(0, 0, 1, {part({1})})) == 1);
    CHECK(vdim_unparameterized(connected_shape(0, 0, 1, {part({1}), part({1})}, false)) == -1);
    for (int g = 0; g <= 10; ++g) {
        const std::vector<Partition> hyper(2 * g + 2, part({2}));
        CHECK(hurwitz_condition(g, hyper));
        CHECK_FALSE(hurwitz_condition(g, std::vector<Partition>(2 * g + 1, part({2}))));
    }
    CHECK_FALSE(hurwitz_condition(0, {part({2})}));
    CHECK(hurwitz_condition(0, {part({1}), part({1}), part({1})}));
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { hurwitz_condition(0, {part({2}), part({1})}); }));
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { hurwitz_condition(0, {}); }));

    RelativeShape two;
    two.genera = {1, 0};
    two.degrees = {1, 1};
    two.marking_sets = {{1}, {}};
    two.profiles = {{part({1}), part({1})}};
    // arithmetic genus 0: −2 + 4 + 1 + (1 + 2 − 2)
    CHECK(vdim_parameterized(two) == 4);
}

TEST_CASE("omega dimension substitution example") {
    const auto shape = connected_shape(1, 1, 2, {part({1, 1})});
    const MultiPop ab = as_multi(Pop::make(2, {1}, {1}));
    const std::vector<int> r, s{0};
    const auto rep = omega_dimension_check(ab, ab, shape, r, s, 0);
    // vdim⁺ = 0 + 4 + 1 + 1 = 6, minus 0+1+0+0+0+2; reduced side 3 − (0+0+2−2+0).
    CHECK(rep.lhs == 3);
    CHECK(rep.rhs == 3);
    CHECK(rep.equal);
    CHECK(rep.omega_degree_by_terms == rep.omega_degree_formula);
    const std::vector<int> bad_s{0, 0};
    CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { omega_dimension_check(ab, ab, shape, r, bad_s, 0); }));
}

} // TEST_SUITE
