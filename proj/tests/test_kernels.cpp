#include "support.hpp"

#include "taut/error.hpp"
#include "taut/kernels.hpp"

#include <doctest.h>

#include <algorithm>

using namespace taut;
using support::part;
using support::q;

namespace {

bool throws_kind(ErrorKind kind, auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

std::vector<std::vector<int>> all_arrangements(std::vector<int> parts) {
    std::sort(parts.begin(), parts.end());
    std::vector<std::vector<int>> out;
    do out.push_back(parts);
    while (std::next_permutation(parts.begin(), parts.end()));
    return out;
}

// Partitions of n <= max into parts >= min_part.
std::vector<std::vector<int>> small_partitions(int max, int min_part) {
    std::vector<std::vector<int>> out{{}};
    for (int n = 1; n <= max; ++n)
        for (const auto& p : oracle::partitions(n))
            if (std::all_of(p.begin(), p.end(), [&](int x) { return x >= min_part; })) out.push_back(p);
    return out;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("S examples") {
    CHECK(injection_sum_s(part({}), part({2, 3})) == Rational(1, 6));
    CHECK(injection_sum_s(part({2}), part({3, 1})) == Rational(2, 3));
    CHECK(injection_sum_s(part({2, 2}), part({3})) == 0);
    CHECK(injection_sum_s(part({}), part({})) == 1);
}

TEST_CASE("T examples") {
    CHECK(injection_sum_t(part({}), part({4, 2})) == 1);
    CHECK(injection_sum_t(part({2}), part({2})) == -2);
    CHECK(injection_sum_t(part({2}), part({3})) == -4);
    CHECK(injection_sum_t(part({3, 2}), part({3})) == 0);
    CHECK(throws_kind(ErrorKind::InvalidSubpartition, [] { injection_sum_t(part({1}), part({2})); }));
    CHECK(throws_kind(ErrorKind::InvalidSubpartition, [] { injection_sum_t(part({2}), part({2, 1})); }));
}

TEST_CASE("S and T match the permutation oracle under every part ordering") {
    const auto lefts = small_partitions(6, 2);
    const auto rights_s = small_partitions(6, 1);
    for (const auto& a : lefts)
        for (const auto& b : rights_s) {
            const auto expected = oracle::s_func(a, b);
            for (const auto& aa : all_arrangements(a))
                for (const auto& bb : all_arrangements(b)) CHECK(q(injection_sum_s(aa, bb)) == expected);
            CHECK((expected == 0) == (a.size() > b.size()));
        }
    for (const auto& a : lefts)
        for (const auto& b : lefts) {
            const auto expected = oracle::t_func(a, b);
            for (const auto& aa : all_arrangements(a))
                for (const auto& bb : all_arrangements(b)) CHECK(q(injection_sum_t(aa, bb)) == expected);
            if (a.size() > b.size()) CHECK(expected == 0);
        }
}

TEST_CASE("eta examples and non-vanishing") {
    CHECK(eta(Pop::make(1, {1}, {})) == -1);
    CHECK(eta(Pop::make(2, {2}, {})) == 2);
    CHECK(eta(Pop::make(2, {1}, {1})) == 1);
    for (int d = 1; d <= 6; ++d)
        for (int n = 1; n <= d; ++n)
            for (const auto& p : enumerate_pop(d, n, Slack::infinite())) {
                const auto v = eta(p);
                CHECK_FALSE(v.is_zero());
                CHECK(q(v) == oracle::eta(oracle::from_pop(p)));
            }
}

TEST_CASE("closed sum examples") {
    CHECK(closed_sum_alpha(2, 1) == 0);
    CHECK(closed_sum_alpha(2, 2) == Rational(1, 2));
    CHECK(closed_sum_alpha(1, 1) == 1);
    CHECK(closed_sum_beta(2) == 0);
    CHECK(closed_sum_beta_prime(2) == -1);
    CHECK(closed_sum_beta_prime(5) == 0);
    CHECK(closed_sum_gamma(3, 3) == Rational(1, 3));
    CHECK(closed_sum_gamma(2, 2) == 0);
    CHECK(closed_sum_gamma(4, 2) == 0);
    CHECK(throws_kind(ErrorKind::InvalidRange, [] { closed_sum_alpha(1, 2); }));
    CHECK(throws_kind(ErrorKind::InvalidRange, [] { closed_sum_alpha(1, 0); }));
    CHECK(throws_kind(ErrorKind::InvalidRange, [] { closed_sum_beta(1); }));
    CHECK(throws_kind(ErrorKind::InvalidRange, [] { closed_sum_beta_prime(1); }));
    CHECK(throws_kind(ErrorKind::InvalidRange, [] { closed_sum_gamma(3, 4); }));
    CHECK(throws_kind(ErrorKind::InvalidRange, [] { closed_sum_gamma(3, 1); }));
}

TEST_CASE("binomial identities") {
    CHECK(binom_power_sum(3, 2) == 0);
    CHECK(binom_reciprocal_sum(0) == 1);
    CHECK(binom_reciprocal_sum(4) == Rational(1, 5));
    CHECK(binom_identities(5, 4) == std::pair<Rational, Rational>{0, Rational(1, 6)});
    CHECK(binom_power_sum(3, 3) == -6);
    CHECK(throws_kind(ErrorKind::InvalidRange, [] { binom_identities(3, 3); }));
    CHECK(throws_kind(ErrorKind::InvalidRange, [] { binom_identities(0, 0); }));
}

TEST_CASE("principal prefactor examples") {
    const auto one = as_multi(Pop::make(1, {1}, {}));
    CHECK(principal_prefactor(one, one) == 1);
    CHECK(principal_prefactor(as_multi(Pop::make(2, {2}, {})), as_multi(Pop::make(2, {1}, {1}))) == 1);
    CHECK(principal_prefactor(as_multi(Pop::make(2, {1}, {1})), as_multi(Pop::make(2, {2}, {}))) == -2);
    CHECK(throws_kind(ErrorKind::IncomparableShapes, [&] {
        principal_prefactor(one, as_multi(Pop::make(2, {2}, {})));
    }));
}

TEST_CASE("principal prefactor factors over components") {
    const std::vector<int> degrees{3, 2};
    const std::vector<std::vector<int>> sets{{1}, {2}};
    const auto all = enumerate_pop_multi(degrees, sets, Slack::infinite());
    for (const auto& a : all)
        for (const auto& b : all) {
            oracle::Q expected = 1;
            for (int i = 0; i < 2; ++i)
                expected *= oracle::m_entry(oracle::from_pop(a.components[i]), oracle::from_pop(b.components[i]));
            CHECK(q(principal_prefactor(a, b)) == expected);
        }
}

TEST_CASE("kernel cache returns the uncached values") {
    KernelCache cache;
    const auto a = part({3, 2}), b = part({4, 2, 1});
    CHECK(cache.s(a, b) == injection_sum_s(a, b));
    CHECK(cache.s(a, b) == injection_sum_s(a, b));
    CHECK(cache.t(part({2}), part({3, 2})) == injection_sum_t(part({2}), part({3, 2})));
    const auto p = Pop::make(4, {1}, {2, 1});
    CHECK(cache.eta(p) == eta(p));
    CHECK(cache.entries() == 3);
}

} // TEST_SUITE
