#include "support.hpp"

#include "taut/error.hpp"
#include "taut/partitions.hpp"

#include <doctest.h>

#include <algorithm>

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

std::vector<oracle::RawPop> raw(const std::vector<Pop>& pops) {
    std::vector<oracle::RawPop> out;
    for (const auto& p : pops) out.push_back(oracle::from_pop(p));
    return out;
}

} // namespace

TEST_SUITE("partitions") {

TEST_CASE("canonicalize sorts and rejects nonpositive parts") {
    CHECK(part({1, 3, 2}).parts() == std::vector<int>{3, 2, 1});
    CHECK(part({}).empty());
    CHECK(part({2, 2}).parts() == std::vector<int>{2, 2});
    CHECK(part({1, 3, 2}).size() == 6);
    CHECK(part({1, 3, 2}).increasing() == std::vector<int>{1, 2, 3});
    CHECK(throws_kind(ErrorKind::InvalidPartition, [] { part({2, 0}); }));
    CHECK(throws_kind(ErrorKind::InvalidPartition, [] { part({-1}); }));
}

TEST_CASE("aut_order against a brute-force stabilizer count") {
    CHECK(aut_order(part({})) == 1);
    CHECK(aut_order(part({3, 2, 1})) == 1);
    for (int n = 1; n <= 7; ++n)
        for (const auto& parts : oracle::partitions(n)) {
            std::vector<int> perm(parts.size());
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
            std::uint64_t fixing = 0;
            do {
                bool same = true;
                for (std::size_t i = 0; i < perm.size(); ++i) same = same && parts[perm[i]] == parts[i];
                fixing += same;
            } while (std::next_permutation(perm.begin(), perm.end()));
            CHECK(aut_order(part(parts)) == fixing);
        }
    CHECK(aut_order(part({2, 2, 1})) == 2);
}

TEST_CASE("subpartition_ge filters") {
    CHECK(subpartition_ge(part({3, 2, 1, 1}), 2) == part({3, 2}));
    CHECK(subpartition_ge(part({1, 1}), 2).empty());
    CHECK(subpartition_ge(part({3, 2, 2}), 3) == part({3}));
}

TEST_CASE("partitions_of matches the recursive generator") {
    for (int n = 1; n <= 10; ++n) {
        const auto ours = partitions_of(n);
        const auto ref = oracle::partitions(n);
        REQUIRE(ours.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) CHECK(ours[i].parts() == ref[i]);
    }
}

TEST_CASE("slack parsing") {
    CHECK(Slack::parse("inf").is_infinite());
    CHECK(Slack::parse("3").value() == 3);
    CHECK(Slack::finite(2).admits_length(5, 3));
    CHECK_FALSE(Slack::finite(2).admits_length(5, 2));
    CHECK(throws_kind(ErrorKind::InvalidArgument, [] { Slack::parse("x"); }));
    CHECK(throws_kind(ErrorKind::InvalidArgument, [] { Slack::parse("2x"); }));
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { Slack::finite(-1); }));
}

TEST_CASE("Pop::make validates") {
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { Pop::make(3, {1}, {1}); }));
    CHECK(throws_kind(ErrorKind::InvalidPartition, [] { Pop::make(2, {0}, {2}); }));
    const auto p = Pop::make(7, {2}, {1, 3, 1});
    CHECK(p.length() == 4);
    CHECK(p.double_prime() == part({3}));
    CHECK(p.triple_prime() == part({3}));
}

TEST_CASE("enumerate_pop examples") {
    const auto two = enumerate_pop(2, 1, Slack::infinite());
    REQUIRE(two.size() == 2);
    CHECK(two[0] == Pop::make(2, {1}, {1}));
    CHECK(two[1] == Pop::make(2, {2}, {}));
    const auto tight = enumerate_pop(2, 1, Slack::finite(0));
    REQUIRE(tight.size() == 1);
    CHECK(tight[0] == Pop::make(2, {1}, {1}));
    const auto three = enumerate_pop(3, 1, Slack::infinite());
    CHECK(three.size() == 4);
    for (const auto& p : {Pop::make(3, {3}, {}), Pop::make(3, {2}, {1}), Pop::make(3, {1}, {2}),
                          Pop::make(3, {1}, {1, 1})})
        CHECK(std::find(three.begin(), three.end(), p) != three.end());
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { enumerate_pop(1, 2, Slack::infinite()); }));
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { enumerate_pop(2, 0, Slack::infinite()); }));
}

TEST_CASE("enumerate_pop equals the exhaustive oracle, in oracle order") {
    for (int d = 1; d <= 7; ++d)
        for (int n = 1; n <= d; ++n) {
            CHECK(raw(enumerate_pop(d, n, Slack::infinite())) == oracle::pops(d, n, -1));
            for (int k = 0; k <= d; ++k) CHECK(raw(enumerate_pop(d, n, Slack::finite(k))) == oracle::pops(d, n, k));
        }
}

TEST_CASE("Π(k) is monotone in k and stabilizes at d-n") {
    for (int d = 1; d <= 6; ++d)
        for (int n = 1; n <= d; ++n) {
            for (int k = 0; k < d; ++k) {
                const auto small = enumerate_pop(d, n, Slack::finite(k));
                const auto big = enumerate_pop(d, n, Slack::finite(k + 1));
                for (const auto& p : small) CHECK(std::find(big.begin(), big.end(), p) != big.end());
            }
            CHECK(enumerate_pop(d, n, Slack::finite(d - n)) == enumerate_pop(d, n, Slack::infinite()));
        }
}

TEST_CASE("compare_pop examples") {
    CHECK(compare_pop(Pop::make(2, {1}, {1}), Pop::make(2, {2}, {})) == Precedence::Precedes);
    CHECK(compare_pop(Pop::make(3, {1}, {1, 1}), Pop::make(3, {1}, {2})) == Precedence::Precedes);
    CHECK(compare_pop(Pop::make(3, {1}, {2}), Pop::make(3, {1}, {1, 1})) == Precedence::Succeeds);
    const auto p = Pop::make(5, {2, 1}, {2});
    CHECK(compare_pop(p, p) == Precedence::Equal);
    CHECK(throws_kind(ErrorKind::IncomparableShapes,
                      [] { compare_pop(Pop::make(2, {1}, {1}), Pop::make(3, {1}, {2})); }));
    CHECK(throws_kind(ErrorKind::IncomparableShapes,
                      [] { compare_pop(Pop::make(2, {1, 1}, {}), Pop::make(2, {2}, {})); }));
}

TEST_CASE("compare_pop agrees with the tuple-key oracle on every pair") {
    for (int d = 1; d <= 5; ++d)
        for (int n = 1; n <= d; ++n) {
            const auto set = oracle::pops(d, n, -1);
            for (const auto& a : set)
                for (const auto& b : set) {
                    const int expected = oracle::compare(a, b);
                    const auto got = compare_pop(oracle::to_pop(a), oracle::to_pop(b));
                    CHECK(got == (expected < 0 ? Precedence::Precedes
                                               : (expected > 0 ? Precedence::Succeeds : Precedence::Equal)));
                }
        }
}

TEST_CASE("lowering moves") {
    const auto p = Pop::make(5, {2, 1}, {2});
    const auto ord = lower_ordered_parts(p);
    REQUIRE(ord.size() == 1);
    CHECK(ord[0] == Pop::make(5, {1, 1}, {2, 1}));
    const auto un = lower_unordered_parts(p);
    REQUIRE(un.size() == 1);
    CHECK(un[0] == Pop::make(5, {2, 1}, {1, 1}));
    CHECK(lower_unordered_parts(Pop::make(2, {1}, {1})).empty());
}

TEST_CASE("multi-component enumeration examples") {
    const std::vector<int> d11{1, 1}, d21{2, 1};
    const std::vector<std::vector<int>> sets{{1}, {2}};
    const auto single = enumerate_pop_multi(d11, sets, Slack::infinite());
    REQUIRE(single.size() == 1);
    CHECK(single[0].components[0] == Pop::make(1, {1}, {}));
    CHECK(single[0].components[1] == Pop::make(1, {1}, {}));
    CHECK(enumerate_pop_multi(d21, sets, Slack::infinite()).size() == 2);
    const auto tight = enumerate_pop_multi(d21, sets, Slack::finite(0));
    REQUIRE(tight.size() == 1);
    CHECK(tight[0].components[0] == Pop::make(2, {1}, {1}));
    CHECK(tight[0].length() == 3);
    CHECK(throws_kind(ErrorKind::InvalidShape, [&] { validate_multi_shape(d11, {{1}, {3}}); }));
    CHECK(throws_kind(ErrorKind::InvalidShape, [&] { validate_multi_shape(d11, {{1, 2}, {}}); }));
}

TEST_CASE("multi-component order is product-lexicographic") {
    const std::vector<int> degrees{2, 2};
    const std::vector<std::vector<int>> sets{{1}, {2}};
    const auto all = enumerate_pop_multi(degrees, sets, Slack::infinite());
    REQUIRE(all.size() == 4);
    const auto comp = enumerate_pop(2, 1, Slack::infinite());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(all[2 * i + j].components[0] == comp[i]);
            CHECK(all[2 * i + j].components[1] == comp[j]);
        }
    for (std::size_t a = 0; a + 1 < all.size(); ++a)
        CHECK(compare_multi_pop(all[a], all[a + 1]) == Precedence::Precedes);
}

TEST_CASE("ordered set partitions count as multinomials") {
    const std::vector<int> sizes{2, 1, 1};
    const auto all = ordered_set_partitions(sizes);
    CHECK(all.size() == 12);
    for (const auto& sets : all) {
        const std::vector<int> degrees{2, 1, 1};
        CHECK_NOTHROW(validate_multi_shape(degrees, sets));
    }
    const std::vector<int> two{1, 2};
    CHECK(consecutive_marking_sets(two) == std::vector<std::vector<int>>{{1}, {2, 3}});
}

} // TEST_SUITE
