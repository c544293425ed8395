#include "support.hpp"

#include "taut/error.hpp"
#include "taut/relmatrix.hpp"

#include <doctest.h>

#include <algorithm>

using namespace taut;
using support::q;
using support::rows;

namespace {

bool throws_kind(ErrorKind kind, auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind() == kind;
    }
    return false;
}

using Rows = std::vector<std::vector<Rational>>;
const Rational half(1, 2);

std::vector<int> one(int d) { return {d}; }

std::vector<oracle::RawPop> index_of(const IndexedMatrix& m) {
    std::vector<oracle::RawPop> out;
    for (const auto& p : m.index()) out.push_back(oracle::from_pop(p.components.at(0)));
    return out;
}

} // namespace

TEST_SUITE("relmatrix") {

TEST_CASE("worked d=2 instance") {
    const auto a = build_a(2, 1, Slack::infinite());
    const auto b = build_b(2, 1, Slack::infinite());
    const auto m = build_m(one(2), {{1}}, Slack::infinite());
    CHECK(a.index()[0].components[0] == Pop::make(2, {1}, {1}));
    CHECK(a.index()[1].components[0] == Pop::make(2, {2}, {}));
    CHECK(a.rows() == Rows{{1, 1}, {1, half}});
    CHECK(b.rows() == Rows{{1, 0}, {2, -2}});
    CHECK(m.rows() == Rows{{1, -2}, {1, -1}});
    CHECK(multiply(b, a).rows() == Rows{{1, 1}, {0, 1}});
    CHECK(determinant(m) == 1);
}

TEST_CASE("single-element matrices") {
    for (auto k : {Slack::finite(0), Slack::finite(3), Slack::infinite()}) {
        CHECK(build_m(one(1), {{1}}, k).rows() == Rows{{1}});
        CHECK(build_a(1, 1, k).rows() == Rows{{1}});
        CHECK(build_b(1, 1, k).rows() == Rows{{1}});
    }
    const auto rep = verify_c(1, 1, Slack::finite(0));
    CHECK(rep.unit_upper_triangular);
    CHECK(rep.c.rows() == Rows{{1}});
}

TEST_CASE("A, B and M equal their defining formulas") {
    for (int d = 1; d <= 5; ++d)
        for (int n = 1; n <= d; ++n) {
            const auto a = build_a(d, n, Slack::infinite());
            const auto b = build_b(d, n, Slack::infinite());
            const auto m = build_m(one(d), {consecutive_marking_sets(one(n))[0]}, Slack::infinite());
            const auto idx = index_of(a);
            CHECK(idx == oracle::pops(d, n, -1));
            const auto ra = rows(a), rb = rows(b), rm = rows(m);
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    CHECK(ra[i][j] == oracle::a_entry(idx[i], idx[j]));
                    CHECK(rb[i][j] == oracle::b_entry(idx[i], idx[j]));
                    CHECK(rm[i][j] == oracle::m_entry(idx[i], idx[j]));
                }
        }
}

TEST_CASE("zero patterns of A and B") {
    for (int d = 2; d <= 5; ++d)
        for (int n = 1; n <= d; ++n) {
            const auto set = enumerate_pop(d, n, Slack::infinite());
            for (const auto& p : set)
                for (const auto& r : set) {
                    if (r.double_prime().length() > p.unordered.length()) CHECK(a_entry(p, r) == 0);
                    bool exceeds = false;
                    for (int j = 0; j < n; ++j) exceeds = exceeds || r.ordered[j] > p.ordered[j];
                    if (exceeds) CHECK(b_entry(p, r) == 0);
                }
        }
}

TEST_CASE("C is unit upper triangular on small shapes and job counts agree") {
    KernelCache cache;
    for (int d = 1; d <= 5; ++d)
        for (int n = 1; n <= d; ++n)
            for (int k = 0; k <= d - n; ++k) {
                const auto serial = verify_c(d, n, Slack::finite(k));
                CHECK(serial.unit_upper_triangular);
                const auto parallel = verify_c(d, n, Slack::finite(k), {&cache, 3});
                CHECK(parallel.c == serial.c);
            }
}

TEST_CASE("fault injection yields a witness") {
    const auto rep = verify_c(3, 1, Slack::infinite(), {},
                              [](IndexedMatrix& b) { b.at(b.size() - 1, 0) += Rational(1); });
    CHECK_FALSE(rep.unit_upper_triangular);
    REQUIRE(rep.first_violation.has_value());
}

TEST_CASE("transpose-scaling examples") {
    CHECK(verify_m_transpose_scaling(one(2), {{1}}, Slack::infinite()).pass);
    CHECK(verify_m_transpose_scaling(one(1), {{1}}, Slack::finite(0)).pass);
    const std::vector<int> d21{2, 1};
    CHECK(verify_m_transpose_scaling(d21, {{1}, {2}}, Slack::infinite()).pass);
    CHECK(principal_scaling(as_multi(Pop::make(2, {2}, {}))) == -2);
    CHECK(principal_scaling(as_multi(Pop::make(2, {1}, {1}))) == 1);
}

TEST_CASE("invertibility examples and the oracle determinant") {
    const auto r = verify_m_invertible(one(2), {{1}}, Slack::infinite());
    CHECK(r.invertible);
    CHECK(r.det == 1);
    CHECK(r.size == 2);
    CHECK(verify_m_invertible(one(1), {{1}}, Slack::finite(0)).det == 1);
    const std::vector<int> d4{4};
    const auto m = build_m(d4, {{1, 2}}, Slack::infinite());
    CHECK(q(determinant(m)) == oracle::det(rows(m)));
    CHECK(verify_m_invertible(d4, {{1, 2}}, Slack::infinite()).invertible);
    const std::vector<int> d21{2, 1};
    const auto mm = build_m(d21, {{2}, {1}}, Slack::finite(1));
    CHECK(q(determinant(mm)) == oracle::det(rows(mm)));
    CHECK(throws_kind(ErrorKind::InvalidShape, [] { build_m(one(1), {{1, 2}}, Slack::infinite()); }));
}

TEST_CASE("kronecker examples") {
    const std::vector<int> d21{2, 1}, d11{1, 1}, d22{2, 2};
    const std::vector<std::vector<int>> sets{{1}, {2}};
    auto r = verify_kronecker(d21, sets, Slack::infinite());
    CHECK(r.pass);
    CHECK(r.size == 2);
    CHECK(verify_kronecker(d11, sets, Slack::infinite()).pass);
    r = verify_kronecker(d22, sets, Slack::infinite());
    CHECK(r.pass);
    CHECK(r.size == 4);
    const auto a = build_a(d22, sets, Slack::infinite());
    const auto a2 = rows(build_a(2, 1, Slack::infinite()));
    CHECK(rows(a) == oracle::kron(a2, a2));
    CHECK(throws_kind(ErrorKind::PreconditionViolated, [&] { verify_kronecker(d22, sets, Slack::finite(1)); }));
}

TEST_CASE("multi-component B is the Kronecker product of connected blocks") {
    const std::vector<int> d22{2, 2};
    const std::vector<std::vector<int>> sets{{1}, {2}};
    const auto b = build_b_multi(d22, sets, Slack::infinite());
    const auto b2 = rows(build_b(2, 1, Slack::infinite()));
    CHECK(rows(b) == oracle::kron(b2, b2));
    CHECK(verify_c_multi(d22, sets, Slack::infinite()).unit_upper_triangular);
}

TEST_CASE("lowering cone and Ξ-closure") {
    CHECK(in_lowering_cone(Pop::make(2, {2}, {}), Pop::make(2, {1}, {1})));
    CHECK_FALSE(in_lowering_cone(Pop::make(2, {1}, {1}), Pop::make(2, {2}, {})));
    CHECK(in_lowering_cone(Pop::make(4, {1}, {3}), Pop::make(4, {1}, {2, 1})));
    CHECK_FALSE(in_lowering_cone(Pop::make(5, {1}, {2, 2}), Pop::make(5, {1}, {3, 1})));

    for (int d = 1; d <= 5; ++d)
        for (int n = 1; n <= d; ++n)
            for (int k = 0; k <= d - n; ++k) {
                const auto xi = enumerate_pop(d, n, Slack::finite(k));
                const auto rep = verify_xi_closure(d, n, xi);
                CHECK(rep.closed);
                CHECK(rep.c_triangular_on_xi == std::optional<bool>(true));
            }

    const auto rep = verify_xi_closure(2, 1, {Pop::make(2, {2}, {})});
    CHECK_FALSE(rep.closed);
    REQUIRE(rep.missing.has_value());
    CHECK(rep.missing->second == Pop::make(2, {1}, {1}));
    CHECK_FALSE(rep.c_triangular_on_xi.has_value());

    // Dropping one element keeps triangularity whenever closure survives.
    for (int d = 2; d <= 5; ++d)
        for (int n = 1; n <= d; ++n) {
            const auto all = enumerate_pop(d, n, Slack::infinite());
            for (std::size_t drop = 0; drop < all.size(); ++drop) {
                auto xi = all;
                xi.erase(xi.begin() + static_cast<long>(drop));
                if (xi.empty()) continue;
                const auto r = verify_xi_closure(d, n, xi);
                if (r.closed) CHECK(r.c_triangular_on_xi == std::optional<bool>(true));
            }
        }
    CHECK(throws_kind(ErrorKind::InvalidArgument, [] { verify_xi_closure(2, 1, {Pop::make(3, {3}, {})}); }));
}

TEST_CASE("restriction keeps the compare_pop order") {
    const auto a = build_a(3, 1, Slack::infinite());
    const auto sub = restrict_to(a, {Pop::make(3, {3}, {}), Pop::make(3, {1}, {1, 1})});
    REQUIRE(sub.size() == 2);
    CHECK(sub.index()[0].components[0] == Pop::make(3, {1}, {1, 1}));
    CHECK(throws_kind(ErrorKind::IncompatibleIndices, [&] { restrict_to(a, {Pop::make(2, {2}, {})}); }));
}

} // TEST_SUITE
