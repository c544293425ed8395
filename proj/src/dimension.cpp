#include "taut/error.hpp"
#include "taut/locgraph.hpp"

#include <numeric>

namespace taut {

namespace {

int ramification_sum(const RelativeShape& shape) {
    const int d = shape.total_degree();
    int sum = 0;
    for (int j = 0; j < shape.profile_count(); ++j) sum += 1 + shape.profile_length(j) - d;
    return sum;
}

} // namespace

int vdim_parameterized(const RelativeShape& shape) {
    return 2 * shape.arithmetic_genus() - 2 + 2 * shape.total_degree() + shape.marking_count() + ramification_sum(shape);
}

int vdim_unparameterized(const RelativeShape& shape) {
    return 2 * shape.arithmetic_genus() - 5 + 2 * shape.total_degree() + shape.marking_count() + ramification_sum(shape);
}

bool hurwitz_condition(int genus, const std::vector<Partition>& profiles) {
    if (profiles.empty()) throw Error(ErrorKind::InvalidShape, "no profiles given");
    const int d = profiles.front().size();
    int rhs = 0;
    for (const auto& p : profiles) {
        if (p.size() != d) throw Error(ErrorKind::InvalidShape, "profiles have different sizes");
        rhs += d - p.length();
    }
    return 2 * genus - 2 + 2 * d == rhs;
}

OmegaDimensionReport omega_dimension_check(const MultiPop& alpha, const MultiPop& beta, const RelativeShape& shape,
                                           std::span<const int> r, std::span<const int> s, int k) {
    if (static_cast<int>(s.size()) != shape.profile_count())
        throw Error(ErrorKind::InvalidArgument, "one ψ_q exponent per profile is required");
    if (alpha.degrees() != shape.degrees || beta.degrees() != shape.degrees)
        throw Error(ErrorKind::IncomparableShapes, "ᾱ, β̄ and the shape have different degree vectors");

    const int d = shape.total_degree();
    const int n_prime = static_cast<int>(r.size());
    const int sum_r = std::accumulate(r.begin(), r.end(), 0);
    const int sum_s = std::accumulate(s.begin(), s.end(), 0);
    int n = 0, len_dp = 0, sum_ordered = 0, sum_dp = 0;
    for (const auto& p : alpha.components) {
        n += p.order();
        const auto dp = p.double_prime();
        len_dp += dp.length();
        sum_dp += dp.size();
        sum_ordered += std::accumulate(p.ordered.begin(), p.ordered.end(), 0);
    }

    auto with_markings = [&](RelativeShape base, int markings) {
        base.marking_sets.assign(shape.components(), {});
        for (int label = 1; label <= markings; ++label) base.marking_sets[0].push_back(label);
        return base;
    };

    RelativeShape dagger = with_markings(shape, n + len_dp + n_prime);
    dagger.parameterized = true;
    const int omega_degree = k + n + len_dp + sum_r + sum_s + 2;

    RelativeShape reduced = with_markings(shape, n_prime);
    reduced.parameterized = false;
    std::vector<Partition> beta_profile;
    for (const auto& p : beta.components) {
        std::vector<int> parts = p.ordered;
        parts.insert(parts.end(), p.unordered.parts().begin(), p.unordered.parts().end());
        beta_profile.push_back(Partition::canonicalize(std::move(parts)));
    }
    reduced.profiles.insert(reduced.profiles.begin(), beta_profile);

    OmegaDimensionReport out;
    out.lhs = vdim_parameterized(dagger) - omega_degree;
    out.rhs = vdim_unparameterized(reduced) - (sum_r + sum_s + beta.length() - d + k);
    out.equal = out.lhs == out.rhs;
    out.omega_degree_formula = omega_degree;
    // ψ^{α_i−1}·ev (degree α_i) per ordered marking, ψ^{α″−1}·ev per middle
    // marking, γ, and ev_{q1}([0])^{2+ℓ(ᾱ)−d+k}.
    out.omega_degree_by_terms = sum_ordered + sum_dp + sum_r + sum_s + 2 + alpha.length() - d + k;
    return out;
}

} // namespace taut
