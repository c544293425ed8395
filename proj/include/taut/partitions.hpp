#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace taut {

/// An unordered partition stored in canonical weakly-decreasing order.
/// The empty partition is allowed.
class Partition {
public:
    Partition() = default;

    /// Sorts into canonical order. Throws InvalidPartition on a part < 1.
    static Partition canonicalize(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int size() const noexcept;
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    bool empty() const noexcept { return parts_.empty(); }

    /// Parts in weakly increasing order (the arrangement the POP order uses).
    std::vector<int> increasing() const;

    std::string to_string() const;

    auto operator<=>(const Partition&) const = default;
    bool operator==(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

/// Product over distinct part values of (multiplicity)!.
std::uint64_t aut_order(const Partition& p);

/// All parts of `p` that are at least `threshold`.
Partition subpartition_ge(const Partition& p, int threshold);

/// Length-slack parameter k of Π(d,n,k). Infinity is a sentinel, not a
/// large integer.
class Slack {
public:
    static Slack infinite() { return Slack(true, 0); }
    static Slack finite(int k);
    /// Accepts a non-negative integer or "inf".
    static Slack parse(const std::string& text);

    bool is_infinite() const noexcept { return infinite_; }
    int value() const; // throws when infinite
    /// Minimum length d - k (or no bound when infinite).
    bool admits_length(int degree, int length) const noexcept {
        return infinite_ || length >= degree - k_;
    }
    std::string to_string() const;

    bool operator==(const Slack&) const = default;

private:
    Slack(bool inf, int k) : infinite_(inf), k_(k) {}
    bool infinite_;
    int k_;
};

/// A partially ordered partition (α, α′) of degree d and order n.
struct Pop {
    int degree = 0;
    std::vector<int> ordered;
    Partition unordered;

    /// Validates the invariants and throws InvalidPartition/InvalidShape.
    static Pop make(int degree, std::vector<int> ordered, std::vector<int> unordered);

    int order() const noexcept { return static_cast<int>(ordered.size()); }
    int length() const noexcept { return order() + unordered.length(); }
    Partition double_prime() const { return subpartition_ge(unordered, 2); }
    Partition triple_prime() const { return subpartition_ge(unordered, 3); }

    std::string to_string() const;

    bool operator==(const Pop&) const = default;
};

enum class Precedence { Precedes, Equal, Succeeds };

/// The four-clause order on Π(d,n,∞). Throws IncomparableShapes when the
/// degree or order differ.
Precedence compare_pop(const Pop& p, const Pop& q);

inline bool pop_precedes(const Pop& p, const Pop& q) {
    return compare_pop(p, q) == Precedence::Precedes;
}

/// Π(d,n,k) sorted by compare_pop. Throws InvalidShape unless d >= n > 0.
std::vector<Pop> enumerate_pop(int degree, int order, Slack k);

/// Lowering moves: decrease one part by one and append a part 1 to the
/// unordered partition. Ordered parts must stay >= 1.
std::vector<Pop> lower_ordered_parts(const Pop& p);
std::vector<Pop> lower_unordered_parts(const Pop& p);

/// A c-component partially ordered partition over degree vector 𝐝 and
/// marking distribution 𝐧.
struct MultiPop {
    std::vector<Pop> components;
    std::vector<std::vector<int>> marking_sets;

    int component_count() const noexcept { return static_cast<int>(components.size()); }
    int degree() const noexcept;
    int length() const noexcept;
    std::vector<int> degrees() const;

    std::string to_string() const;

    bool operator==(const MultiPop&) const = default;
};

/// Wraps a connected POP as a one-component MultiPop with markings {1..n}.
MultiPop as_multi(const Pop& p);

/// Checks d_i >= |n_i| > 0 and that 𝐧 is an ordered set partition of
/// {1..n}. Throws InvalidShape.
void validate_multi_shape(std::span<const int> degrees,
                          const std::vector<std::vector<int>>& marking_sets);

/// Product-lexicographic order, component 1 compared first.
Precedence compare_multi_pop(const MultiPop& p, const MultiPop& q);

/// Π(𝐝,𝐧,k) in product-lexicographic order.
std::vector<MultiPop> enumerate_pop_multi(std::span<const int> degrees,
                                          const std::vector<std::vector<int>>& marking_sets,
                                          Slack k);

/// Ordered set partition of {1..n} with consecutive blocks of the given sizes.
std::vector<std::vector<int>> consecutive_marking_sets(std::span<const int> sizes);

/// All ordered set partitions of {1..n} into blocks of the given sizes.
std::vector<std::vector<std::vector<int>>> ordered_set_partitions(std::span<const int> sizes);

/// All partitions of n in canonical order (reverse lexicographic).
std::vector<Partition> partitions_of(int n);

} // namespace taut
