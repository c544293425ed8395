#include "taut/partitions.hpp"

#include "taut/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace taut {

namespace {

std::string join(const std::vector<int>& xs) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out << ',';
        out << xs[i];
    }
    out << ')';
    return out.str();
}

// Lexicographic comparison of equal-length integer sequences; smaller entry
// precedes.
Precedence lex(const std::vector<int>& a, const std::vector<int>& b) {
    auto c = std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    if (c < 0) return Precedence::Precedes;
    if (c > 0) return Precedence::Succeeds;
    return Precedence::Equal;
}

void partitions_rec(int remaining, int max_part, std::vector<int>& current,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition::canonicalize(current));
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        partitions_rec(remaining - part, part, current, out);
        current.pop_back();
    }
}

// Ordered n-tuples of positive integers with sum at most `budget`.
void compositions_rec(int slots, int budget, std::vector<int>& current,
                      const std::function<void(const std::vector<int>&)>& emit) {
    if (slots == 0) {
        emit(current);
        return;
    }
    for (int part = 1; part <= budget - (slots - 1); ++part) {
        current.push_back(part);
        compositions_rec(slots - 1, budget - part, current, emit);
        current.pop_back();
    }
}

} // namespace

Partition Partition::canonicalize(std::vector<int> parts) {
    for (int x : parts) {
        if (x < 1) throw Error(ErrorKind::InvalidPartition, "part " + std::to_string(x) + " < 1");
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    Partition p;
    p.parts_ = std::move(parts);
    return p;
}

int Partition::size() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::vector<int> Partition::increasing() const {
    return {parts_.rbegin(), parts_.rend()};
}

std::string Partition::to_string() const {
    return parts_.empty() ? "∅" : join(parts_);
}

std::uint64_t aut_order(const Partition& p) {
    std::uint64_t result = 1;
    const auto& parts = p.parts();
    std::size_t i = 0;
    while (i < parts.size()) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        for (std::uint64_t f = 2; f <= j - i; ++f) {
            if (result > std::numeric_limits<std::uint64_t>::max() / f)
                throw Error(ErrorKind::InvalidArgument, "aut_order overflow");
            result *= f;
        }
        i = j;
    }
    return result;
}

Partition subpartition_ge(const Partition& p, int threshold) {
    std::vector<int> kept;
    for (int x : p.parts())
        if (x >= threshold) kept.push_back(x);
    return Partition::canonicalize(std::move(kept));
}

Slack Slack::finite(int k) {
    if (k < 0) throw Error(ErrorKind::InvalidShape, "k must be >= 0");
    return Slack(false, k);
}

Slack Slack::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "∞") return infinite();
    std::size_t used = 0;
    int k = 0;
    try {
        k = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "cannot parse k from '" + text + "'");
    }
    if (used != text.size()) throw Error(ErrorKind::InvalidArgument, "cannot parse k from '" + text + "'");
    return finite(k);
}

int Slack::value() const {
    if (infinite_) throw Error(ErrorKind::InvalidArgument, "k is infinite");
    return k_;
}

std::string Slack::to_string() const {
    return infinite_ ? "inf" : std::to_string(k_);
}

Pop Pop::make(int degree, std::vector<int> ordered, std::vector<int> unordered) {
    if (degree <= 0) throw Error(ErrorKind::InvalidShape, "degree must be positive");
    for (int x : ordered)
        if (x < 1) throw Error(ErrorKind::InvalidPartition, "ordered part < 1");
    Pop p;
    p.degree = degree;
    p.ordered = std::move(ordered);
    p.unordered = Partition::canonicalize(std::move(unordered));
    int total = std::accumulate(p.ordered.begin(), p.ordered.end(), 0) + p.unordered.size();
    if (total != degree)
        throw Error(ErrorKind::InvalidShape, "parts of " + p.to_string() + " do not sum to " +
                                                 std::to_string(degree));
    return p;
}

std::string Pop::to_string() const {
    return "(" + join(ordered) + "," + unordered.to_string() + ")";
}

Precedence compare_pop(const Pop& p, const Pop& q) {
    if (p.degree != q.degree || p.order() != q.order())
        throw Error(ErrorKind::IncomparableShapes, p.to_string() + " vs " + q.to_string());
    const auto p2 = p.double_prime().increasing();
    const auto q2 = q.double_prime().increasing();
    if (p2.size() != q2.size())
        return p2.size() < q2.size() ? Precedence::Precedes : Precedence::Succeeds;
    if (auto c = lex(p2, q2); c != Precedence::Equal) return c;
    if (p.unordered.length() != q.unordered.length())
        return p.unordered.length() > q.unordered.length() ? Precedence::Precedes
                                                           : Precedence::Succeeds;
    // p″ = q″ and equal lengths force p′ = q′.
    return lex(p.ordered, q.ordered);
}

std::vector<Pop> enumerate_pop(int degree, int order, Slack k) {
    if (order <= 0 || degree < order)
        throw Error(ErrorKind::InvalidShape, "need d >= n > 0, got d=" + std::to_string(degree) +
                                                 " n=" + std::to_string(order));
    std::vector<Pop> out;
    std::vector<int> current;
    compositions_rec(order, degree, current, [&](const std::vector<int>& ordered) {
        const int rest = degree - std::accumulate(ordered.begin(), ordered.end(), 0);
        for (const auto& tail : partitions_of(rest)) {
            if (!k.admits_length(degree, order + tail.length())) continue;
            Pop p;
            p.degree = degree;
            p.ordered = ordered;
            p.unordered = tail;
            out.push_back(std::move(p));
        }
    });
    std::sort(out.begin(), out.end(), pop_precedes);
    return out;
}

std::vector<Pop> lower_ordered_parts(const Pop& p) {
    std::vector<Pop> out;
    for (std::size_t i = 0; i < p.ordered.size(); ++i) {
        if (p.ordered[i] < 2) continue;
        auto ordered = p.ordered;
        --ordered[i];
        auto unordered = p.unordered.parts();
        unordered.push_back(1);
        out.push_back(Pop::make(p.degree, std::move(ordered), std::move(unordered)));
    }
    return out;
}

std::vector<Pop> lower_unordered_parts(const Pop& p) {
    std::vector<Pop> out;
    const auto& parts = p.unordered.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 2 || (i > 0 && parts[i] == parts[i - 1])) continue;
        auto unordered = parts;
        --unordered[i];
        unordered.push_back(1);
        out.push_back(Pop::make(p.degree, p.ordered, std::move(unordered)));
    }
    return out;
}

int MultiPop::degree() const noexcept {
    int d = 0;
    for (const auto& c : components) d += c.degree;
    return d;
}

int MultiPop::length() const noexcept {
    int l = 0;
    for (const auto& c : components) l += c.length();
    return l;
}

std::vector<int> MultiPop::degrees() const {
    std::vector<int> out;
    for (const auto& c : components) out.push_back(c.degree);
    return out;
}

std::string MultiPop::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i) s += ",";
        s += components[i].to_string();
    }
    return s + ")";
}

MultiPop as_multi(const Pop& p) {
    MultiPop m;
    m.components.push_back(p);
    std::vector<int> marks(p.order());
    std::iota(marks.begin(), marks.end(), 1);
    m.marking_sets.push_back(std::move(marks));
    return m;
}

void validate_multi_shape(std::span<const int> degrees,
                          const std::vector<std::vector<int>>& marking_sets) {
    if (degrees.empty()) throw Error(ErrorKind::InvalidShape, "no components");
    if (degrees.size() != marking_sets.size())
        throw Error(ErrorKind::InvalidShape, "degree vector and marking sets differ in length");
    std::vector<int> all;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const int size = static_cast<int>(marking_sets[i].size());
        if (size <= 0 || degrees[i] < size)
            throw Error(ErrorKind::InvalidShape, "component " + std::to_string(i + 1) +
                                                     " violates d_i >= |n_i| > 0");
        all.insert(all.end(), marking_sets[i].begin(), marking_sets[i].end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i] != static_cast<int>(i) + 1)
            throw Error(ErrorKind::InvalidShape, "marking sets are not a set partition of {1..n}");
}

Precedence compare_multi_pop(const MultiPop& p, const MultiPop& q) {
    if (p.components.size() != q.components.size())
        throw Error(ErrorKind::IncomparableShapes, p.to_string() + " vs " + q.to_string());
    for (std::size_t i = 0; i < p.components.size(); ++i) {
        auto c = compare_pop(p.components[i], q.components[i]);
        if (c != Precedence::Equal) return c;
    }
    return Precedence::Equal;
}

std::vector<MultiPop> enumerate_pop_multi(std::span<const int> degrees,
                                          const std::vector<std::vector<int>>& marking_sets,
                                          Slack k) {
    validate_multi_shape(degrees, marking_sets);
    std::vector<std::vector<Pop>> factors;
    int total_degree = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        factors.push_back(enumerate_pop(degrees[i], static_cast<int>(marking_sets[i].size()),
                                        Slack::infinite()));
        total_degree += degrees[i];
    }
    std::vector<MultiPop> out;
    std::vector<std::size_t> pick(factors.size(), 0);
    // Odometer over the product, last component fastest, so the output is
    // already in product-lexicographic order.
    while (true) {
        MultiPop m;
        m.marking_sets = marking_sets;
        for (std::size_t i = 0; i < factors.size(); ++i) m.components.push_back(factors[i][pick[i]]);
        if (k.admits_length(total_degree, m.length())) out.push_back(std::move(m));
        std::size_t pos = factors.size();
        while (pos > 0) {
            --pos;
            if (++pick[pos] < factors[pos].size()) break;
            pick[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

std::vector<std::vector<int>> consecutive_marking_sets(std::span<const int> sizes) {
    std::vector<std::vector<int>> out;
    int next = 1;
    for (int s : sizes) {
        std::vector<int> block;
        for (int j = 0; j < s; ++j) block.push_back(next++);
        out.push_back(std::move(block));
    }
    return out;
}

std::vector<std::vector<std::vector<int>>> ordered_set_partitions(std::span<const int> sizes) {
    int n = 0;
    for (int s : sizes) n += s;
    std::vector<std::vector<std::vector<int>>> out;
    // Assign each label 1..n to a block, respecting block capacities.
    std::vector<int> block_of(n, -1);
    std::vector<int> fill(sizes.size(), 0);
    std::function<void(int)> rec = [&](int label) {
        if (label == n) {
            std::vector<std::vector<int>> blocks(sizes.size());
            for (int l = 0; l < n; ++l) blocks[block_of[l]].push_back(l + 1);
            out.push_back(std::move(blocks));
            return;
        }
        for (std::size_t b = 0; b < sizes.size(); ++b) {
            if (fill[b] == sizes[b]) continue;
            ++fill[b];
            block_of[label] = static_cast<int>(b);
            rec(label + 1);
            --fill[b];
        }
    };
    rec(0);
    return out;
}

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    if (n < 0) return out;
    std::vector<int> current;
    partitions_rec(n, n, current, out);
    return out;
}

} // namespace taut
