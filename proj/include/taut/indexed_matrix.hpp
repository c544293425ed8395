#pragma once

#include "taut/partitions.hpp"
#include "taut/rational.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace taut {

/// Dense square exact matrix whose rows and columns are keyed by an ordered
/// list of (multi-component) partially ordered partitions.
class IndexedMatrix {
public:
    IndexedMatrix() = default;
    /// Zero matrix over `index`.
    explicit IndexedMatrix(std::vector<MultiPop> index);
    /// Throws InvalidArgument unless `rows` is square and matches the index.
    IndexedMatrix(std::vector<MultiPop> index, const std::vector<std::vector<Rational>>& rows);

    static IndexedMatrix identity(std::vector<MultiPop> index);

    std::size_t size() const noexcept { return index_.size(); }
    const std::vector<MultiPop>& index() const noexcept { return index_; }

    Rational& at(std::size_t row, std::size_t col) { return entries_[row * size() + col]; }
    const Rational& at(std::size_t row, std::size_t col) const { return entries_[row * size() + col]; }

    std::vector<std::vector<Rational>> rows() const;

    IndexedMatrix transpose() const;
    /// Rows and columns restricted to the given positions, in the given order.
    IndexedMatrix submatrix(std::span<const std::size_t> positions) const;
    IndexedMatrix scale_rows(std::span<const Rational> factors) const;
    IndexedMatrix scale_columns(std::span<const Rational> factors) const;

    bool operator==(const IndexedMatrix& o) const = default;

private:
    std::vector<MultiPop> index_;
    std::vector<Rational> entries_;
};

/// Throws IncompatibleIndices unless both index lists are identical.
IndexedMatrix multiply(const IndexedMatrix& a, const IndexedMatrix& b);

/// Fraction-free (Bareiss) elimination over exact rationals.
Rational determinant(const IndexedMatrix& m);

/// First (row, col) position, in row-major order, that breaks unit upper
/// triangularity; nullopt when the matrix is unit upper triangular.
std::optional<std::pair<std::size_t, std::size_t>> unit_upper_violation(const IndexedMatrix& m);
inline bool is_unit_upper_triangular(const IndexedMatrix& m) { return !unit_upper_violation(m); }

/// Solves U x = b for upper triangular U with nonzero diagonal by back
/// substitution, scaling by the diagonal at each step.
std::vector<Rational> solve_upper_triangular(const IndexedMatrix& u, std::span<const Rational> b);

/// Kronecker product of plain row-major square blocks. Block i is indexed
/// most significantly by earlier factors.
std::vector<std::vector<Rational>> kronecker(const std::vector<std::vector<std::vector<Rational>>>& factors);

} // namespace taut
