#include "taut/indexed_matrix.hpp"

#include "taut/error.hpp"

namespace taut {

IndexedMatrix::IndexedMatrix(std::vector<MultiPop> index)
    : index_(std::move(index)), entries_(index_.size() * index_.size()) {}

IndexedMatrix::IndexedMatrix(std::vector<MultiPop> index, const std::vector<std::vector<Rational>>& rows)
    : IndexedMatrix(std::move(index)) {
    if (rows.size() != size()) throw Error(ErrorKind::InvalidArgument, "row count does not match index");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != size()) throw Error(ErrorKind::InvalidArgument, "matrix is not square");
        for (std::size_t j = 0; j < rows[i].size(); ++j) at(i, j) = rows[i][j];
    }
}

IndexedMatrix IndexedMatrix::identity(std::vector<MultiPop> index) {
    IndexedMatrix m(std::move(index));
    for (std::size_t i = 0; i < m.size(); ++i) m.at(i, i) = 1;
    return m;
}

std::vector<std::vector<Rational>> IndexedMatrix::rows() const {
    std::vector<std::vector<Rational>> out(size(), std::vector<Rational>(size()));
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out[i][j] = at(i, j);
    return out;
}

IndexedMatrix IndexedMatrix::transpose() const {
    IndexedMatrix t(index_);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) t.at(j, i) = at(i, j);
    return t;
}

IndexedMatrix IndexedMatrix::submatrix(std::span<const std::size_t> positions) const {
    std::vector<MultiPop> sub_index;
    for (auto p : positions) {
        if (p >= size()) throw Error(ErrorKind::InvalidArgument, "submatrix position out of range");
        sub_index.push_back(index_[p]);
    }
    IndexedMatrix s(std::move(sub_index));
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = 0; j < positions.size(); ++j) s.at(i, j) = at(positions[i], positions[j]);
    return s;
}

IndexedMatrix IndexedMatrix::scale_rows(std::span<const Rational> factors) const {
    if (factors.size() != size()) throw Error(ErrorKind::IncompatibleIndices, "scaling vector length");
    IndexedMatrix s = *this;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) s.at(i, j) *= factors[i];
    return s;
}

IndexedMatrix IndexedMatrix::scale_columns(std::span<const Rational> factors) const {
    if (factors.size() != size()) throw Error(ErrorKind::IncompatibleIndices, "scaling vector length");
    IndexedMatrix s = *this;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) s.at(i, j) *= factors[j];
    return s;
}

IndexedMatrix multiply(const IndexedMatrix& a, const IndexedMatrix& b) {
    if (a.index() != b.index()) throw Error(ErrorKind::IncompatibleIndices, "index lists differ");
    const std::size_t n = a.size();
    IndexedMatrix c(a.index());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const Rational& bkj = b.at(k, j);
                if (!bkj.is_zero()) c.at(i, j) += aik * bkj;
            }
        }
    }
    return c;
}

Rational determinant(const IndexedMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    auto a = m.rows();
    Rational previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t pivot = k + 1;
            while (pivot < n && a[pivot][k].is_zero()) ++pivot;
            if (pivot == n) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
            a[i][k] = 0;
        }
        previous = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

std::optional<std::pair<std::size_t, std::size_t>> unit_upper_violation(const IndexedMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const Rational expected = (i == j) ? Rational(1) : Rational(0);
            if (m.at(i, j) != expected) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

std::vector<Rational> solve_upper_triangular(const IndexedMatrix& u, std::span<const Rational> b) {
    const std::size_t n = u.size();
    if (b.size() != n) throw Error(ErrorKind::IncompatibleIndices, "right-hand side length");
    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= u.at(ii, j) * x[j];
        if (u.at(ii, ii).is_zero()) throw Error(ErrorKind::DivisionByZero, "zero diagonal entry");
        x[ii] = acc / u.at(ii, ii);
    }
    return x;
}

std::vector<std::vector<Rational>> kronecker(const std::vector<std::vector<std::vector<Rational>>>& factors) {
    std::vector<std::vector<Rational>> result{{Rational(1)}};
    for (const auto& f : factors) {
        const std::size_t n = result.size(), m = f.size();
        std::vector<std::vector<Rational>> next(n * m, std::vector<Rational>(n * m));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < m; ++k)
                    for (std::size_t l = 0; l < m; ++l) next[i * m + k][j * m + l] = result[i][j] * f[k][l];
        result = std::move(next);
    }
    return result;
}

} // namespace taut
