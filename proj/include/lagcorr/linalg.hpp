#pragma once

// Exact rational linear algebra. Every rank, kernel and intersection decision
// made by the engine goes through this header, so nothing here is approximate.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace lagcorr {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses "p", "-p" or "p/q". Throws Error(SyntaxError) on anything else or on
/// a zero denominator.
Scalar parse_scalar(std::string_view text);
std::string format_scalar(const Scalar& s);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Scalar> entries() const noexcept { return data_; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    std::vector<Vector> columns() const;

    /// Rows [first, first + count) as a new matrix.
    Matrix row_block(std::size_t first, std::size_t count) const;

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Vector operator*(const Vector& v) const;
    Matrix operator-() const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix scaled(const Scalar& s) const;

    bool is_zero() const;
    bool operator==(const Matrix& rhs) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// [a | b]
Matrix hstack(const Matrix& a, const Matrix& b);
/// [a ; b]
Matrix vstack(const Matrix& a, const Matrix& b);
/// diag(a, b)
Matrix block_diagonal(const Matrix& a, const Matrix& b);

/// A linear subspace of Q^n. The basis is kept in reduced column-echelon form,
/// so two Subspace values are equal exactly when they span the same space.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);
    /// Column span of m.
    static Subspace span(const Matrix& m);
    static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient_dim);

    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.size(); }

    /// ambient_dim x dim matrix, columns in canonical order.
    Matrix basis() const;
    const std::vector<Vector>& basis_vectors() const noexcept { return basis_; }
    /// Coordinate index of the leading 1 in each basis vector.
    std::vector<std::size_t> pivots() const;

    bool operator==(const Subspace& rhs) const = default;

private:
    std::size_t ambient_ = 0;
    std::vector<Vector> basis_;
};

/// Reduced column-echelon form of m with zero columns dropped.
Matrix column_echelon(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Null space of m as a subspace of Q^cols.
Subspace kernel(const Matrix& m);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
bool contains(const Subspace& s, const Vector& v);

/// Image of s under the linear map m (m.cols() == s.ambient_dim()).
Subspace image(const Matrix& m, const Subspace& s);
/// a x b inside Q^(a.ambient + b.ambient).
Subspace direct_sum(const Subspace& a, const Subspace& b);

/// Inverse of a square matrix by Gauss-Jordan. Throws Error(ShapeMismatch) if
/// m is not square or singular.
Matrix inverse(const Matrix& m);

std::string format_matrix(const Matrix& m);
std::string format_vector(const Vector& v);

}  // namespace lagcorr
