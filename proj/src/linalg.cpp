#include "lagcorr/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "lagcorr/error.hpp"

namespace lagcorr {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

// In-place reduced row echelon form over the first `cols` columns.
// Returns the pivot column of each nonzero row; rows past the pivot count are zero.
std::vector<std::size_t> rref(std::vector<Vector>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        const Scalar lead = rows[r][c];
        for (std::size_t k = c; k < cols; ++k) rows[r][k] /= lead;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            const Scalar f = rows[i][c];
            for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw Error(ErrorKind::AmbientMismatch,
                    std::string(op) + ": ambient dimensions " + std::to_string(a.ambient_dim()) +
                        " and " + std::to_string(b.ambient_dim()) + " differ");
    }
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
        throw Error(ErrorKind::SyntaxError, "malformed rational '" + std::string(text) + "'");
    }
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    mpz_class nz(n, 10);
    mpz_class dz(std::string(den), 10);
    if (dz == 0) throw Error(ErrorKind::SyntaxError, "zero denominator in '" + std::string(text) + "'");
    Scalar q(nz, dz);
    q.canonicalize();
    return q;
}

std::string format_scalar(const Scalar& s) { return s.get_str(); }

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorKind::ShapeMismatch, "row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw Error(ErrorKind::ShapeMismatch, "column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
}

Vector Matrix::row(std::size_t r) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

std::vector<Vector> Matrix::columns() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
}

Matrix Matrix::row_block(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw Error(ErrorKind::ShapeMismatch, "row block out of range");
    Matrix m(count, cols_);
    for (std::size_t r = 0; r < count; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(first + r, c);
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw Error(ErrorKind::ShapeMismatch, "cannot multiply " + std::to_string(rows_) + "x" +
                                                  std::to_string(cols_) + " by " +
                                                  std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
    }
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

Vector Matrix::operator*(const Vector& v) const {
    if (cols_ != v.size()) throw Error(ErrorKind::ShapeMismatch, "matrix-vector size mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
    return out;
}

Matrix Matrix::operator-() const { return scaled(Scalar(-1)); }

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw Error(ErrorKind::ShapeMismatch, "matrix sum shape mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
    Matrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack row mismatch");
    Matrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeMismatch, "vstack column mismatch");
    Matrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        for (std::size_t r = 0; r < a.rows(); ++r) m(r, c) = a(r, c);
        for (std::size_t r = 0; r < b.rows(); ++r) m(a.rows() + r, c) = b(r, c);
    }
    return m;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
    return m;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::zero(std::size_t ambient_dim) {
    Subspace s;
    s.ambient_ = ambient_dim;
    return s;
}

Subspace Subspace::full(std::size_t ambient_dim) { return span(Matrix::identity(ambient_dim)); }

Subspace Subspace::span(const Matrix& m) { return span(m.columns(), m.rows()); }

Subspace Subspace::span(const std::vector<Vector>& vectors, std::size_t ambient_dim) {
    Subspace s;
    s.ambient_ = ambient_dim;
    s.basis_ = vectors;
    for (const auto& v : s.basis_) {
        if (v.size() != ambient_dim) throw Error(ErrorKind::AmbientMismatch, "span: vector length mismatch");
    }
    rref(s.basis_, ambient_dim);
    return s;
}

Matrix Subspace::basis() const { return Matrix::from_columns(basis_, ambient_); }

std::vector<std::size_t> Subspace::pivots() const {
    std::vector<std::size_t> out;
    out.reserve(basis_.size());
    for (const auto& v : basis_) {
        std::size_t i = 0;
        while (sgn(v[i]) == 0) ++i;
        out.push_back(i);
    }
    return out;
}

Matrix column_echelon(const Matrix& m) { return Subspace::span(m).basis(); }

std::size_t rank(const Matrix& m) {
    std::vector<Vector> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return rref(rows, m.cols()).size();
}

Subspace kernel(const Matrix& m) {
    std::vector<Vector> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    const auto pivots = rref(rows, m.cols());

    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<Vector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
        basis.push_back(std::move(v));
    }
    return Subspace::span(basis, m.cols());
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b, "intersect");
    const Matrix ba = a.basis();
    const Matrix bb = b.basis();
    // (x, y) in ker [Ba | -Bb]  <=>  Ba x = Bb y, a vector lying in both.
    const Subspace k = kernel(hstack(ba, -bb));
    std::vector<Vector> vectors;
    vectors.reserve(k.dim());
    for (const auto& kv : k.basis_vectors()) {
        Vector x(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(a.dim()));
        vectors.push_back(ba * x);
    }
    return Subspace::span(vectors, a.ambient_dim());
}

Subspace sum(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b, "sum");
    std::vector<Vector> vectors = a.basis_vectors();
    vectors.insert(vectors.end(), b.basis_vectors().begin(), b.basis_vectors().end());
    return Subspace::span(vectors, a.ambient_dim());
}

bool contains(const Subspace& s, const Vector& v) {
    if (v.size() != s.ambient_dim()) {
        throw Error(ErrorKind::AmbientMismatch, "contains: vector length " + std::to_string(v.size()) +
                                                    " vs ambient " + std::to_string(s.ambient_dim()));
    }
    // Canonical basis has unit pivots with zeros above and below, so v lies in
    // s iff subtracting its pivot coordinates leaves nothing.
    Vector residual = v;
    const auto piv = s.pivots();
    for (std::size_t i = 0; i < piv.size(); ++i) {
        const Scalar c = residual[piv[i]];
        if (sgn(c) == 0) continue;
        const auto& b = s.basis_vectors()[i];
        for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= c * b[k];
    }
    return std::all_of(residual.begin(), residual.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

Subspace image(const Matrix& m, const Subspace& s) {
    if (m.cols() != s.ambient_dim()) throw Error(ErrorKind::AmbientMismatch, "image: map/domain mismatch");
    std::vector<Vector> vectors;
    vectors.reserve(s.dim());
    for (const auto& v : s.basis_vectors()) vectors.push_back(m * v);
    return Subspace::span(vectors, m.rows());
}

Subspace direct_sum(const Subspace& a, const Subspace& b) {
    return Subspace::span(block_diagonal(a.basis(), b.basis()));
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Vector> rows;
    rows.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        Vector row = m.row(r);
        row.resize(2 * n);
        row[n + r] = 1;
        rows.push_back(std::move(row));
    }
    const auto pivots = rref(rows, 2 * n);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
        throw Error(ErrorKind::ShapeMismatch, "matrix is singular");
    }
    Matrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(r, c) = rows[r][n + c];
    return out;
}

std::string format_vector(const Vector& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_scalar(v[i]);
    }
    return out + "]";
}

std::string format_matrix(const Matrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) out += ',';
        out += format_vector(m.row(r));
    }
    return out + "]";
}

}  // namespace lagcorr
