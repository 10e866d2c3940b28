#include "liegrad/exactlinalg.hpp"

#include <algorithm>

namespace liegrad {

Matrix::Matrix(FieldPtr field, size_t rows, size_t cols)
    : fld_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, fld_->zero()) {}

Matrix Matrix::identity(FieldPtr field, size_t n) {
    Matrix m(field, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = field->one();
    return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<Scalar>>& rows) {
    size_t r = rows.size();
    size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(field, r, c);
    for (size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw LinAlgError("Matrix::from_rows: ragged rows");
        for (size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_ints(FieldPtr field, const std::vector<std::vector<long>>& rows) {
    size_t r = rows.size();
    size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(field, r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.at(i, j) = field->from_int(rows[i][j]);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(fld_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Scalar Matrix::trace() const {
    if (rows_ != cols_) throw LinAlgError("trace: matrix not square");
    Scalar s = fld_->zero();
    for (size_t i = 0; i < rows_; ++i) s = s + at(i, i);
    return s;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_scalar_multiple_of_identity() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (i == j) {
                if (at(i, j) != at(0, 0)) return false;
            } else if (!at(i, j).is_zero()) {
                return false;
            }
        }
    return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw LinAlgError("matrix add: shape mismatch");
    Matrix r = a;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + b.a_[i];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw LinAlgError("matrix sub: shape mismatch");
    Matrix r = a;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - b.a_[i];
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw LinAlgError("matrix mul: shape mismatch");
    Matrix r(a.fld_ ? a.fld_ : b.fld_, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (size_t j = 0; j < b.cols_; ++j) {
                const Scalar& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                r.at(i, j) = r.at(i, j) + aik * bkj;
            }
        }
    return r;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.a_) x = s * x;
    return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t i = 0; i < a.a_.size(); ++i)
        if (a.a_[i] != b.a_[i]) return false;
    return true;
}

Matrix Matrix::pow(unsigned long e) const {
    if (rows_ != cols_) throw LinAlgError("pow: matrix not square");
    Matrix result = identity(fld_, rows_);
    Matrix base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw LinAlgError("inverse: matrix not square");
    size_t n = rows_;
    Matrix aug = *this;
    Matrix inv = identity(fld_, n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && aug.at(piv, col).is_zero()) ++piv;
        if (piv == n) throw LinAlgError("inverse: matrix is singular");
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) {
                std::swap(aug.at(piv, j), aug.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        }
        Scalar d = aug.at(col, col).inverse();
        for (size_t j = 0; j < n; ++j) {
            aug.at(col, j) = d * aug.at(col, j);
            inv.at(col, j) = d * inv.at(col, j);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || aug.at(i, col).is_zero()) continue;
            Scalar f = aug.at(i, col);
            for (size_t j = 0; j < n; ++j) {
                aug.at(i, j) = aug.at(i, j) - f * aug.at(col, j);
                inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.fld_ ? a.fld_ : b.fld_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t j = 0; j < a.cols_; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (size_t k = 0; k < b.rows_; ++k)
                for (size_t l = 0; l < b.cols_; ++l) {
                    if (b.at(k, l).is_zero()) continue;
                    r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
                }
        }
    return r;
}

std::vector<Scalar> Matrix::flatten() const { return a_; }

Matrix Matrix::unflatten(FieldPtr field, size_t rows, size_t cols, const std::vector<Scalar>& v) {
    if (v.size() != rows * cols) throw LinAlgError("unflatten: size mismatch");
    Matrix m(field, rows, cols);
    for (size_t i = 0; i < v.size(); ++i) m.a_[i] = v[i];
    return m;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw LinAlgError("apply: size mismatch");
    std::vector<Scalar> r(rows_, fld_->zero());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            r[i] = r[i] + at(i, j) * v[j];
        }
    return r;
}

std::vector<Scalar> vec_add(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) throw LinAlgError("vec_add: size mismatch");
    std::vector<Scalar> r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

std::vector<Scalar> vec_sub(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    if (a.size() != b.size()) throw LinAlgError("vec_sub: size mismatch");
    std::vector<Scalar> r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

std::vector<Scalar> vec_scale(const Scalar& c, const std::vector<Scalar>& a) {
    std::vector<Scalar> r = a;
    for (auto& x : r) x = c * x;
    return r;
}

bool vec_is_zero(const std::vector<Scalar>& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

Subspace::Subspace(FieldPtr field, size_t ambient) : fld_(std::move(field)), ambient_(ambient) {}

Subspace Subspace::span(FieldPtr field, size_t ambient, const std::vector<std::vector<Scalar>>& vectors) {
    Subspace s(field, ambient);
    for (const auto& v : vectors) {
        if (v.size() != ambient) throw LinAlgError("span: ambient mismatch");
        std::vector<Scalar> w = v;
        // reduce against current rows
        for (size_t r = 0; r < s.basis_.size(); ++r) {
            const Scalar& c = w[s.pivots_[r]];
            if (!c.is_zero()) w = vec_sub(w, vec_scale(c, s.basis_[r]));
        }
        size_t p = 0;
        while (p < ambient && w[p].is_zero()) ++p;
        if (p == ambient) continue; // dependent
        w = vec_scale(w[p].inverse(), w);
        // clear column p in existing rows
        for (size_t r = 0; r < s.basis_.size(); ++r) {
            const Scalar& c = s.basis_[r][p];
            if (!c.is_zero()) s.basis_[r] = vec_sub(s.basis_[r], vec_scale(c, w));
        }
        // insert keeping pivot order
        size_t pos = 0;
        while (pos < s.pivots_.size() && s.pivots_[pos] < p) ++pos;
        s.basis_.insert(s.basis_.begin() + static_cast<long>(pos), std::move(w));
        s.pivots_.insert(s.pivots_.begin() + static_cast<long>(pos), p);
    }
    return s;
}

Subspace Subspace::full(FieldPtr field, size_t ambient) {
    std::vector<std::vector<Scalar>> rows;
    for (size_t i = 0; i < ambient; ++i) {
        std::vector<Scalar> e(ambient, field->zero());
        e[i] = field->one();
        rows.push_back(std::move(e));
    }
    return span(field, ambient, rows);
}

bool Subspace::member(const std::vector<Scalar>& v) const {
    if (v.size() != ambient_) throw LinAlgError("member: ambient mismatch");
    std::vector<Scalar> w = v;
    for (size_t r = 0; r < basis_.size(); ++r) {
        const Scalar& c = w[pivots_[r]];
        if (!c.is_zero()) w = vec_sub(w, vec_scale(c, basis_[r]));
    }
    return vec_is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw LinAlgError("contains: ambient mismatch");
    for (const auto& v : other.basis_)
        if (!member(v)) return false;
    return true;
}

std::vector<Scalar> Subspace::coordinates(const std::vector<Scalar>& v) const {
    if (v.size() != ambient_) throw LinAlgError("coordinates: ambient mismatch");
    std::vector<Scalar> w = v;
    std::vector<Scalar> coords;
    coords.reserve(basis_.size());
    for (size_t r = 0; r < basis_.size(); ++r) {
        Scalar c = w[pivots_[r]];
        coords.push_back(c);
        if (!c.is_zero()) w = vec_sub(w, vec_scale(c, basis_[r]));
    }
    if (!vec_is_zero(w)) throw LinAlgError("coordinates: vector outside subspace");
    return coords;
}

Subspace Subspace::sum_with(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw LinAlgError("sum: ambient mismatch");
    std::vector<std::vector<Scalar>> rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return span(fld_ ? fld_ : other.fld_, ambient_, rows);
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw LinAlgError("intersect: ambient mismatch");
    FieldPtr F = fld_ ? fld_ : other.fld_;
    size_t s = basis_.size(), t = other.basis_.size();
    if (s == 0 || t == 0) return Subspace(F, ambient_);
    // Kernel of [S; -T] stacked as columns: rows of the kernel give
    // coefficient pairs (a, b) with a*S = b*T.
    Matrix stacked(F, s + t, ambient_);
    for (size_t i = 0; i < s; ++i)
        for (size_t j = 0; j < ambient_; ++j) stacked.at(i, j) = basis_[i][j];
    for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < ambient_; ++j) stacked.at(s + i, j) = -other.basis_[i][j];
    Subspace ker = nullspace(stacked.transpose());
    std::vector<std::vector<Scalar>> vecs;
    for (const auto& ab : ker.basis()) {
        std::vector<Scalar> v(ambient_, F->zero());
        for (size_t i = 0; i < s; ++i)
            if (!ab[i].is_zero()) v = vec_add(v, vec_scale(ab[i], basis_[i]));
        vecs.push_back(std::move(v));
    }
    return span(F, ambient_, vecs);
}

bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_ || a.basis_.size() != b.basis_.size()) return false;
    for (size_t i = 0; i < a.basis_.size(); ++i) {
        if (a.pivots_[i] != b.pivots_[i]) return false;
        for (size_t j = 0; j < a.ambient_; ++j)
            if (a.basis_[i][j] != b.basis_[i][j]) return false;
    }
    return true;
}

Subspace nullspace(const Matrix& A) {
    FieldPtr F = A.field();
    size_t m = A.rows(), n = A.cols();
    // Row reduce a working copy, track pivot columns.
    std::vector<std::vector<Scalar>> rows(m, std::vector<Scalar>(n, F->zero()));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) rows[i][j] = A.at(i, j);
    std::vector<size_t> pivot_cols;
    size_t rank = 0;
    for (size_t col = 0; col < n && rank < m; ++col) {
        size_t piv = rank;
        while (piv < m && rows[piv][col].is_zero()) ++piv;
        if (piv == m) continue;
        std::swap(rows[piv], rows[rank]);
        Scalar d = rows[rank][col].inverse();
        for (size_t j = col; j < n; ++j) rows[rank][j] = d * rows[rank][j];
        for (size_t i = 0; i < m; ++i) {
            if (i == rank || rows[i][col].is_zero()) continue;
            Scalar f = rows[i][col];
            for (size_t j = col; j < n; ++j) rows[i][j] = rows[i][j] - f * rows[rank][j];
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t freec = 0; freec < n; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<Scalar> v(n, F->zero());
        v[freec] = F->one();
        for (size_t r = 0; r < rank; ++r) v[pivot_cols[r]] = -rows[r][freec];
        basis.push_back(std::move(v));
    }
    return Subspace::span(F, n, basis);
}

Subspace eigenspace(const Matrix& A, const Scalar& lambda) {
    if (A.rows() != A.cols()) throw LinAlgError("eigenspace: matrix not square");
    Matrix shifted = A - lambda * Matrix::identity(A.field(), A.rows());
    return nullspace(shifted);
}

} // namespace liegrad
