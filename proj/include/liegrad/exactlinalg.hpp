#pragma once

#include <vector>

#include "liegrad/cyclofield.hpp"
#include "liegrad/errors.hpp"

namespace liegrad {

/// Dense matrix over cyclotomic scalars.  Immutable in spirit: operations
/// return fresh values.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr field, size_t rows, size_t cols);
    static Matrix identity(FieldPtr field, size_t n);
    static Matrix from_rows(FieldPtr field, const std::vector<std::vector<Scalar>>& rows);
    /// Integer entries convenience (tests, q-matrices).
    static Matrix from_ints(FieldPtr field, const std::vector<std::vector<long>>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldPtr& field() const { return fld_; }

    const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }

    Matrix transpose() const;
    Scalar trace() const;
    Matrix inverse() const;
    bool is_zero() const;
    bool is_scalar_multiple_of_identity() const;
    Matrix pow(unsigned long e) const;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& s, const Matrix& a);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    Matrix operator-() const;

    /// Kronecker product.
    friend Matrix kron(const Matrix& a, const Matrix& b);

    /// Row-major flattening into coordinates of F^(rows*cols).
    std::vector<Scalar> flatten() const;
    static Matrix unflatten(FieldPtr field, size_t rows, size_t cols, const std::vector<Scalar>& v);

    /// Apply as a linear map to a coordinate vector (length cols).
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

private:
    FieldPtr fld_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

/// Subspace of F^ambient stored as a reduced row echelon basis — the
/// canonical representative, so equality is coordinate comparison.
class Subspace {
public:
    Subspace() = default;
    Subspace(FieldPtr field, size_t ambient);
    static Subspace span(FieldPtr field, size_t ambient, const std::vector<std::vector<Scalar>>& vectors);
    static Subspace full(FieldPtr field, size_t ambient);

    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<std::vector<Scalar>>& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }
    const FieldPtr& field() const { return fld_; }

    bool member(const std::vector<Scalar>& v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of v in this basis; throws LinAlgError if v is outside.
    std::vector<Scalar> coordinates(const std::vector<Scalar>& v) const;

    Subspace intersect(const Subspace& other) const;
    Subspace sum_with(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b);
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    FieldPtr fld_;
    size_t ambient_ = 0;
    std::vector<std::vector<Scalar>> basis_;
    std::vector<size_t> pivots_;
};

/// Right nullspace {v : A v = 0} as a subspace of F^cols.
Subspace nullspace(const Matrix& A);

/// Nullspace of (A - lambda I), exact.
Subspace eigenspace(const Matrix& A, const Scalar& lambda);

std::vector<Scalar> vec_add(const std::vector<Scalar>& a, const std::vector<Scalar>& b);
std::vector<Scalar> vec_sub(const std::vector<Scalar>& a, const std::vector<Scalar>& b);
std::vector<Scalar> vec_scale(const Scalar& c, const std::vector<Scalar>& a);
bool vec_is_zero(const std::vector<Scalar>& a);

} // namespace liegrad
