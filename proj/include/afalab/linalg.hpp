// Dense matrix/vector kernels over Scalar.
//
// Matrices act on configuration columns: entry (i, j) is the weight of the
// transition from state j to state i, so a computation step is `M * v`.
// Kronecker products use row-major pair flattening, i.e.
// (A (x) B)[(i1,i2),(j1,j2)] = A[i1,j1] * B[i2,j2] with (i1,i2) -> i1*rB+i2,
// which puts the (q_j, q_j) diagonal pair states of the tensored quantum
// simulations at index j*n+j.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "afalab/errors.hpp"
#include "afalab/scalar.hpp"

namespace afalab {

class Vector {
public:
    Vector() = default;
    Vector(std::size_t dim, ScalarMode mode)
        : mode_(mode), data_(dim, Scalar::zero(mode)) {}

    static Vector basis(std::size_t dim, std::size_t index, ScalarMode mode) {
        if (index >= dim) throw DimensionError("basis index out of range");
        Vector v(dim, mode);
        v[index] = Scalar::one(mode);
        return v;
    }

    std::size_t dim() const { return data_.size(); }
    ScalarMode mode() const { return mode_; }

    Scalar& operator[](std::size_t i) { return data_.at(i); }
    const Scalar& operator[](std::size_t i) const { return data_.at(i); }

    friend bool operator==(const Vector& a, const Vector& b) {
        if (a.dim() != b.dim() || a.mode() != b.mode()) return false;
        for (std::size_t i = 0; i < a.dim(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    }

private:
    ScalarMode mode_ = ScalarMode::Rational;
    std::vector<Scalar> data_;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, ScalarMode mode)
        : rows_(rows), cols_(cols), mode_(mode),
          data_(rows * cols, Scalar::zero(mode)) {}

    static Matrix identity(std::size_t n, ScalarMode mode) {
        Matrix m(n, n, mode);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(mode);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    ScalarMode mode() const { return mode_; }

    Scalar& at(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const Scalar& at(std::size_t i, std::size_t j) const {
        return data_.at(i * cols_ + j);
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.mode_ != b.mode_)
            return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!(a.data_[i] == b.data_[i])) return false;
        return true;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    ScalarMode mode_ = ScalarMode::Rational;
    std::vector<Scalar> data_;
};

// Builds a matrix from rows of integer literals, handy for fixed machines.
inline Matrix matrix_from_rows(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty() || rows[0].empty()) throw DimensionError("empty matrix literal");
    Matrix m(rows.size(), rows[0].size(), rows[0][0].mode());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw DimensionError("ragged matrix literal");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

inline void check_same_mode(ScalarMode a, ScalarMode b, const char* what) {
    if (a != b)
        throw ModeMismatchError(std::string("mixed scalar modes in ") + what);
}

inline Vector matvec(const Matrix& m, const Vector& v) {
    if (m.cols() != v.dim())
        throw DimensionError("matvec: " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " times dim " +
                             std::to_string(v.dim()));
    check_same_mode(m.mode(), v.mode(), "matvec");
    Vector out(m.rows(), m.mode());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Scalar acc = Scalar::zero(m.mode());
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m.at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    check_same_mode(a.mode(), b.mode(), "matmul");
    Matrix out(a.rows(), b.cols(), a.mode());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    check_same_mode(a.mode(), b.mode(), "kronecker");
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.mode());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const Scalar& s = a.at(i1, j1);
            if (s.is_zero()) continue;
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
                    out.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = s * b.at(i2, j2);
        }
    return out;
}

inline Vector kronecker(const Vector& a, const Vector& b) {
    check_same_mode(a.mode(), b.mode(), "kronecker");
    Vector out(a.dim() * b.dim(), a.mode());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

inline Vector column_sums(const Matrix& m) {
    Vector out(m.cols(), m.mode());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Scalar acc = Scalar::zero(m.mode());
        for (std::size_t i = 0; i < m.rows(); ++i) acc += m.at(i, j);
        out[j] = acc;
    }
    return out;
}

inline Scalar l1_norm(const Vector& v) {
    Scalar acc = Scalar::zero(v.mode());
    for (std::size_t i = 0; i < v.dim(); ++i) acc += v[i].abs();
    return acc;
}

inline Scalar entry_sum(const Vector& v) {
    Scalar acc = Scalar::zero(v.mode());
    for (std::size_t i = 0; i < v.dim(); ++i) acc += v[i];
    return acc;
}

inline Matrix transpose(const Matrix& m) {
    Matrix out(m.cols(), m.rows(), m.mode());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(j, i) = m.at(i, j);
    return out;
}

enum class MatrixLabel { Stochastic, Affine, Orthogonal, General };

inline const char* to_string(MatrixLabel l) {
    switch (l) {
        case MatrixLabel::Stochastic: return "stochastic";
        case MatrixLabel::Affine: return "affine";
        case MatrixLabel::Orthogonal: return "orthogonal";
        default: return "general";
    }
}

// Which model constraints a square matrix satisfies. `label()` reports the
// strongest one in the order stochastic > affine > orthogonal.
struct MatrixClass {
    bool stochastic = false;
    bool affine = false;
    bool orthogonal = false;

    MatrixLabel label() const {
        if (stochastic) return MatrixLabel::Stochastic;
        if (affine) return MatrixLabel::Affine;
        if (orthogonal) return MatrixLabel::Orthogonal;
        return MatrixLabel::General;
    }
};

inline MatrixClass classify_matrix(const Matrix& m, double tol = kDefaultTol) {
    if (m.rows() != m.cols())
        throw DimensionError("classify_matrix requires a square matrix");
    const Scalar one = Scalar::one(m.mode());
    const Scalar zero = Scalar::zero(m.mode());
    auto near = [&](const Scalar& a, const Scalar& b) { return close(a, b, tol); };

    MatrixClass c;
    c.affine = true;
    bool nonneg = true;
    Vector sums = column_sums(m);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!near(sums[j], one)) c.affine = false;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const Scalar& e = m.at(i, j);
            if (e.mode() == ScalarMode::Rational ? e.sign() < 0
                                                 : e.to_double() < -tol)
                nonneg = false;
        }
    }
    c.stochastic = c.affine && nonneg;

    Matrix gram = matmul(transpose(m), m);
    c.orthogonal = true;
    for (std::size_t i = 0; i < m.rows() && c.orthogonal; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!near(gram.at(i, j), i == j ? one : zero)) {
                c.orthogonal = false;
                break;
            }
    return c;
}

}  // namespace afalab
