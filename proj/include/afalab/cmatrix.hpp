// Complex matrices as pairs of real Scalar matrices.
//
// Complex data appears only inside superoperator (Kraus) machines; every
// value the library hands back is real. Keeping the real and imaginary
// parts as two Scalar matrices means a rational Kraus set stays exact.

#pragma once

#include "afalab/linalg.hpp"

namespace afalab {

struct CMatrix {
    Matrix re, im;

    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols, ScalarMode mode)
        : re(rows, cols, mode), im(rows, cols, mode) {}

    static CMatrix from_real(Matrix real_part) {
        CMatrix c;
        c.im = Matrix(real_part.rows(), real_part.cols(), real_part.mode());
        c.re = std::move(real_part);
        return c;
    }

    static CMatrix identity(std::size_t n, ScalarMode mode) {
        return from_real(Matrix::identity(n, mode));
    }

    std::size_t rows() const { return re.rows(); }
    std::size_t cols() const { return re.cols(); }
    ScalarMode mode() const { return re.mode(); }
};

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix out;
    // (A + iB)(C + iD) = (AC - BD) + i(AD + BC)
    Matrix ac = matmul(a.re, b.re), bd = matmul(a.im, b.im);
    Matrix ad = matmul(a.re, b.im), bc = matmul(a.im, b.re);
    out.re = Matrix(ac.rows(), ac.cols(), ac.mode());
    out.im = Matrix(ac.rows(), ac.cols(), ac.mode());
    for (std::size_t i = 0; i < ac.rows(); ++i)
        for (std::size_t j = 0; j < ac.cols(); ++j) {
            out.re.at(i, j) = ac.at(i, j) - bd.at(i, j);
            out.im.at(i, j) = ad.at(i, j) + bc.at(i, j);
        }
    return out;
}

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("complex matrix addition: shape mismatch");
    CMatrix out(a.rows(), a.cols(), a.mode());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out.re.at(i, j) = a.re.at(i, j) + b.re.at(i, j);
            out.im.at(i, j) = a.im.at(i, j) + b.im.at(i, j);
        }
    return out;
}

inline CMatrix adjoint(const CMatrix& a) {
    CMatrix out;
    out.re = transpose(a.re);
    out.im = transpose(a.im);
    for (std::size_t i = 0; i < out.im.rows(); ++i)
        for (std::size_t j = 0; j < out.im.cols(); ++j)
            out.im.at(i, j) = -out.im.at(i, j);
    return out;
}

// Trace of a product, without forming it: tr(A * B).
inline std::pair<Scalar, Scalar> trace_of_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionError("trace_of_product: shape mismatch");
    Scalar re = Scalar::zero(a.mode());
    Scalar im = Scalar::zero(a.mode());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            re += a.re.at(i, k) * b.re.at(k, i) - a.im.at(i, k) * b.im.at(k, i);
            im += a.re.at(i, k) * b.im.at(k, i) + a.im.at(i, k) * b.re.at(k, i);
        }
    return {re, im};
}

}  // namespace afalab
