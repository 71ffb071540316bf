#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mscn {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. Deliberately small: only the
/// operations the statistical code needs.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// n x d x k array of doubles, used for the per-row, per-dimension,
/// per-component posteriors.
struct Tensor3 {
    std::size_t n = 0, d = 0, k = 0;
    std::vector<double> a;

    Tensor3() = default;
    Tensor3(std::size_t n_, std::size_t d_, std::size_t k_, double value = 0.0)
        : n(n_), d(d_), k(k_), a(n_ * d_ * k_, value) {}

    double& operator()(std::size_t i, std::size_t h, std::size_t j) {
        return a[(i * d + h) * k + j];
    }
    double operator()(std::size_t i, std::size_t h, std::size_t j) const {
        return a[(i * d + h) * k + j];
    }

    bool operator==(const Tensor3&) const = default;
};

/// Rectangular boolean mask (stored as bytes so rows can be spanned).
struct Mask {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> a;

    Mask() = default;
    Mask(std::size_t r, std::size_t c, bool value = false)
        : rows(r), cols(c), a(r * c, value ? 1 : 0) {}

    std::uint8_t& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    bool operator()(std::size_t i, std::size_t j) const { return a[i * cols + j] != 0; }
    bool empty() const { return a.empty(); }

    bool operator==(const Mask&) const = default;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

/// y = A x
Vector matvec(const Matrix& a, std::span<const double> x);
/// y = A^T x
Vector tmatvec(const Matrix& a, std::span<const double> x);

double max_abs(const Matrix& a);
/// Largest |a_ij - a_ji|.
double max_asymmetry(const Matrix& a);
bool all_finite(const Matrix& a);
bool all_finite(std::span<const double> v);

}  // namespace mscn
