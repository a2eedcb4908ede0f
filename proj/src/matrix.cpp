#include "sympro/matrix.hpp"

#include <cmath>
#include <string>

#include "sympro/kernels.hpp"

namespace sympro {

double vec_dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionMismatch("vec_dot: length mismatch");
    return kernels::dot(x.data(), y.data(), x.size());
}

double vec_norm(std::span<const double> x) {
    return std::sqrt(kernels::dot(x.data(), x.data(), x.size()));
}

bool vec_finite(std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

Vec vec_sub(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionMismatch("vec_sub: length mismatch");
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return out;
}

double vec_dist(std::span<const double> x, std::span<const double> y) {
    return vec_norm(vec_sub(x, y));
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_data(std::size_t r, std::size_t c, std::vector<double> entries) {
    if (entries.size() != r * c)
        throw DimensionMismatch("Matrix::from_data: entry count " + std::to_string(entries.size()) +
                                " != " + std::to_string(r) + "x" + std::to_string(c));
    Matrix m;
    m.rows = r;
    m.cols = c;
    m.data = std::move(entries);
    if (!m.finite()) throw NumericalBlowup("Matrix::from_data: non-finite entry");
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows_list) {
    const std::size_t r = rows_list.size();
    const std::size_t c = r ? rows_list.begin()->size() : 0;
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows_list) {
        if (row.size() != c) throw DimensionMismatch("Matrix::from_rows: ragged rows");
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    if (!m.finite()) throw NumericalBlowup("Matrix::from_rows: non-finite entry");
    return m;
}

Vec Matrix::col(std::size_t j) const {
    Vec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_col(std::size_t j, std::span<const double> v) {
    if (v.size() != rows) throw DimensionMismatch("Matrix::set_col: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

bool Matrix::finite() const { return vec_finite(data); }

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("matrix add: shape mismatch");
    Matrix c = a;
    kernels::axpy(1.0, b.data.data(), c.data.data(), c.data.size());
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatch("matrix sub: shape mismatch");
    Matrix c = a;
    kernels::axpy(-1.0, b.data.data(), c.data.data(), c.data.size());
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw DimensionMismatch("matrix mul: inner dimension mismatch");
    Matrix c(a.rows, b.cols);
    kernels::gemm_acc(a.data.data(), b.data.data(), c.data.data(), a.rows, a.cols, b.cols);
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    kernels::scal(s, c.data.data(), c.data.size());
    return c;
}

Vec operator*(const Matrix& a, std::span<const double> x) {
    if (a.cols != x.size()) throw DimensionMismatch("matvec: dimension mismatch");
    Vec y(a.rows, 0.0);
    kernels::gemm_acc(a.data.data(), x.data(), y.data(), a.rows, a.cols, 1);
    return y;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

double frobenius_norm(const Matrix& a) { return vec_norm(a.data); }

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double v : a.data) m = std::max(m, std::abs(v));
    return m;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw DimensionMismatch("hcat: row mismatch");
    Matrix c(a.rows, a.cols + b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols; ++j) c(i, a.cols + j) = b(i, j);
    }
    return c;
}

Matrix select_cols(const Matrix& m, std::span<const std::size_t> which) {
    Matrix c(m.rows, which.size());
    for (std::size_t j = 0; j < which.size(); ++j)
        for (std::size_t i = 0; i < m.rows; ++i) c(i, j) = m(i, which[j]);
    return c;
}

} // namespace sympro
