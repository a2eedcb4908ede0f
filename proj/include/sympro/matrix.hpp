#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "sympro/errors.hpp"

namespace sympro {

// State vectors are plain double sequences; complex coordinates are stored
// realified as (Re, Im) pairs.
using Vec = std::vector<double>;

double vec_dot(std::span<const double> x, std::span<const double> y);
double vec_norm(std::span<const double> x);
bool vec_finite(std::span<const double> x);
Vec vec_sub(std::span<const double> x, std::span<const double> y);
double vec_dist(std::span<const double> x, std::span<const double> y);

// Dense row-major matrix. Construction from data validates finiteness;
// element writes through operator() are unchecked.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // row-major, rows*cols entries

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    static Matrix zero(std::size_t r, std::size_t c) { return Matrix(r, c); }
    static Matrix identity(std::size_t n);
    static Matrix from_data(std::size_t r, std::size_t c, std::vector<double> entries);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

    Vec col(std::size_t j) const;
    void set_col(std::size_t j, std::span<const double> v);

    bool finite() const;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vec operator*(const Matrix& a, std::span<const double> x);

Matrix transpose(const Matrix& a);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
// [a | b] side by side
Matrix hcat(const Matrix& a, const Matrix& b);
// columns of m listed in `which`
Matrix select_cols(const Matrix& m, std::span<const std::size_t> which);

} // namespace sympro
