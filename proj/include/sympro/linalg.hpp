#pragma once

#include <cstddef>
#include <vector>

#include "sympro/matrix.hpp"

namespace sympro {

struct QrResult {
    Matrix q; // m x n, orthonormal columns
    Matrix r; // n x n, upper triangular, nonnegative diagonal
};

// Householder QR with the R-diagonal sign fixed nonnegative so Benettin logs
// are well defined. Throws RankDeficient when a diagonal underflows.
QrResult qr_decompose(const Matrix& m);

struct SvdResult {
    Matrix u;              // m x n (thin)
    std::vector<double> s; // descending, nonnegative
    Matrix v;              // n x n
};

// One-sided Jacobi SVD (documented choice: simple and accurate at the
// <= 32x32 sizes this library uses). Throws ConvergenceFailure after the
// sweep cap.
SvdResult svd(const Matrix& m);

// Principal angles in degrees, ascending, between the column spans of two
// matrices with orthonormal columns and equal row dimension. Returns
// min(k_a, k_b) angles clamped to [0, 90].
std::vector<double> principal_angles_deg(const Matrix& qa, const Matrix& qb);

// Number of singular values above tol * sigma_max (0 for the zero matrix).
std::size_t numerical_rank(const Matrix& m, double tol);
std::size_t rank_from_singular_values(const std::vector<double>& s, double tol);

// Scaling-and-squaring matrix exponential (Taylor core on the scaled block).
Matrix matrix_exp(const Matrix& a);

// Orthonormal basis of the column span (left singular vectors with
// sigma > tol * sigma_max).
Matrix orthonormal_basis(const Matrix& m, double tol = 1e-10);

// Solve a x = b by LU with partial pivoting (square, small).
Vec lu_solve(Matrix a, Vec b);

} // namespace sympro
