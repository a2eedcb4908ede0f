#include "sympro/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sympro/kernels.hpp"

namespace sympro {

QrResult qr_decompose(const Matrix& m) {
    const std::size_t rows = m.rows, cols = m.cols;
    if (cols == 0 || rows < cols) throw DimensionMismatch("qr_decompose: need rows >= cols >= 1");

    Matrix a = m; // working copy, becomes R in the top block
    std::vector<Vec> reflectors;
    reflectors.reserve(cols);

    for (std::size_t j = 0; j < cols; ++j) {
        // Householder vector for column j below the diagonal
        double norm_sq = 0.0;
        for (std::size_t i = j; i < rows; ++i) norm_sq += a(i, j) * a(i, j);
        const double alpha = std::sqrt(norm_sq);
        Vec v(rows - j, 0.0);
        const double ajj = a(j, j);
        const double sign = ajj >= 0.0 ? 1.0 : -1.0;
        v[0] = ajj + sign * alpha;
        for (std::size_t i = j + 1; i < rows; ++i) v[i - j] = a(i, j);
        double vnorm_sq = 0.0;
        for (double x : v) vnorm_sq += x * x;
        if (vnorm_sq > 0.0) {
            // apply I - 2 v v^T / (v^T v) to the trailing block
            for (std::size_t c = j; c < cols; ++c) {
                double proj = 0.0;
                for (std::size_t i = j; i < rows; ++i) proj += v[i - j] * a(i, c);
                proj *= 2.0 / vnorm_sq;
                for (std::size_t i = j; i < rows; ++i) a(i, c) -= proj * v[i - j];
            }
        }
        reflectors.push_back(std::move(v));
    }

    // Q = H_0 ... H_{n-1} applied to the first `cols` identity columns
    Matrix q(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) q(j, j) = 1.0;
    for (std::size_t j = cols; j-- > 0;) {
        const Vec& v = reflectors[j];
        double vnorm_sq = 0.0;
        for (double x : v) vnorm_sq += x * x;
        if (vnorm_sq <= 0.0) continue;
        for (std::size_t c = 0; c < cols; ++c) {
            double proj = 0.0;
            for (std::size_t i = j; i < rows; ++i) proj += v[i - j] * q(i, c);
            proj *= 2.0 / vnorm_sq;
            for (std::size_t i = j; i < rows; ++i) q(i, c) -= proj * v[i - j];
        }
    }

    Matrix r(cols, cols);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = i; j < cols; ++j) r(i, j) = a(i, j);

    // fix the sign convention: R_ii >= 0
    for (std::size_t i = 0; i < cols; ++i) {
        if (r(i, i) < 0.0) {
            for (std::size_t j = i; j < cols; ++j) r(i, j) = -r(i, j);
            for (std::size_t k = 0; k < rows; ++k) q(k, i) = -q(k, i);
        }
        if (r(i, i) < 1e-300)
            throw RankDeficient("qr_decompose: R diagonal " + std::to_string(i) + " underflowed");
    }
    return {std::move(q), std::move(r)};
}

SvdResult svd(const Matrix& m) {
    if (!m.finite()) throw NumericalBlowup("svd: non-finite input");
    const bool transposed = m.rows < m.cols;
    Matrix a = transposed ? transpose(m) : m; // rows >= cols
    const std::size_t rows = a.rows, cols = a.cols;

    Matrix v = Matrix::identity(cols);

    // One-sided Jacobi: rotate column pairs until all are numerically
    // orthogonal. Convergence measured against the column-norm scale.
    const int max_sweeps = 60;
    const double tol = 1e-14;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    app += a(i, p) * a(i, p);
                    aqq += a(i, q) * a(i, q);
                    apq += a(i, p) * a(i, q);
                }
                const double denom = std::sqrt(app * aqq);
                if (denom <= 0.0 || std::abs(apq) <= tol * denom) continue;
                off = std::max(off, std::abs(apq) / denom);
                const double zeta = (aqq - app) / (2.0 * apq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const double ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = s * ap + c * aq;
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (off == 0.0) break;
        if (sweep == max_sweeps - 1)
            throw ConvergenceFailure("svd: Jacobi sweeps exhausted, off = " + std::to_string(off));
    }

    std::vector<double> s(cols);
    Matrix u(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) norm += a(i, j) * a(i, j);
        norm = std::sqrt(norm);
        s[j] = norm;
        if (norm > 0.0)
            for (std::size_t i = 0; i < rows; ++i) u(i, j) = a(i, j) / norm;
        else
            u(j < rows ? j : 0, j) = 1.0; // arbitrary unit column for a zero singular value
    }

    // sort descending, carrying U and V columns along
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&s](std::size_t i, std::size_t j) { return s[i] > s[j]; });
    SvdResult out;
    out.s.resize(cols);
    out.u = Matrix(rows, cols);
    out.v = Matrix(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        out.s[j] = s[order[j]];
        for (std::size_t i = 0; i < rows; ++i) out.u(i, j) = u(i, order[j]);
        for (std::size_t i = 0; i < cols; ++i) out.v(i, j) = v(i, order[j]);
    }

    if (transposed) std::swap(out.u, out.v);
    return out;
}

std::vector<double> principal_angles_deg(const Matrix& qa, const Matrix& qb) {
    if (qa.rows != qb.rows) throw DimensionMismatch("principal_angles: row dimension mismatch");
    if (qa.cols == 0 || qb.cols == 0) throw DimensionMismatch("principal_angles: empty basis");
    const Matrix overlap = transpose(qa) * qb; // k_a x k_b
    const auto sv = svd(overlap);
    const std::size_t k = std::min(qa.cols, qb.cols);
    std::vector<double> angles(k);
    constexpr double rad2deg = 57.295779513082320876798154814105;
    for (std::size_t i = 0; i < k; ++i) {
        const double c = std::clamp(sv.s[i], 0.0, 1.0);
        angles[i] = std::acos(c) * rad2deg;
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

std::size_t rank_from_singular_values(const std::vector<double>& s, double tol) {
    if (s.empty()) return 0;
    const double smax = s.front();
    if (smax <= 0.0) return 0;
    std::size_t rank = 0;
    for (double x : s)
        if (x > tol * smax) ++rank;
    return rank;
}

std::size_t numerical_rank(const Matrix& m, double tol) {
    if (tol <= 0.0) throw Error("numerical_rank: tol must be positive");
    if (max_abs(m) == 0.0) return 0;
    return rank_from_singular_values(svd(m).s, tol);
}

Matrix matrix_exp(const Matrix& a) {
    if (a.rows != a.cols) throw DimensionMismatch("matrix_exp: square input required");
    if (!a.finite()) throw NumericalBlowup("matrix_exp: non-finite input");
    const std::size_t n = a.rows;

    // scale so the 1-norm of the block is <= 0.5, Taylor to machine tolerance,
    // then square back
    double norm1 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double colsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) colsum += std::abs(a(i, j));
        norm1 = std::max(norm1, colsum);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm1 * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    Matrix b = scale * a;

    Matrix result = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= 40; ++k) {
        term = (1.0 / static_cast<double>(k)) * (term * b);
        result = result + term;
        if (frobenius_norm(term) < 1e-18 * frobenius_norm(result)) break;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

Matrix orthonormal_basis(const Matrix& m, double tol) {
    const auto sv = svd(m);
    const std::size_t rank = rank_from_singular_values(sv.s, tol);
    if (rank == 0) return Matrix(m.rows, 0);
    std::vector<std::size_t> keep(rank);
    std::iota(keep.begin(), keep.end(), 0);
    return select_cols(sv.u, keep);
}

Vec lu_solve(Matrix a, Vec b) {
    const std::size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw DimensionMismatch("lu_solve: shape mismatch");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        }
        if (best < 1e-300) throw RankDeficient("lu_solve: singular pivot");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            a(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
        x[i] = acc / a(i, i);
    }
    return x;
}

} // namespace sympro
