#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qrobust {

using cplx = std::complex<double>;

/// Dense complex matrix stored in row-major order.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    /// Throws std::invalid_argument if entries.size() != rows * cols or any entry is non-finite.
    ComplexMatrix(size_t rows, size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(size_t n);
    static ComplexMatrix diagonal(std::span<const cplx> diag);
    static ComplexMatrix outer(std::span<const cplx> a, std::span<const cplx> b);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> entries() const { return data_; }
    std::span<cplx> entries() { return data_; }

    std::vector<cplx> column(size_t c) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    cplx trace() const;
    double frobenius_norm() const;
    /// Largest entrywise modulus.
    double max_abs() const;
    /// max |H - H^dagger| over entries.
    double hermiticity_residual() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(cplx scale);

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
std::vector<cplx> operator*(const ComplexMatrix &a, std::span<const cplx> v);
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

cplx inner(std::span<const cplx> a, std::span<const cplx> b);  // <a|b>
double norm(std::span<const cplx> v);
std::vector<cplx> kron(std::span<const cplx> a, std::span<const cplx> b);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column i pairs with values[i]
};

/// Cyclic complex Jacobi diagonalization.
///
/// Requires a square matrix with max |H - H^dagger| <= 1e-10 (throws std::invalid_argument otherwise).
/// The input is symmetrized before rotating. Eigenvectors belonging to numerically degenerate
/// eigenvalues are re-orthonormalized, so callers must not rely on a particular basis inside a cluster.
HermitianEigen eig_hermitian(const ComplexMatrix &h);

/// Bipartite normal form M = sum_i s_i |left_i><right_i^*| of a dL x dR amplitude matrix.
struct SchmidtDecomposition {
    std::vector<double> coefficients;        // nonincreasing, length min(dL, dR)
    std::vector<std::vector<cplx>> left;     // orthonormal, dimension dL
    std::vector<std::vector<cplx>> right;    // orthonormal, dimension dR

    /// Number of coefficients whose square exceeds `tol`.
    size_t rank(double tol = 1e-10) const;
};

/// Schmidt decomposition of a bipartite pure state given as its dL x dR amplitude matrix
/// (entry (a, b) is the amplitude of |a>|b>).
SchmidtDecomposition schmidt_decompose(const ComplexMatrix &amplitudes);

/// Sum of singular values. Throws std::invalid_argument for non-square input.
double trace_norm(const ComplexMatrix &m);

/// LU with partial pivoting. Throws std::invalid_argument for non-square input.
cplx determinant(const ComplexMatrix &m);

/// Solves a * x = b for a square, nonsingular a. Throws std::domain_error when singular.
ComplexMatrix solve(const ComplexMatrix &a, const ComplexMatrix &b);

struct PolyRoots {
    std::vector<cplx> finite;
    size_t at_infinity = 0;
};

/// Roots of sum_i coeffs[i] z^i, treated as a polynomial of degree `nominal_degree`.
///
/// Coefficients are in ascending order; entries beyond coeffs.size() count as zero. Every vanishing
/// leading coefficient (up to the nominal degree) contributes one root at infinity, so
/// finite.size() + at_infinity == nominal_degree. Repeated roots are returned repeated.
/// Throws std::invalid_argument when all coefficients vanish or coeffs.size() > nominal_degree + 1.
PolyRoots poly_roots(std::span<const cplx> coeffs, size_t nominal_degree);

/// Horner evaluation, ascending coefficients.
cplx poly_eval(std::span<const cplx> coeffs, cplx z);

/// Ascending coefficients of prod_i (z - roots[i]).
std::vector<cplx> poly_from_roots(std::span<const cplx> roots);

}  // namespace qrobust
