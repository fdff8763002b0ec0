#include "qrobust/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qrobust {

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw std::invalid_argument(
            "ComplexMatrix: got " + std::to_string(data_.size()) + " entries for a " + std::to_string(rows) + "x" +
            std::to_string(cols) + " matrix");
    }
    for (const auto &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (size_t i = 0; i < diag.size(); i++) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> a, std::span<const cplx> b) {
    ComplexMatrix m(a.size(), b.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

std::vector<cplx> ComplexMatrix::column(size_t c) const {
    std::vector<cplx> out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        out[r] = (*this)(r, c);
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            m(c, r) = (*this)(r, c);
        }
    }
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0;
    for (size_t i = 0; i < std::min(rows_, cols_); i++) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double ComplexMatrix::hermiticity_residual() const {
    if (!is_square()) {
        throw std::invalid_argument("hermiticity_residual: matrix is not square");
    }
    double m = 0;
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = r; c < cols_; c++) {
            m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return m;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("ComplexMatrix +=: shape mismatch");
    }
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("ComplexMatrix -=: shape mismatch");
    }
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx scale) {
    for (auto &z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("ComplexMatrix *: shape mismatch");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t k = 0; k < a.cols(); k++) {
            cplx aik = a(i, k);
            if (aik == cplx{0}) {
                continue;
            }
            for (size_t j = 0; j < b.cols(); j++) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    a *= s;
    return a;
}

std::vector<cplx> operator*(const ComplexMatrix &a, std::span<const cplx> v) {
    if (a.cols() != v.size()) {
        throw std::invalid_argument("ComplexMatrix * vector: shape mismatch");
    }
    std::vector<cplx> out(a.rows());
    for (size_t i = 0; i < a.rows(); i++) {
        cplx s = 0;
        for (size_t j = 0; j < a.cols(); j++) {
            s += a(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double m = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (size_t i = 0; i < ea.size(); i++) {
        m = std::max(m, std::abs(ea[i] - eb[i]));
    }
    return m;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner: length mismatch");
    }
    cplx s = 0;
    for (size_t i = 0; i < a.size(); i++) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double norm(std::span<const cplx> v) {
    double s = 0;
    for (const auto &z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

std::vector<cplx> kron(std::span<const cplx> a, std::span<const cplx> b) {
    std::vector<cplx> out(a.size() * b.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

namespace {

// Applies the 2x2 unitary g (acting on coordinates p, q) as A <- G^dagger A G and V <- V G.
void apply_rotation(ComplexMatrix &a, ComplexMatrix &v, size_t p, size_t q, cplx gpp, cplx gpq, cplx gqp, cplx gqq) {
    size_t n = a.rows();
    for (size_t k = 0; k < n; k++) {
        cplx akp = a(k, p);
        cplx akq = a(k, q);
        a(k, p) = akp * gpp + akq * gqp;
        a(k, q) = akp * gpq + akq * gqq;
    }
    for (size_t k = 0; k < n; k++) {
        cplx apk = a(p, k);
        cplx aqk = a(q, k);
        a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
        a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
    }
    for (size_t k = 0; k < n; k++) {
        cplx vkp = v(k, p);
        cplx vkq = v(k, q);
        v(k, p) = vkp * gpp + vkq * gqp;
        v(k, q) = vkp * gpq + vkq * gqq;
    }
}

void orthonormalize_columns(ComplexMatrix &v, size_t begin, size_t end) {
    size_t n = v.rows();
    for (size_t c = begin; c < end; c++) {
        for (int pass = 0; pass < 2; pass++) {
            for (size_t prev = begin; prev < c; prev++) {
                cplx ov = 0;
                for (size_t r = 0; r < n; r++) {
                    ov += std::conj(v(r, prev)) * v(r, c);
                }
                for (size_t r = 0; r < n; r++) {
                    v(r, c) -= ov * v(r, prev);
                }
            }
        }
        double s = 0;
        for (size_t r = 0; r < n; r++) {
            s += std::norm(v(r, c));
        }
        s = std::sqrt(s);
        for (size_t r = 0; r < n; r++) {
            v(r, c) /= s;
        }
    }
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix &h) {
    if (!h.is_square()) {
        throw std::invalid_argument("eig_hermitian: matrix is not square");
    }
    double herm = h.hermiticity_residual();
    if (herm > 1e-10) {
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian (residual " + std::to_string(herm) + ")");
    }
    size_t n = h.rows();
    ComplexMatrix a(n, n);
    for (size_t i = 0; i < n; i++) {
        a(i, i) = h(i, i).real();
        for (size_t j = i + 1; j < n; j++) {
            cplx z = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = a.frobenius_norm();
    if (scale > 0) {
        for (int sweep = 0; sweep < 100; sweep++) {
            double off = 0;
            for (size_t i = 0; i < n; i++) {
                for (size_t j = i + 1; j < n; j++) {
                    off += std::norm(a(i, j));
                }
            }
            if (std::sqrt(2 * off) <= 1e-15 * scale) {
                break;
            }
            for (size_t p = 0; p < n; p++) {
                for (size_t q = p + 1; q < n; q++) {
                    double mag = std::abs(a(p, q));
                    if (mag <= 1e-300 || mag <= 1e-18 * scale) {
                        continue;
                    }
                    cplx phase = a(p, q) / mag;
                    double app = a(p, p).real();
                    double aqq = a(q, q).real();
                    double tau = (aqq - app) / (2 * mag);
                    double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                    double c = 1 / std::sqrt(1 + t * t);
                    double s = t * c;
                    // G = diag(1, conj(phase)) * [[c, s], [-s, c]].
                    cplx ph = std::conj(phase);
                    apply_rotation(a, v, p, q, c, s, -s * ph, c * ph);
                    a(p, q) = 0;
                    a(q, p) = 0;
                    a(p, p) = a(p, p).real();
                    a(q, q) = a(q, q).real();
                }
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (size_t c = 0; c < n; c++) {
        out.values[c] = a(order[c], order[c]).real();
        for (size_t r = 0; r < n; r++) {
            out.vectors(r, c) = v(r, order[c]);
        }
    }

    double tol = 1e-12 * std::max(1.0, scale);
    size_t begin = 0;
    while (begin < n) {
        size_t end = begin + 1;
        while (end < n && out.values[end] - out.values[end - 1] <= tol) {
            end++;
        }
        if (end - begin > 1) {
            orthonormalize_columns(out.vectors, begin, end);
        }
        begin = end;
    }
    return out;
}

size_t SchmidtDecomposition::rank(double tol) const {
    size_t r = 0;
    for (double c : coefficients) {
        if (c * c > tol) {
            r++;
        }
    }
    return r;
}

namespace {

// Completes `basis` (orthonormal vectors) with vectors orthogonal to all of them until `count` vectors exist.
void complete_orthonormal(std::vector<std::vector<cplx>> &basis, size_t dim, size_t count) {
    for (size_t e = 0; basis.size() < count && e < dim; e++) {
        std::vector<cplx> cand(dim);
        cand[e] = 1;
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : basis) {
                cplx ov = inner(b, cand);
                for (size_t i = 0; i < dim; i++) {
                    cand[i] -= ov * b[i];
                }
            }
        }
        double nm = norm(cand);
        if (nm > 1e-6) {
            for (auto &z : cand) {
                z /= nm;
            }
            basis.push_back(std::move(cand));
        }
    }
}

SchmidtDecomposition schmidt_wide(const ComplexMatrix &m) {
    // Requires rows <= cols.
    size_t dl = m.rows();
    size_t dr = m.cols();
    ComplexMatrix gram = m * m.adjoint();
    auto eig = eig_hermitian(gram);

    struct Term {
        double coef;
        std::vector<cplx> left;
        std::vector<cplx> right;
    };
    std::vector<Term> terms;
    for (size_t i = 0; i < dl; i++) {
        Term t;
        t.left = eig.vectors.column(i);
        t.right.assign(dr, 0);
        for (size_t b = 0; b < dr; b++) {
            cplx s = 0;
            for (size_t a = 0; a < dl; a++) {
                s += std::conj(t.left[a]) * m(a, b);
            }
            t.right[b] = s;
        }
        t.coef = norm(t.right);
        terms.push_back(std::move(t));
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term &x, const Term &y) {
        return x.coef > y.coef;
    });

    SchmidtDecomposition out;
    for (size_t i = 0; i < terms.size(); i++) {
        auto &t = terms[i];
        out.coefficients.push_back(t.coef);
        out.left.push_back(std::move(t.left));
        if (t.coef > 1e-12) {
            for (auto &z : t.right) {
                z /= t.coef;
            }
            out.right.push_back(std::move(t.right));
        }
    }
    // Right vectors of negligible coefficients carry no reconstruction weight; replace them by an exact
    // orthonormal completion.
    complete_orthonormal(out.right, dr, dl);
    return out;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const ComplexMatrix &amplitudes) {
    if (amplitudes.rows() == 0 || amplitudes.cols() == 0) {
        throw std::invalid_argument("schmidt_decompose: empty amplitude matrix");
    }
    if (amplitudes.rows() <= amplitudes.cols()) {
        return schmidt_wide(amplitudes);
    }
    auto t = schmidt_wide(amplitudes.transpose());
    std::swap(t.left, t.right);
    return t;
}

double trace_norm(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("trace_norm: matrix is not square");
    }
    double scale = std::max(1.0, m.max_abs());
    if (m.hermiticity_residual() <= 1e-14 * scale) {
        auto eig = eig_hermitian(m);
        double s = 0;
        for (double l : eig.values) {
            s += std::abs(l);
        }
        return s;
    }
    auto eig = eig_hermitian(m.adjoint() * m);
    double s = 0;
    for (double l : eig.values) {
        s += std::sqrt(std::max(0.0, l));
    }
    return s;
}

namespace {

struct LU {
    ComplexMatrix lu;
    std::vector<size_t> perm;
    int sign = 1;
    bool singular = false;
};

LU lu_decompose(const ComplexMatrix &m) {
    LU out{m, {}, 1, false};
    size_t n = m.rows();
    out.perm.resize(n);
    std::iota(out.perm.begin(), out.perm.end(), 0);
    auto &a = out.lu;
    for (size_t k = 0; k < n; k++) {
        size_t piv = k;
        double best = std::abs(a(k, k));
        for (size_t r = k + 1; r < n; r++) {
            if (std::abs(a(r, k)) > best) {
                best = std::abs(a(r, k));
                piv = r;
            }
        }
        if (best == 0) {
            out.singular = true;
            continue;
        }
        if (piv != k) {
            for (size_t c = 0; c < n; c++) {
                std::swap(a(k, c), a(piv, c));
            }
            std::swap(out.perm[k], out.perm[piv]);
            out.sign = -out.sign;
        }
        for (size_t r = k + 1; r < n; r++) {
            cplx f = a(r, k) / a(k, k);
            a(r, k) = f;
            for (size_t c = k + 1; c < n; c++) {
                a(r, c) -= f * a(k, c);
            }
        }
    }
    return out;
}

}  // namespace

cplx determinant(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("determinant: matrix is not square");
    }
    auto lu = lu_decompose(m);
    if (lu.singular) {
        return 0;
    }
    cplx d = static_cast<double>(lu.sign);
    for (size_t i = 0; i < m.rows(); i++) {
        d *= lu.lu(i, i);
    }
    return d;
}

ComplexMatrix solve(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (!a.is_square() || a.rows() != b.rows()) {
        throw std::invalid_argument("solve: shape mismatch");
    }
    auto lu = lu_decompose(a);
    if (lu.singular) {
        throw std::domain_error("solve: singular matrix");
    }
    size_t n = a.rows();
    ComplexMatrix x(n, b.cols());
    for (size_t c = 0; c < b.cols(); c++) {
        std::vector<cplx> y(n);
        for (size_t i = 0; i < n; i++) {
            cplx s = b(lu.perm[i], c);
            for (size_t k = 0; k < i; k++) {
                s -= lu.lu(i, k) * y[k];
            }
            y[i] = s;
        }
        for (size_t i = n; i-- > 0;) {
            cplx s = y[i];
            for (size_t k = i + 1; k < n; k++) {
                s -= lu.lu(i, k) * x(k, c);
            }
            x(i, c) = s / lu.lu(i, i);
        }
    }
    return x;
}

}  // namespace qrobust
