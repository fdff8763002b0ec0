#include "qrobust/qstate.h"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qrobust {

NormalizationError::NormalizationError(double n)
    : std::invalid_argument("state is not normalized (norm " + std::to_string(n) + ")"), norm(n) {
}

SymmetryError::SymmetryError(double residual, size_t position)
    : std::invalid_argument(
          "state is not permutation symmetric (worst transposition (" + std::to_string(position) + "," +
          std::to_string(position + 1) + ") residual " + std::to_string(residual) + ")"),
      worst_residual(residual),
      worst_position(position) {
}

double binomial(size_t n, size_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    double r = 1;
    for (size_t i = 1; i <= k; i++) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(r);
}

namespace {

size_t checked_dim(size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > 30) {
        throw std::invalid_argument("number of qubits must be in [1, 30], got " + std::to_string(num_qubits));
    }
    return size_t{1} << num_qubits;
}

size_t bit_mask(size_t num_qubits, size_t qubit) {
    return size_t{1} << (num_qubits - 1 - qubit);
}

// Global index patterns for every value of a register made of `qubits` (first qubit most significant).
std::vector<size_t> scatter_patterns(size_t num_qubits, std::span<const size_t> qubits) {
    size_t n = size_t{1} << qubits.size();
    std::vector<size_t> out(n, 0);
    for (size_t v = 0; v < n; v++) {
        size_t g = 0;
        for (size_t j = 0; j < qubits.size(); j++) {
            if ((v >> (qubits.size() - 1 - j)) & 1) {
                g |= bit_mask(num_qubits, qubits[j]);
            }
        }
        out[v] = g;
    }
    return out;
}

// Validates a subset of `universe` and returns the complement (in universe order).
std::vector<size_t> complement_of(std::span<const size_t> universe, std::span<const size_t> subset, const char *what) {
    if (subset.empty() || subset.size() >= universe.size()) {
        throw std::invalid_argument(std::string(what) + ": subset must be nonempty and strict");
    }
    std::vector<bool> hit(universe.size(), false);
    for (size_t s : subset) {
        auto it = std::find(universe.begin(), universe.end(), s);
        if (it == universe.end()) {
            throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(s) + " is not in the system");
        }
        size_t pos = static_cast<size_t>(it - universe.begin());
        if (hit[pos]) {
            throw std::invalid_argument(std::string(what) + ": repeated qubit " + std::to_string(s));
        }
        hit[pos] = true;
    }
    std::vector<size_t> rest;
    for (size_t i = 0; i < universe.size(); i++) {
        if (!hit[i]) {
            rest.push_back(universe[i]);
        }
    }
    return rest;
}

std::vector<size_t> all_qubits(size_t n) {
    std::vector<size_t> q(n);
    for (size_t i = 0; i < n; i++) {
        q[i] = i;
    }
    return q;
}

std::vector<size_t> positions_in(const std::vector<size_t> &labels, std::span<const size_t> subset) {
    std::vector<size_t> pos;
    for (size_t s : subset) {
        pos.push_back(static_cast<size_t>(std::find(labels.begin(), labels.end(), s) - labels.begin()));
    }
    return pos;
}

}  // namespace

PureState::PureState(size_t num_qubits, std::vector<cplx> amplitudes, double tol)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != checked_dim(num_qubits)) {
        throw std::invalid_argument(
            "PureState: expected " + std::to_string(checked_dim(num_qubits)) + " amplitudes, got " +
            std::to_string(amplitudes_.size()));
    }
    for (const auto &z : amplitudes_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("PureState: non-finite amplitude");
        }
    }
    double n = norm(amplitudes_);
    if (std::abs(n * n - 1) > tol) {
        throw NormalizationError(n);
    }
}

PureState PureState::normalized(size_t num_qubits, std::vector<cplx> amplitudes) {
    double n = norm(amplitudes);
    if (!(n > 0) || !std::isfinite(n)) {
        throw std::invalid_argument("PureState::normalized: zero or non-finite vector");
    }
    for (auto &z : amplitudes) {
        z /= n;
    }
    return PureState(num_qubits, std::move(amplitudes));
}

PureState PureState::basis(size_t num_qubits, size_t index) {
    std::vector<cplx> a(checked_dim(num_qubits), 0);
    if (index >= a.size()) {
        throw std::invalid_argument("PureState::basis: index out of range");
    }
    a[index] = 1;
    return PureState(num_qubits, std::move(a));
}

PureState PureState::product(std::span<const QubitState> factors) {
    std::vector<cplx> amps{1.0};
    for (const auto &f : factors) {
        double n = std::sqrt(std::norm(f[0]) + std::norm(f[1]));
        QubitState g{f[0] / n, f[1] / n};
        amps = kron(amps, g);
    }
    return PureState(factors.size(), std::move(amps));
}

cplx PureState::overlap(const PureState &other) const {
    return inner(amplitudes_, other.amplitudes_);
}

double PureState::fidelity(const PureState &other) const {
    return std::norm(overlap(other));
}

DensityOperator::DensityOperator(std::vector<size_t> labels, ComplexMatrix matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
    size_t d = checked_dim(labels_.size());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw std::invalid_argument("DensityOperator: matrix dimension does not match the qubit labels");
    }
    double h = matrix_.hermiticity_residual();
    if (h > 1e-10) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian (residual " + std::to_string(h) + ")");
    }
    double tr = matrix_.trace().real();
    if (std::abs(tr - 1) > 1e-10) {
        throw std::invalid_argument("DensityOperator: trace is " + std::to_string(tr) + ", expected 1");
    }
}

DensityOperator DensityOperator::from_pure(const PureState &psi) {
    auto a = psi.amplitudes();
    return DensityOperator(all_qubits(psi.num_qubits()), ComplexMatrix::outer(a, a));
}

bool DensityOperator::is_physical(double tol) const {
    if (matrix_.hermiticity_residual() > tol || std::abs(matrix_.trace() - 1.0) > tol) {
        return false;
    }
    auto eig = eig_hermitian(matrix_);
    return eig.values.front() >= -tol;
}

SymmetricState::SymmetricState(size_t num_qubits, std::vector<cplx> dicke_coefficients, double tol)
    : num_qubits_(num_qubits), coefficients_(std::move(dicke_coefficients)) {
    if (num_qubits == 0) {
        throw std::invalid_argument("SymmetricState: need at least one qubit");
    }
    if (coefficients_.size() != num_qubits + 1) {
        throw std::invalid_argument(
            "SymmetricState: expected " + std::to_string(num_qubits + 1) + " Dicke coefficients, got " +
            std::to_string(coefficients_.size()));
    }
    double n = norm(coefficients_);
    if (std::abs(n * n - 1) > tol) {
        throw NormalizationError(n);
    }
}

SymmetricState SymmetricState::normalized(size_t num_qubits, std::vector<cplx> dicke_coefficients) {
    double n = norm(dicke_coefficients);
    if (!(n > 0) || !std::isfinite(n)) {
        throw std::invalid_argument("SymmetricState::normalized: zero or non-finite vector");
    }
    for (auto &z : dicke_coefficients) {
        z /= n;
    }
    return SymmetricState(num_qubits, std::move(dicke_coefficients));
}

MajoranaPoints::MajoranaPoints(std::vector<BlochVector> pts, std::vector<size_t> mult)
    : points(std::move(pts)), multiplicities(std::move(mult)) {
    if (points.size() != multiplicities.size()) {
        throw std::invalid_argument("MajoranaPoints: points and multiplicities differ in length");
    }
    for (size_t i = 0; i < points.size(); i++) {
        const auto &p = points[i];
        double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        if (std::abs(n - 1) > 1e-9) {
            throw std::invalid_argument("MajoranaPoints: point is not on the unit sphere");
        }
        if (multiplicities[i] == 0) {
            throw std::invalid_argument("MajoranaPoints: zero multiplicity");
        }
    }
}

size_t MajoranaPoints::total() const {
    size_t t = 0;
    for (size_t m : multiplicities) {
        t += m;
    }
    return t;
}

std::vector<BlochVector> MajoranaPoints::expanded() const {
    std::vector<BlochVector> out;
    for (size_t i = 0; i < points.size(); i++) {
        out.insert(out.end(), multiplicities[i], points[i]);
    }
    return out;
}

ComplexMatrix bipartite_matrix(const PureState &psi, std::span<const size_t> row_qubits) {
    size_t n = psi.num_qubits();
    auto universe = all_qubits(n);
    std::vector<bool> used(n, false);
    for (size_t q : row_qubits) {
        if (q >= n || used[q]) {
            throw std::invalid_argument("bipartite_matrix: invalid or repeated qubit " + std::to_string(q));
        }
        used[q] = true;
    }
    std::vector<size_t> cols;
    for (size_t q = 0; q < n; q++) {
        if (!used[q]) {
            cols.push_back(q);
        }
    }
    auto rp = scatter_patterns(n, row_qubits);
    auto cp = scatter_patterns(n, cols);
    ComplexMatrix m(rp.size(), cp.size());
    for (size_t r = 0; r < rp.size(); r++) {
        for (size_t c = 0; c < cp.size(); c++) {
            m(r, c) = psi[rp[r] | cp[c]];
        }
    }
    return m;
}

DensityOperator partial_trace(const PureState &psi, std::span<const size_t> traced) {
    auto universe = all_qubits(psi.num_qubits());
    auto kept = complement_of(universe, traced, "partial_trace");
    auto m = bipartite_matrix(psi, kept);
    return DensityOperator(std::move(kept), m * m.adjoint());
}

DensityOperator partial_trace(const DensityOperator &rho, std::span<const size_t> traced) {
    const auto &labels = rho.labels();
    auto kept = complement_of(labels, traced, "partial_trace");
    size_t m = labels.size();
    auto kp = scatter_patterns(m, positions_in(labels, kept));
    auto tp = scatter_patterns(m, positions_in(labels, traced));
    ComplexMatrix out(kp.size(), kp.size());
    const auto &r = rho.matrix();
    for (size_t a = 0; a < kp.size(); a++) {
        for (size_t b = 0; b < kp.size(); b++) {
            cplx s = 0;
            for (size_t t : tp) {
                s += r(kp[a] | t, kp[b] | t);
            }
            out(a, b) = s;
        }
    }
    return DensityOperator(std::move(kept), std::move(out));
}

ComplexMatrix partial_transpose(const DensityOperator &rho, std::span<const size_t> subset) {
    const auto &labels = rho.labels();
    complement_of(labels, subset, "partial_transpose");
    size_t m = labels.size();
    size_t mask = 0;
    for (size_t p : positions_in(labels, subset)) {
        mask |= bit_mask(m, p);
    }
    const auto &r = rho.matrix();
    size_t d = r.rows();
    ComplexMatrix out(d, d);
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            size_t i2 = (i & ~mask) | (j & mask);
            size_t j2 = (j & ~mask) | (i & mask);
            out(i2, j2) = r(i, j);
        }
    }
    return out;
}

SchmidtDecomposition schmidt_decompose(const PureState &psi, std::span<const size_t> cut) {
    auto universe = all_qubits(psi.num_qubits());
    complement_of(universe, cut, "schmidt_decompose");
    std::vector<size_t> sorted(cut.begin(), cut.end());
    std::sort(sorted.begin(), sorted.end());
    return schmidt_decompose(bipartite_matrix(psi, sorted));
}

PureState dicke_state(size_t num_qubits, size_t excitations) {
    if (excitations > num_qubits) {
        throw std::invalid_argument(
            "dicke_state: excitation count " + std::to_string(excitations) + " exceeds " + std::to_string(num_qubits));
    }
    size_t d = checked_dim(num_qubits);
    double amp = 1 / std::sqrt(binomial(num_qubits, excitations));
    std::vector<cplx> a(d, 0);
    for (size_t x = 0; x < d; x++) {
        if (static_cast<size_t>(std::popcount(x)) == excitations) {
            a[x] = amp;
        }
    }
    return PureState(num_qubits, std::move(a));
}

PureState ghz_state(size_t num_qubits) {
    size_t d = checked_dim(num_qubits);
    std::vector<cplx> a(d, 0);
    a[0] = a[d - 1] = 1 / std::sqrt(2.0);
    return PureState(num_qubits, std::move(a));
}

PureState symmetric_to_pure(const SymmetricState &s) {
    size_t n = s.num_qubits();
    size_t d = checked_dim(n);
    std::vector<double> scale(n + 1);
    for (size_t k = 0; k <= n; k++) {
        scale[k] = 1 / std::sqrt(binomial(n, k));
    }
    std::vector<cplx> a(d);
    for (size_t x = 0; x < d; x++) {
        size_t k = static_cast<size_t>(std::popcount(x));
        a[x] = s[k] * scale[k];
    }
    return PureState(n, std::move(a), 1e-9);
}

double symmetry_residual(const PureState &psi, size_t *worst) {
    size_t n = psi.num_qubits();
    double best = 0;
    size_t where = 0;
    for (size_t i = 0; i + 1 < n; i++) {
        size_t mi = bit_mask(n, i);
        size_t mj = bit_mask(n, i + 1);
        double s = 0;
        for (size_t x = 0; x < psi.dim(); x++) {
            bool bi = x & mi;
            bool bj = x & mj;
            size_t y = x;
            if (bi != bj) {
                y ^= mi | mj;
            }
            s += std::norm(psi[y] - psi[x]);
        }
        s = std::sqrt(s);
        if (s > best) {
            best = s;
            where = i;
        }
    }
    if (worst != nullptr) {
        *worst = where;
    }
    return best;
}

SymmetricState pure_to_symmetric(const PureState &psi, double tol) {
    size_t worst = 0;
    double res = symmetry_residual(psi, &worst);
    if (res > tol) {
        throw SymmetryError(res, worst);
    }
    size_t n = psi.num_qubits();
    std::vector<cplx> d(n + 1, 0);
    for (size_t x = 0; x < psi.dim(); x++) {
        d[static_cast<size_t>(std::popcount(x))] += psi[x];
    }
    for (size_t k = 0; k <= n; k++) {
        d[k] /= std::sqrt(binomial(n, k));
    }
    return SymmetricState::normalized(n, std::move(d));
}

std::vector<cplx> apply_local(std::span<const ComplexMatrix> ops, std::span<const cplx> amplitudes) {
    size_t n = ops.size();
    if (amplitudes.size() != checked_dim(n)) {
        throw std::invalid_argument("apply_local: need one operator per qubit");
    }
    std::vector<cplx> out(amplitudes.begin(), amplitudes.end());
    for (size_t q = 0; q < n; q++) {
        const auto &u = ops[q];
        if (u.rows() != 2 || u.cols() != 2) {
            throw std::invalid_argument("apply_local: operators must be 2x2");
        }
        size_t mask = bit_mask(n, q);
        for (size_t x = 0; x < out.size(); x++) {
            if (x & mask) {
                continue;
            }
            cplx a0 = out[x];
            cplx a1 = out[x | mask];
            out[x] = u(0, 0) * a0 + u(0, 1) * a1;
            out[x | mask] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    return out;
}

PureState apply_local_unitaries(std::span<const ComplexMatrix> unitaries, const PureState &psi) {
    return PureState(psi.num_qubits(), apply_local(unitaries, psi.amplitudes()), 1e-9);
}

BlochVector bloch_vector(const QubitState &q) {
    double n2 = std::norm(q[0]) + std::norm(q[1]);
    cplx c = std::conj(q[0]) * q[1] / n2;
    return {2 * c.real(), 2 * c.imag(), (std::norm(q[0]) - std::norm(q[1])) / n2};
}

QubitState qubit_from_bloch(const BlochVector &b) {
    double z = std::clamp(b[2], -1.0, 1.0);
    double theta = std::acos(z);
    double phi = std::atan2(b[1], b[0]);
    return {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
}

double qubit_overlap(const QubitState &a, const QubitState &b) {
    return std::abs(std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]);
}

namespace {

cplx complex_normal(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double re = g(rng);
    double im = g(rng);
    return {re, im};
}

}  // namespace

PureState haar_random_state(size_t num_qubits, std::mt19937_64 &rng) {
    std::vector<cplx> a(checked_dim(num_qubits));
    for (auto &z : a) {
        z = complex_normal(rng);
    }
    return PureState::normalized(num_qubits, std::move(a));
}

QubitState random_qubit(std::mt19937_64 &rng) {
    cplx a = complex_normal(rng);
    cplx b = complex_normal(rng);
    double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

ComplexMatrix random_unitary2(std::mt19937_64 &rng) {
    auto q = random_qubit(rng);
    std::uniform_real_distribution<double> u(0, 2 * 3.141592653589793);
    cplx ph = std::polar(1.0, u(rng));
    return ComplexMatrix(2, 2, {ph * q[0], -ph * std::conj(q[1]), ph * q[1], ph * std::conj(q[0])});
}

SymmetricState random_symmetric_state(size_t num_qubits, std::mt19937_64 &rng) {
    std::vector<cplx> d(num_qubits + 1);
    for (auto &z : d) {
        z = complex_normal(rng);
    }
    return SymmetricState::normalized(num_qubits, std::move(d));
}

}  // namespace qrobust
