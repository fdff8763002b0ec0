#include "qrobust/separability.h"

#include <algorithm>
#include <cmath>

namespace qrobust {

namespace {

constexpr double kNegativityClamp = 1e-12;
constexpr double kRankTol = 1e-10;
constexpr double kProductTol = 1e-10;
constexpr double kReconstructTol = 1e-8;
constexpr double kNegativityZero = 1e-10;

// 2x2 reduced state of qubit q (unnormalized input allowed).
ComplexMatrix reduced_qubit(size_t num_qubits, std::span<const cplx> a, size_t q) {
    size_t mask = size_t{1} << (num_qubits - 1 - q);
    ComplexMatrix r(2, 2);
    for (size_t x = 0; x < a.size(); x++) {
        if (x & mask) {
            continue;
        }
        cplx a0 = a[x];
        cplx a1 = a[x | mask];
        r(0, 0) += a0 * std::conj(a0);
        r(0, 1) += a0 * std::conj(a1);
        r(1, 0) += a1 * std::conj(a0);
        r(1, 1) += a1 * std::conj(a1);
    }
    return r;
}

std::vector<cplx> tensor(std::span<const QubitState> factors) {
    std::vector<cplx> v{1.0};
    for (const auto &f : factors) {
        v = kron(v, f);
    }
    return v;
}

std::vector<cplx> unit(std::vector<cplx> v) {
    double n = norm(v);
    for (auto &z : v) {
        z /= n;
    }
    return v;
}

// Roots of c2 t^2 + c1 t + c0; nullopt stands for t = infinity.
std::vector<std::optional<cplx>> quadratic_roots(cplx c2, cplx c1, cplx c0) {
    double scale = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
    double tiny = 1e-12 * scale;
    if (std::abs(c2) <= tiny) {
        if (std::abs(c1) <= tiny) {
            return {std::nullopt, std::nullopt};
        }
        return {std::nullopt, -c0 / c1};
    }
    cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    cplx s1 = c1 + disc;
    cplx s2 = c1 - disc;
    cplx q = -0.5 * (std::abs(s1) >= std::abs(s2) ? s1 : s2);
    if (q == cplx{0}) {
        return {cplx{0}, cplx{0}};
    }
    return {q / c2, c0 / q};
}

std::optional<ProductDecomposition> weights_for(
    std::span<const cplx> v1,
    std::span<const cplx> v2,
    double w1,
    double w2,
    const std::vector<QubitState> &fa,
    const std::vector<QubitState> &fb) {
    auto a = tensor(fa);
    auto b = tensor(fb);
    ComplexMatrix coords(2, 2, {inner(v1, a), inner(v1, b), inner(v2, a), inner(v2, b)});
    ComplexMatrix lambda(2, 2, {w1, 0, 0, w2});
    ComplexMatrix pq;
    try {
        auto left = solve(coords, lambda);
        pq = solve(coords, left.adjoint()).adjoint();
    } catch (const std::domain_error &) {
        return std::nullopt;
    }
    if (std::abs(pq(0, 1)) > kReconstructTol || std::abs(pq(1, 0)) > kReconstructTol) {
        return std::nullopt;
    }
    double p = pq(0, 0).real();
    double q = pq(1, 1).real();
    if (!(p > 0) || !(q > 0) || std::abs(p + q - 1) > kReconstructTol) {
        return std::nullopt;
    }
    ProductDecomposition d{p / (p + q), fa, fb};
    auto rec = d.reconstruct();
    auto target = w1 * ComplexMatrix::outer(v1, v1) + w2 * ComplexMatrix::outer(v2, v2);
    if (max_abs_diff(rec, target) > kReconstructTol) {
        return std::nullopt;
    }
    return d;
}

}  // namespace

double negativity(const DensityOperator &rho, std::span<const size_t> subset) {
    double n = (trace_norm(partial_transpose(rho, subset)) - 1) / 2;
    return n < kNegativityClamp ? 0.0 : n;
}

double max_bipartite_negativity(const DensityOperator &rho) {
    const auto &labels = rho.labels();
    size_t m = labels.size();
    if (m < 2) {
        return 0;
    }
    double best = 0;
    // Subsets containing the first label cover every bipartition once.
    for (size_t mask = 0; mask < (size_t{1} << (m - 1)); mask++) {
        std::vector<size_t> subset{labels[0]};
        for (size_t j = 1; j < m; j++) {
            if (mask & (size_t{1} << (j - 1))) {
                subset.push_back(labels[j]);
            }
        }
        if (subset.size() == m) {
            continue;
        }
        best = std::max(best, negativity(rho, subset));
    }
    return best;
}

double max_single_cut_negativity(const DensityOperator &rho) {
    const auto &labels = rho.labels();
    if (labels.size() < 2) {
        return 0;
    }
    double best = 0;
    for (size_t l : labels) {
        size_t one[1] = {l};
        best = std::max(best, negativity(rho, one));
        if (labels.size() == 2) {
            break;
        }
    }
    return best;
}

std::optional<std::vector<QubitState>> product_factors(size_t num_qubits, std::span<const cplx> amplitudes) {
    double n2 = std::pow(norm(amplitudes), 2);
    if (!(n2 > 0)) {
        return std::nullopt;
    }
    std::vector<QubitState> factors;
    for (size_t q = 0; q < num_qubits; q++) {
        auto eig = eig_hermitian(reduced_qubit(num_qubits, amplitudes, q));
        if (eig.values[1] / n2 < 1 - kProductTol) {
            return std::nullopt;
        }
        factors.push_back({eig.vectors(0, 1), eig.vectors(1, 1)});
    }
    cplx ov = inner(tensor(factors), amplitudes);
    if (std::abs(ov) == 0) {
        return std::nullopt;
    }
    cplx ph = ov / std::abs(ov);
    factors[0][0] *= ph;
    factors[0][1] *= ph;
    return factors;
}

ProductTest is_pure_product(const PureState &psi) {
    auto f = product_factors(psi.num_qubits(), psi.amplitudes());
    if (!f) {
        return {};
    }
    return {true, std::move(*f)};
}

std::vector<cplx> ProductDecomposition::vector_a() const {
    return tensor(product_a);
}

std::vector<cplx> ProductDecomposition::vector_b() const {
    return tensor(product_b);
}

ComplexMatrix ProductDecomposition::reconstruct() const {
    auto a = vector_a();
    auto b = vector_b();
    return p * ComplexMatrix::outer(a, a) + (1 - p) * ComplexMatrix::outer(b, b);
}

Rank2Result rank2_product_decomposition(
    size_t m, std::span<const cplx> v1, std::span<const cplx> v2, double w1, double w2) {
    size_t dim = size_t{1} << m;
    if (v1.size() != dim || v2.size() != dim) {
        throw std::invalid_argument("rank2_product_decomposition: range vectors have the wrong dimension");
    }
    // Each 2x2 minor of a single-qubit reshaping of v1 + t v2 is a quadratic in t.
    cplx best2 = 0, best1 = 0, best0 = 0;
    double best_norm = 0;
    for (size_t q = 0; q < m; q++) {
        size_t mask = size_t{1} << (m - 1 - q);
        std::vector<size_t> zeros;
        for (size_t x = 0; x < dim; x++) {
            if (!(x & mask)) {
                zeros.push_back(x);
            }
        }
        for (size_t i = 0; i < zeros.size(); i++) {
            for (size_t j = i + 1; j < zeros.size(); j++) {
                size_t i0 = zeros[i], i1 = zeros[i] | mask;
                size_t j0 = zeros[j], j1 = zeros[j] | mask;
                cplx c2 = v2[i0] * v2[j1] - v2[j0] * v2[i1];
                cplx c0 = v1[i0] * v1[j1] - v1[j0] * v1[i1];
                cplx c1 = v1[i0] * v2[j1] + v2[i0] * v1[j1] - v1[j0] * v2[i1] - v2[j0] * v1[i1];
                double nrm = std::sqrt(std::norm(c2) + std::norm(c1) + std::norm(c0));
                if (nrm > best_norm) {
                    best_norm = nrm;
                    best2 = c2;
                    best1 = c1;
                    best0 = c0;
                }
            }
        }
    }

    auto as_pair = [&](const std::vector<cplx> &a, const std::vector<cplx> &b) -> std::optional<ProductDecomposition> {
        auto fa = product_factors(m, a);
        auto fb = product_factors(m, b);
        if (!fa || !fb) {
            return std::nullopt;
        }
        return weights_for(v1, v2, w1, w2, *fa, *fb);
    };

    if (best_norm <= 1e-10) {
        // Every vector of the range is a product.
        std::vector<cplx> a(v1.begin(), v1.end());
        std::vector<cplx> b(v2.begin(), v2.end());
        Rank2Result r;
        r.decomposition = as_pair(a, b);
        r.kind = r.decomposition ? Rank2Result::Kind::infinite_family : Rank2Result::Kind::none;
        return r;
    }

    std::vector<std::vector<cplx>> candidates;
    for (const auto &t : quadratic_roots(best2, best1, best0)) {
        std::vector<cplx> w(dim);
        for (size_t x = 0; x < dim; x++) {
            w[x] = t ? v1[x] + *t * v2[x] : v2[x];
        }
        w = unit(std::move(w));
        auto f = product_factors(m, w);
        if (!f) {
            continue;
        }
        auto clean = tensor(*f);
        bool dup = false;
        for (const auto &c : candidates) {
            if (std::abs(inner(c, clean)) > 1 - 1e-8) {
                dup = true;
            }
        }
        if (!dup) {
            candidates.push_back(std::move(clean));
        }
    }
    if (candidates.size() < 2) {
        return {};
    }
    Rank2Result r;
    r.decomposition = as_pair(candidates[0], candidates[1]);
    r.kind = r.decomposition ? Rank2Result::Kind::decomposition : Rank2Result::Kind::none;
    return r;
}

Rank2Result rank2_product_decomposition(const DensityOperator &rho) {
    auto eig = eig_hermitian(rho.matrix());
    size_t d = eig.values.size();
    if (d < 2 || eig.values[d - 2] <= kRankTol || (d >= 3 && eig.values[d - 3] > kRankTol)) {
        throw std::invalid_argument("rank2_product_decomposition: state does not have rank 2");
    }
    auto v1 = eig.vectors.column(d - 1);
    auto v2 = eig.vectors.column(d - 2);
    return rank2_product_decomposition(rho.num_qubits(), v1, v2, eig.values[d - 1], eig.values[d - 2]);
}

const char *to_string(Separability s) {
    switch (s) {
        case Separability::separable:
            return "separable";
        case Separability::entangled:
            return "entangled";
        case Separability::undecided:
            return "undecided";
    }
    return "?";
}

Separability is_separable_residual(const DensityOperator &rho, bool symmetric_hint) {
    size_t m = rho.num_qubits();
    if (m == 1) {
        return Separability::separable;
    }
    auto eig = eig_hermitian(rho.matrix());
    size_t d = eig.values.size();
    size_t rank = 0;
    for (double v : eig.values) {
        if (v > kRankTol) {
            rank++;
        }
    }
    if (rank <= 1) {
        auto v = eig.vectors.column(d - 1);
        return product_factors(m, v) ? Separability::separable : Separability::entangled;
    }
    if (rank == 2) {
        auto r = rank2_product_decomposition(
            m, eig.vectors.column(d - 1), eig.vectors.column(d - 2), eig.values[d - 1], eig.values[d - 2]);
        return r.kind == Rank2Result::Kind::none ? Separability::entangled : Separability::separable;
    }
    double n = max_single_cut_negativity(rho);
    if (m == 2 || (m == 3 && symmetric_hint)) {
        return n > kNegativityZero ? Separability::entangled : Separability::separable;
    }
    return n > kNegativityZero ? Separability::entangled : Separability::undecided;
}

}  // namespace qrobust
