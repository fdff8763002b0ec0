#include "qrobust/robustness.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qrobust {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kOrthogonalTol = 1e-9;
constexpr double kSamePairTol = 1e-8;
constexpr double kPlaneTol = 1e-7;
constexpr double kRadiusTol = 1e-7;
constexpr double kGapTol = 1e-6;

struct QubitCut {
    SchmidtDecomposition schmidt;
    Rank2Result residual;  // kind none when the Schmidt rank is 1
};

void require_entangled(const PureState &psi) {
    if (is_pure_product(psi).is_product) {
        throw std::invalid_argument("fragility undefined for separable states");
    }
}

QubitCut cut_at(const PureState &psi, size_t k) {
    if (k >= psi.num_qubits()) {
        throw std::invalid_argument("qubit index " + std::to_string(k) + " out of range");
    }
    size_t one[1] = {k};
    QubitCut c{schmidt_decompose(psi, one), {}};
    if (c.schmidt.rank(kRankTol) == 2) {
        const auto &s = c.schmidt.coefficients;
        c.residual = rank2_product_decomposition(
            psi.num_qubits() - 1, c.schmidt.right[0], c.schmidt.right[1], s[0] * s[0], s[1] * s[1]);
    }
    return c;
}

bool is_fragile(const QubitCut &c) {
    return c.residual.kind != Rank2Result::Kind::none;
}

cplx qubit_inner(const QubitState &a, const QubitState &b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

QubitState unit(QubitState q) {
    double n = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
    return {q[0] / n, q[1] / n};
}

QubitState orthogonalized(const QubitState &e, const QubitState &f) {
    cplx c = qubit_inner(e, f);
    return unit({f[0] - c * e[0], f[1] - c * e[1]});
}

CanonicalForm canonical_from_cut(const QubitCut &c, size_t k, size_t n) {
    const auto &dec = *c.residual.decomposition;
    const auto &sd = c.schmidt;
    double p = dec.p;
    double q = 1 - p;
    auto wa = dec.vector_a();
    auto wb = dec.vector_b();
    for (auto &z : wa) {
        z *= std::sqrt(p);
    }
    for (auto &z : wb) {
        z *= std::sqrt(q);
    }
    const std::vector<cplx> *w[2] = {&wa, &wb};
    ComplexMatrix b(2, 2);
    ComplexMatrix g(2, 2);
    for (size_t i = 0; i < 2; i++) {
        for (size_t l = 0; l < 2; l++) {
            b(i, l) = sd.coefficients[i] * inner(*w[l], sd.right[i]);
            g(i, l) = inner(*w[i], *w[l]);
        }
    }
    // sqrt(lambda_i) v_i = sum_l U_il w_l  =>  B = U G^T.
    auto u = solve(g, b.transpose()).transpose();

    QubitState ek{}, epk{};
    for (size_t i = 0; i < 2; i++) {
        for (size_t a = 0; a < 2; a++) {
            ek[a] += u(i, 0) * sd.left[i][a];
            epk[a] += u(i, 1) * sd.left[i][a];
        }
    }

    CanonicalForm cf;
    cf.p = p;
    for (size_t i = 0, r = 0; i < n; i++) {
        if (i == k) {
            cf.e_states.push_back(ek);
            cf.e_prime_states.push_back(epk);
        } else {
            cf.e_states.push_back(dec.product_a[r]);
            cf.e_prime_states.push_back(dec.product_b[r]);
            r++;
        }
    }
    for (size_t i = 0; i < n; i++) {
        double ov = std::abs(qubit_inner(cf.e_prime_states[i], cf.e_states[i]));
        cf.overlaps.push_back(ov);
        if (ov <= kOrthogonalTol) {
            cf.orthogonal_set.push_back(i);
        }
    }
    if (cf.orthogonal_set.size() == 1) {
        for (size_t i = 0; i < n; i++) {
            if (i != cf.orthogonal_set[0] && cf.overlaps[i] < 1 - kOrthogonalTol) {
                cf.distinct_qubit = i;
                break;
            }
        }
    }
    return cf;
}

}  // namespace

std::vector<cplx> CanonicalForm::reconstruct() const {
    std::vector<cplx> a{std::sqrt(p)};
    std::vector<cplx> b{std::sqrt(1 - p)};
    for (size_t i = 0; i < e_states.size(); i++) {
        a = kron(a, e_states[i]);
        b = kron(b, e_prime_states[i]);
    }
    for (size_t x = 0; x < a.size(); x++) {
        a[x] += b[x];
    }
    return a;
}

LocalOperation::LocalOperation(std::vector<ComplexMatrix> f) : factors(std::move(f)) {
    for (const auto &m : factors) {
        if (m.rows() != 2 || m.cols() != 2) {
            throw std::invalid_argument("LocalOperation: factors must be 2x2");
        }
        if (std::abs(determinant(m)) <= 1e-12) {
            throw std::invalid_argument("LocalOperation: factor is not invertible");
        }
    }
}

std::vector<cplx> LocalOperation::apply(const PureState &psi) const {
    return apply_local(factors, psi.amplitudes());
}

bool fragile_wrt_qubit(const PureState &psi, size_t k) {
    if (k >= psi.num_qubits()) {
        throw std::invalid_argument("qubit index " + std::to_string(k) + " out of range");
    }
    require_entangled(psi);
    return is_fragile(cut_at(psi, k));
}

FragilityReport analyze_fragility(const PureState &psi) {
    require_entangled(psi);
    size_t n = psi.num_qubits();
    FragilityReport rep;
    std::optional<QubitCut> first;
    for (size_t k = 0; k < n; k++) {
        auto c = cut_at(psi, k);
        bool f = is_fragile(c);
        rep.fragile.push_back(f);
        if (f) {
            rep.fragile_set.push_back(k);
            if (!first) {
                first = std::move(c);
            }
        }
    }
    if (first) {
        rep.canonical = canonical_from_cut(*first, rep.fragile_set.front(), n);
    }
    rep.ghz_class = rep.fragile_set.size() == n;
    return rep;
}

std::optional<LocalOperation> ghz_class_ilo(const PureState &psi) {
    auto rep = analyze_fragility(psi);
    if (!rep.ghz_class) {
        return std::nullopt;
    }
    const auto &cf = *rep.canonical;
    size_t n = psi.num_qubits();
    double a = std::sqrt(cf.p);
    double b = std::sqrt(1 - cf.p);
    double inv_n = 1.0 / static_cast<double>(n);
    double d0 = std::pow(std::sqrt(2.0) * a, -inv_n);
    double d1 = std::pow(std::sqrt(2.0) * b, -inv_n);
    std::vector<ComplexMatrix> factors;
    for (size_t i = 0; i < n; i++) {
        const auto &e = cf.e_states[i];
        auto f = orthogonalized(e, cf.e_prime_states[i]);
        factors.emplace_back(
            2, 2,
            std::vector<cplx>{
                d0 * std::conj(e[0]), d0 * std::conj(e[1]), d1 * std::conj(f[0]), d1 * std::conj(f[1])});
    }
    return LocalOperation(std::move(factors));
}

std::optional<SymmetricFragileForm> symmetric_fragile_form(const SymmetricState &s) {
    size_t n = s.num_qubits();
    if (n < 3) {
        throw std::invalid_argument("symmetric_fragile_form: needs at least three qubits");
    }
    auto rep = analyze_fragility(symmetric_to_pure(s));
    if (!rep.ghz_class) {
        return std::nullopt;
    }
    const auto &cf = *rep.canonical;
    const auto &e0 = cf.e_states[0];
    const auto &f0 = cf.e_prime_states[0];
    double phase_e = 0;
    double phase_f = 0;
    for (size_t i = 0; i < n; i++) {
        cplx oe = qubit_inner(e0, cf.e_states[i]);
        cplx of = qubit_inner(f0, cf.e_prime_states[i]);
        if (std::abs(oe) < 1 - kSamePairTol || std::abs(of) < 1 - kSamePairTol) {
            return std::nullopt;
        }
        phase_e += std::arg(oe);
        phase_f += std::arg(of);
    }
    cplx ue = std::polar(1.0, phase_e / static_cast<double>(n));
    cplx uf = std::polar(1.0, phase_f / static_cast<double>(n));
    SymmetricFragileForm out;
    out.a = std::sqrt(cf.p);
    out.b = std::sqrt(1 - cf.p);
    out.e = unit({e0[0] * ue, e0[1] * ue});
    QubitState f{f0[0] * uf, f0[1] * uf};
    out.e_perp = orthogonalized(out.e, f);
    return out;
}

PolygonFit polygon_fit(const MajoranaPoints &points) {
    PolygonFit fit;
    size_t n = points.total();
    if (n < 3 || points.points.size() != n) {
        return fit;
    }
    const auto &pts = points.points;
    BlochVector c{0, 0, 0};
    for (const auto &p : pts) {
        for (int i = 0; i < 3; i++) {
            c[i] += p[i] / static_cast<double>(n);
        }
    }
    ComplexMatrix cov(3, 3);
    for (const auto &p : pts) {
        for (int i = 0; i < 3; i++) {
            for (int j = 0; j < 3; j++) {
                cov(i, j) += (p[i] - c[i]) * (p[j] - c[j]);
            }
        }
    }
    auto eig = eig_hermitian(cov);
    auto v = eig.vectors.column(0);
    size_t big = 0;
    for (size_t i = 1; i < 3; i++) {
        if (std::abs(v[i]) > std::abs(v[big])) {
            big = i;
        }
    }
    cplx ph = std::conj(v[big]) / std::abs(v[big]);
    BlochVector nrm{};
    double len = 0;
    for (int i = 0; i < 3; i++) {
        nrm[i] = (v[i] * ph).real();
        len += nrm[i] * nrm[i];
    }
    len = std::sqrt(len);
    for (auto &x : nrm) {
        x /= len;
    }
    fit.normal = nrm;
    fit.offset = nrm[0] * c[0] + nrm[1] * c[1] + nrm[2] * c[2];

    std::vector<BlochVector> rel;
    for (const auto &p : pts) {
        double h = nrm[0] * (p[0] - c[0]) + nrm[1] * (p[1] - c[1]) + nrm[2] * (p[2] - c[2]);
        fit.plane_residual = std::max(fit.plane_residual, std::abs(h));
        rel.push_back({p[0] - c[0] - h * nrm[0], p[1] - c[1] - h * nrm[1], p[2] - c[2] - h * nrm[2]});
    }
    double rmin = INFINITY, rmax = 0;
    for (const auto &r : rel) {
        double len_r = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
        rmin = std::min(rmin, len_r);
        rmax = std::max(rmax, len_r);
    }
    fit.radius_spread = rmax - rmin;
    if (rmin <= kRadiusTol) {
        fit.gap_error = INFINITY;
        return fit;
    }
    BlochVector e1 = rel[0];
    double l1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
    for (auto &x : e1) {
        x /= l1;
    }
    BlochVector e2{
        nrm[1] * e1[2] - nrm[2] * e1[1], nrm[2] * e1[0] - nrm[0] * e1[2], nrm[0] * e1[1] - nrm[1] * e1[0]};
    std::vector<double> ang;
    for (const auto &r : rel) {
        double x = r[0] * e1[0] + r[1] * e1[1] + r[2] * e1[2];
        double y = r[0] * e2[0] + r[1] * e2[1] + r[2] * e2[2];
        ang.push_back(std::atan2(y, x));
    }
    std::sort(ang.begin(), ang.end());
    double ideal = 2 * std::numbers::pi / static_cast<double>(n);
    for (size_t i = 0; i < n; i++) {
        double gap = (i + 1 < n) ? ang[i + 1] - ang[i] : ang[0] + 2 * std::numbers::pi - ang[n - 1];
        fit.gap_error = std::max(fit.gap_error, std::abs(gap - ideal));
    }
    fit.regular = fit.plane_residual <= kPlaneTol && fit.radius_spread <= kRadiusTol && fit.gap_error <= kGapTol;
    return fit;
}

bool regular_polygon_test(const MajoranaPoints &points) {
    return polygon_fit(points).regular;
}

}  // namespace qrobust
