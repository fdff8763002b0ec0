#include "qrobust/dicke_family.h"

#include <bit>
#include <cmath>

#include "qrobust/separability.h"

namespace qrobust {

namespace {

const double kSqrt6 = std::sqrt(6.0);
const double kSqrt23 = std::sqrt(2.0 / 3.0);
const double kSqrt83 = std::sqrt(8.0 / 3.0);
constexpr double kExemptTol = 1e-12;

double binom_ext(long n, long r) {
    if (n < 0 || r < 0 || r > n) {
        return 0;
    }
    return binomial(static_cast<size_t>(n), static_cast<size_t>(r));
}

}  // namespace

SymmetricState psi_mu(cplx mu) {
    double s = 1 / std::sqrt(2 + std::norm(mu));
    return SymmetricState(4, {s, 0.0, mu * s, 0.0, s});
}

bool in_S(cplx mu) {
    if (mu.real() < 0 || mu.imag() < 0) {
        return false;
    }
    if (std::abs(mu.imag()) <= kExemptTol && !(mu.real() < kSqrt23)) {
        return false;
    }
    bool exempt = std::abs(mu - cplx{0, std::sqrt(2.0)}) <= kExemptTol;
    if (!exempt && !(std::abs(mu - kSqrt23) < kSqrt83)) {
        return false;
    }
    return true;
}

bool mu_fragility_region(cplx mu) {
    if (!in_S(mu)) {
        throw std::invalid_argument("mu_fragility_region: mu is outside the representative set");
    }
    double re = mu.real();
    double rad = std::max(0.0, (kSqrt6 - re) * re);
    return mu.imag() >= std::sqrt(rad);
}

double mu_boundary_distance(cplx mu) {
    double r = kSqrt6 / 2;
    return std::abs(std::abs(mu - r) - r);
}

double t_loss_negativity(cplx mu, size_t t) {
    if (t != 1 && t != 2) {
        throw std::invalid_argument("t_loss_negativity: t must be 1 or 2");
    }
    auto psi = symmetric_to_pure(psi_mu(mu));
    std::vector<size_t> traced;
    for (size_t i = 0; i < t; i++) {
        traced.push_back(3 - i);
    }
    return max_bipartite_negativity(partial_trace(psi, traced));
}

void validate(const FamilyPoint &pt) {
    if (pt.n < 2 || pt.k < 1 || pt.k >= pt.n) {
        throw std::invalid_argument(
            "family point needs 1 <= k <= N-1 (got N=" + std::to_string(pt.n) + ", k=" + std::to_string(pt.k) + ")");
    }
    if (!(pt.u >= 0) || !std::isfinite(pt.u)) {
        throw std::invalid_argument("family point needs a finite u >= 0");
    }
}

double A_coeff(const FamilyPoint &pt) {
    validate(pt);
    double s = 0;
    for (size_t i = 0; i <= pt.k; i++) {
        double c = binomial(pt.k, i);
        s += c * c / binomial(pt.n, i) * std::pow(pt.u, 2.0 * static_cast<double>(pt.k - i));
    }
    return 1 / s;
}

double family_normalization(const FamilyPoint &pt) {
    double c = binomial(pt.n, pt.k);
    return A_coeff(pt) / (c * c);
}

SymmetricState psi_family_symmetric(const FamilyPoint &pt) {
    double scale = std::sqrt(family_normalization(pt));
    std::vector<cplx> d(pt.n + 1, 0);
    // A basis state of weight w appears once for every placement containing its excitations.
    for (size_t w = 0; w <= pt.k; w++) {
        d[w] = scale * std::sqrt(binomial(pt.n, w)) * binomial(pt.n - w, pt.k - w) *
               std::pow(pt.u, static_cast<double>(pt.k - w));
    }
    return SymmetricState(pt.n, std::move(d), 1e-9);
}

PureState psi_family(const FamilyPoint &pt) {
    return symmetric_to_pure(psi_family_symmetric(pt));
}

std::vector<cplx> psi_family_by_placements(const FamilyPoint &pt) {
    validate(pt);
    size_t dim = size_t{1} << pt.n;
    std::vector<cplx> out(dim, 0);
    QubitState zero{1.0, 0.0};
    QubitState tilted{pt.u, 1.0};
    for (size_t placement = 0; placement < dim; placement++) {
        if (static_cast<size_t>(std::popcount(placement)) != pt.k) {
            continue;
        }
        std::vector<cplx> term{1.0};
        for (size_t q = 0; q < pt.n; q++) {
            bool chosen = (placement >> (pt.n - 1 - q)) & 1;
            term = kron(term, chosen ? tilted : zero);
        }
        for (size_t x = 0; x < dim; x++) {
            out[x] += term[x];
        }
    }
    double scale = std::sqrt(family_normalization(pt));
    for (auto &z : out) {
        z *= scale;
    }
    return out;
}

double f_coeff(const FamilyPoint &pt, int j, int jp) {
    validate(pt);
    if (j < 0 || j > 2 || jp < 0 || jp > 2) {
        throw std::invalid_argument("f_coeff: j and j' must lie in {0, 1, 2}");
    }
    long n = static_cast<long>(pt.n);
    long k = static_cast<long>(pt.k);
    double s = 0;
    for (long i = 0; i <= k; i++) {
        double c = binom_ext(n - i - j, k - i - j) * binom_ext(n - i - jp, k - i - jp) * binom_ext(n - 2, i);
        long e = 2 * (k - i) - j - jp;
        if (c == 0) {
            continue;
        }
        if (e < 0) {
            throw std::logic_error("f_coeff: nonzero term with a negative power of u");
        }
        s += c * std::pow(pt.u, static_cast<double>(e));
    }
    double cn = binomial(pt.n, pt.k);
    return s / (cn * cn);
}

DensityOperator rho12_closed_form(const FamilyPoint &pt) {
    double a = A_coeff(pt);
    double f[3][3];
    for (int j = 0; j < 3; j++) {
        for (int jp = 0; jp < 3; jp++) {
            f[j][jp] = a * f_coeff(pt, j, jp);
        }
    }
    std::vector<cplx> m{
        f[0][0], f[1][0], f[1][0], f[2][0],
        f[1][0], f[1][1], f[1][1], f[2][1],
        f[1][0], f[1][1], f[1][1], f[2][1],
        f[2][0], f[2][1], f[2][1], f[2][2],
    };
    return DensityOperator({0, 1}, ComplexMatrix(4, 4, std::move(m)));
}

double det_pt_rho12(const FamilyPoint &pt) {
    auto rho = rho12_closed_form(pt);
    size_t first[1] = {0};
    return determinant(partial_transpose(rho, first)).real();
}

}  // namespace qrobust
