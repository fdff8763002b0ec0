#include <cmath>
#include <numeric>

#include "qrobust/qstate.h"

namespace qrobust {

namespace {

constexpr double kMergeTol = 1e-6;

BlochVector root_to_point(cplx z) {
    double r2 = std::norm(z);
    return {2 * z.real() / (1 + r2), 2 * z.imag() / (1 + r2), (1 - r2) / (1 + r2)};
}

double dist(const BlochVector &a, const BlochVector &b) {
    double dx = a[0] - b[0];
    double dy = a[1] - b[1];
    double dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

MajoranaPoints merge_points(const std::vector<BlochVector> &raw) {
    size_t n = raw.size();
    std::vector<size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (dist(raw[i], raw[j]) <= kMergeTol) {
                parent[find(i)] = find(j);
            }
        }
    }
    std::vector<BlochVector> pts;
    std::vector<size_t> mult;
    std::vector<size_t> slot(n, n);
    for (size_t i = 0; i < n; i++) {
        size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = pts.size();
            pts.push_back({0, 0, 0});
            mult.push_back(0);
        }
        auto &p = pts[slot[r]];
        for (int c = 0; c < 3; c++) {
            p[c] += raw[i][c];
        }
        mult[slot[r]]++;
    }
    for (auto &p : pts) {
        double len = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        for (auto &c : p) {
            c /= len;
        }
    }
    return MajoranaPoints(std::move(pts), std::move(mult));
}

}  // namespace

MajoranaPoints symmetric_to_majorana(const SymmetricState &s) {
    size_t n = s.num_qubits();
    std::vector<cplx> poly(n + 1);
    for (size_t k = 0; k <= n; k++) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        poly[n - k] = sign * std::sqrt(binomial(n, k)) * s[k];
    }
    auto roots = poly_roots(poly, n);
    std::vector<BlochVector> raw;
    for (const auto &z : roots.finite) {
        raw.push_back(root_to_point(z));
    }
    for (size_t i = 0; i < roots.at_infinity; i++) {
        raw.push_back({0, 0, -1});
    }
    return merge_points(raw);
}

SymmetricState majorana_to_symmetric(const MajoranaPoints &points) {
    auto pts = points.expanded();
    if (pts.empty()) {
        throw std::invalid_argument("majorana_to_symmetric: no points");
    }
    size_t n = pts.size();
    // Ascending coefficients of prod_j (alpha_j z - beta_j).
    std::vector<cplx> q{1.0};
    for (const auto &p : pts) {
        auto spinor = qubit_from_bloch(p);
        std::vector<cplx> next(q.size() + 1, 0);
        for (size_t i = 0; i < q.size(); i++) {
            next[i + 1] += spinor[0] * q[i];
            next[i] -= spinor[1] * q[i];
        }
        q = std::move(next);
    }
    std::vector<cplx> d(n + 1);
    for (size_t k = 0; k <= n; k++) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        d[k] = sign * q[n - k] / std::sqrt(binomial(n, k));
    }
    return SymmetricState::normalized(n, std::move(d));
}

}  // namespace qrobust
