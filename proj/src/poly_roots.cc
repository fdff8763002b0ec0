#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qrobust/linalg.h"

namespace qrobust {

cplx poly_eval(std::span<const cplx> coeffs, cplx z) {
    cplx acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        acc = acc * z + coeffs[i];
    }
    return acc;
}

std::vector<cplx> poly_from_roots(std::span<const cplx> roots) {
    std::vector<cplx> c{1.0};
    for (const auto &r : roots) {
        std::vector<cplx> next(c.size() + 1, 0);
        for (size_t i = 0; i < c.size(); i++) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

namespace {

std::vector<cplx> derivative(std::span<const cplx> c) {
    if (c.size() <= 1) {
        return {0.0};
    }
    std::vector<cplx> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); i++) {
        d[i - 1] = c[i] * static_cast<double>(i);
    }
    return d;
}

// Sum of |c_k| |z|^k: the magnitude scale of Horner rounding at z.
double eval_scale(std::span<const cplx> c, double az) {
    double acc = 0;
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * az + std::abs(c[i]);
    }
    return acc;
}

void aberth(std::span<const cplx> c, std::vector<cplx> &z) {
    size_t d = c.size() - 1;
    auto dc = derivative(c);
    double eps = std::numeric_limits<double>::epsilon();

    double radius = std::pow(std::abs(c[0]) / std::abs(c[d]), 1.0 / static_cast<double>(d));
    if (!(radius > 0) || !std::isfinite(radius)) {
        radius = 1;
    }
    z.resize(d);
    for (size_t k = 0; k < d; k++) {
        double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + 0.4;
        z[k] = std::polar(radius, ang);
    }

    std::vector<bool> done(d, false);
    for (int iter = 0; iter < 2000; iter++) {
        bool all_done = true;
        for (size_t i = 0; i < d; i++) {
            if (done[i]) {
                continue;
            }
            cplx p = poly_eval(c, z[i]);
            double az = std::abs(z[i]);
            if (std::abs(p) <= 2.0 * static_cast<double>(d) * eps * eval_scale(c, az)) {
                done[i] = true;
                continue;
            }
            cplx dp = poly_eval(dc, z[i]);
            cplx sum = 0;
            for (size_t j = 0; j < d; j++) {
                if (j != i) {
                    cplx diff = z[i] - z[j];
                    if (diff != cplx{0}) {
                        sum += 1.0 / diff;
                    }
                }
            }
            cplx w;
            if (dp == cplx{0}) {
                w = cplx{1e-8 * std::max(1.0, az), 1e-8 * std::max(1.0, az)};
            } else {
                cplx ratio = p / dp;
                w = ratio / (1.0 - ratio * sum);
            }
            z[i] -= w;
            if (std::abs(w) <= 4 * eps * std::abs(z[i])) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if (all_done) {
            break;
        }
    }
}

// Tries to certify the roots in `members` as one multiple root. On success overwrites them with the
// refined center.
bool certify_cluster(std::span<const cplx> c, std::vector<cplx> &z, const std::vector<size_t> &members) {
    size_t m = members.size();
    cplx center = 0;
    for (size_t i : members) {
        center += z[i];
    }
    center /= static_cast<double>(m);

    std::vector<std::vector<cplx>> ders{std::vector<cplx>(c.begin(), c.end())};
    for (size_t j = 1; j <= m; j++) {
        ders.push_back(derivative(ders.back()));
    }
    // Newton on the (m-1)th derivative, which has a simple root at an m-fold root of p.
    const auto &q = ders[m - 1];
    const auto &dq = ders[m];
    for (int it = 0; it < 60; it++) {
        cplx qv = poly_eval(q, center);
        cplx dv = poly_eval(dq, center);
        if (dv == cplx{0}) {
            break;
        }
        cplx step = qv / dv;
        center -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(center))) {
            break;
        }
    }
    double ac = std::abs(center);
    for (size_t j = 0; j < m; j++) {
        double scale = eval_scale(ders[j], ac);
        if (std::abs(poly_eval(ders[j], center)) > 1e-12 * scale) {
            return false;
        }
    }
    for (size_t i : members) {
        z[i] = center;
    }
    return true;
}

void refine_multiple_roots(std::span<const cplx> c, std::vector<cplx> &z) {
    size_t d = z.size();
    std::vector<bool> resolved(d, false);
    for (double tau : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        std::vector<size_t> parent(d);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](size_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (size_t i = 0; i < d; i++) {
            for (size_t j = i + 1; j < d; j++) {
                if (resolved[i] || resolved[j]) {
                    continue;
                }
                double lim = tau * std::max({1.0, std::abs(z[i]), std::abs(z[j])});
                if (std::abs(z[i] - z[j]) <= lim) {
                    parent[find(i)] = find(j);
                }
            }
        }
        std::vector<std::vector<size_t>> groups(d);
        for (size_t i = 0; i < d; i++) {
            if (!resolved[i]) {
                groups[find(i)].push_back(i);
            }
        }
        for (const auto &g : groups) {
            if (g.size() >= 2 && certify_cluster(c, z, g)) {
                for (size_t i : g) {
                    resolved[i] = true;
                }
            }
        }
    }

    auto dc = derivative(c);
    for (size_t i = 0; i < d; i++) {
        if (resolved[i]) {
            continue;
        }
        for (int it = 0; it < 3; it++) {
            cplx p = poly_eval(c, z[i]);
            cplx dp = poly_eval(dc, z[i]);
            if (dp == cplx{0}) {
                break;
            }
            cplx cand = z[i] - p / dp;
            if (std::abs(poly_eval(c, cand)) < std::abs(p)) {
                z[i] = cand;
            } else {
                break;
            }
        }
    }
}

}  // namespace

PolyRoots poly_roots(std::span<const cplx> coeffs, size_t nominal_degree) {
    if (coeffs.size() > nominal_degree + 1) {
        throw std::invalid_argument("poly_roots: more coefficients than the nominal degree allows");
    }
    std::vector<cplx> a(nominal_degree + 1, 0);
    std::copy(coeffs.begin(), coeffs.end(), a.begin());
    double scale = 0;
    for (const auto &x : a) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw std::invalid_argument("poly_roots: non-finite coefficient");
        }
        scale = std::max(scale, std::abs(x));
    }
    if (scale == 0) {
        throw std::invalid_argument("poly_roots: all coefficients vanish, polynomial is undefined");
    }
    double tiny = 1e-14 * scale;

    PolyRoots out;
    size_t top = nominal_degree;
    while (std::abs(a[top]) <= tiny) {
        top--;
        out.at_infinity++;
    }
    size_t low = 0;
    while (low < top && std::abs(a[low]) <= tiny) {
        low++;
        out.finite.push_back(0.0);
    }
    size_t d = top - low;
    if (d == 0) {
        return out;
    }
    std::vector<cplx> b(a.begin() + static_cast<std::ptrdiff_t>(low), a.begin() + static_cast<std::ptrdiff_t>(top) + 1);
    if (d == 1) {
        out.finite.push_back(-b[0] / b[1]);
        return out;
    }
    std::vector<cplx> z;
    aberth(b, z);
    refine_multiple_roots(b, z);
    out.finite.insert(out.finite.end(), z.begin(), z.end());
    return out;
}

}  // namespace qrobust
