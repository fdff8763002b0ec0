#include "qrobust/experiments.h"

#include <bit>
#include <cmath>
#include <cstdio>

#include "qrobust/dicke_family.h"
#include "qrobust/separability.h"

namespace qrobust {

namespace {

const char *flag(bool b) {
    return b ? "true" : "false";
}

// Bipartitions (subsets holding the first label) ordered by size, smallest first.
std::vector<std::vector<size_t>> bipartitions(const std::vector<size_t> &labels) {
    size_t m = labels.size();
    std::vector<std::vector<size_t>> out;
    if (m < 2) {
        return out;
    }
    for (size_t size = 1; size < m; size++) {
        for (size_t mask = 0; mask < (size_t{1} << (m - 1)); mask++) {
            if (static_cast<size_t>(std::popcount(mask)) + 1 != size) {
                continue;
            }
            std::vector<size_t> s{labels[0]};
            for (size_t j = 1; j < m; j++) {
                if (mask & (size_t{1} << (j - 1))) {
                    s.push_back(labels[j]);
                }
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace

std::vector<double> linear_grid(double start, double stop, double step) {
    if (!(step > 0) || !(stop >= start)) {
        throw std::invalid_argument("grid needs step > 0 and stop >= start");
    }
    size_t count = static_cast<size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> g(count);
    for (size_t i = 0; i < count; i++) {
        g[i] = start + static_cast<double>(i) * step;
    }
    return g;
}

std::vector<DickeRow> dicke_sweep(
    const std::vector<size_t> &ns, const std::vector<size_t> &ks, const std::vector<double> &us, bool verify) {
    std::vector<DickeRow> rows;
    for (size_t n : ns) {
        if (verify && n > 10) {
            throw std::invalid_argument("verification is limited to N <= 10");
        }
        for (size_t k : ks) {
            if (k < 1 || k >= n) {
                continue;
            }
            for (double u : us) {
                DickeRow r;
                r.n = n;
                r.k = k;
                r.u = u;
                rows.push_back(r);
            }
        }
    }
    parallel_for(rows.size(), [&](size_t i) {
        auto &r = rows[i];
        FamilyPoint pt{r.n, r.k, r.u};
        r.a = A_coeff(pt);
        auto rho = rho12_closed_form(pt);
        size_t first[1] = {0};
        r.det_pt = det_pt_rho12(pt);
        r.negativity = negativity(rho, first);
        if (verify) {
            auto amps = psi_family_by_placements(pt);
            PureState psi(r.n, std::move(amps), 1e-9);
            std::vector<size_t> traced;
            for (size_t q = 2; q < r.n; q++) {
                traced.push_back(q);
            }
            r.oracle_max_diff = max_abs_diff(partial_trace(psi, traced).matrix(), rho.matrix());
        }
    });
    return rows;
}

MuScan mu_scan(size_t t, size_t re_points, size_t im_points, double threshold) {
    if (t != 1 && t != 2) {
        throw std::invalid_argument("mu_scan: t must be 1 or 2");
    }
    if (re_points < 2 || im_points < 2) {
        throw std::invalid_argument("mu_scan: need at least two points per axis");
    }
    const double re_max = std::sqrt(6.0);
    const double im_max = 2.5;
    double re_step = re_max / static_cast<double>(re_points - 1);
    double im_step = im_max / static_cast<double>(im_points - 1);
    MuScan scan;
    scan.t = t;
    scan.threshold = threshold;
    scan.step = std::max(re_step, im_step);
    scan.rows.resize(re_points * im_points);
    parallel_for(scan.rows.size(), [&](size_t idx) {
        auto &r = scan.rows[idx];
        r.re = re_step * static_cast<double>(idx / im_points);
        r.im = im_step * static_cast<double>(idx % im_points);
        cplx mu{r.re, r.im};
        r.in_s = in_S(mu);
        r.negativity = t_loss_negativity(mu, t);
        r.fragile_observed = r.negativity <= threshold;
        r.boundary_distance = mu_boundary_distance(mu);
        if (r.in_s) {
            r.fragile_predicted = t == 2 ? mu_fragility_region(mu) : (r.re == 0 && r.im == 0);
        }
    });
    for (const auto &r : scan.rows) {
        if (!r.in_s) {
            continue;
        }
        scan.in_s_points++;
        if (t == 2 && r.boundary_distance <= scan.step) {
            continue;
        }
        scan.compared++;
        if (r.fragile_observed == r.fragile_predicted) {
            scan.agreeing++;
        }
    }
    return scan;
}

RandomSweep random_sweep(size_t n, const std::vector<size_t> &ts, size_t samples, uint64_t seed, double threshold) {
    if (n < 2 || n > 12) {
        throw std::invalid_argument("random_sweep: N must be between 2 and 12");
    }
    if (samples == 0) {
        throw std::invalid_argument("random_sweep: need at least one sample");
    }
    for (size_t t : ts) {
        if (t < 1 || t >= n) {
            throw std::invalid_argument("random_sweep: each t must satisfy 1 <= t <= N-1");
        }
    }
    RandomSweep sw;
    sw.n = n;
    sw.seed = seed;
    sw.threshold = threshold;
    sw.ts = ts;
    sw.samples.resize(ts.size() * samples);
    parallel_for(samples, [&](size_t i) {
        std::seed_seq seq{seed, static_cast<uint64_t>(i)};
        std::mt19937_64 rng(seq);
        auto psi = haar_random_state(n, rng);
        for (size_t ti = 0; ti < ts.size(); ti++) {
            std::vector<size_t> traced;
            for (size_t q = n - ts[ti]; q < n; q++) {
                traced.push_back(q);
            }
            auto rho = partial_trace(psi, traced);
            RandomSample s;
            s.index = i;
            s.t = ts[ti];
            // One certifying cut is enough; the largest value seen is reported.
            for (const auto &cut : bipartitions(rho.labels())) {
                s.max_negativity = std::max(s.max_negativity, negativity(rho, cut));
                if (s.max_negativity > threshold) {
                    s.certified_robust = true;
                    break;
                }
            }
            sw.samples[ti * samples + i] = s;
        }
    });
    for (size_t ti = 0; ti < ts.size(); ti++) {
        size_t c = 0;
        for (size_t i = 0; i < samples; i++) {
            c += sw.samples[ti * samples + i].certified_robust;
        }
        sw.certified_fraction.push_back(static_cast<double>(c) / static_cast<double>(samples));
    }
    return sw;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_dicke_csv(std::ostream &out, const std::vector<DickeRow> &rows, bool verify) {
    out << "# schema_version=" << kCsvSchemaVersion << " command=dicke-sweep version=" << kToolVersion
        << " negativity_clamp=1e-12 partial_transpose=first_qubit\n";
    out << "N,k,u,A,det_pt,negativity" << (verify ? ",oracle_max_diff" : "") << "\n";
    bool all_negative = true;
    double max_det = -INFINITY;
    double max_diff = 0;
    for (const auto &r : rows) {
        out << r.n << ',' << r.k << ',' << format_double(r.u) << ',' << format_double(r.a) << ','
            << format_double(r.det_pt) << ',' << format_double(r.negativity);
        if (verify) {
            out << ',' << format_double(*r.oracle_max_diff);
            max_diff = std::max(max_diff, *r.oracle_max_diff);
        }
        out << '\n';
        all_negative = all_negative && r.det_pt < 0;
        max_det = std::max(max_det, r.det_pt);
    }
    out << "# summary rows=" << rows.size() << " all_det_negative=" << flag(all_negative)
        << " max_det=" << format_double(max_det);
    if (verify) {
        out << " oracle_max_diff=" << format_double(max_diff);
    }
    out << '\n';
}

void write_mu_csv(std::ostream &out, const MuScan &scan) {
    out << "# schema_version=" << kCsvSchemaVersion << " command=mu-scan version=" << kToolVersion
        << " t=" << scan.t << " zero_threshold=" << format_double(scan.threshold)
        << " grid_step=" << format_double(scan.step)
        << " s_interpretation=real_axis_clause_uses_Re_mu;mu_eq_sqrt2_i_exempt_from_disc_clause_only"
        << " t1_prediction=mu_eq_0\n";
    out << "Re_mu,Im_mu,in_S,negativity_t,fragile_predicted,fragile_observed\n";
    for (const auto &r : scan.rows) {
        out << format_double(r.re) << ',' << format_double(r.im) << ',' << flag(r.in_s) << ','
            << format_double(r.negativity) << ',' << flag(r.fragile_predicted) << ',' << flag(r.fragile_observed)
            << '\n';
    }
    out << "# summary in_S_points=" << scan.in_s_points << " compared=" << scan.compared
        << " agreeing=" << scan.agreeing << " agreement_rate=" << format_double(scan.agreement()) << '\n';
}

void write_random_csv(std::ostream &out, const RandomSweep &sw) {
    out << "# schema_version=" << kCsvSchemaVersion << " command=random-sweep version=" << kToolVersion
        << " N=" << sw.n << " seed=" << sw.seed << " certify_threshold=" << format_double(sw.threshold)
        << " sampling=normalized_complex_gaussian lost_qubits=last_t\n";
    out << "N,t,sample,negativity_witness,certified_robust\n";
    for (const auto &s : sw.samples) {
        out << sw.n << ',' << s.t << ',' << s.index << ',' << format_double(s.max_negativity) << ','
            << flag(s.certified_robust) << '\n';
    }
    size_t per_t = sw.ts.empty() ? 0 : sw.samples.size() / sw.ts.size();
    for (size_t ti = 0; ti < sw.ts.size(); ti++) {
        out << "# summary t=" << sw.ts[ti] << " samples=" << per_t
            << " certified_robust_fraction=" << format_double(sw.certified_fraction[ti]) << '\n';
    }
}

}  // namespace qrobust
