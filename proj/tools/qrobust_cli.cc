#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrobust/dicke_family.h"
#include "qrobust/experiments.h"
#include "qrobust/robustness.h"
#include "qrobust/state_io.h"

using namespace qrobust;

namespace {

enum ExitCode {
    kOk = 0,
    kFailure = 1,
    kParse = 2,
    kNormalization = 3,
    kSize = 4,
    kSymmetry = 5,
    kIo = 6,
};

std::string num(double x) {
    return format_double(x);
}

std::string pair(cplx z) {
    return "[" + num(z.real()) + ", " + num(z.imag()) + "]";
}

std::string qubit(const QubitState &q) {
    return "[" + pair(q[0]) + ", " + pair(q[1]) + "]";
}

std::string label_set(const std::vector<size_t> &s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); i++) {
        out += (i ? "," : "") + std::to_string(s[i] + 1);
    }
    return out + "}";
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << text;
    if (!out.flush()) {
        throw IoError("failed writing '" + path + "'");
    }
}

std::string render_analysis(const PureState &psi) {
    std::ostringstream out;
    size_t n = psi.num_qubits();
    auto rep = analyze_fragility(psi);
    out << "num_qubits: " << n << "\n";
    for (size_t k = 0; k < n; k++) {
        out << "qubit " << k + 1 << ": " << (rep.fragile[k] ? "fragile" : "robust") << "\n";
    }
    out << "fragile_set: " << label_set(rep.fragile_set) << "\n";
    out << "ghz_class: " << (rep.ghz_class ? "true" : "false") << "\n";
    if (rep.canonical) {
        const auto &cf = *rep.canonical;
        auto rec = cf.reconstruct();
        double fid = std::norm(inner(rec, psi.amplitudes()));
        out << "canonical_form:\n";
        out << "  p: " << num(cf.p) << "\n";
        out << "  orthogonal_set: " << label_set(cf.orthogonal_set) << "\n";
        if (cf.distinct_qubit) {
            out << "  distinct_qubit: " << *cf.distinct_qubit + 1 << "\n";
        }
        out << "  reconstruction_fidelity: " << num(fid) << "\n";
        for (size_t i = 0; i < n; i++) {
            out << "  qubit " << i + 1 << ": overlap " << num(cf.overlaps[i]) << " e " << qubit(cf.e_states[i])
                << " e' " << qubit(cf.e_prime_states[i]) << "\n";
        }
    }
    if (rep.ghz_class) {
        auto ilo = ghz_class_ilo(psi);
        if (ilo) {
            auto img = ilo->apply(psi);
            double fid = std::norm(inner(ghz_state(n).amplitudes(), img));
            out << "ghz_ilo:\n";
            out << "  ghz_fidelity: " << num(fid) << "\n";
            for (size_t i = 0; i < n; i++) {
                const auto &m = ilo->factors[i];
                out << "  qubit " << i + 1 << ": [[" << pair(m(0, 0)) << ", " << pair(m(0, 1)) << "], ["
                    << pair(m(1, 0)) << ", " << pair(m(1, 1)) << "]]\n";
            }
        }
    }
    return out.str();
}

std::string render_majorana(const SymmetricState &s) {
    std::ostringstream out;
    auto pts = symmetric_to_majorana(s);
    auto fit = polygon_fit(pts);
    out << "num_qubits: " << s.num_qubits() << "\n";
    out << "points:\n";
    for (size_t i = 0; i < pts.points.size(); i++) {
        const auto &p = pts.points[i];
        out << "  [" << num(p[0]) << ", " << num(p[1]) << ", " << num(p[2]) << "] multiplicity "
            << pts.multiplicities[i] << "\n";
    }
    if (pts.points.size() == s.num_qubits() && s.num_qubits() >= 3) {
        out << "plane_normal: [" << num(fit.normal[0]) << ", " << num(fit.normal[1]) << ", " << num(fit.normal[2])
            << "]\n";
        out << "plane_offset: " << num(fit.offset) << "\n";
        out << "plane_residual: " << num(fit.plane_residual) << "\n";
        out << "radius_spread: " << num(fit.radius_spread) << "\n";
        out << "gap_error: " << num(fit.gap_error) << "\n";
    }
    out << "regular_polygon: " << (fit.regular ? "true" : "false") << "\n";
    if (s.num_qubits() >= 3 && !is_pure_product(symmetric_to_pure(s)).is_product) {
        auto form = symmetric_fragile_form(s);
        if (form) {
            out << "symmetric_fragile_form: a " << num(form->a) << " b " << num(form->b) << " e " << qubit(form->e)
                << " e_perp " << qubit(form->e_perp) << "\n";
        } else {
            out << "symmetric_fragile_form: none\n";
        }
    }
    return out.str();
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement robustness of multiqubit states against particle loss"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string input;
    std::string output;
    bool renormalize = false;
    double state_tol = 1e-10;

    auto *analyze = app.add_subcommand("analyze", "Per-qubit fragility, canonical form and GHZ-class operation");
    analyze->add_option("state", input, "JSON state file")->required();
    analyze->add_option("--output,-o", output, "Write the report here instead of stdout");
    analyze->add_option("--tolerance", state_tol, "Normalization tolerance on |norm^2 - 1|")->capture_default_str();
    analyze->add_flag("--renormalize", renormalize, "Normalize the input instead of rejecting it");

    auto *majorana = app.add_subcommand("majorana", "Majorana points and regular-polygon test of a symmetric state");
    majorana->add_option("state", input, "JSON state file")->required();
    majorana->add_option("--output,-o", output, "Write the report here instead of stdout");
    majorana->add_option("--tolerance", state_tol, "Normalization tolerance on |norm^2 - 1|")->capture_default_str();
    majorana->add_flag("--renormalize", renormalize, "Normalize the input instead of rejecting it");

    std::vector<size_t> ns{12};
    std::vector<size_t> ks{1, 2, 3, 4, 5, 6};
    double u_min = 0, u_max = 3, u_step = 0.05;
    bool verify = false;
    auto *dicke = app.add_subcommand("dicke-sweep", "Partial-transpose determinant of two-qubit reductions");
    dicke->add_option("--n", ns, "Qubit counts")->capture_default_str();
    dicke->add_option("--k", ks, "Excitation counts")->capture_default_str();
    dicke->add_option("--u-min", u_min)->capture_default_str();
    dicke->add_option("--u-max", u_max)->capture_default_str();
    dicke->add_option("--step", u_step)->capture_default_str();
    dicke->add_option("--output,-o", output, "CSV destination (stdout if absent)");
    dicke->add_flag("--verify", verify, "Add the brute-force partial-trace difference column (N <= 10)");

    size_t mu_t = 2;
    size_t re_points = 201, im_points = 201;
    double zero_tol = 1e-9;
    auto *mu = app.add_subcommand("mu-scan", "Negativity after losing t qubits over the mu plane");
    mu->add_option("--t", mu_t, "Lost qubits (1 or 2)")->capture_default_str()->check(CLI::Range(1, 2));
    mu->add_option("--re-points", re_points)->capture_default_str();
    mu->add_option("--im-points", im_points)->capture_default_str();
    mu->add_option("--tolerance", zero_tol, "Negativity counted as zero at or below this")->capture_default_str();
    mu->add_option("--output,-o", output, "CSV destination (stdout if absent)");

    size_t rn = 6;
    std::vector<size_t> rts{1, 2, 3, 4, 5};
    size_t samples = 500;
    uint64_t seed = 1;
    auto *rnd = app.add_subcommand("random-sweep", "Witness-certified robustness of Haar-random states");
    rnd->add_option("--n", rn)->capture_default_str();
    rnd->add_option("--t", rts, "Lost-qubit counts")->capture_default_str();
    rnd->add_option("--samples", samples)->capture_default_str();
    rnd->add_option("--seed", seed)->capture_default_str();
    rnd->add_option("--tolerance", zero_tol, "Negativity certifying entanglement must exceed this")
        ->capture_default_str();
    rnd->add_option("--output,-o", output, "CSV destination (stdout if absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            auto psi = to_pure_state(read_state_file(input), renormalize, state_tol);
            if (psi.num_qubits() < 3) {
                std::cerr << "error: analysis requires N >= 3 qubits (got " << psi.num_qubits() << ")\n";
                return kSize;
            }
            emit(render_analysis(psi), output);
        } else if (majorana->parsed()) {
            auto s = to_symmetric_state(read_state_file(input), renormalize, state_tol);
            emit(render_majorana(s), output);
        } else if (dicke->parsed()) {
            auto rows = dicke_sweep(ns, ks, linear_grid(u_min, u_max, u_step), verify);
            std::ostringstream out;
            write_dicke_csv(out, rows, verify);
            emit(out.str(), output);
        } else if (mu->parsed()) {
            auto scan = mu_scan(mu_t, re_points, im_points, zero_tol);
            std::ostringstream out;
            write_mu_csv(out, scan);
            emit(out.str(), output);
        } else if (rnd->parsed()) {
            auto sweep = random_sweep(rn, rts, samples, seed, zero_tol);
            std::ostringstream out;
            write_random_csv(out, sweep);
            emit(out.str(), output);
        }
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const NormalizationError &e) {
        std::cerr << "error: state is not normalized (norm " << num(e.norm)
                  << "); pass --renormalize to normalize it\n";
        return kNormalization;
    } catch (const SymmetryError &e) {
        std::cerr << "error: state is not permutation symmetric; worst transposition (" << e.worst_position + 1
                  << "," << e.worst_position + 2 << ") residual " << num(e.worst_residual) << "\n";
        return kSymmetry;
    } catch (const IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}
