#pragma once

#include <optional>
#include <vector>

#include "qrobust/qstate.h"
#include "qrobust/separability.h"

namespace qrobust {

/// psi = sqrt(p) |e_0 ... e_{N-1}> + sqrt(1 - p) |e'_0 ... e'_{N-1}>.
struct CanonicalForm {
    double p = 0;
    std::vector<QubitState> e_states;
    std::vector<QubitState> e_prime_states;
    std::vector<double> overlaps;          // |<e'_i|e_i>| per qubit
    std::vector<size_t> orthogonal_set;    // qubits with overlap <= 1e-9
    std::optional<size_t> distinct_qubit;  // when exactly one qubit is orthogonal: a qubit with overlap < 1 - 1e-9

    std::vector<cplx> reconstruct() const;
};

struct FragilityReport {
    std::vector<bool> fragile;         // per qubit
    std::vector<size_t> fragile_set;   // ascending
    std::optional<CanonicalForm> canonical;
    bool ghz_class = false;            // fragile with respect to every qubit
};

/// One invertible 2x2 matrix per qubit.
struct LocalOperation {
    std::vector<ComplexMatrix> factors;

    LocalOperation() = default;
    /// Throws std::invalid_argument unless every factor is 2x2 with |det| > 1e-12.
    explicit LocalOperation(std::vector<ComplexMatrix> factors);

    std::vector<cplx> apply(const PureState &psi) const;
};

/// a |e...e> + b |f...f> with f orthogonal to e and a, b > 0.
struct SymmetricFragileForm {
    double a = 0;
    double b = 0;
    QubitState e{};
    QubitState e_perp{};
};

/// Whether the residual state after losing qubit k is separable. Throws std::invalid_argument for a product
/// state or an out-of-range qubit.
bool fragile_wrt_qubit(const PureState &psi, size_t k);

/// Per-qubit fragility plus the canonical two-product form when any qubit is fragile.
FragilityReport analyze_fragility(const PureState &psi);

/// Local operation taking psi to the GHZ state, or nothing when psi is not fragile with respect to every qubit.
std::optional<LocalOperation> ghz_class_ilo(const PureState &psi);

/// Nothing unless the state is fragile with respect to every qubit with a single shared pair (e, e_perp).
/// Throws std::invalid_argument for fewer than three qubits or a product state.
std::optional<SymmetricFragileForm> symmetric_fragile_form(const SymmetricState &s);

struct PolygonFit {
    bool regular = false;
    BlochVector normal{};     // unit normal of the least-squares plane
    double offset = 0;        // plane: normal . x = offset
    double plane_residual = 0;
    double radius_spread = 0;
    double gap_error = 0;
};

/// Plane fit and regularity measures. Fields other than `regular` are left at 0 when points repeat.
PolygonFit polygon_fit(const MajoranaPoints &points);
/// N >= 3 distinct points on a plane (1e-7), concyclic (1e-7), with equal angular gaps (1e-6).
bool regular_polygon_test(const MajoranaPoints &points);

}  // namespace qrobust
