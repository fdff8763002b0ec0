#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qrobust/qstate.h"

namespace qrobust {

/// (||rho^{T_A}||_1 - 1) / 2, reported as 0 below 1e-12. `subset` holds original labels.
double negativity(const DensityOperator &rho, std::span<const size_t> subset);
/// Largest negativity over all bipartitions of rho's qubits.
double max_bipartite_negativity(const DensityOperator &rho);
/// Largest negativity over the single-qubit-vs-rest cuts.
double max_single_cut_negativity(const DensityOperator &rho);

/// Factors of a product vector, or nothing. A vector counts as a product when every single-qubit reduced
/// state has largest eigenvalue >= 1 - 1e-10. The factors are normalized, and their tensor product equals
/// `amplitudes` (phase included) up to rounding.
std::optional<std::vector<QubitState>> product_factors(size_t num_qubits, std::span<const cplx> amplitudes);

struct ProductTest {
    bool is_product = false;
    std::vector<QubitState> factors;
};
ProductTest is_pure_product(const PureState &psi);

/// rho = p |a><a| + (1 - p) |b><b| with |a>, |b> products over the qubits of rho (in label order).
struct ProductDecomposition {
    double p = 0;
    std::vector<QubitState> product_a;
    std::vector<QubitState> product_b;

    std::vector<cplx> vector_a() const;
    std::vector<cplx> vector_b() const;
    ComplexMatrix reconstruct() const;
};

struct Rank2Result {
    enum class Kind { decomposition, none, infinite_family };
    Kind kind = Kind::none;
    /// Present unless kind == none. For infinite_family this is one member of the continuum.
    std::optional<ProductDecomposition> decomposition;
};

/// Separable decomposition of a rank-2 state. Throws std::invalid_argument unless the second eigenvalue
/// exceeds 1e-10 and the third does not.
Rank2Result rank2_product_decomposition(const DensityOperator &rho);

/// Same, for rho = w1 |v1><v1| + w2 |v2><v2| given by orthonormal range vectors on `num_qubits` qubits.
Rank2Result rank2_product_decomposition(
    size_t num_qubits, std::span<const cplx> v1, std::span<const cplx> v2, double w1, double w2);

enum class Separability { separable, entangled, undecided };
const char *to_string(Separability s);

/// Exact for rank <= 2, for two qubits (PPT) and for three qubits with `symmetric_hint` (negativity zero).
/// Otherwise reports entangled on a nonzero single-cut negativity (> 1e-10) and undecided on none.
Separability is_separable_residual(const DensityOperator &rho, bool symmetric_hint = false);

}  // namespace qrobust
