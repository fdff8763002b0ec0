#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrobust/linalg.h"

namespace qrobust {

// Qubits are numbered from 0. Qubit 0 is the most significant bit of a computational-basis index.

using QubitState = std::array<cplx, 2>;
using BlochVector = std::array<double, 3>;

struct NormalizationError : std::invalid_argument {
    double norm;
    explicit NormalizationError(double n);
};

struct SymmetryError : std::invalid_argument {
    double worst_residual;
    size_t worst_position;  // transposition of qubits (worst_position, worst_position + 1)
    SymmetryError(double residual, size_t position);
};

double binomial(size_t n, size_t k);

/// Normalized N-qubit state vector.
class PureState {
   public:
    /// Throws NormalizationError when |norm^2 - 1| > tol.
    PureState(size_t num_qubits, std::vector<cplx> amplitudes, double tol = 1e-10);
    /// Divides by the norm first. Throws std::invalid_argument on a zero vector.
    static PureState normalized(size_t num_qubits, std::vector<cplx> amplitudes);
    static PureState basis(size_t num_qubits, size_t index);
    static PureState product(std::span<const QubitState> factors);

    size_t num_qubits() const { return num_qubits_; }
    size_t dim() const { return amplitudes_.size(); }
    std::span<const cplx> amplitudes() const { return amplitudes_; }
    cplx operator[](size_t i) const { return amplitudes_[i]; }

    cplx overlap(const PureState &other) const;  // <this|other>
    double fidelity(const PureState &other) const;

   private:
    size_t num_qubits_;
    std::vector<cplx> amplitudes_;
};

/// Reduced state over the retained qubits `labels` (original indices, ascending).
class DensityOperator {
   public:
    /// Checks dimension, hermiticity (1e-10) and unit trace (1e-10); positivity is checked by is_physical().
    DensityOperator(std::vector<size_t> labels, ComplexMatrix matrix);
    static DensityOperator from_pure(const PureState &psi);

    const std::vector<size_t> &labels() const { return labels_; }
    const ComplexMatrix &matrix() const { return matrix_; }
    size_t num_qubits() const { return labels_.size(); }
    size_t dim() const { return matrix_.rows(); }

    /// Hermitian, unit trace and eigenvalues >= -tol.
    bool is_physical(double tol = 1e-10) const;

   private:
    std::vector<size_t> labels_;
    ComplexMatrix matrix_;
};

/// Permutation-invariant state expanded in the Dicke basis |D_N^(k)>, k = 0..N.
class SymmetricState {
   public:
    SymmetricState(size_t num_qubits, std::vector<cplx> dicke_coefficients, double tol = 1e-10);
    static SymmetricState normalized(size_t num_qubits, std::vector<cplx> dicke_coefficients);

    size_t num_qubits() const { return num_qubits_; }
    std::span<const cplx> coefficients() const { return coefficients_; }
    cplx operator[](size_t k) const { return coefficients_[k]; }

   private:
    size_t num_qubits_;
    std::vector<cplx> coefficients_;
};

/// Distinct points on the Bloch sphere with multiplicities summing to the number of qubits.
struct MajoranaPoints {
    std::vector<BlochVector> points;
    std::vector<size_t> multiplicities;

    MajoranaPoints() = default;
    /// Throws std::invalid_argument unless every vector has unit norm (1e-9) and every multiplicity is >= 1.
    MajoranaPoints(std::vector<BlochVector> points, std::vector<size_t> multiplicities);

    size_t total() const;
    /// Points repeated according to multiplicity.
    std::vector<BlochVector> expanded() const;
};

/// Amplitude matrix with rows indexed by `row_qubits` (in the given order) and columns by the remaining
/// qubits in ascending order.
ComplexMatrix bipartite_matrix(const PureState &psi, std::span<const size_t> row_qubits);

/// Tr_S |psi><psi|. `traced` must be a nonempty strict subset of the qubits.
DensityOperator partial_trace(const PureState &psi, std::span<const size_t> traced);
/// Tr_S rho, with `traced` given as original labels of rho.
DensityOperator partial_trace(const DensityOperator &rho, std::span<const size_t> traced);

/// Transposes the tensor factors belonging to `subset` (original labels, nonempty strict subset of rho's).
ComplexMatrix partial_transpose(const DensityOperator &rho, std::span<const size_t> subset);

/// Schmidt decomposition across cut | rest. Left vectors live on `cut` (ascending), right on the rest.
SchmidtDecomposition schmidt_decompose(const PureState &psi, std::span<const size_t> cut);

PureState dicke_state(size_t num_qubits, size_t excitations);
PureState ghz_state(size_t num_qubits);

PureState symmetric_to_pure(const SymmetricState &s);
/// Largest ||P_(i,i+1) psi - psi|| over adjacent transpositions; `worst` receives i.
double symmetry_residual(const PureState &psi, size_t *worst = nullptr);
/// Throws SymmetryError when symmetry_residual exceeds tol.
SymmetricState pure_to_symmetric(const PureState &psi, double tol = 1e-9);

/// Applies one 2x2 operator per qubit. The result is not renormalized.
std::vector<cplx> apply_local(std::span<const ComplexMatrix> ops, std::span<const cplx> amplitudes);
PureState apply_local_unitaries(std::span<const ComplexMatrix> unitaries, const PureState &psi);

BlochVector bloch_vector(const QubitState &q);
QubitState qubit_from_bloch(const BlochVector &b);
double qubit_overlap(const QubitState &a, const QubitState &b);  // |<a|b>|

/// Roots of sum_k (-1)^k sqrt(C(N,k)) d_k z^(N-k); root z maps to the Bloch vector of (|0> + z|1>),
/// roots at infinity to the south pole. Coincident points are merged with tolerance 1e-6.
MajoranaPoints symmetric_to_majorana(const SymmetricState &s);
/// Symmetrized, normalized product of the single-qubit states at the points.
SymmetricState majorana_to_symmetric(const MajoranaPoints &points);

// Sampling helpers.
PureState haar_random_state(size_t num_qubits, std::mt19937_64 &rng);
QubitState random_qubit(std::mt19937_64 &rng);
ComplexMatrix random_unitary2(std::mt19937_64 &rng);
SymmetricState random_symmetric_state(size_t num_qubits, std::mt19937_64 &rng);

}  // namespace qrobust
