#pragma once

#include "qrobust/qstate.h"

namespace qrobust {

// Four-qubit family (|D_4^0> + mu |D_4^2> + |D_4^4>) / sqrt(2 + |mu|^2).

SymmetricState psi_mu(cplx mu);

/// Membership in the representative set: Re mu >= 0, Im mu >= 0, mu < sqrt(2/3) on the real axis, and
/// |mu - sqrt(2/3)| < sqrt(8/3) unless mu == sqrt(2) i (compared with tolerance 1e-12).
bool in_S(cplx mu);

/// Im mu >= sqrt((sqrt(6) - Re mu) Re mu), radicand clamped at 0. Throws std::invalid_argument outside S.
bool mu_fragility_region(cplx mu);

/// Distance from mu to the curve bounding the fragility region (circle of radius sqrt(6)/2 about sqrt(6)/2).
double mu_boundary_distance(cplx mu);

/// Largest bipartite negativity of psi_mu after losing t in {1, 2} qubits.
double t_loss_negativity(cplx mu, size_t t);

// States sqrt(A) sum_pi |0>^(N-k) (u|0> + |1>)^k, the sum running over the C(N, k) distinct placements.

struct FamilyPoint {
    size_t n = 0;
    size_t k = 0;
    double u = 0;
};

/// Throws std::invalid_argument unless 1 <= k <= n - 1 and u >= 0 is finite.
void validate(const FamilyPoint &pt);

/// [sum_i C(k,i)^2 / C(N,i) u^(2(k-i))]^-1.
double A_coeff(const FamilyPoint &pt);

/// Squared scale that normalizes the placement sum: A / C(N,k)^2.
double family_normalization(const FamilyPoint &pt);

SymmetricState psi_family_symmetric(const FamilyPoint &pt);
PureState psi_family(const FamilyPoint &pt);
/// Same state summed placement by placement over all C(N, k) qubit subsets, scaled by
/// sqrt(family_normalization) and not renormalized. Exponential cost; meant as a cross-check.
std::vector<cplx> psi_family_by_placements(const FamilyPoint &pt);

/// C(N,k)^-2 sum_i C(N-i-j, k-i-j) C(N-i-j', k-i-j') C(N-2, i) u^(2(k-i)-j-j'), with C(n, r) = 0 outside
/// 0 <= r <= n. Throws std::logic_error if a nonzero term carries a negative power of u.
double f_coeff(const FamilyPoint &pt, int j, int jp);

/// Two-qubit reduced state of psi_family assembled from A_coeff * f_coeff.
DensityOperator rho12_closed_form(const FamilyPoint &pt);

/// Determinant of the partial transpose (first qubit) of rho12_closed_form.
double det_pt_rho12(const FamilyPoint &pt);

}  // namespace qrobust
