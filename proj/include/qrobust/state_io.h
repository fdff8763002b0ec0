#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qrobust/qstate.h"

namespace qrobust {

/// Malformed state file. line/column are 1-based, 0 when the problem is not tied to a location.
struct ParseError : std::runtime_error {
    size_t line;
    size_t column;
    ParseError(const std::string &message, size_t line, size_t column);
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raw contents of a JSON state file:
///   {"num_qubits": N, "amplitudes": [[re, im], ...]}   (2^N pairs), or
///   {"num_qubits": N, "dicke": [[re, im], ...]}        (N + 1 pairs).
struct StateFile {
    size_t num_qubits = 0;
    bool dicke = false;
    std::vector<cplx> values;
};

StateFile parse_state(const std::string &text);
StateFile read_state_file(const std::string &path);

/// Throws NormalizationError when |norm^2 - 1| > tol and `renormalize` is false.
PureState to_pure_state(const StateFile &f, bool renormalize, double tol);
/// For amplitude input, also throws SymmetryError when the state is not permutation symmetric.
SymmetricState to_symmetric_state(const StateFile &f, bool renormalize, double tol);

std::string format_state(const PureState &psi);
std::string format_state(const SymmetricState &s);

}  // namespace qrobust
