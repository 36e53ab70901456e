#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnet::qsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Centralized numeric tolerances used by the engine and its callers.
struct Tolerances {
  double unit_norm = 1e-12;    // pure-state normalization
  double hermiticity = 1e-12;  // density-matrix symmetry
  double trace = 1e-10;        // trace preservation / completeness
  double psd_floor = -1e-10;   // smallest admissible eigenvalue
};

inline const Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

/// Dense registers are capped; protocols needing more qubits are out of scope.
inline int& max_qubits() {
  static int cap = 14;
  return cap;
}

enum class QubitKind { Spin, PhotonPolarization, PhotonPresence };

struct QubitLabel {
  int id = 0;
  QubitKind kind = QubitKind::Spin;

  friend bool operator==(const QubitLabel& a, const QubitLabel& b) {
    return a.id == b.id && a.kind == b.kind;
  }
};

using Register = std::vector<QubitLabel>;

/// Position of `q` in `reg`, or -1.
int find_qubit(const Register& reg, const QubitLabel& q);
/// Throws if labels repeat within the register.
void check_unique(const Register& reg);

/// Qubit 0 of the register is the most significant bit of basis indices,
/// so tensoring registers concatenates labels and Kronecker-multiplies data.
struct PureState {
  Register reg;
  Vector amp;

  int num_qubits() const { return static_cast<int>(reg.size()); }
  void check_valid() const;
};

struct MixedState {
  Register reg;
  Matrix rho;

  int num_qubits() const { return static_cast<int>(reg.size()); }
  static MixedState from_pure(const PureState& psi);
  /// Hermiticity/trace check; the O(d^3) PSD eigenvalue check only if `psd`.
  void check_valid(bool psd = false) const;
};

/// Kraus-operator set acting on a sublist of a register. Operators flagged in
/// `heralded_loss` model detectable photon loss: protocol code may sample them
/// as announced failures instead of mixing them in.
struct QuantumChannel {
  std::vector<Matrix> operators;
  Register acts_on;
  std::vector<bool> heralded_loss;  // empty == all false

  void check_trace_preserving() const;
};

/// Signed Pauli operator aligned with a register ("XZIZ", sign -1, ...).
struct PauliString {
  std::string letters;  // per qubit: I, X, Y, Z
  int sign = +1;
};

}  // namespace qnet::qsim
