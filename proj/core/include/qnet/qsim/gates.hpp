#pragma once

#include "qnet/qsim/types.hpp"

namespace qnet::qsim {

const Matrix& pauli_i();
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();
const Matrix& hadamard();
const Matrix& cnot();     // control = first (more significant) qubit
const Matrix& cz_gate();  // phase -1 on |11>

/// Basis order PhiPlus, PhiMinus, PsiPlus, PsiMinus.
Vector bell_vector(int which);
/// Projectors |bell_k><bell_k| for k = 0..3.
std::vector<Matrix> bell_projectors();
/// {|0><0|, |1><1|}.
std::vector<Matrix> z_projectors();
/// {|+><+|, |-><-|}.
std::vector<Matrix> x_projectors();

PureState basis_state(const Register& reg, uint64_t bits);
PureState plus_state(const QubitLabel& q);
PureState bell_pure(int which, const QubitLabel& a, const QubitLabel& b);

/// p |phi+><phi+| + (1-p)/4 I on two qubits.
MixedState werner_state(double p, const QubitLabel& a, const QubitLabel& b);

}  // namespace qnet::qsim
