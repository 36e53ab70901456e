#include "qnet/qsim/gates.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace qnet::qsim {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

const Matrix& pauli_i() {
  static const Matrix m = Matrix::Identity(2, 2);
  return m;
}

const Matrix& pauli_x() {
  static const Matrix m = [] {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
  }();
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m = [] {
    Matrix y(2, 2);
    y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return y;
  }();
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m = [] {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
  }();
  return m;
}

const Matrix& hadamard() {
  static const Matrix m = [] {
    Matrix h(2, 2);
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    return h;
  }();
  return m;
}

const Matrix& cnot() {
  static const Matrix m = [] {
    Matrix c = Matrix::Zero(4, 4);
    c(0, 0) = c(1, 1) = c(2, 3) = c(3, 2) = 1;
    return c;
  }();
  return m;
}

const Matrix& cz_gate() {
  static const Matrix m = [] {
    Matrix c = Matrix::Identity(4, 4);
    c(3, 3) = -1;
    return c;
  }();
  return m;
}

Vector bell_vector(int which) {
  Vector v = Vector::Zero(4);
  switch (which) {
    case 0: v(0) = kInvSqrt2; v(3) = kInvSqrt2; break;   // phi+
    case 1: v(0) = kInvSqrt2; v(3) = -kInvSqrt2; break;  // phi-
    case 2: v(1) = kInvSqrt2; v(2) = kInvSqrt2; break;   // psi+
    case 3: v(1) = kInvSqrt2; v(2) = -kInvSqrt2; break;  // psi-
    default: throw std::invalid_argument("bell index must be 0..3");
  }
  return v;
}

std::vector<Matrix> bell_projectors() {
  std::vector<Matrix> out;
  for (int k = 0; k < 4; ++k) {
    Vector v = bell_vector(k);
    out.push_back(v * v.adjoint());
  }
  return out;
}

std::vector<Matrix> z_projectors() {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  return {p0, p1};
}

std::vector<Matrix> x_projectors() {
  Matrix plus(2, 2), minus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  minus << 0.5, -0.5, -0.5, 0.5;
  return {plus, minus};
}

PureState basis_state(const Register& reg, uint64_t bits) {
  check_unique(reg);
  const Eigen::Index d = Eigen::Index{1} << reg.size();
  if (bits >= static_cast<uint64_t>(d)) throw std::invalid_argument("basis index out of range");
  Vector v = Vector::Zero(d);
  v(static_cast<Eigen::Index>(bits)) = 1.0;
  return PureState{reg, v};
}

PureState plus_state(const QubitLabel& q) {
  Vector v(2);
  v << kInvSqrt2, kInvSqrt2;
  return PureState{{q}, v};
}

PureState bell_pure(int which, const QubitLabel& a, const QubitLabel& b) {
  return PureState{{a, b}, bell_vector(which)};
}

MixedState werner_state(double p, const QubitLabel& a, const QubitLabel& b) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("werner weight must be in [0,1]");
  Vector v = bell_vector(0);
  Matrix rho = p * (v * v.adjoint()) + (1.0 - p) / 4.0 * Matrix::Identity(4, 4);
  return MixedState{{a, b}, rho};
}

}  // namespace qnet::qsim
