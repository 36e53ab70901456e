#include "qnet/qsim/ops.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>

namespace qnet::qsim {

int find_qubit(const Register& reg, const QubitLabel& q) {
  for (size_t i = 0; i < reg.size(); ++i)
    if (reg[i] == q) return static_cast<int>(i);
  return -1;
}

void check_unique(const Register& reg) {
  for (size_t i = 0; i < reg.size(); ++i)
    for (size_t j = i + 1; j < reg.size(); ++j)
      if (reg[i] == reg[j])
        throw std::invalid_argument("duplicate qubit label id=" + std::to_string(reg[i].id));
}

void PureState::check_valid() const {
  check_unique(reg);
  if (amp.size() != (Eigen::Index{1} << reg.size()))
    throw std::invalid_argument("amplitude vector length does not match register");
  if (std::abs(amp.squaredNorm() - 1.0) > tolerances().unit_norm)
    throw std::invalid_argument("pure state not normalized");
}

MixedState MixedState::from_pure(const PureState& psi) {
  return MixedState{psi.reg, psi.amp * psi.amp.adjoint()};
}

void MixedState::check_valid(bool psd) const {
  check_unique(reg);
  const Eigen::Index d = Eigen::Index{1} << reg.size();
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("density matrix dimension does not match register");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tolerances().hermiticity)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tolerances().trace)
    throw std::invalid_argument("density matrix trace != 1");
  if (psd) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < tolerances().psd_floor)
      throw std::invalid_argument("density matrix has negative eigenvalue");
  }
}

void QuantumChannel::check_trace_preserving() const {
  if (operators.empty()) throw std::invalid_argument("channel has no operators");
  Matrix sum = Matrix::Zero(operators[0].rows(), operators[0].cols());
  for (const auto& k : operators) {
    if (k.rows() != sum.rows() || k.cols() != sum.cols())
      throw std::invalid_argument("channel operators differ in dimension");
    sum += k.adjoint() * k;
  }
  Matrix eye = Matrix::Identity(sum.rows(), sum.cols());
  if ((sum - eye).cwiseAbs().maxCoeff() > tolerances().trace)
    throw std::invalid_argument("channel is not trace preserving");
}

Matrix embed_operator(const Matrix& op, const std::vector<int>& positions, int n_qubits) {
  const int k = static_cast<int>(positions.size());
  const Eigen::Index dsub = Eigen::Index{1} << k;
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  if (op.rows() != dsub || op.cols() != dsub)
    throw std::invalid_argument("operator dimension does not match qubit count");
  for (int p : positions)
    if (p < 0 || p >= n_qubits) throw std::invalid_argument("embed position out of range");

  // Shift of register position p (qubit 0 is the most significant bit).
  auto shift = [&](int p) { return n_qubits - 1 - p; };

  Matrix full = Matrix::Zero(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    Eigen::Index sub_col = 0;
    for (int j = 0; j < k; ++j)
      sub_col = (sub_col << 1) | ((col >> shift(positions[j])) & 1);
    for (Eigen::Index sub_row = 0; sub_row < dsub; ++sub_row) {
      const Complex a = op(sub_row, sub_col);
      if (a == Complex{0.0, 0.0}) continue;
      Eigen::Index row = col;
      for (int j = 0; j < k; ++j) {
        const Eigen::Index mask = Eigen::Index{1} << shift(positions[j]);
        if ((sub_row >> (k - 1 - j)) & 1)
          row |= mask;
        else
          row &= ~mask;
      }
      full(row, col) += a;
    }
  }
  return full;
}

namespace {

std::vector<int> positions_of(const Register& reg, const Register& subset) {
  std::vector<int> pos;
  pos.reserve(subset.size());
  for (const auto& q : subset) {
    int p = find_qubit(reg, q);
    if (p < 0) throw std::invalid_argument("qubit id=" + std::to_string(q.id) + " not in register");
    pos.push_back(p);
  }
  return pos;
}

}  // namespace

MixedState tensor(const MixedState& a, const MixedState& b) {
  for (const auto& q : b.reg)
    if (find_qubit(a.reg, q) >= 0)
      throw std::invalid_argument("tensor: overlapping qubit label id=" + std::to_string(q.id));
  if (static_cast<int>(a.reg.size() + b.reg.size()) > max_qubits())
    throw std::invalid_argument("tensor: register exceeds qubit cap");
  MixedState out;
  out.reg = a.reg;
  out.reg.insert(out.reg.end(), b.reg.begin(), b.reg.end());
  out.rho = Eigen::kroneckerProduct(a.rho, b.rho);
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  for (const auto& q : b.reg)
    if (find_qubit(a.reg, q) >= 0)
      throw std::invalid_argument("tensor: overlapping qubit label id=" + std::to_string(q.id));
  PureState out;
  out.reg = a.reg;
  out.reg.insert(out.reg.end(), b.reg.begin(), b.reg.end());
  out.amp = Eigen::kroneckerProduct(a.amp, b.amp);
  return out;
}

MixedState apply_channel(const MixedState& s, const QuantumChannel& ch) {
  ch.check_trace_preserving();
  const auto pos = positions_of(s.reg, ch.acts_on);
  Matrix out = Matrix::Zero(s.rho.rows(), s.rho.cols());
  for (const auto& k : ch.operators) {
    Matrix full = embed_operator(k, pos, s.num_qubits());
    out += full * s.rho * full.adjoint();
  }
  return MixedState{s.reg, out};
}

MixedState apply_unitary(const MixedState& s, const Matrix& u, const Register& acts_on) {
  Matrix full = embed_operator(u, positions_of(s.reg, acts_on), s.num_qubits());
  return MixedState{s.reg, full * s.rho * full.adjoint()};
}

PureState apply_unitary(const PureState& s, const Matrix& u, const Register& acts_on) {
  Matrix full = embed_operator(u, positions_of(s.reg, acts_on), s.num_qubits());
  return PureState{s.reg, full * s.amp};
}

SampledChannelResult apply_channel_sampled(const MixedState& s, const QuantumChannel& ch, Rng& rng) {
  ch.check_trace_preserving();
  const auto pos = positions_of(s.reg, ch.acts_on);
  Matrix kept = Matrix::Zero(s.rho.rows(), s.rho.cols());
  double p_loss = 0.0;
  for (size_t i = 0; i < ch.operators.size(); ++i) {
    const bool lost = i < ch.heralded_loss.size() && ch.heralded_loss[i];
    Matrix full = embed_operator(ch.operators[i], pos, s.num_qubits());
    Matrix term = full * s.rho * full.adjoint();
    if (lost)
      p_loss += term.trace().real();
    else
      kept += term;
  }
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) < p_loss) return {true, s};
  const double keep = kept.trace().real();
  if (keep <= 0.0) throw std::runtime_error("channel sampling: zero surviving weight");
  return {false, MixedState{s.reg, kept / keep}};
}

MeasurementResult measure_projective(const MixedState& s, const std::vector<Matrix>& projectors,
                                     const Register& acts_on, Rng* rng, std::optional<int> forced) {
  if (projectors.empty()) throw std::invalid_argument("no projectors supplied");
  const auto pos = positions_of(s.reg, acts_on);

  Matrix sum = Matrix::Zero(projectors[0].rows(), projectors[0].cols());
  for (const auto& p : projectors) sum += p;
  if ((sum - Matrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff() > tolerances().trace)
    throw std::invalid_argument("projectors are not complete");

  std::vector<Matrix> full(projectors.size());
  std::vector<double> prob(projectors.size());
  double total = 0.0;
  for (size_t i = 0; i < projectors.size(); ++i) {
    full[i] = embed_operator(projectors[i], pos, s.num_qubits());
    prob[i] = std::max(0.0, (full[i] * s.rho).trace().real());
    total += prob[i];
  }
  if (std::abs(total - 1.0) > tolerances().trace)
    throw std::runtime_error("measurement probabilities do not sum to 1");

  int outcome;
  if (forced) {
    outcome = *forced;
    if (outcome < 0 || outcome >= static_cast<int>(projectors.size()))
      throw std::invalid_argument("forced outcome index out of range");
    if (prob[outcome] < 1e-15)
      throw std::runtime_error("forced outcome has zero probability");
  } else {
    if (!rng) throw std::invalid_argument("rng required when outcome is not forced");
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double r = u01(*rng) * total;
    outcome = static_cast<int>(projectors.size()) - 1;
    for (size_t i = 0; i < prob.size(); ++i) {
      if (r < prob[i]) {
        outcome = static_cast<int>(i);
        break;
      }
      r -= prob[i];
    }
  }
  Matrix post = full[outcome] * s.rho * full[outcome].adjoint() / prob[outcome];
  return {outcome, MixedState{s.reg, post}, prob[outcome]};
}

MixedState partial_trace(const MixedState& s, const Register& discard) {
  if (discard.size() >= s.reg.size())
    throw std::invalid_argument("partial_trace: cannot discard the entire register");
  const auto drop = positions_of(s.reg, discard);

  std::vector<int> keep;
  for (int i = 0; i < s.num_qubits(); ++i)
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);

  const int n = s.num_qubits();
  const int nk = static_cast<int>(keep.size());
  const int nd = n - nk;
  auto shift = [&](int p) { return n - 1 - p; };

  const Eigen::Index dk = Eigen::Index{1} << nk;
  const Eigen::Index dd = Eigen::Index{1} << nd;
  MixedState out;
  for (int p : keep) out.reg.push_back(s.reg[p]);
  out.rho = Matrix::Zero(dk, dk);

  auto expand = [&](Eigen::Index kept_bits, Eigen::Index dropped_bits) {
    Eigen::Index idx = 0;
    for (int j = 0; j < nk; ++j)
      if ((kept_bits >> (nk - 1 - j)) & 1) idx |= Eigen::Index{1} << shift(keep[j]);
    for (int j = 0; j < nd; ++j)
      if ((dropped_bits >> (nd - 1 - j)) & 1) idx |= Eigen::Index{1} << shift(drop[j]);
    return idx;
  };

  for (Eigen::Index r = 0; r < dk; ++r)
    for (Eigen::Index c = 0; c < dk; ++c) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index e = 0; e < dd; ++e) acc += s.rho(expand(r, e), expand(c, e));
      out.rho(r, c) = acc;
    }
  return out;
}

double fidelity(const MixedState& rho, const PureState& psi) {
  if (rho.reg.size() != psi.reg.size())
    throw std::invalid_argument("fidelity: register size mismatch");
  // Align psi's register order with rho's.
  std::vector<int> pos = positions_of(psi.reg, rho.reg);
  const int n = rho.num_qubits();
  Vector aligned = Vector::Zero(psi.amp.size());
  for (Eigen::Index i = 0; i < psi.amp.size(); ++i) {
    Eigen::Index j = 0;
    for (int q = 0; q < n; ++q) {
      const int bit = (i >> (n - 1 - pos[q])) & 1;
      j = (j << 1) | bit;
    }
    aligned(j) = psi.amp(i);
  }
  return std::max(0.0, (aligned.adjoint() * rho.rho * aligned)(0, 0).real());
}

double stabilizer_expectation(const MixedState& s, const PauliString& g) {
  const int n = s.num_qubits();
  if (static_cast<int>(g.letters.size()) != n)
    throw std::invalid_argument("Pauli string length does not match register");
  // P is a signed permutation: P|j> = phase(j) |pi(j)>; Tr(rho P) = sum_j phase(j) <j|rho|pi(j)>.
  Complex acc{0.0, 0.0};
  const Eigen::Index d = Eigen::Index{1} << n;
  for (Eigen::Index j = 0; j < d; ++j) {
    Eigen::Index pj = j;
    Complex phase{1.0, 0.0};
    for (int q = 0; q < n; ++q) {
      const int bit = (j >> (n - 1 - q)) & 1;
      switch (g.letters[q]) {
        case 'I':
          break;
        case 'X':
          pj ^= Eigen::Index{1} << (n - 1 - q);
          break;
        case 'Y':
          pj ^= Eigen::Index{1} << (n - 1 - q);
          phase *= bit ? Complex{0.0, -1.0} : Complex{0.0, 1.0};
          break;
        case 'Z':
          if (bit) phase = -phase;
          break;
        default:
          throw std::invalid_argument("invalid Pauli letter");
      }
    }
    acc += phase * s.rho(j, pj);
  }
  return g.sign * acc.real();
}

uint64_t trial_seed(uint64_t root, uint64_t counter) {
  uint64_t z = root + counter * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace qnet::qsim
