#include "qnet/cluster/emission.hpp"

#include <cmath>

#include "qnet/qsim/gates.hpp"

namespace qnet::cluster {

using interface::Geometry;
using qsim::Matrix;
using qsim::MixedState;
using qsim::PauliString;
using qsim::PureState;
using qsim::QubitKind;
using qsim::QubitLabel;
using qsim::Rng;

void EmissionConfig::validate() const {
  emitter.validate();
  if (n_photons < 1) throw std::invalid_argument("n_photons must be >= 1");
  if (cycle_time < 0.0) throw std::invalid_argument("cycle_time must be >= 0");
  if (n_photons + 1 > qsim::max_qubits())
    throw std::invalid_argument("emission exceeds the dense-register qubit cap");
}

QubitLabel emission_spin(const EmissionConfig& cfg) {
  return QubitLabel{cfg.label_offset, QubitKind::Spin};
}

QubitLabel emission_photon(const EmissionConfig& cfg, int i) {
  return QubitLabel{cfg.label_offset + 1 + i, QubitKind::PhotonPolarization};
}

namespace {

/// Collection probability per photon and coherence penalty beta_coh/beta
/// (identical to C_coh/C in cavity geometry).
struct PerPhotonModel {
  double collect = 1.0;
  double coherence = 1.0;
};

PerPhotonModel per_photon(const interface::EmitterParams& p) {
  PerPhotonModel m;
  if (p.geometry == Geometry::Waveguide) {
    m.collect = interface::beta(p) * p.eta_out;
    m.coherence = interface::beta_coh(p) / interface::beta(p);
  } else {
    const double c = interface::cooperativity(p);
    m.collect = interface::cavity_decay_fraction(c) * p.eta_out;
    m.coherence = interface::cooperativity(p, true) / c;
  }
  return m;
}

HeraldedState emit(const EmissionConfig& cfg, bool rotate) {
  cfg.validate();
  const auto model = per_photon(cfg.emitter);
  const QubitLabel spin = emission_spin(cfg);
  const double cycle_coherence = std::exp(-cfg.cycle_time / cfg.emitter.t_coh);

  MixedState s = MixedState::from_pure(qsim::plus_state(spin));
  for (int i = 0; i < cfg.n_photons; ++i) {
    s = qsim::apply_channel(s, interface::phase_damping_channel(cycle_coherence, spin));
    const QubitLabel ph = emission_photon(cfg, i);
    s = qsim::tensor(s, MixedState::from_pure(qsim::basis_state({ph}, 0)));
    s = qsim::apply_unitary(s, qsim::cnot(), {spin, ph});  // g -> H, s -> V
    s = qsim::apply_channel(s, interface::phase_damping_channel(model.coherence, ph));
    if (rotate) s = qsim::apply_unitary(s, qsim::hadamard(), {spin});
  }
  return HeraldedState{std::move(s), std::pow(model.collect, cfg.n_photons)};
}

}  // namespace

HeraldedState emit_ghz(const EmissionConfig& cfg) { return emit(cfg, false); }

HeraldedState emit_1d_cluster(const EmissionConfig& cfg) {
  EmissionConfig c = cfg;
  c.intermediate_rotation = true;
  return emit(c, true);
}

std::vector<PauliString> ghz_stabilizers(int n_photons) {
  const int n = n_photons + 1;
  std::vector<PauliString> gens;
  gens.push_back(PauliString{std::string(n, 'X'), +1});
  for (int i = 0; i + 1 < n; ++i) {
    std::string s(n, 'I');
    s[i] = s[i + 1] = 'Z';
    gens.push_back(PauliString{s, +1});
  }
  return gens;
}

std::vector<PauliString> cluster_stabilizers(int n_photons) {
  const int n = n_photons + 1;
  // Chain order produced by the emission circuit: register position 0 is the
  // spin, then photons in reverse emission order: [spin, p_n, ..., p_1].
  std::vector<int> chain;
  chain.push_back(0);
  for (int i = n - 1; i >= 1; --i) chain.push_back(i);

  std::vector<PauliString> gens;
  for (int i = 0; i < n; ++i) {
    std::string s(n, 'I');
    s[chain[i]] = 'X';
    if (i > 0) s[chain[i - 1]] = 'Z';
    if (i + 1 < n) s[chain[i + 1]] = 'Z';
    gens.push_back(PauliString{s, +1});
  }
  return gens;
}

std::optional<HeraldedState> fuse_strings(const HeraldedState& a, const QubitLabel& end_a,
                                          const HeraldedState& b, const QubitLabel& end_b,
                                          const QubitLabel& correction_target,
                                          const analyzers::BsaModel& m, Rng& rng) {
  MixedState joint = qsim::tensor(a.state, b.state);
  auto res = analyzers::simulate_bsa(joint, end_a, end_b, m, rng);
  if (res.outcome == analyzers::BellOutcome::Failure) return std::nullopt;

  MixedState s = std::move(res.post);
  switch (res.outcome) {
    case analyzers::BellOutcome::PhiPlus:
      break;
    case analyzers::BellOutcome::PhiMinus:
      s = qsim::apply_unitary(s, qsim::pauli_z(), {correction_target});
      break;
    case analyzers::BellOutcome::PsiPlus:
      s = qsim::apply_unitary(s, qsim::pauli_x(), {correction_target});
      break;
    case analyzers::BellOutcome::PsiMinus:
      s = qsim::apply_unitary(s, Matrix(qsim::pauli_z() * qsim::pauli_x()), {correction_target});
      break;
    default:
      break;
  }
  return HeraldedState{std::move(s), a.herald_probability * b.herald_probability};
}

}  // namespace qnet::cluster
