#include "qnet/analyzers/bsa.hpp"

#include <cmath>

#include "qnet/qsim/gates.hpp"

namespace qnet::analyzers {

using interface::EmitterParams;
using interface::Geometry;
using qsim::Matrix;
using qsim::MixedState;
using qsim::QubitLabel;
using qsim::QubitKind;
using qsim::Register;
using qsim::Rng;

namespace {

double clip01(double v) { return std::min(1.0, std::max(0.0, v)); }

double free_space_gamma(const EmitterParams& p) { return p.gamma_rad + p.gamma_nonrad; }

QubitLabel fresh_spin(const Register& reg) {
  int next = 0;
  for (const auto& q : reg) next = std::max(next, q.id + 1);
  return QubitLabel{next, QubitKind::Spin};
}

}  // namespace

void BsaModel::validate() const {
  emitter.validate();
  if (pulse_width_sigma_omega < 0.0) throw std::invalid_argument("pulse width must be >= 0");
  if (delta_gamma_1d < 0.0) throw std::invalid_argument("delta_gamma_1d must be >= 0");
  switch (kind) {
    case BsaKind::LinearOptics:
      if (aux_photons != 0 && aux_photons != 4)
        throw std::invalid_argument("linear-optics model supports 0 or 4 auxiliary photons");
      break;
    case BsaKind::PassiveSorter:
      if (concatenations < 1) throw std::invalid_argument("concatenations must be >= 1");
      break;
    case BsaKind::PassiveCZChain:
      if (n_emitters < 1) throw std::invalid_argument("n_emitters must be >= 1");
      break;
    default:
      break;
  }
}

const char* to_string(BellOutcome o) {
  switch (o) {
    case BellOutcome::PhiPlus: return "phi+";
    case BellOutcome::PhiMinus: return "phi-";
    case BellOutcome::PsiPlus: return "psi+";
    case BellOutcome::PsiMinus: return "psi-";
    case BellOutcome::Failure: return "failure";
  }
  return "?";
}

double bsa_success_prob(const BsaModel& m) {
  m.validate();
  switch (m.kind) {
    case BsaKind::LinearOptics:
      return m.aux_photons >= 4 ? 0.75 : 0.5;
    case BsaKind::CavityCZ:
      return clip01(1.0 - m.constants.cavity_cz_failure / interface::cooperativity(m.emitter));
    case BsaKind::ActiveTwoSpin: {
      const double b = interface::beta(m.emitter);
      const double s = 2.0 * b - 1.0;
      return clip01(s * s);
    }
    case BsaKind::PassiveSorter:
      return clip01(1.0 - std::pow(0.25, m.concatenations));
    case BsaKind::PassiveCZChain:
      return 1.0;
    case BsaKind::ActiveSFG: {
      const double b = interface::beta(m.emitter);
      if (b <= 0.0) return 0.0;
      return clip01(1.0 - m.constants.sfg_failure * (1.0 - b) / b);
    }
  }
  throw std::invalid_argument("unknown BSA kind");
}

double bsa_error_prob(const BsaModel& m) {
  m.validate();
  auto inhomogeneity = [&](double scale) {
    if (m.delta_gamma_1d == 0.0) return 0.0;
    if (m.pulse_width_sigma_omega <= 0.0)
      throw std::invalid_argument("pulse width required when delta_gamma_1d > 0");
    const double x = m.delta_gamma_1d / m.pulse_width_sigma_omega;
    return clip01(scale * x * x);
  };
  switch (m.kind) {
    case BsaKind::LinearOptics:
      return 0.0;  // indistinguishable photons and ideal detectors assumed
    case BsaKind::CavityCZ: {
      const double c = interface::cooperativity(m.emitter);
      const double distortion =
          m.constants.cavity_cz_distortion * m.pulse_width_sigma_omega / m.emitter.kappa;
      return clip01(distortion + m.constants.cavity_cz_asym_loss / (c * c));
    }
    case BsaKind::ActiveTwoSpin: {
      const double denom = m.emitter.gamma_1d + free_space_gamma(m.emitter);
      if (denom <= 0.0) throw std::invalid_argument("zero decay rate");
      const double x = m.pulse_width_sigma_omega / denom;
      return clip01(m.constants.two_spin_distortion * x * x * x * x);
    }
    case BsaKind::PassiveSorter:
      return inhomogeneity(m.constants.sorter_inhomogeneity);
    case BsaKind::PassiveCZChain:
      return clip01(0.537 * std::pow(static_cast<double>(m.n_emitters), -1.61));
    case BsaKind::ActiveSFG:
      return inhomogeneity(m.constants.sfg_inhomogeneity);
  }
  throw std::invalid_argument("unknown BSA kind");
}

double optimal_pulse_width(int n_emitters, double gamma_total) {
  if (n_emitters < 1) throw std::invalid_argument("n_emitters must be >= 1");
  if (gamma_total <= 0.0) throw std::invalid_argument("gamma_total must be > 0");
  return 0.350 * std::pow(static_cast<double>(n_emitters), -0.81) * gamma_total;
}

namespace {

MixedState drop_or_unit(const MixedState& s, const Register& discard) {
  if (discard.size() == s.reg.size()) return MixedState{{}, Matrix::Ones(1, 1)};
  return qsim::partial_trace(s, discard);
}

BellOutcome misidentify(BellOutcome true_outcome, double error_prob, Rng& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) >= error_prob) return true_outcome;
  // A wrong announcement is drawn uniformly from the other three outcomes.
  const BellOutcome all[4] = {BellOutcome::PhiPlus, BellOutcome::PhiMinus, BellOutcome::PsiPlus,
                              BellOutcome::PsiMinus};
  std::uniform_int_distribution<int> pick(0, 2);
  int k = pick(rng);
  for (int i = 0; i < 4; ++i) {
    if (all[i] == true_outcome) continue;
    if (k == 0) return all[i];
    --k;
  }
  return true_outcome;
}

/// One ancilla-mediated parity measurement of two photons: the spin picks up
/// the conditional phase on each |H> component, then is read out in the +/-
/// basis. Returns parity (0 even, 1 odd), or nullopt on heralded photon loss.
std::optional<int> parity_stage(MixedState& s, const QubitLabel& p1, const QubitLabel& p2,
                                const EmitterParams& emitter, Rng& rng) {
  const QubitLabel anc = fresh_spin(s.reg);
  s = qsim::tensor(s, MixedState::from_pure(qsim::plus_state(anc)));
  for (const QubitLabel& ph : {p1, p2}) {
    auto ch = interface::spin_photon_cz_channel(emitter, ph, anc);
    auto res = qsim::apply_channel_sampled(s, ch, rng);
    if (res.lost) {
      s = drop_or_unit(res.post, {anc});
      return std::nullopt;
    }
    s = res.post;
  }
  auto meas = qsim::measure_projective(s, qsim::x_projectors(), {anc}, &rng);
  s = qsim::partial_trace(meas.post, {anc});
  return meas.outcome;  // 0 == "+" == even number of H photons
}

BsaResult cavity_cz_bsa(const MixedState& state, const QubitLabel& p1, const QubitLabel& p2,
                        const BsaModel& m, Rng& rng) {
  MixedState s = state;
  auto fail = [&](MixedState& st) {
    return BsaResult{BellOutcome::Failure, drop_or_unit(st, {p1, p2})};
  };

  auto zpar = parity_stage(s, p1, p2, m.emitter, rng);
  if (!zpar) return fail(s);

  // Hadamards rotate the photons so the second stage measures the XX parity.
  s = qsim::apply_unitary(s, qsim::hadamard(), {p1});
  s = qsim::apply_unitary(s, qsim::hadamard(), {p2});
  auto xpar = parity_stage(s, p1, p2, m.emitter, rng);
  if (!xpar) return fail(s);

  BellOutcome outcome;
  if (*zpar == 0)
    outcome = *xpar == 0 ? BellOutcome::PhiPlus : BellOutcome::PhiMinus;
  else
    outcome = *xpar == 0 ? BellOutcome::PsiPlus : BellOutcome::PsiMinus;
  return BsaResult{outcome, drop_or_unit(s, {p1, p2})};
}

}  // namespace

BsaResult simulate_bsa(const MixedState& state, const QubitLabel& p1, const QubitLabel& p2,
                       const BsaModel& m, Rng& rng) {
  m.validate();
  if (qsim::find_qubit(state.reg, p1) < 0 || qsim::find_qubit(state.reg, p2) < 0)
    throw std::invalid_argument("both photons must be in the register");

  if (m.kind == BsaKind::CavityCZ) return cavity_cz_bsa(state, p1, p2, m, rng);

  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) >= bsa_success_prob(m)) {
    MixedState s = state;
    return BsaResult{BellOutcome::Failure, drop_or_unit(s, {p1, p2})};
  }
  auto meas = qsim::measure_projective(state, qsim::bell_projectors(), {p1, p2}, &rng);
  const BellOutcome projected = static_cast<BellOutcome>(meas.outcome);
  const BellOutcome announced = misidentify(projected, bsa_error_prob(m), rng);
  return BsaResult{announced, drop_or_unit(meas.post, {p1, p2})};
}

double qnd_error_prob(const EmitterParams& p) {
  p.validate();
  double err;
  if (p.geometry == Geometry::Waveguide) {
    const double bc = beta_coh(p);
    if (bc <= 0.0) return 0.5;
    err = 1.0 / bc - 1.0;
  } else {
    err = 1.0 / interface::cooperativity(p, /*coherent=*/true);
  }
  return std::min(0.5, std::max(0.0, err));
}

QndResult qnd_detect(const MixedState& state, const QubitLabel& presence,
                     const EmitterParams& p, Rng& rng) {
  if (qsim::find_qubit(state.reg, presence) < 0)
    throw std::invalid_argument("presence qubit not in register");
  if (presence.kind != QubitKind::PhotonPresence)
    throw std::invalid_argument("qnd_detect expects a photon-presence qubit");

  // Spin ancilla in (|g>+|s>)/sqrt(2); a present photon flips the phase of
  // the coupled branch; readout in the +/- basis reveals the presence.
  const QubitLabel anc = fresh_spin(state.reg);
  MixedState s = qsim::tensor(state, MixedState::from_pure(qsim::plus_state(anc)));
  s = qsim::apply_unitary(s, qsim::cz_gate(), {presence, anc});
  auto meas = qsim::measure_projective(s, qsim::x_projectors(), {anc}, &rng);
  s = qsim::partial_trace(meas.post, {anc});

  bool present = meas.outcome == 1;  // "-" outcome: phase was flipped
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (u01(rng) < qnd_error_prob(p)) present = !present;
  return QndResult{present, s};
}

}  // namespace qnet::analyzers
