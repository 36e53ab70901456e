#pragma once

#include "qnet/interface/emitter.hpp"
#include "qnet/qsim/ops.hpp"

namespace qnet::analyzers {

enum class BsaKind {
  LinearOptics,
  CavityCZ,
  ActiveTwoSpin,
  PassiveSorter,
  PassiveCZChain,
  ActiveSFG,
};

/// Proportionality constants left unspecified by the parametric models.
/// All default to 1 and are exposed for sensitivity studies.
struct BsaConstants {
  double cavity_cz_failure = 1.0;       // failure ~ k / C
  double cavity_cz_distortion = 1.0;    // error ~ k * sigma_omega / kappa
  double cavity_cz_asym_loss = 1.0;     // error ~ k / C^2
  double two_spin_distortion = 1.0;     // error ~ k * (sigma/(Gamma_1d+gamma))^4
  double sorter_inhomogeneity = 1.0;    // error ~ k * (dGamma_1d/sigma)^2
  double sfg_failure = 1.0;             // failure ~ k * (1-beta)/beta
  double sfg_inhomogeneity = 1.0;       // error ~ k * (dGamma_1d/sigma)^2
};

struct BsaModel {
  BsaKind kind = BsaKind::LinearOptics;
  int aux_photons = 0;      // LinearOptics: 0 or 4
  int concatenations = 1;   // PassiveSorter
  int n_emitters = 1;       // PassiveCZChain
  double pulse_width_sigma_omega = 0.0;  // rad/s
  double delta_gamma_1d = 0.0;           // emitter coupling mismatch, 1/s
  interface::EmitterParams emitter;
  BsaConstants constants;

  void validate() const;
};

enum class BellOutcome { PhiPlus, PhiMinus, PsiPlus, PsiMinus, Failure };

const char* to_string(BellOutcome o);

double bsa_success_prob(const BsaModel& m);
double bsa_error_prob(const BsaModel& m);

/// Optimal Gaussian pulse width 0.350 * N^-0.81 * Gamma for the passive CZ
/// chain of N emitters.
double optimal_pulse_width(int n_emitters, double gamma_total);

struct BsaResult {
  BellOutcome outcome = BellOutcome::Failure;
  qsim::MixedState post;  // photons consumed (register without p1, p2)
};

/// Bell measurement of two photonic polarization qubits. CavityCZ runs a
/// circuit-level two-parity-measurement sequence built from the scattering
/// channel; other kinds are parametric (sampled success, exact Bell
/// projection, misidentified announcement with bsa_error_prob). Failure is
/// always heralded.
BsaResult simulate_bsa(const qsim::MixedState& state, const qsim::QubitLabel& p1,
                       const qsim::QubitLabel& p2, const BsaModel& m, qsim::Rng& rng);

double qnd_error_prob(const interface::EmitterParams& p);

struct QndResult {
  bool present = false;
  qsim::MixedState post;
};

/// Non-destructive presence detection of a photon-presence qubit via an
/// internally allocated spin ancilla. The reported flag is wrong with
/// probability qnd_error_prob; the presence populations are untouched.
QndResult qnd_detect(const qsim::MixedState& state, const qsim::QubitLabel& presence,
                     const interface::EmitterParams& p, qsim::Rng& rng);

}  // namespace qnet::analyzers
