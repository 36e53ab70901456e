#pragma once

#include <optional>

#include "qnet/analyzers/bsa.hpp"

namespace qnet::cluster {

struct EmissionConfig {
  int n_photons = 1;
  interface::EmitterParams emitter;
  double cycle_time = 0.0;  // one excitation-emission round, s
  bool intermediate_rotation = false;  // GHZ if false, 1D cluster if true
  int label_offset = 0;  // first qubit id; the spin gets the offset itself

  void validate() const;
};

/// Post-selected state (all photons collected) plus the collection
/// probability; losses are heralded downstream.
struct HeraldedState {
  qsim::MixedState state;
  double herald_probability = 1.0;
};

/// Spin label and photon labels used by the emission operations.
qsim::QubitLabel emission_spin(const EmissionConfig& cfg);
qsim::QubitLabel emission_photon(const EmissionConfig& cfg, int i);  // i = 0..n-1

HeraldedState emit_ghz(const EmissionConfig& cfg);
HeraldedState emit_1d_cluster(const EmissionConfig& cfg);

/// GHZ generators {X..X, Z_i Z_i+1} over spin followed by photons.
std::vector<qsim::PauliString> ghz_stabilizers(int n_photons);
/// Line-cluster generators for the emitted chain [spin, p_n, ..., p_1].
std::vector<qsim::PauliString> cluster_stabilizers(int n_photons);

/// Fuse two heralded strings by a Bell measurement of one end photon from
/// each. On success the outcome-dependent Pauli correction is applied to
/// `correction_target` and the heralds multiply; a BSA failure propagates.
std::optional<HeraldedState> fuse_strings(const HeraldedState& a, const qsim::QubitLabel& end_a,
                                          const HeraldedState& b, const qsim::QubitLabel& end_b,
                                          const qsim::QubitLabel& correction_target,
                                          const analyzers::BsaModel& m, qsim::Rng& rng);

}  // namespace qnet::cluster
