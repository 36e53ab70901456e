#pragma once

#include "qnet/qsim/types.hpp"

namespace qnet::interface {

enum class Geometry { Waveguide, Cavity };

/// Figure-of-merit set for one spin-photon interface. Rates in 1/s unless
/// noted. For waveguide geometry `g`/`kappa` are unused; for cavity geometry
/// `gamma_1d` is unused.
struct EmitterParams {
  double gamma_rad = 0.0;
  double gamma_nonrad = 0.0;
  double gamma_dp = 0.0;
  double gamma_1d = 0.0;
  double g = 0.0;            // single-photon Rabi frequency, rad/s
  double kappa = 0.0;        // cavity field decay rate
  double t_coh = 1.0;        // spin coherence time, s
  double delta_omega = 0.0;  // inhomogeneous broadening, rad/s
  double eta_in = 1.0;
  double eta_out = 1.0;
  Geometry geometry = Geometry::Waveguide;

  void validate() const;

  static EmitterParams ideal_waveguide() {
    EmitterParams p;
    p.gamma_1d = 1.0;
    p.t_coh = 1e30;
    return p;
  }
  static EmitterParams ideal_cavity(double cooperativity = 1e12) {
    EmitterParams p;
    p.geometry = Geometry::Cavity;
    p.gamma_rad = 1.0;
    p.kappa = 1.0;
    p.g = std::sqrt(cooperativity / 4.0);
    p.t_coh = 1e30;
    return p;
  }
};

struct LinkParams {
  double length_km = 0.0;
  double attenuation_db_per_km = 0.2;
  double signal_speed_km_per_s = 2.0e5;

  void validate() const;
};

double beta(const EmitterParams& p);
double beta_coh(const EmitterParams& p);
/// Table-1 convention: C = 4|g|^2 / (kappa (gamma_rad + gamma_nonrad [+ gamma_dp])).
double cooperativity(const EmitterParams& p, bool coherent = false);
double cavity_decay_fraction(double c);

/// Scattering amplitude (-1 + 4 C N_s)/(1 + 4 C N_s). Note: this takes the
/// cooperativity in the C = |g|^2/(gamma kappa) convention, a factor 4 below
/// the Table-1 convention used by cooperativity(); emitter_reflection() does
/// the conversion.
double reflection_coefficient(double c, bool spin_in_s);

/// Reflection amplitude of the coupled-spin branch for a parameter set:
/// cavity uses the scattering formula above, waveguide uses 2*beta - 1.
double emitter_reflection(const EmitterParams& p);

/// Conditional-phase channel on {photon-polarization, photon basis H=|0>},
/// {spin, basis g=|0>, s=|1>}. The dominant operator applies the -r phase on
/// |H>|s> (global mirror phase removed); the missing |H>|s> weight is a
/// heralded photon-loss operator, and pure dephasing adds a spin phase flip.
qsim::QuantumChannel spin_photon_cz_channel(const EmitterParams& p,
                                            const qsim::QubitLabel& photon,
                                            const qsim::QubitLabel& spin);

double fiber_transmissivity(const LinkParams& l);

/// Phase damping with coherence multiplier exp(-t_wait / t_coh).
qsim::QuantumChannel memory_dephasing_channel(double t_wait, const EmitterParams& p,
                                              const qsim::QubitLabel& spin);

/// Phase damping with an explicit coherence multiplier in [0,1].
qsim::QuantumChannel phase_damping_channel(double coherence, const qsim::QubitLabel& q);

}  // namespace qnet::interface
