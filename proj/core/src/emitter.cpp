#include "qnet/interface/emitter.hpp"

#include <cmath>

#include "qnet/qsim/gates.hpp"

namespace qnet::interface {

using qsim::Matrix;
using qsim::QuantumChannel;
using qsim::QubitLabel;

void EmitterParams::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (v < 0.0 || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be >= 0");
  };
  nonneg(gamma_rad, "gamma_rad");
  nonneg(gamma_nonrad, "gamma_nonrad");
  nonneg(gamma_dp, "gamma_dp");
  nonneg(gamma_1d, "gamma_1d");
  nonneg(kappa, "kappa");
  nonneg(delta_omega, "delta_omega");
  if (t_coh <= 0.0) throw std::invalid_argument("t_coh must be > 0");
  if (eta_in < 0.0 || eta_in > 1.0) throw std::invalid_argument("eta_in must be in [0,1]");
  if (eta_out < 0.0 || eta_out > 1.0) throw std::invalid_argument("eta_out must be in [0,1]");
}

void LinkParams::validate() const {
  if (length_km < 0.0) throw std::invalid_argument("length_km must be >= 0");
  if (attenuation_db_per_km < 0.0) throw std::invalid_argument("attenuation_db_per_km must be >= 0");
  if (signal_speed_km_per_s <= 0.0) throw std::invalid_argument("signal_speed_km_per_s must be > 0");
}

double beta(const EmitterParams& p) {
  if (p.geometry != Geometry::Waveguide)
    throw std::invalid_argument("beta is defined for waveguide geometry");
  const double total = p.gamma_1d + p.gamma_rad + p.gamma_nonrad;
  if (total <= 0.0) throw std::invalid_argument("beta: total decay rate is zero");
  return p.gamma_1d / total;
}

double beta_coh(const EmitterParams& p) {
  if (p.geometry != Geometry::Waveguide)
    throw std::invalid_argument("beta_coh is defined for waveguide geometry");
  const double denom = p.gamma_1d + p.gamma_rad + p.gamma_nonrad + p.gamma_dp;
  if (denom <= 0.0) throw std::invalid_argument("beta_coh: zero denominator");
  return p.gamma_1d / denom;
}

double cooperativity(const EmitterParams& p, bool coherent) {
  if (p.geometry != Geometry::Cavity)
    throw std::invalid_argument("cooperativity is defined for cavity geometry");
  double denom = p.kappa * (p.gamma_rad + p.gamma_nonrad + (coherent ? p.gamma_dp : 0.0));
  if (denom <= 0.0) throw std::invalid_argument("cooperativity: zero denominator");
  return 4.0 * p.g * p.g / denom;
}

double cavity_decay_fraction(double c) {
  if (c < 0.0) throw std::invalid_argument("cooperativity must be >= 0");
  return c / (1.0 + c);
}

double reflection_coefficient(double c, bool spin_in_s) {
  if (c < 0.0) throw std::invalid_argument("cooperativity must be >= 0");
  if (!spin_in_s) return -1.0;
  return (-1.0 + 4.0 * c) / (1.0 + 4.0 * c);
}

double emitter_reflection(const EmitterParams& p) {
  if (p.geometry == Geometry::Cavity) {
    // Table-1 cooperativity is 4x the scattering-formula convention; the
    // factors cancel: r = (C_table - 1)/(C_table + 1).
    return reflection_coefficient(cooperativity(p) / 4.0, true);
  }
  return 2.0 * beta(p) - 1.0;
}

QuantumChannel spin_photon_cz_channel(const EmitterParams& p, const QubitLabel& photon,
                                      const QubitLabel& spin) {
  p.validate();
  const double r = emitter_reflection(p);

  // Basis order (photon, spin) with photon H=|0>, spin g=|0>:
  // |Hg>, |Hs>, |Vg>, |Vs>. The coupled branch |Hs> reflects with amplitude
  // r; its missing weight is spontaneous-emission loss (heralded: no click).
  Matrix k0 = Matrix::Identity(4, 4);
  k0(1, 1) = -r;
  Matrix k_loss = Matrix::Zero(4, 4);
  k_loss(1, 1) = std::sqrt(std::max(0.0, 1.0 - r * r));

  QuantumChannel ch;
  ch.acts_on = {photon, spin};
  const double gamma_decay = p.geometry == Geometry::Cavity
                                 ? p.gamma_rad + p.gamma_nonrad
                                 : p.gamma_1d + p.gamma_rad + p.gamma_nonrad;
  // Spin coherence multiplier Gamma/(Gamma + gamma_dp) during the scattering
  // event, realized as a phase-flip pair.
  const double lam = gamma_decay > 0.0 ? gamma_decay / (gamma_decay + p.gamma_dp) : 1.0;
  const double p_flip = (1.0 - lam) / 2.0;
  if (p_flip > 0.0) {
    Matrix zs = Matrix::Identity(4, 4);
    zs(1, 1) = -1;
    zs(3, 3) = -1;  // Z on the spin
    ch.operators = {std::sqrt(1.0 - p_flip) * k0, std::sqrt(1.0 - p_flip) * k_loss,
                    std::sqrt(p_flip) * zs * k0, std::sqrt(p_flip) * zs * k_loss};
    ch.heralded_loss = {false, true, false, true};
  } else {
    ch.operators = {k0, k_loss};
    ch.heralded_loss = {false, true};
  }
  return ch;
}

double fiber_transmissivity(const LinkParams& l) {
  l.validate();
  return std::pow(10.0, -l.attenuation_db_per_km * l.length_km / 10.0);
}

QuantumChannel phase_damping_channel(double coherence, const QubitLabel& q) {
  if (coherence < 0.0 || coherence > 1.0)
    throw std::invalid_argument("coherence multiplier must be in [0,1]");
  QuantumChannel ch;
  ch.acts_on = {q};
  ch.operators = {std::sqrt((1.0 + coherence) / 2.0) * qsim::pauli_i(),
                  std::sqrt((1.0 - coherence) / 2.0) * qsim::pauli_z()};
  return ch;
}

QuantumChannel memory_dephasing_channel(double t_wait, const EmitterParams& p,
                                        const QubitLabel& spin) {
  if (t_wait < 0.0) throw std::invalid_argument("t_wait must be >= 0");
  p.validate();
  return phase_damping_channel(std::exp(-t_wait / p.t_coh), spin);
}

}  // namespace qnet::interface
