#pragma once

#include "simoco/error.hpp"

namespace simoco {

/// First-order radio model: E_tx(d) = e_elec*k + e_amp*k*d^2, E_rx = e_elec*k
/// for a k-bit packet.
struct RadioEnergyModel {
  double e_elec = 50e-9;    // J/bit
  double e_amp = 100e-12;   // J/bit/m^2
  double packet_bits = 2000;

  void validate() const {
    if (!(e_elec > 0.0) || !(e_amp > 0.0) || !(packet_bits > 0.0))
      throw Error("radio parameters must be strictly positive");
  }
};

inline double tx_energy(const RadioEnergyModel& m, double d) {
  if (d < 0.0) throw Error("negative distance");
  return m.e_elec * m.packet_bits + m.e_amp * m.packet_bits * d * d;
}

inline double rx_energy(const RadioEnergyModel& m) { return m.e_elec * m.packet_bits; }

/// Below this a node can no longer receive a packet and counts as dead.
inline double death_threshold(const RadioEnergyModel& m) { return rx_energy(m); }

}  // namespace simoco
