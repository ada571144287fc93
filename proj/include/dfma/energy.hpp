#pragma once

#include <span>
#include <string>
#include <vector>

namespace dfma {

// Theoretical compute-energy accounting for dense (MAC) and spiking (AC)
// layers under 45 nm per-operation constants.

struct EnergyConstants {
  double e_mac_pj{4.6};  // energy per multiply-accumulate, picojoules
  double e_ac_pj{0.9};   // energy per accumulate, picojoules
};

enum class LayerKind { dense, spiking };

struct LayerOps {
  std::string name;
  LayerKind kind{LayerKind::dense};
  double base_mops{0.0};  // MACs for one dense forward pass, millions
  double rate{0.0};       // presynaptic spike rate, spiking layers only
  int timesteps{1};       // T, spiking layers only
};

// Spike-triggered synaptic operations for a spiking layer, in millions:
// T * rate * base_mops.
double sops_mops(const LayerOps& layer);

// Dense-network energy: e_mac * total MACs, reported in microjoules.
// All layers must be dense.
double ann_energy_uj(std::span<const LayerOps> layers, const EnergyConstants& constants = {});

struct SnnEnergy {
  double energy_uj{0.0};
  double total_mops{0.0};  // FLOPs of layer 1 plus SOPs of layers >= 2
};

// Spiking-network energy under the first-layer convention: layer 1 consumes
// real-valued input and is counted as dense MACs; layers 2..N are
// spike-driven ACs.
SnnEnergy snn_energy(std::span<const LayerOps> layers, const EnergyConstants& constants = {});

}  // namespace dfma
