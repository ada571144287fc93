#include "dfma/energy.hpp"

#include <string>

#include "dfma/errors.hpp"

namespace dfma {

namespace {

void validate_layer(const LayerOps& layer) {
  if (layer.base_mops < 0.0) {
    throw ParameterError("energy: layer '" + layer.name + "' has negative op count");
  }
  if (layer.kind == LayerKind::spiking) {
    if (!(layer.rate >= 0.0 && layer.rate <= 1.0)) {
      throw ParameterError("energy: layer '" + layer.name + "' spike rate must lie in [0,1]");
    }
    if (layer.timesteps < 1) {
      throw ParameterError("energy: layer '" + layer.name + "' needs timesteps >= 1");
    }
  }
}

void validate_constants(const EnergyConstants& constants) {
  if (!(constants.e_mac_pj > 0.0 && constants.e_ac_pj > 0.0)) {
    throw ParameterError("energy: per-op constants must be > 0");
  }
}

}  // namespace

double sops_mops(const LayerOps& layer) {
  if (layer.kind != LayerKind::spiking) {
    throw ParameterError("energy: SOPs are defined for spiking layers only ('" + layer.name +
                         "' is dense)");
  }
  validate_layer(layer);
  return static_cast<double>(layer.timesteps) * layer.rate * layer.base_mops;
}

// 1 M ops * 1 pJ/op = 1e6 pJ = 1 uJ, so microjoules come out as
// constant * millions-of-ops with no further conversion.
double ann_energy_uj(std::span<const LayerOps> layers, const EnergyConstants& constants) {
  validate_constants(constants);
  double total_mops = 0.0;
  for (const auto& layer : layers) {
    if (layer.kind != LayerKind::dense) {
      throw ParameterError("energy: ANN accounting expects dense layers only ('" + layer.name +
                           "' is spiking)");
    }
    validate_layer(layer);
    total_mops += layer.base_mops;
  }
  return constants.e_mac_pj * total_mops;
}

SnnEnergy snn_energy(std::span<const LayerOps> layers, const EnergyConstants& constants) {
  validate_constants(constants);
  if (layers.empty()) throw ParameterError("energy: no layers");
  if (layers[0].kind != LayerKind::dense) {
    throw ParameterError("energy: first layer must be dense (real-valued input)");
  }
  validate_layer(layers[0]);

  SnnEnergy out;
  out.energy_uj = constants.e_mac_pj * layers[0].base_mops;
  out.total_mops = layers[0].base_mops;
  for (std::size_t i = 1; i < layers.size(); ++i) {
    if (layers[i].kind != LayerKind::spiking) {
      throw ParameterError("energy: layers after the first must be spiking ('" + layers[i].name +
                           "' is dense)");
    }
    const double sops = sops_mops(layers[i]);
    out.energy_uj += constants.e_ac_pj * sops;
    out.total_mops += sops;
  }
  return out;
}

}  // namespace dfma
