#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dfma/di.hpp"
#include "dfma/energy.hpp"
#include "dfma/lif_sim.hpp"
#include "dfma/lif_spectral.hpp"
#include "dfma/matching.hpp"

namespace dfma {

// Serialization of the fixed on-disk formats. All floating-point output
// uses the shortest decimal representation that round-trips, so repeated
// runs are byte-identical.

std::string format_double(double v);

// {"L":..., "epsilon":..., "di":[...], "di_norm":[...]}
std::string di_spectrum_to_json(const DiSpectrum& di);
DiSpectrum di_spectrum_from_json(const std::string& text);

// CSV with header "omega,h_tilde".
std::string template_to_csv(const LifTemplate& tpl);

// {"beta":..., "cutoff":... | "saturated":true, "bin":...}; "bin" appears
// only when quantized_bin is set.
std::string bandwidth_to_json(const Bandwidth& bw);

// CSV with header "beta,tau,fms" (tau = 1/(1-beta)).
std::string fms_curve_to_csv(const FmsCurve& curve);
FmsCurve fms_curve_from_csv(const std::string& text);

// {"beta_dagger":..., "index":..., "deviations":[...], "degenerate":...}
std::string knee_to_json(const KneeResult& knee);

// CSV with header "t,u,spike".
std::string trace_to_csv(const SpikeTrace& trace);

// {"layer": {"beta": rate, ...}, ...}
std::string rates_to_json(const LayerRates& rates);
LayerRates rates_from_json(const std::string& text);

// Neuron config:
// {"beta":0.5 | "tau":2.0, "scheme":"euler"|"exponential",
//  "decay_input":bool, "v_th":number|"inf", "v_reset":number,
//  "reset":"hard"|"soft"}
// Exactly one of "beta"/"tau" must be present; the other fields default to
// euler / false / 1.0 / 0.0 / hard.
LifConfig lif_config_from_json(const std::string& text);

// Architecture description:
// {"timesteps":T, "layers":[{"name":..., "kind":"dense"|"spiking",
//  "mops":..., "rate":...}]}
struct Architecture {
  int timesteps{1};
  std::vector<LayerOps> layers;
};
Architecture architecture_from_json(const std::string& text);

struct EnergyReport {
  std::string kind;  // "ann" or "snn"
  double energy_uj{0.0};
  double total_mops{0.0};
  std::vector<LayerOps> layers;
  std::vector<double> layer_energy_uj;
  std::vector<double> layer_mops;  // MACs for dense, SOPs for spiking
};

EnergyReport make_energy_report(const Architecture& arch, const EnergyConstants& constants);
std::string energy_report_to_json(const EnergyReport& report);
// Aligned table; energies printed with 2 decimals.
std::string energy_report_to_table(const EnergyReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace dfma
