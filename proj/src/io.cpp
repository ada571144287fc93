#include "dfma/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dfma/errors.hpp"

namespace dfma {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& token, const char* context) {
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw FormatError(std::string("io: bad number '") + token + "' in " + context);
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

nlohmann::json parse_json(const std::string& text, const char* context) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("io: JSON parse error in ") + context + ": " + e.what());
  }
}

}  // namespace

std::string di_spectrum_to_json(const DiSpectrum& di) {
  nlohmann::json doc;
  doc["L"] = di.grid.length;
  doc["epsilon"] = di.epsilon;
  doc["di"] = di.di;
  doc["di_norm"] = di.di_norm;
  return doc.dump(2) + "\n";
}

DiSpectrum di_spectrum_from_json(const std::string& text) {
  const nlohmann::json doc = parse_json(text, "DI spectrum");
  DiSpectrum di;
  try {
    di.grid = build_grid(doc.at("L").get<int>());
    di.epsilon = doc.at("epsilon").get<double>();
    di.di = doc.at("di").get<std::vector<double>>();
    di.di_norm = doc.at("di_norm").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("io: malformed DI spectrum: ") + e.what());
  }
  if (di.di.size() != di.grid.omegas.size() || di.di_norm.size() != di.grid.omegas.size()) {
    throw FormatError("io: DI spectrum arrays do not match the declared grid length");
  }
  return di;
}

std::string template_to_csv(const LifTemplate& tpl) {
  std::string out = "omega,h_tilde\n";
  for (std::size_t k = 0; k < tpl.values.size(); ++k) {
    out += format_double(tpl.grid.omegas[k]);
    out += ',';
    out += format_double(tpl.values[k]);
    out += '\n';
  }
  return out;
}

std::string bandwidth_to_json(const Bandwidth& bw) {
  nlohmann::json doc;
  doc["beta"] = bw.beta;
  if (bw.saturated()) {
    doc["saturated"] = true;
  } else {
    doc["cutoff"] = *bw.cutoff;
  }
  if (bw.quantized_bin.has_value()) doc["bin"] = *bw.quantized_bin;
  return doc.dump(2) + "\n";
}

std::string fms_curve_to_csv(const FmsCurve& curve) {
  std::string out = "beta,tau,fms\n";
  for (std::size_t r = 0; r < curve.betas.size(); ++r) {
    out += format_double(curve.betas[r]);
    out += ',';
    out += format_double(tau_from_beta(curve.betas[r]));
    out += ',';
    out += format_double(curve.fms[r]);
    out += '\n';
  }
  return out;
}

FmsCurve fms_curve_from_csv(const std::string& text) {
  const std::vector<std::string> lines = csv_lines(text);
  if (lines.empty() || lines[0] != "beta,tau,fms") {
    throw FormatError("io: FMS curve CSV must start with header 'beta,tau,fms'");
  }
  FmsCurve curve;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cols = split(lines[i], ',');
    if (cols.size() != 3) {
      throw FormatError("io: FMS curve row has " + std::to_string(cols.size()) + " columns");
    }
    curve.betas.push_back(parse_double(cols[0], "FMS curve"));
    curve.fms.push_back(parse_double(cols[2], "FMS curve"));
  }
  return curve;
}

std::string knee_to_json(const KneeResult& knee) {
  nlohmann::json doc;
  doc["beta_dagger"] = knee.beta_dagger;
  doc["index"] = knee.index;
  doc["deviations"] = knee.deviations;
  doc["degenerate"] = knee.degenerate;
  return doc.dump(2) + "\n";
}

std::string trace_to_csv(const SpikeTrace& trace) {
  std::string out = "t,u,spike\n";
  for (int t = 0; t < trace.length(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(trace.potentials[static_cast<std::size_t>(t)]);
    out += ',';
    out += trace.spikes[static_cast<std::size_t>(t)] ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string rates_to_json(const LayerRates& rates) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [layer, by_beta] : rates) {
    nlohmann::json entry = nlohmann::json::object();
    for (const auto& [beta, gamma] : by_beta) entry[format_double(beta)] = gamma;
    doc[layer] = std::move(entry);
  }
  return doc.dump(2) + "\n";
}

LayerRates rates_from_json(const std::string& text) {
  const nlohmann::json doc = parse_json(text, "rate report");
  if (!doc.is_object()) throw FormatError("io: rate report must be a JSON object");
  LayerRates rates;
  for (const auto& [layer, entry] : doc.items()) {
    if (!entry.is_object()) {
      throw FormatError("io: rate report layer '" + layer + "' must map beta to rate");
    }
    for (const auto& [beta_key, gamma] : entry.items()) {
      const double beta = parse_double(beta_key, "rate report");
      if (!gamma.is_number()) {
        throw FormatError("io: rate report layer '" + layer + "' has a non-numeric rate");
      }
      rates[layer][beta] = gamma.get<double>();
    }
  }
  return rates;
}

LifConfig lif_config_from_json(const std::string& text) {
  const nlohmann::json doc = parse_json(text, "neuron config");
  LifConfig config;
  try {
    DecayScheme scheme = DecayScheme::euler;
    if (doc.contains("scheme")) {
      const std::string s = doc["scheme"].get<std::string>();
      if (s == "euler") {
        scheme = DecayScheme::euler;
      } else if (s == "exponential") {
        scheme = DecayScheme::exponential;
      } else {
        throw FormatError("io: unknown decay scheme '" + s + "'");
      }
    }
    const bool has_beta = doc.contains("beta");
    const bool has_tau = doc.contains("tau");
    if (has_beta == has_tau) {
      throw FormatError("io: neuron config needs exactly one of 'beta' or 'tau'");
    }
    config.leak = has_beta ? leak_from_beta(doc["beta"].get<double>(), scheme)
                           : leak_from_tau(doc["tau"].get<double>(), scheme);
    config.decay_input = doc.value("decay_input", false);
    if (doc.contains("v_th")) {
      if (doc["v_th"].is_string()) {
        const std::string s = doc["v_th"].get<std::string>();
        if (s != "inf" && s != "infinity") {
          throw FormatError("io: v_th string must be 'inf', got '" + s + "'");
        }
        config.v_th = std::numeric_limits<double>::infinity();
      } else {
        config.v_th = doc["v_th"].get<double>();
      }
    }
    config.v_reset = doc.value("v_reset", 0.0);
    if (doc.contains("reset")) {
      const std::string r = doc["reset"].get<std::string>();
      if (r == "hard") {
        config.reset_mode = ResetMode::hard;
      } else if (r == "soft") {
        config.reset_mode = ResetMode::soft;
      } else {
        throw FormatError("io: unknown reset mode '" + r + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("io: malformed neuron config: ") + e.what());
  }
  config.validate();
  return config;
}

Architecture architecture_from_json(const std::string& text) {
  const nlohmann::json doc = parse_json(text, "architecture");
  Architecture arch;
  try {
    arch.timesteps = doc.at("timesteps").get<int>();
    for (const auto& l : doc.at("layers")) {
      LayerOps layer;
      layer.name = l.at("name").get<std::string>();
      const std::string kind = l.at("kind").get<std::string>();
      if (kind == "dense") {
        layer.kind = LayerKind::dense;
      } else if (kind == "spiking") {
        layer.kind = LayerKind::spiking;
      } else {
        throw FormatError("io: unknown layer kind '" + kind + "'");
      }
      layer.base_mops = l.at("mops").get<double>();
      if (layer.kind == LayerKind::spiking) {
        layer.rate = l.at("rate").get<double>();
        layer.timesteps = arch.timesteps;
      }
      arch.layers.push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("io: malformed architecture: ") + e.what());
  }
  if (arch.timesteps < 1) throw FormatError("io: timesteps must be >= 1");
  if (arch.layers.empty()) throw FormatError("io: architecture has no layers");
  return arch;
}

EnergyReport make_energy_report(const Architecture& arch, const EnergyConstants& constants) {
  EnergyReport report;
  report.layers = arch.layers;

  bool any_spiking = false;
  for (const auto& l : arch.layers) any_spiking = any_spiking || l.kind == LayerKind::spiking;

  if (any_spiking) {
    report.kind = "snn";
    const SnnEnergy total = snn_energy(arch.layers, constants);
    report.energy_uj = total.energy_uj;
    report.total_mops = total.total_mops;
    for (std::size_t i = 0; i < arch.layers.size(); ++i) {
      if (i == 0) {
        report.layer_mops.push_back(arch.layers[i].base_mops);
        report.layer_energy_uj.push_back(constants.e_mac_pj * arch.layers[i].base_mops);
      } else {
        const double sops = sops_mops(arch.layers[i]);
        report.layer_mops.push_back(sops);
        report.layer_energy_uj.push_back(constants.e_ac_pj * sops);
      }
    }
  } else {
    report.kind = "ann";
    report.energy_uj = ann_energy_uj(arch.layers, constants);
    for (const auto& l : arch.layers) {
      report.layer_mops.push_back(l.base_mops);
      report.layer_energy_uj.push_back(constants.e_mac_pj * l.base_mops);
      report.total_mops += l.base_mops;
    }
  }
  return report;
}

std::string energy_report_to_json(const EnergyReport& report) {
  nlohmann::json doc;
  doc["kind"] = report.kind;
  doc["energy_uj"] = report.energy_uj;
  doc["ops_m"] = report.total_mops;
  doc["layers"] = nlohmann::json::array();
  for (std::size_t i = 0; i < report.layers.size(); ++i) {
    const LayerOps& l = report.layers[i];
    nlohmann::json entry;
    entry["name"] = l.name;
    entry["kind"] = l.kind == LayerKind::dense ? "dense" : "spiking";
    entry["mops"] = l.base_mops;
    if (l.kind == LayerKind::spiking) {
      entry["rate"] = l.rate;
      entry["timesteps"] = l.timesteps;
      entry["sops_m"] = report.layer_mops[i];
    }
    entry["energy_uj"] = report.layer_energy_uj[i];
    doc["layers"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string energy_report_to_table(const EnergyReport& report) {
  char line[160];
  std::string out;
  std::snprintf(line, sizeof line, "%-16s %-8s %12s %8s %12s %12s\n", "layer", "kind", "mops",
                "rate", "ops_m", "energy_uj");
  out += line;
  for (std::size_t i = 0; i < report.layers.size(); ++i) {
    const LayerOps& l = report.layers[i];
    char rate[16];
    if (l.kind == LayerKind::spiking) {
      std::snprintf(rate, sizeof rate, "%.3f", l.rate);
    } else {
      std::snprintf(rate, sizeof rate, "%s", "-");
    }
    std::snprintf(line, sizeof line, "%-16s %-8s %12.4f %8s %12.4f %12.2f\n", l.name.c_str(),
                  l.kind == LayerKind::dense ? "dense" : "spiking", l.base_mops, rate,
                  report.layer_mops[i], report.layer_energy_uj[i]);
    out += line;
  }
  std::snprintf(line, sizeof line, "%-16s %-8s %12s %8s %12.4f %12.2f\n", "total", report.kind.c_str(),
                "", "", report.total_mops, report.energy_uj);
  out += line;
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("io: cannot open '" + path.string() + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("io: cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw FormatError("io: short write to '" + path.string() + "'");
}

}  // namespace dfma
