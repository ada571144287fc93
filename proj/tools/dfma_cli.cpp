// dfma: command-line front end for the discrete-time frequency-matching
// analysis toolkit. Subcommands cover the full workflow: dataset
// preprocessing, discriminative spectra, LIF templates and bandwidths,
// FMS sweeps with reference-boundary selection, neuron simulation,
// spike-rate validity checks, and energy accounting.
//
// Exit codes: 0 success, 2 usage/parameter error, 3 data/format error,
// 4 domain error (e.g. no discrimination anywhere in the spectrum).

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfma/di.hpp"
#include "dfma/energy.hpp"
#include "dfma/errors.hpp"
#include "dfma/ingest.hpp"
#include "dfma/io.hpp"
#include "dfma/lif_sim.hpp"
#include "dfma/lif_spectral.hpp"
#include "dfma/matching.hpp"
#include "dfma/parallel.hpp"
#include "dfma/spectrum.hpp"

namespace fs = std::filesystem;
using namespace dfma;

namespace {

struct GlobalOpts {
  std::string out;
  unsigned seed{0};  // reserved for synthetic-data generators
  bool quiet{false};
};

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(g.out, text);
    if (!g.quiet) std::cout << "wrote " << g.out << "\n";
  }
}

// "start:stop:step" (inclusive of stop when step divides the range) or a
// comma-separated list. Values snapped to 12 decimals so sweep grids print
// cleanly.
std::vector<double> parse_beta_spec(const std::string& spec) {
  std::vector<double> betas;
  auto parse_one = [&](const std::string& tok) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParameterError("cli: bad number '" + tok + "' in beta spec");
    }
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) {
      throw ParameterError("cli: beta range must be start:stop:step");
    }
    const double start = parse_one(parts[0]);
    const double stop = parse_one(parts[1]);
    const double step = parse_one(parts[2]);
    if (!(step > 0.0) || stop < start) {
      throw ParameterError("cli: beta range needs step > 0 and stop >= start");
    }
    for (int i = 0;; ++i) {
      const double v = start + static_cast<double>(i) * step;
      if (v > stop + 1e-12) break;
      betas.push_back(std::round(v * 1e12) / 1e12);
      if (i > 1000000) throw ParameterError("cli: beta range too fine");
    }
  } else {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) betas.push_back(parse_one(tok));
  }
  return betas;
}

Reduce parse_reduce(const std::string& s) {
  if (s == "mean") return Reduce::mean;
  if (s == "rms") return Reduce::rms;
  if (s == "l1") return Reduce::l1;
  throw ParameterError("cli: unknown reduce '" + s + "' (mean|rms|l1)");
}

Preproc parse_preproc(const std::string& s) {
  if (s == "raw") return Preproc::raw;
  if (s == "demean") return Preproc::demean;
  throw ParameterError("cli: unknown preproc '" + s + "' (raw|demean)");
}

Window parse_window(const std::string& s) {
  if (s == "rect") return Window::rect;
  if (s == "hann") return Window::hann;
  throw ParameterError("cli: unknown window '" + s + "' (rect|hann)");
}

struct LoadedSplit {
  std::vector<SampleTensor> tensors;
  std::vector<int> labels;
};

LoadedSplit load_split(const DatasetManifest& manifest, const fs::path& base,
                       const std::string& split) {
  LoadedSplit out;
  for (const auto& s : manifest.samples) {
    if (s.split != split) continue;
    SampleTensor t = read_tensor(base / s.path);
    t.label = s.label;
    out.tensors.push_back(std::move(t));
    out.labels.push_back(s.label);
  }
  return out;
}

std::vector<AmplitudeSpectrum> batch_spectra(const std::vector<SampleTensor>& tensors,
                                             const FrequencyGrid& grid, Reduce reduce,
                                             Preproc preproc, Window window) {
  std::vector<AmplitudeSpectrum> spectra(tensors.size());
  parallel_for(tensors.size(), [&](std::size_t i) {
    spectra[i] = compute_spectrum(tensors[i], grid, reduce, preproc, window);
  });
  return spectra;
}

// ---------------------------------------------------------------- di

int cmd_di(const GlobalOpts& g, const std::string& manifest_path, const std::string& split,
           const std::string& reduce_s, const std::string& preproc_s, const std::string& window_s,
           double epsilon) {
  if (split == "test") {
    throw ParameterError("cli: refusing to compute DI on the test split (leakage guard)");
  }
  if (split != "train") {
    throw ParameterError("cli: unknown split '" + split + "' (train|test)");
  }
  const Reduce reduce = parse_reduce(reduce_s);
  const Preproc preproc = parse_preproc(preproc_s);
  const Window window = parse_window(window_s);

  const fs::path mpath(manifest_path);
  const DatasetManifest manifest = read_manifest(mpath);
  const LoadedSplit data = load_split(manifest, mpath.parent_path(), split);
  if (data.tensors.empty()) {
    throw FormatError("cli: manifest has no samples in split '" + split + "'");
  }
  const int frames = data.tensors[0].dims.frames;
  for (const auto& t : data.tensors) {
    if (t.dims.frames != frames) {
      throw FormatError("cli: samples disagree on frame count; cannot share one grid");
    }
  }
  const FrequencyGrid grid = build_grid(frames);

  const auto spectra = batch_spectra(data.tensors, grid, reduce, preproc, window);
  const ClassStats stats = class_statistics(spectra, data.labels);
  const DiSpectrum di = di_spectrum(stats, epsilon);

  if (!g.quiet) {
    std::size_t peak = 0;
    for (std::size_t k = 1; k < di.di_norm.size(); ++k) {
      if (di.di_norm[k] > di.di_norm[peak]) peak = k;
    }
    std::cout << "samples=" << data.tensors.size() << " classes=" << stats.num_classes
              << " L=" << grid.length << " peak_bin=" << peak << "\n";

    // Robustness of the spectrum across scalarization variants.
    try {
      const auto di_of = [&](Reduce r) {
        const auto sp = batch_spectra(data.tensors, grid, r, preproc, window);
        return di_spectrum(class_statistics(sp, data.labels), epsilon);
      };
      const DiSpectrum dm = di_of(Reduce::mean);
      const DiSpectrum dr = di_of(Reduce::rms);
      const DiSpectrum dl = di_of(Reduce::l1);
      auto report = [&](const char* a, const char* b, const DiSpectrum& x, const DiSpectrum& y) {
        std::cout << "robustness " << a << "/" << b << ": spearman="
                  << format_double(spearman_rho(x.di_norm, y.di_norm))
                  << " js_bits=" << format_double(js_divergence_bits(x.di_norm, y.di_norm))
                  << "\n";
      };
      report("mean", "rms", dm, dr);
      report("mean", "l1", dm, dl);
    } catch (const DomainError&) {
      std::cout << "robustness: n/a (an alternative reduction has no discrimination)\n";
    }
  }

  emit(g, di_spectrum_to_json(di));
  return 0;
}

// ---------------------------------------------------------------- template

int cmd_template(const GlobalOpts& g, double beta, int length) {
  const LifTemplate tpl = sample_template(build_grid(length), beta);
  emit(g, template_to_csv(tpl));
  return 0;
}

// ---------------------------------------------------------------- bandwidth

int cmd_bandwidth(const GlobalOpts& g, double beta, std::optional<int> length) {
  Bandwidth bw = cutoff(beta);
  if (length.has_value()) {
    const FrequencyGrid grid = build_grid(*length);
    bw.quantized_bin = quantize_cutoff(bw, grid);
  }
  if (!g.quiet) {
    if (bw.saturated()) {
      std::cout << "saturated, B_eff=pi";
    } else {
      std::cout << "omega_c=" << format_double(*bw.cutoff)
                << " tau=" << format_double(tau_from_beta(beta));
    }
    if (bw.quantized_bin.has_value()) std::cout << " bin=" << *bw.quantized_bin;
    std::cout << "\n";
  }
  emit(g, bandwidth_to_json(bw));
  return 0;
}

// ---------------------------------------------------------------- fms / select-beta

int cmd_fms(const GlobalOpts& g, const std::string& di_path, const std::string& betas_spec) {
  const DiSpectrum di = di_spectrum_from_json(read_text_file(di_path));
  const std::vector<double> betas =
      betas_spec.empty() ? default_beta_candidates() : parse_beta_spec(betas_spec);
  const FmsCurve curve = fms_sweep(di, betas);
  emit(g, fms_curve_to_csv(curve));
  return 0;
}

int cmd_select_beta(const GlobalOpts& g, const std::string& curve_path, double under_threshold) {
  const FmsCurve curve = fms_curve_from_csv(read_text_file(curve_path));
  const KneeResult knee = select_boundary(curve);

  std::cout << "beta_dagger=" << format_double(knee.beta_dagger)
            << " tau_dagger=" << format_double(tau_from_beta(knee.beta_dagger))
            << (knee.degenerate ? " (degenerate)" : "") << "\n";
  if (!g.quiet) {
    std::cout << "beta      fms       deviation  regime\n";
    for (std::size_t r = 0; r < curve.betas.size(); ++r) {
      const BetaRegime regime =
          classify_regime(curve.betas[r], knee.beta_dagger, under_threshold);
      char line[96];
      std::snprintf(line, sizeof line, "%-9.4f %-9.6f %-10.6f %s\n", curve.betas[r], curve.fms[r],
                    knee.deviations[r], regime_name(regime));
      std::cout << line;
    }
  }
  if (!g.out.empty()) {
    write_text_file(g.out, knee_to_json(knee));
    if (!g.quiet) std::cout << "wrote " << g.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- simulate / validity

std::vector<std::vector<double>> parse_input_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw FormatError("cli: bad number '" + tok + "' in input CSV");
      }
    }
    if (!rows.empty() && row.size() != rows[0].size()) {
      throw FormatError("cli: input CSV rows have inconsistent column counts");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError("cli: input CSV is empty");
  return rows;
}

int cmd_simulate(const GlobalOpts& g, const std::string& config_path,
                 const std::string& input_path, int timesteps, double u0,
                 const std::string& betas_spec, const std::string& layer_name,
                 const std::string& rates_out) {
  const LifConfig config = lif_config_from_json(read_text_file(config_path));
  const auto rows = parse_input_csv(read_text_file(input_path));
  const int steps = timesteps > 0 ? timesteps : static_cast<int>(rows.size());
  const std::size_t neurons = rows[0].size();

  auto neuron_input = [&](std::size_t n) {
    ScalarSeries s;
    s.values.reserve(rows.size());
    for (const auto& row : rows) s.values.push_back(row[n]);
    return s;
  };

  if (betas_spec.empty()) {
    if (neurons != 1) {
      throw ParameterError(
          "cli: trace output needs a single-column input; use --betas for layer sweeps");
    }
    const SpikeTrace trace = run(config, neuron_input(0), steps, u0);
    emit(g, trace_to_csv(trace));
    return 0;
  }

  // Beta sweep over a layer of neurons driven by the CSV columns.
  const std::vector<double> betas = parse_beta_spec(betas_spec);
  LayerRates rates;
  for (double beta : betas) {
    LifConfig swept = config;
    swept.leak = leak_from_beta(beta, config.leak.scheme);
    std::vector<SpikeTrace> traces;
    traces.reserve(neurons);
    for (std::size_t n = 0; n < neurons; ++n) {
      traces.push_back(run(swept, neuron_input(n), steps, u0));
    }
    rates[layer_name][beta] = mean_spike_rate(traces);
  }
  const std::string text = rates_to_json(rates);
  if (!rates_out.empty()) {
    write_text_file(rates_out, text);
    if (!g.quiet) std::cout << "wrote " << rates_out << "\n";
  } else {
    emit(g, text);
  }
  return 0;
}

int cmd_validity(const GlobalOpts& g, const std::string& rates_path, double gamma_min,
                 double gamma_max, double kappa, double eps) {
  const LayerRates rates = rates_from_json(read_text_file(rates_path));
  const ValidityReport report = validity_flag(rates, gamma_min, gamma_max, kappa, eps);

  std::cout << (report.flagged ? "flagged" : "ok") << "\n";
  if (!g.quiet) {
    for (const auto& l : report.layers) {
      std::cout << l.layer << ": min=" << format_double(l.min_rate)
                << " max=" << format_double(l.max_rate) << " ratio=" << format_double(l.ratio);
      if (l.out_of_bounds) std::cout << " [out-of-bounds]";
      if (l.ratio_exceeded) std::cout << " [ratio-exceeded]";
      std::cout << "\n";
    }
  }
  if (!g.out.empty()) {
    nlohmann::json doc;
    doc["flagged"] = report.flagged;
    doc["layers"] = nlohmann::json::array();
    for (const auto& l : report.layers) {
      doc["layers"].push_back({{"layer", l.layer},
                               {"out_of_bounds", l.out_of_bounds},
                               {"ratio_exceeded", l.ratio_exceeded},
                               {"min_rate", l.min_rate},
                               {"max_rate", l.max_rate},
                               {"ratio", l.ratio}});
    }
    write_text_file(g.out, doc.dump(2) + "\n");
    if (!g.quiet) std::cout << "wrote " << g.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- energy

int cmd_energy(const GlobalOpts& g, const std::string& arch_path, double e_mac, double e_ac) {
  const Architecture arch = architecture_from_json(read_text_file(arch_path));
  const EnergyConstants constants{e_mac, e_ac};
  const EnergyReport report = make_energy_report(arch, constants);
  if (!g.quiet) std::cout << energy_report_to_table(report);
  emit(g, energy_report_to_json(report));
  return 0;
}

// ---------------------------------------------------------------- preprocess / lowpass

struct RawRecording {
  std::vector<PointFrame> frames;
};

// Raw recording CSV: one point per line, "frame,x,y,z,v" with a
// nonnegative integer frame index. Frames span 0..max_index; indices with
// no points stay empty.
RawRecording read_raw_recording(const fs::path& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  std::map<long, std::vector<RadarPoint>> by_frame;
  long max_index = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    if (cols.size() != 5) {
      throw FormatError("cli: '" + path.string() + "' line " + std::to_string(lineno) +
                        ": expected frame,x,y,z,v");
    }
    try {
      const long frame = std::stol(cols[0]);
      if (frame < 0) throw std::invalid_argument("negative frame");
      RadarPoint p;
      p.x = std::stod(cols[1]);
      p.y = std::stod(cols[2]);
      p.z = std::stod(cols[3]);
      p.v = std::stod(cols[4]);
      by_frame[frame].push_back(p);
      max_index = std::max(max_index, frame);
    } catch (const std::exception&) {
      throw FormatError("cli: '" + path.string() + "' line " + std::to_string(lineno) +
                        ": bad value");
    }
  }
  RawRecording rec;
  if (max_index < 0) return rec;
  rec.frames.resize(static_cast<std::size_t>(max_index) + 1);
  for (auto& [idx, pts] : by_frame) {
    rec.frames[static_cast<std::size_t>(idx)].points = std::move(pts);
  }
  return rec;
}

int cmd_preprocess(const GlobalOpts& g, const std::string& raw_dir, const std::string& out_dir,
                   int f_max, int p_max, bool no_normalize, const std::string& features_mode) {
  if (f_max < 1 || p_max < 1) throw ParameterError("cli: fmax and pmax must be >= 1");
  FeatureLayout layout = FeatureLayout::rowmajor;
  bool flat = false;
  if (features_mode == "rowmajor") {
    layout = FeatureLayout::rowmajor;
  } else if (features_mode == "block16") {
    layout = FeatureLayout::block16;
  } else if (features_mode == "flat") {
    flat = true;
  } else {
    throw ParameterError("cli: unknown features mode '" + features_mode +
                         "' (rowmajor|block16|flat)");
  }
  if (!flat && p_max * 4 != 256) {
    throw ParameterError("cli: 64x64 feature shaping needs pmax*4 == 256; use --features flat");
  }

  const fs::path raw(raw_dir);
  const DatasetManifest raw_manifest = read_manifest(raw / "raw_manifest.json");

  // Align every recording first; normalization statistics come from the
  // aligned train split only.
  const PreprocessConfig pc{f_max, p_max};
  std::vector<std::vector<PointFrame>> aligned(raw_manifest.samples.size());
  for (std::size_t i = 0; i < raw_manifest.samples.size(); ++i) {
    const RawRecording rec = read_raw_recording(raw / raw_manifest.samples[i].path);
    aligned[i] = align_recording(rec.frames, pc);
  }

  std::optional<ChannelStats> stats;
  if (!no_normalize) {
    std::vector<PointFrame> train_frames;
    for (std::size_t i = 0; i < aligned.size(); ++i) {
      if (raw_manifest.samples[i].split != "train") continue;
      train_frames.insert(train_frames.end(), aligned[i].begin(), aligned[i].end());
    }
    if (train_frames.empty()) {
      throw ParameterError("cli: normalization needs a non-empty train split");
    }
    stats = compute_norm_stats(train_frames);
  }

  fs::create_directories(out_dir);
  DatasetManifest out_manifest;
  out_manifest.classes = raw_manifest.classes;
  out_manifest.norm_stats = stats;
  out_manifest.normalize = !no_normalize;

  for (std::size_t i = 0; i < aligned.size(); ++i) {
    SampleTensor tensor;
    tensor.dims = flat ? TensorDims{f_max, 1, p_max, 4} : TensorDims{f_max, 1, 64, 64};
    tensor.data.reserve(tensor.dims.total());
    for (const auto& frame : aligned[i]) {
      const PointFrame prepared = stats.has_value() ? normalize_frame(frame, *stats) : frame;
      const std::vector<double> flat_features = flatten_frame(prepared);
      if (flat) {
        tensor.data.insert(tensor.data.end(), flat_features.begin(), flat_features.end());
      } else {
        const std::vector<double> map = shape_features(flat_features, layout);
        tensor.data.insert(tensor.data.end(), map.begin(), map.end());
      }
    }
    const std::string name = fs::path(raw_manifest.samples[i].path).stem().string() + ".dfma";
    write_tensor(tensor, fs::path(out_dir) / name);
    out_manifest.samples.push_back(
        {name, raw_manifest.samples[i].label, raw_manifest.samples[i].split});
  }
  write_manifest(out_manifest, fs::path(out_dir) / "manifest.json");
  if (!g.quiet) {
    std::cout << "preprocessed " << out_manifest.samples.size() << " samples into " << out_dir
              << "\n";
  }
  return 0;
}

int cmd_lowpass(const GlobalOpts& g, const std::string& tensor_path, double nu) {
  if (g.out.empty()) throw ParameterError("cli: lowpass needs --out for the filtered tensor");
  const SampleTensor tensor = read_tensor(tensor_path);
  const SampleTensor filtered = radial_lowpass_tensor(tensor, nu);
  write_tensor(filtered, g.out);
  if (!g.quiet) std::cout << "wrote " << g.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete-time frequency-matching analysis toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out, "Output file (stdout if omitted)");
  app.add_option("--seed", g.seed, "Seed for synthetic-data generators");
  app.add_flag("--quiet", g.quiet, "Suppress informational output");

  // di
  std::string di_manifest, di_split = "train", di_reduce = "mean", di_preproc = "demean",
              di_window = "rect";
  double di_epsilon = 1e-12;
  CLI::App* di = app.add_subcommand("di", "Discriminative spectrum from a dataset manifest");
  di->add_option("manifest", di_manifest, "Dataset manifest JSON")->required();
  di->add_option("--split", di_split, "Sample split (train only; test is refused)");
  di->add_option("--reduce", di_reduce, "Frame reduction: mean|rms|l1");
  di->add_option("--preproc", di_preproc, "Series preprocessing: raw|demean");
  di->add_option("--window", di_window, "Window: rect|hann");
  di->add_option("--epsilon", di_epsilon, "Within-class scatter stabilizer");

  // template
  double tpl_beta = 0.0;
  int tpl_length = 0;
  CLI::App* tpl = app.add_subcommand("template", "Sampled DC-normalized power template");
  tpl->add_option("--beta", tpl_beta, "Membrane decay factor in [0,1)")->required();
  tpl->add_option("--length", tpl_length, "DFT length L >= 2")->required();

  // bandwidth
  double bw_beta = 0.0;
  int bw_length = 0;
  CLI::App* bw = app.add_subcommand("bandwidth", "Half-power cutoff / effective bandwidth");
  bw->add_option("--beta", bw_beta, "Membrane decay factor in [0,1)")->required();
  CLI::Option* bw_len_opt = bw->add_option("--length", bw_length, "Grid length for nearest-bin");

  // fms
  std::string fms_di, fms_betas;
  CLI::App* fms = app.add_subcommand("fms", "Frequency-matching score sweep");
  fms->add_option("di_json", fms_di, "DI spectrum JSON")->required();
  fms->add_option("--betas", fms_betas, "start:stop:step or comma list (default 0.05:0.95:0.05)");

  // select-beta
  std::string sel_curve;
  double sel_under = 0.05;
  CLI::App* sel = app.add_subcommand("select-beta", "Reference boundary from an FMS curve");
  sel->add_option("fms_csv", sel_curve, "FMS curve CSV")->required();
  sel->add_option("--under-threshold", sel_under, "Under-filter regime threshold");

  // simulate
  std::string sim_config, sim_input, sim_betas, sim_layer = "layer1", sim_rates_out;
  int sim_steps = 0;
  double sim_u0 = 0.0;
  CLI::App* sim = app.add_subcommand("simulate", "LIF trace or layer spike-rate sweep");
  sim->add_option("config_json", sim_config, "Neuron config JSON")->required();
  sim->add_option("input_csv", sim_input, "Input currents, one row per step")->required();
  sim->add_option("--timesteps", sim_steps, "Steps to simulate (default: all rows)");
  sim->add_option("--u0", sim_u0, "Initial membrane state");
  sim->add_option("--betas", sim_betas, "Sweep betas; emits a rate report instead of a trace");
  sim->add_option("--layer-name", sim_layer, "Layer key for the rate report");
  sim->add_option("--rates-out", sim_rates_out, "Rate report path (default --out/stdout)");

  // validity
  std::string val_rates;
  double val_gmin = 0.01, val_gmax = 0.99, val_kappa = 20.0, val_eps = 1e-9;
  CLI::App* val = app.add_subcommand("validity", "Spike-rate validity flag for beta sweeps");
  val->add_option("rates_json", val_rates, "Rate report JSON")->required();
  val->add_option("--gamma-min", val_gmin, "Lower activity bound");
  val->add_option("--gamma-max", val_gmax, "Upper activity bound");
  val->add_option("--kappa", val_kappa, "Max allowed max/min rate ratio");
  val->add_option("--eps", val_eps, "Ratio stabilizer");

  // energy
  std::string en_arch;
  double en_mac = 4.6, en_ac = 0.9;
  CLI::App* en = app.add_subcommand("energy", "Theoretical energy from an architecture JSON");
  en->add_option("arch_json", en_arch, "Architecture description JSON")->required();
  en->add_option("--e-mac", en_mac, "Energy per MAC, pJ");
  en->add_option("--e-ac", en_ac, "Energy per AC, pJ");

  // preprocess
  std::string pp_raw, pp_out, pp_features = "rowmajor";
  int pp_fmax = 4, pp_pmax = 64;
  bool pp_nonorm = false;
  CLI::App* pp = app.add_subcommand("preprocess", "Point-cloud recordings to tensor dataset");
  pp->add_option("raw_dir", pp_raw, "Directory with raw_manifest.json and recordings")->required();
  pp->add_option("out_dir", pp_out, "Output dataset directory")->required();
  pp->add_option("--fmax", pp_fmax, "Frames kept per recording");
  pp->add_option("--pmax", pp_pmax, "Points kept per frame");
  pp->add_flag("--no-normalize", pp_nonorm, "Skip per-channel normalization");
  pp->add_option("--features", pp_features, "Frame layout: rowmajor|block16|flat");

  // lowpass
  std::string lp_tensor;
  double lp_nu = 0.0;
  CLI::App* lp = app.add_subcommand("lowpass", "Radial hard low-pass over a tensor");
  lp->add_option("tensor", lp_tensor, "Input .dfma tensor")->required();
  lp->add_option("--nu", lp_nu, "Cutoff radius in [0, 0.7072]")->required();

  // Let the global flags (--out/--seed/--quiet) appear after a subcommand.
  for (CLI::App* sub : {di, tpl, bw, fms, sel, sim, val, en, pp, lp}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (di->parsed()) {
      return cmd_di(g, di_manifest, di_split, di_reduce, di_preproc, di_window, di_epsilon);
    }
    if (tpl->parsed()) return cmd_template(g, tpl_beta, tpl_length);
    if (bw->parsed()) {
      std::optional<int> len;
      if (bw_len_opt->count() > 0) len = bw_length;
      return cmd_bandwidth(g, bw_beta, len);
    }
    if (fms->parsed()) return cmd_fms(g, fms_di, fms_betas);
    if (sel->parsed()) return cmd_select_beta(g, sel_curve, sel_under);
    if (sim->parsed()) {
      return cmd_simulate(g, sim_config, sim_input, sim_steps, sim_u0, sim_betas, sim_layer,
                          sim_rates_out);
    }
    if (val->parsed()) return cmd_validity(g, val_rates, val_gmin, val_gmax, val_kappa, val_eps);
    if (en->parsed()) return cmd_energy(g, en_arch, en_mac, en_ac);
    if (pp->parsed()) {
      return cmd_preprocess(g, pp_raw, pp_out, pp_fmax, pp_pmax, pp_nonorm, pp_features);
    }
    if (lp->parsed()) return cmd_lowpass(g, lp_tensor, lp_nu);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
