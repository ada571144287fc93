#include "dfma/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dfma/errors.hpp"

namespace dfma {

FrequencyGrid build_grid(int length) {
  if (length < 2) {
    throw ParameterError("spectrum: grid length must be >= 2, got " + std::to_string(length));
  }
  FrequencyGrid grid;
  grid.length = length;
  const int max_bin = length / 2;
  grid.omegas.resize(static_cast<std::size_t>(max_bin) + 1);
  for (int k = 0; k <= max_bin; ++k) {
    // 2k/L is exact at k = L/2 for even L, so the Nyquist bin lands on pi
    // exactly.
    grid.omegas[static_cast<std::size_t>(k)] =
        (2.0 * static_cast<double>(k) / static_cast<double>(length)) * std::numbers::pi;
  }
  return grid;
}

std::size_t TensorDims::frame_size() const {
  return static_cast<std::size_t>(channels) * static_cast<std::size_t>(height) *
         static_cast<std::size_t>(width);
}

std::size_t TensorDims::total() const {
  return static_cast<std::size_t>(frames) * frame_size();
}

double SampleTensor::at(int l, int c, int h, int w) const {
  const std::size_t idx =
      ((static_cast<std::size_t>(l) * dims.channels + c) * dims.height + h) * dims.width + w;
  return data[idx];
}

void SampleTensor::validate() const {
  if (dims.frames <= 0 || dims.channels <= 0 || dims.height <= 0 || dims.width <= 0) {
    throw FormatError("spectrum: tensor dims must be positive");
  }
  if (data.size() != dims.total()) {
    throw FormatError("spectrum: tensor data length " + std::to_string(data.size()) +
                      " does not match dims product " + std::to_string(dims.total()));
  }
  for (double v : data) {
    if (!std::isfinite(v)) throw FormatError("spectrum: tensor contains non-finite values");
  }
}

ScalarSeries scalarize(const SampleTensor& sample, Reduce reduce) {
  sample.validate();
  const std::size_t frame_size = sample.dims.frame_size();
  ScalarSeries out;
  out.values.resize(static_cast<std::size_t>(sample.dims.frames));
  for (int l = 0; l < sample.dims.frames; ++l) {
    const double* frame = sample.data.data() + static_cast<std::size_t>(l) * frame_size;
    double acc = 0.0;
    switch (reduce) {
      case Reduce::mean:
        for (std::size_t i = 0; i < frame_size; ++i) acc += frame[i];
        out.values[static_cast<std::size_t>(l)] = acc / static_cast<double>(frame_size);
        break;
      case Reduce::rms:
        for (std::size_t i = 0; i < frame_size; ++i) acc += frame[i] * frame[i];
        out.values[static_cast<std::size_t>(l)] = std::sqrt(acc / static_cast<double>(frame_size));
        break;
      case Reduce::l1:
        for (std::size_t i = 0; i < frame_size; ++i) acc += std::fabs(frame[i]);
        out.values[static_cast<std::size_t>(l)] = acc / static_cast<double>(frame_size);
        break;
    }
  }
  return out;
}

ScalarSeries preprocess_series(const ScalarSeries& series, Preproc mode) {
  if (mode == Preproc::raw) return series;
  const std::size_t n = series.values.size();
  ScalarSeries out;
  out.values.resize(n);
  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(n == 0 ? 1 : n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = series.values[i] - mean;
  return out;
}

ScalarSeries apply_window(const ScalarSeries& series, Window window) {
  if (window == Window::rect) return series;
  const int n = series.length();
  if (n < 2) {
    throw ParameterError("spectrum: hann window requires series length >= 2");
  }
  ScalarSeries out;
  out.values.resize(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    const double w =
        0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(l) /
                              static_cast<double>(n - 1)));
    out.values[static_cast<std::size_t>(l)] = series.values[static_cast<std::size_t>(l)] * w;
  }
  return out;
}

AmplitudeSpectrum one_sided_dft(const ScalarSeries& series, const FrequencyGrid& grid) {
  if (series.length() != grid.length) {
    throw FormatError("spectrum: series length " + std::to_string(series.length()) +
                      " does not match grid length " + std::to_string(grid.length));
  }
  AmplitudeSpectrum spec;
  spec.grid = grid;
  spec.amps.resize(grid.omegas.size());
  // Direct O(L*K) summation; the grids in play are tiny (L <= 64) and direct
  // evaluation keeps every bin bit-stable.
  for (std::size_t k = 0; k < grid.omegas.size(); ++k) {
    const double omega = grid.omegas[k];
    double re = 0.0;
    double im = 0.0;
    for (int l = 0; l < grid.length; ++l) {
      const double angle = omega * static_cast<double>(l);
      const double v = series.values[static_cast<std::size_t>(l)];
      re += v * std::cos(angle);
      im -= v * std::sin(angle);
    }
    spec.amps[k] = std::hypot(re, im);
  }
  return spec;
}

AmplitudeSpectrum compute_spectrum(const SampleTensor& sample, const FrequencyGrid& grid,
                                   Reduce reduce, Preproc mode, Window window) {
  return one_sided_dft(apply_window(preprocess_series(scalarize(sample, reduce), mode), window),
                       grid);
}

}  // namespace dfma
