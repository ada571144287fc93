#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace dfma {

// Temporal-spectrum front end: the one-sided DFT grid, tensor scalarization,
// optional de-meaning / windowing, and the unnormalized one-sided DFT that
// produces amplitude spectra.

// One-sided DFT grid for a length-L sequence: bins omega_k = 2*pi*k/L for
// k = 0..K with K = floor(L/2). DC appears once; the Nyquist bin appears
// exactly once iff L is even (and then omegas[K] == pi exactly).
struct FrequencyGrid {
  int length{0};               // L, number of frames
  std::vector<double> omegas;  // K+1 angular frequencies, radians/sample

  int max_bin() const { return static_cast<int>(omegas.size()) - 1; }  // K
  bool operator==(const FrequencyGrid& other) const = default;
};

// Builds the one-sided grid. Requires length >= 2.
FrequencyGrid build_grid(int length);

struct TensorDims {
  int frames{0};    // L
  int channels{0};  // C
  int height{0};    // H
  int width{0};     // W

  std::size_t frame_size() const;  // C*H*W
  std::size_t total() const;       // L*C*H*W
  bool operator==(const TensorDims& other) const = default;
};

// A single sample: L frames of C x H x W real values, row-major, plus an
// optional 1-based class label.
struct SampleTensor {
  TensorDims dims;
  std::vector<double> data;
  std::optional<int> label;

  double at(int l, int c, int h, int w) const;
  // Throws FormatError if dims are non-positive, data length disagrees
  // with dims, or any value is non-finite.
  void validate() const;
};

// Scalar temporal proxy: one value per frame.
struct ScalarSeries {
  std::vector<double> values;

  int length() const { return static_cast<int>(values.size()); }
};

// Nonnegative amplitude per one-sided bin (phase discarded).
struct AmplitudeSpectrum {
  FrequencyGrid grid;
  std::vector<double> amps;  // K+1 entries, each >= 0
};

enum class Reduce { mean, rms, l1 };
enum class Preproc { raw, demean };
enum class Window { rect, hann };

// Reduces each frame over all non-temporal axes:
//   mean -> arithmetic mean, rms -> sqrt(mean of squares),
//   l1   -> mean absolute value.
ScalarSeries scalarize(const SampleTensor& sample, Reduce reduce);

// raw -> identity; demean -> subtracts the temporal mean so the output
// sums to zero (up to accumulation rounding).
ScalarSeries preprocess_series(const ScalarSeries& series, Preproc mode);

// rect -> identity; hann -> values[l] * 0.5*(1 - cos(2*pi*l/(L-1))).
// Applied after preprocessing and before the DFT. Hann requires L >= 2.
ScalarSeries apply_window(const ScalarSeries& series, Window window);

// Unnormalized one-sided DFT:
//   amps[k] = | sum_l series[l] * exp(-j * omega_k * l) |.
// Series length must equal grid.length.
AmplitudeSpectrum one_sided_dft(const ScalarSeries& series, const FrequencyGrid& grid);

// Full per-sample pipeline: scalarize -> preprocess -> window -> DFT.
AmplitudeSpectrum compute_spectrum(const SampleTensor& sample, const FrequencyGrid& grid,
                                   Reduce reduce, Preproc mode, Window window);

}  // namespace dfma
