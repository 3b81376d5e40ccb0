#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddt/instance.hpp"
#include "ddt/lp.hpp"
#include "ddt/norm.hpp"

namespace ddt {

enum class WeightVariant { kMaxMin, kSumSq };

WeightVariant parse_weight_variant(const std::string& text);
const char* to_string(WeightVariant v);

struct FitOptions {
  /// Sample size; curves are polynomials of degree k - 1.
  std::size_t k = 2;
  NormSpec norm = NormSpec::euclid2();
  WeightVariant variant = WeightVariant::kMaxMin;
  /// Largest k accepted without an explicit override.
  std::size_t max_k = 4;
  /// Incremented once per h-distance evaluation when set.
  std::int64_t* counter = nullptr;
};

/// Candidate points per frame (grid points, or the known points).
using FrameCandidates = std::vector<std::vector<Point>>;

struct SampleEntry {
  std::size_t time = 0;   // 0-based frame
  std::size_t index = 0;  // into the frame's candidates
  friend auto operator<=>(const SampleEntry&, const SampleEntry&) = default;
  friend bool operator==(const SampleEntry&, const SampleEntry&) = default;
};

/// A sample fit attaining a weight.
struct Witness {
  Rational weight;
  std::vector<SampleEntry> sample;  // increasing times
};

/// Value at `time` of the unique polynomial of degree < sample size through
/// the points (times must be distinct). Lagrange form, exact.
Point evaluate_fit(const std::vector<std::pair<Rational, Point>>& sample, const Rational& time);
Point evaluate_fit(const FrameCandidates& cands, const std::vector<SampleEntry>& sample,
                   std::size_t time);

/// Re-evaluates the weight of a sample under the options (no pruning).
Rational sample_weight(const FrameCandidates& cands, const std::vector<SampleEntry>& sample,
                       const FitOptions& opts);

/// gamma_{i,j}: best k-sample containing candidate i at tau1 and candidate j
/// at tauk, interior entries at strictly increasing times between them.
Witness fit_weight_pair(const FrameCandidates& cands, std::size_t tau1, std::size_t tauk,
                        std::size_t i, std::size_t j, const FitOptions& opts);

/// alpha for every candidate of every frame: best k-sample through it.
std::vector<std::vector<Witness>> alpha_weights(const FrameCandidates& cands,
                                                const FitOptions& opts);

FrameCandidates candidates_of(const std::vector<Grid>& grids);

/// Every frame known. Matches frame tau1 to frame tauk by the gamma weights,
/// then hands the remaining frames' points to the matched curves: curves in
/// order of their tau1 point, each taking its nearest free point (ties to
/// the smaller point). Defaults: first and last frame.
TrackResult path_fitting(const TomographyInstance& inst, const FitOptions& opts,
                         std::optional<std::size_t> tau1 = {}, std::optional<std::size_t> tauk = {});

/// Per-frame LPs with the alpha weights as objective (known frames kept,
/// window rows added where present), then one matching per step with
/// omega = alpha(p) + alpha(q).
TrackResult tomographic_fitting(const TomographyInstance& inst, const FitOptions& opts,
                                const IlpOptions& ilp = {});

/// Frames from tomographic_fitting, coupling from path_fitting.
TrackResult tomographic_path_fitting(const TomographyInstance& inst, const FitOptions& opts,
                                     const IlpOptions& ilp = {});

struct TwoWayOptions {
  std::size_t max_rounds = 100;
  /// Distances for the rolling steps, matchings and the midpoint weights.
  NormSpec norm = NormSpec::euclid2();
  IlpOptions ilp;
};

struct TwoWayResult {
  /// Best triple by straightness, coupled by line path fitting. The status
  /// stays kOk when the round cap is hit; `converged` tells the two apart.
  TrackResult result;
  bool converged = false;
  std::size_t rounds = 0;
  /// Straightness of the triple produced by each round.
  std::vector<Rational> trace;
};

/// Alternating forward and backward passes over three frames until a
/// triple repeats.
TwoWayResult two_way_fitting(const TomographyInstance& inst, const TwoWayOptions& options = {});

}  // namespace ddt
