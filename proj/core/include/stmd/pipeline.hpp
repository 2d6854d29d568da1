#pragma once

#include <vector>

#include "stmd/config.hpp"
#include "stmd/eval.hpp"
#include "stmd/image_io.hpp"
#include "stmd/records.hpp"

namespace stmd {

struct RunResult {
  std::vector<DetectionRecord> detections;
  std::vector<TraceRecord> traces;
  int warmup_frames = 0;
  int frames = 0;
};

// Streaming end-to-end run: smoothing, band-pass, correlation, inhibition,
// thresholding, trace linking, contrast sampling and SD classification.
// With the contrast pathway disabled the contrast/classification stages
// are skipped and every trace is labeled target.
RunResult run_pipeline(const RunConfig& config, FrameSource& source);

// One positive local maximum of the directional response field, with the
// directional contrast sampled at its pixel.
struct CachedPeak {
  int x = 0, y = 0;
  int theta_index = 0;
  double response = 0.0;
  std::array<double, kNumOrientations> contrast{};
};

// Threshold-independent summary of a sequence: every positive response
// peak per frame. Thresholding, tracing and classification can be replayed
// from it for any beta and reproduce a direct run exactly.
struct PipelineCache {
  std::vector<std::vector<CachedPeak>> frames;
  int warmup_frames = 0;
  int width = 0, height = 0;
};

PipelineCache run_and_cache(const RunConfig& config, FrameSource& source);

// Replays threshold -> trace -> classify from the cache at config's beta.
RunResult replay_from_cache(const PipelineCache& cache, const RunConfig& config);

// One ROC point per beta (strictly increasing), evaluated post warm-up.
std::vector<RocPoint> roc_sweep(const PipelineCache& cache,
                                const GroundTruth& truth, const RunConfig& config,
                                const std::vector<double>& betas,
                                double match_radius = 5.0);

}  // namespace stmd
