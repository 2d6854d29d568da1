#include "stmd/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "stmd/errors.hpp"

namespace stmd {

namespace {

void require_beta(const RunConfig& config) {
  if (!std::isfinite(config.pipeline.beta)) {
    throw ConfigError("beta has no default and must be set explicitly");
  }
}

std::vector<TraceRecord> trace_records(const TraceStore& store) {
  std::vector<TraceRecord> out;
  out.reserve(store.traces().size());
  for (const Trace& tr : store.traces()) {
    TraceRecord r;
    r.id = tr.id;
    r.start = tr.points.front().t;
    r.end = tr.points.back().t;
    r.length = tr.length();
    r.label = tr.label;
    r.sd = tr.sd;
    r.max_sd = *std::max_element(tr.sd.begin(), tr.sd.end());
    out.push_back(r);
  }
  return out;
}

void fill_labels(std::vector<DetectionRecord>& records, const TraceStore& store) {
  for (DetectionRecord& r : records) {
    r.label = store.traces()[r.trace_id].label;
  }
}

int theta_degrees(int theta_index) { return theta_index * 45; }

}  // namespace

RunResult run_pipeline(const RunConfig& config, FrameSource& source) {
  config.validate();
  require_beta(config);

  RunResult result;
  TraceStore store(config.classifier);
  MotionPathway* pathway = nullptr;
  std::unique_ptr<MotionPathway> pathway_holder;

  int t = 0;
  while (auto frame = source.next()) {
    if (!pathway) {
      pathway_holder = std::make_unique<MotionPathway>(
          config.pipeline, frame->width(), frame->height());
      pathway = pathway_holder.get();
    }
    const DirectionalResponseField& field = pathway->step(*frame);
    const std::vector<Detection> dets =
        detect(field, config.pipeline.beta, config.nms_radius);
    const std::vector<int> ids = store.update(t, dets);
    if (config.contrast_pathway) {
      const ContrastField cf =
          contrast_field(pathway->current_smoothed(), config.contrast, t);
      store.sample_contrast(cf);
    }
    for (std::size_t i = 0; i < dets.size(); ++i) {
      result.detections.push_back({dets[i].t, dets[i].x, dets[i].y,
                                   theta_degrees(dets[i].theta_index),
                                   dets[i].response, ids[i],
                                   TraceLabel::undecided});
    }
    ++t;
  }
  if (t == 0) throw IoError("frame source produced no frames");

  store.finalize_all();
  store.classify_all(config.contrast_pathway);
  fill_labels(result.detections, store);
  result.traces = trace_records(store);
  result.warmup_frames = pathway->warmup_frames();
  result.frames = t;
  return result;
}

PipelineCache run_and_cache(const RunConfig& config, FrameSource& source) {
  config.validate();

  PipelineCache cache;
  MotionPathway* pathway = nullptr;
  std::unique_ptr<MotionPathway> pathway_holder;

  int t = 0;
  while (auto frame = source.next()) {
    if (!pathway) {
      pathway_holder = std::make_unique<MotionPathway>(
          config.pipeline, frame->width(), frame->height());
      pathway = pathway_holder.get();
      cache.width = frame->width();
      cache.height = frame->height();
    }
    const DirectionalResponseField& field = pathway->step(*frame);
    // Every positive local maximum; any beta > 0 filters this set exactly
    // the way detect(field, beta) would.
    const std::vector<Detection> peaks = detect(field, 0.0, config.nms_radius);
    const ContrastField cf =
        contrast_field(pathway->current_smoothed(), config.contrast, t);
    std::vector<CachedPeak> row;
    row.reserve(peaks.size());
    for (const Detection& d : peaks) {
      row.push_back({d.x, d.y, d.theta_index, d.response, cf.at(d.x, d.y)});
    }
    cache.frames.push_back(std::move(row));
    ++t;
  }
  if (t == 0) throw IoError("frame source produced no frames");
  cache.warmup_frames = pathway->warmup_frames();
  return cache;
}

RunResult replay_from_cache(const PipelineCache& cache, const RunConfig& config) {
  config.validate();
  require_beta(config);
  const double beta = config.pipeline.beta;

  RunResult result;
  TraceStore store(config.classifier);
  for (int t = 0; t < int(cache.frames.size()); ++t) {
    std::vector<Detection> dets;
    std::vector<const CachedPeak*> kept;
    for (const CachedPeak& p : cache.frames[t]) {
      if (p.response > beta) {
        dets.push_back({t, p.x, p.y, p.theta_index, p.response});
        kept.push_back(&p);
      }
    }
    const std::vector<int> ids = store.update(t, dets);
    if (config.contrast_pathway) {
      // Same samples the live contrast field would deliver at these pixels.
      for (std::size_t i = 0; i < dets.size(); ++i) {
        Trace& tr = store.traces()[ids[i]];
        tr.contrast.push_back(kept[i]->contrast);
      }
    }
    for (std::size_t i = 0; i < dets.size(); ++i) {
      result.detections.push_back({t, dets[i].x, dets[i].y,
                                   theta_degrees(dets[i].theta_index),
                                   dets[i].response, ids[i],
                                   TraceLabel::undecided});
    }
  }
  store.finalize_all();
  store.classify_all(config.contrast_pathway);
  fill_labels(result.detections, store);
  result.traces = trace_records(store);
  result.warmup_frames = cache.warmup_frames;
  result.frames = int(cache.frames.size());
  return result;
}

std::vector<RocPoint> roc_sweep(const PipelineCache& cache,
                                const GroundTruth& truth, const RunConfig& config,
                                const std::vector<double>& betas,
                                double match_radius) {
  for (std::size_t i = 1; i < betas.size(); ++i) {
    if (!(betas[i] > betas[i - 1])) {
      throw ConfigError("beta list must be strictly increasing");
    }
  }
  std::vector<RocPoint> points;
  points.reserve(betas.size());
  for (double beta : betas) {
    RunConfig c = config;
    c.pipeline.beta = beta;
    const RunResult run = replay_from_cache(cache, c);
    ScoreOptions opt;
    opt.radius = match_radius;
    opt.first_frame = cache.warmup_frames;
    opt.all_labels = !config.contrast_pathway;
    const EvalResult ev = match_and_score(run.detections, truth, opt);
    points.push_back({beta, ev.detection_rate, ev.false_alarm_rate});
  }
  return points;
}

}  // namespace stmd
