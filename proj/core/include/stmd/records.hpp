#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "stmd/mushroom_body.hpp"
#include "stmd/synth.hpp"

namespace stmd {

// One CSV row per detection: frame,x,y,theta_deg,response,trace_id,label.
struct DetectionRecord {
  int frame = 0;
  int x = 0, y = 0;
  int theta_deg = 0;
  double response = 0.0;
  int trace_id = -1;
  TraceLabel label = TraceLabel::undecided;
};

// Per-trace summary row.
struct TraceRecord {
  int id = 0;
  int start = 0, end = 0;
  int length = 0;
  TraceLabel label = TraceLabel::undecided;
  std::array<double, kNumOrientations> sd{};
  double max_sd = 0.0;
};

struct RocPoint {
  double beta = 0.0;
  double detection_rate = 0.0;
  double false_alarm_rate = 0.0;
};

// Shortest round-trip decimal form of a double (so write -> parse -> write
// is byte-stable).
std::string format_double(double v);

void write_detections_csv(const std::vector<DetectionRecord>& records,
                          std::ostream& out);
std::vector<DetectionRecord> read_detections_csv(std::istream& in);

void write_ground_truth_csv(const GroundTruth& truth, std::ostream& out);
GroundTruth read_ground_truth_csv(std::istream& in);

void write_traces_csv(const std::vector<TraceRecord>& records, std::ostream& out);

void write_roc_csv(const std::vector<RocPoint>& points, std::ostream& out);

// File variants (IoError on failure).
void write_detections_csv(const std::vector<DetectionRecord>& records,
                          const std::string& path);
std::vector<DetectionRecord> read_detections_csv_file(const std::string& path);
void write_ground_truth_csv(const GroundTruth& truth, const std::string& path);
GroundTruth read_ground_truth_csv_file(const std::string& path);
void write_traces_csv(const std::vector<TraceRecord>& records,
                      const std::string& path);
void write_roc_csv(const std::vector<RocPoint>& points, const std::string& path);

}  // namespace stmd
