#include "stmd/records.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "stmd/errors.hpp"
#include "text_util.hpp"

namespace stmd {

namespace {

using detail::parse_double;
using detail::parse_int;
using detail::split;
using detail::trim;

void expect_header(std::istream& in, const char* expected, const char* what) {
  std::string line;
  if (!std::getline(in, line) || std::string(trim(line)) != expected) {
    throw IoError(std::string("missing '") + expected + "' header in " + what +
                  " csv");
  }
}

template <typename Fn>
void for_each_data_line(std::istream& in, const char* what, Fn fn) {
  std::string line;
  int line_no = 1;  // header consumed already
  while (std::getline(in, line)) {
    ++line_no;
    const auto sv = trim(line);
    if (sv.empty()) continue;
    try {
      fn(sv);
    } catch (const InvalidParameter& e) {
      throw IoError(std::string(what) + " csv line " + std::to_string(line_no) +
                    ": " + e.what());
    }
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create file: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_detections_csv(const std::vector<DetectionRecord>& records,
                          std::ostream& out) {
  out << "frame,x,y,theta_deg,response,trace_id,label\n";
  for (const DetectionRecord& r : records) {
    out << r.frame << ',' << r.x << ',' << r.y << ',' << r.theta_deg << ','
        << format_double(r.response) << ',' << r.trace_id << ','
        << to_string(r.label) << '\n';
  }
}

std::vector<DetectionRecord> read_detections_csv(std::istream& in) {
  expect_header(in, "frame,x,y,theta_deg,response,trace_id,label", "detections");
  std::vector<DetectionRecord> out;
  for_each_data_line(in, "detections", [&](std::string_view line) {
    const auto f = split(line, ',');
    if (f.size() != 7) throw InvalidParameter("expected 7 fields");
    DetectionRecord r;
    r.frame = int(parse_int(f[0], "frame"));
    r.x = int(parse_int(f[1], "x"));
    r.y = int(parse_int(f[2], "y"));
    r.theta_deg = int(parse_int(f[3], "theta_deg"));
    r.response = parse_double(f[4], "response");
    r.trace_id = int(parse_int(f[5], "trace_id"));
    r.label = trace_label_from_string(std::string(trim(f[6])));
    out.push_back(r);
  });
  return out;
}

void write_ground_truth_csv(const GroundTruth& truth, std::ostream& out) {
  out << "frame,x,y\n";
  for (const GroundTruthEntry& e : truth) {
    out << e.t << ',' << e.x << ',' << e.y << '\n';
  }
}

GroundTruth read_ground_truth_csv(std::istream& in) {
  expect_header(in, "frame,x,y", "ground truth");
  GroundTruth out;
  for_each_data_line(in, "ground truth", [&](std::string_view line) {
    const auto f = split(line, ',');
    if (f.size() != 3) throw InvalidParameter("expected 3 fields");
    out.push_back({int(parse_int(f[0], "frame")), int(parse_int(f[1], "x")),
                   int(parse_int(f[2], "y"))});
  });
  return out;
}

void write_traces_csv(const std::vector<TraceRecord>& records, std::ostream& out) {
  out << "trace_id,start,end,length,label,sd_0,sd_45,sd_90,sd_135,max_sd\n";
  for (const TraceRecord& r : records) {
    out << r.id << ',' << r.start << ',' << r.end << ',' << r.length << ','
        << to_string(r.label);
    for (double sd : r.sd) out << ',' << format_double(sd);
    out << ',' << format_double(r.max_sd) << '\n';
  }
}

void write_roc_csv(const std::vector<RocPoint>& points, std::ostream& out) {
  out << "beta,detection_rate,false_alarm_rate\n";
  for (const RocPoint& p : points) {
    out << format_double(p.beta) << ',' << format_double(p.detection_rate)
        << ',' << format_double(p.false_alarm_rate) << '\n';
  }
}

void write_detections_csv(const std::vector<DetectionRecord>& records,
                          const std::string& path) {
  auto out = open_out(path);
  write_detections_csv(records, out);
  if (!out) throw IoError("failed writing " + path);
}

std::vector<DetectionRecord> read_detections_csv_file(const std::string& path) {
  auto in = open_in(path);
  return read_detections_csv(in);
}

void write_ground_truth_csv(const GroundTruth& truth, const std::string& path) {
  auto out = open_out(path);
  write_ground_truth_csv(truth, out);
  if (!out) throw IoError("failed writing " + path);
}

GroundTruth read_ground_truth_csv_file(const std::string& path) {
  auto in = open_in(path);
  return read_ground_truth_csv(in);
}

void write_traces_csv(const std::vector<TraceRecord>& records,
                      const std::string& path) {
  auto out = open_out(path);
  write_traces_csv(records, out);
  if (!out) throw IoError("failed writing " + path);
}

void write_roc_csv(const std::vector<RocPoint>& points, const std::string& path) {
  auto out = open_out(path);
  write_roc_csv(points, out);
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace stmd
