#include "rotvel/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rotvel {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Error parse_error(const std::string& path, int line, int column, const std::string& what) {
  char buf[96];
  std::snprintf(buf, sizeof buf, ": line %d, column %d: ", line, column);
  return make_error(ErrorCode::ParseError, path + buf + what);
}

// Splits one CSV record on commas; no quoting in any of the formats here.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

Result<double> parse_double(const std::string& text, const std::string& path, int line,
                            int column) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    return parse_error(path, line, column, "expected a number, got '" + text + "'");
  }
  return v;
}

struct CsvReader {
  std::ifstream in;
  std::string path;
  int line_no = 0;

  CsvReader(const std::string& p) : in(p), path(p) {}

  Result<bool> expect_header(const std::string& header) {
    if (!in.is_open()) {
      return make_error(ErrorCode::ParseError, path + ": cannot open for reading");
    }
    std::string line;
    if (!std::getline(in, line)) {
      return make_error(ErrorCode::EmptyInput, path + ": empty file");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header) {
      return parse_error(path, line_no, 1, "expected header '" + header + "', got '" + line + "'");
    }
    return true;
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields = split_fields(line);
      return true;
    }
    return false;
  }
};

Result<std::ofstream> open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out.is_open()) {
    return make_error(ErrorCode::ParseError, path + ": cannot open for writing");
  }
  return out;
}

}  // namespace

Result<std::vector<std::pair<std::string, Event>>> read_tracks_csv(const std::string& path) {
  CsvReader reader(path);
  auto header = reader.expect_header("track_id,t,u,v,polarity");
  if (!header) return header.error();
  std::vector<std::pair<std::string, Event>> rows;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 5) {
      return parse_error(path, reader.line_no, static_cast<int>(fields.size()),
                         "expected 5 fields");
    }
    Event event;
    auto t = parse_double(fields[1], path, reader.line_no, 2);
    auto u = parse_double(fields[2], path, reader.line_no, 3);
    auto v = parse_double(fields[3], path, reader.line_no, 4);
    auto p = parse_double(fields[4], path, reader.line_no, 5);
    for (const auto* r : {&t, &u, &v, &p}) {
      if (!*r) return r->error();
    }
    event.t = t.value();
    event.u = u.value();
    event.v = v.value();
    event.polarity = p.value() < 0 ? -1 : 1;
    rows.emplace_back(fields[0], event);
  }
  if (rows.empty()) {
    return make_error(ErrorCode::EmptyInput, path + ": no data rows");
  }
  return rows;
}

Result<bool> write_tracks_csv(const std::string& path,
                              const std::vector<std::pair<std::string, Event>>& rows) {
  auto out = open_out(path);
  if (!out) return out.error();
  out.value() << "track_id,t,u,v,polarity\n";
  for (const auto& [id, e] : rows) {
    out.value() << id << ',' << format_double(e.t) << ',' << format_double(e.u) << ','
                << format_double(e.v) << ',' << e.polarity << '\n';
  }
  return true;
}

Result<TrackIngest> parse_tracks(const std::string& path, const TrackValidity& validity) {
  auto rows = read_tracks_csv(path);
  if (!rows) return rows.error();
  return ingest_tracks(rows.value(), validity);
}

std::vector<std::pair<std::string, Event>> tracks_to_rows(
    const std::vector<SyntheticTrack>& tracks, const CameraIntrinsics& intrinsics, double t0) {
  std::vector<std::pair<std::string, Event>> rows;
  for (const auto& track : tracks) {
    int polarity = 1;
    for (const auto& sample : track.samples) {
      Event e;
      e.t = t0 + sample.tau_i;
      e.u = intrinsics.focal * sample.x + intrinsics.principal_x;
      e.v = 0.5 * intrinsics.height;
      e.polarity = polarity;
      polarity = -polarity;
      rows.emplace_back(track.id, e);
    }
  }
  return rows;
}

Result<CameraIntrinsics> read_intrinsics_toml(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) {
    return make_error(ErrorCode::ParseError, path + ": cannot open for reading");
  }
  CameraIntrinsics cam;
  bool saw_focal = false, saw_cx = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // Trim
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      return parse_error(path, line_no, 1, "expected 'key = value'");
    }
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key == "mount") {
      if (value == "vehicle-native") {
        cam.mount = CameraIntrinsics::Mount::VehicleNative;
      } else if (value == "optical-z-forward") {
        cam.mount = CameraIntrinsics::Mount::OpticalZForward;
      } else {
        return parse_error(path, line_no, 1, "unknown mount '" + value + "'");
      }
      continue;
    }
    auto num = parse_double(value, path, line_no, 1);
    if (!num) return num.error();
    if (key == "focal") {
      cam.focal = num.value();
      saw_focal = true;
    } else if (key == "cx") {
      cam.principal_x = num.value();
      saw_cx = true;
    } else if (key == "width") {
      cam.width = static_cast<int>(num.value());
    } else if (key == "height") {
      cam.height = static_cast<int>(num.value());
    } else {
      return parse_error(path, line_no, 1, "unknown key '" + key + "'");
    }
  }
  if (!saw_focal || !saw_cx) {
    return make_error(ErrorCode::ParseError, path + ": missing required key focal or cx");
  }
  if (cam.focal <= 0.0 || cam.principal_x < 0.0 ||
      (cam.width > 0 && cam.principal_x > cam.width)) {
    return make_error(ErrorCode::ParseError, path + ": focal must be > 0 and cx inside [0, width]");
  }
  return cam;
}

Result<bool> write_intrinsics_toml(const std::string& path, const CameraIntrinsics& cam) {
  auto out = open_out(path);
  if (!out) return out.error();
  out.value() << "focal = " << format_double(cam.focal) << "\n"
              << "cx = " << format_double(cam.principal_x) << "\n"
              << "width = " << cam.width << "\n"
              << "height = " << cam.height << "\n"
              << "mount = \""
              << (cam.mount == CameraIntrinsics::Mount::VehicleNative ? "vehicle-native"
                                                                      : "optical-z-forward")
              << "\"\n";
  return true;
}

Result<bool> write_omega_csv(const std::string& path,
                             const std::vector<WindowEstimate>& estimates) {
  auto out = open_out(path);
  if (!out) return out.error();
  out.value() << "t_start,t_end,omega,inliers,dir_x,dir_y\n";
  for (const auto& e : estimates) {
    out.value() << format_double(e.t_start) << ',' << format_double(e.t_end) << ','
                << format_double(e.omega) << ',' << e.inliers << ',' << format_double(e.dir_x)
                << ',' << format_double(e.dir_y) << '\n';
  }
  return true;
}

Result<std::vector<WindowEstimate>> read_omega_csv(const std::string& path) {
  CsvReader reader(path);
  auto header = reader.expect_header("t_start,t_end,omega,inliers,dir_x,dir_y");
  if (!header) return header.error();
  std::vector<WindowEstimate> estimates;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 6) {
      return parse_error(path, reader.line_no, static_cast<int>(fields.size()),
                         "expected 6 fields");
    }
    WindowEstimate e;
    double* slots[] = {&e.t_start, &e.t_end, &e.omega, nullptr, &e.dir_x, &e.dir_y};
    for (int i = 0; i < 6; ++i) {
      auto v = parse_double(fields[i], path, reader.line_no, i + 1);
      if (!v) return v.error();
      if (slots[i] != nullptr) {
        *slots[i] = v.value();
      } else {
        e.inliers = static_cast<int>(v.value());
      }
    }
    estimates.push_back(e);
  }
  if (estimates.empty()) {
    return make_error(ErrorCode::EmptyInput, path + ": no data rows");
  }
  return estimates;
}

Result<std::vector<TimedPose>> read_poses_csv(const std::string& path) {
  CsvReader reader(path);
  auto header = reader.expect_header("t,x,y,yaw");
  if (!header) return header.error();
  std::vector<TimedPose> poses;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 4) {
      return parse_error(path, reader.line_no, static_cast<int>(fields.size()),
                         "expected 4 fields");
    }
    TimedPose p;
    double* slots[] = {&p.t, &p.x, &p.y, &p.yaw};
    for (int i = 0; i < 4; ++i) {
      auto v = parse_double(fields[i], path, reader.line_no, i + 1);
      if (!v) return v.error();
      *slots[i] = v.value();
    }
    poses.push_back(p);
  }
  if (poses.empty()) {
    return make_error(ErrorCode::EmptyInput, path + ": no data rows");
  }
  return poses;
}

Result<bool> write_poses_csv(const std::string& path, const std::vector<TimedPose>& poses) {
  auto out = open_out(path);
  if (!out) return out.error();
  out.value() << "t,x,y,yaw\n";
  for (const auto& p : poses) {
    out.value() << format_double(p.t) << ',' << format_double(p.x) << ',' << format_double(p.y)
                << ',' << format_double(p.yaw) << '\n';
  }
  return true;
}

Result<std::vector<ScaleEntry>> read_scale_csv(const std::string& path) {
  CsvReader reader(path);
  auto header = reader.expect_header("t_start,t_end,d");
  if (!header) return header.error();
  std::vector<ScaleEntry> scales;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 3) {
      return parse_error(path, reader.line_no, static_cast<int>(fields.size()),
                         "expected 3 fields");
    }
    ScaleEntry s;
    double* slots[] = {&s.t_start, &s.t_end, &s.d};
    for (int i = 0; i < 3; ++i) {
      auto v = parse_double(fields[i], path, reader.line_no, i + 1);
      if (!v) return v.error();
      *slots[i] = v.value();
    }
    scales.push_back(s);
  }
  if (scales.empty()) {
    return make_error(ErrorCode::EmptyInput, path + ": no data rows");
  }
  return scales;
}

Result<bool> write_scale_csv(const std::string& path, const std::vector<ScaleEntry>& scales) {
  auto out = open_out(path);
  if (!out) return out.error();
  out.value() << "t_start,t_end,d\n";
  for (const auto& s : scales) {
    out.value() << format_double(s.t_start) << ',' << format_double(s.t_end) << ','
                << format_double(s.d) << '\n';
  }
  return true;
}

Result<bool> write_stats_csv(const std::string& path, const ErrorStats& stats) {
  auto out = open_out(path);
  if (!out) return out.error();
  out.value() << "mu_eps,nu_eps,mu_phi,nu_phi,windows,gaps\n"
              << format_double(stats.mu_eps) << ',' << format_double(stats.nu_eps) << ','
              << format_double(stats.mu_phi) << ',' << format_double(stats.nu_phi) << ','
              << stats.windows << ',' << stats.gaps << '\n';
  return true;
}

Result<bool> write_sweep_csv(const std::string& path, const SweepResult& sweep) {
  auto out = open_out(path);
  if (!out) return out.error();
  out.value() << "factor_value,order,mean_eps,trials,failures\n";
  for (const auto& cell : sweep.cells) {
    out.value() << format_double(cell.factor_value) << ',' << to_string(cell.order) << ','
                << format_double(cell.mean_eps) << ',' << cell.trials << ',' << cell.failures
                << '\n';
  }
  return true;
}

Result<std::vector<SweepRow>> read_sweep_csv(const std::string& path) {
  CsvReader reader(path);
  auto header = reader.expect_header("factor_value,order,mean_eps,trials,failures");
  if (!header) return header.error();
  std::vector<SweepRow> rows;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    if (fields.size() != 5) {
      return parse_error(path, reader.line_no, static_cast<int>(fields.size()),
                         "expected 5 fields");
    }
    SweepRow row;
    auto value = parse_double(fields[0], path, reader.line_no, 1);
    auto mean = parse_double(fields[2], path, reader.line_no, 3);
    auto trials = parse_double(fields[3], path, reader.line_no, 4);
    auto failures = parse_double(fields[4], path, reader.line_no, 5);
    for (const auto* r : {&value, &mean, &trials, &failures}) {
      if (!*r) return r->error();
    }
    row.factor_value = value.value();
    row.order = fields[1];
    row.mean_eps = mean.value();
    row.trials = static_cast<int>(trials.value());
    row.failures = static_cast<int>(failures.value());
    rows.push_back(row);
  }
  if (rows.empty()) {
    return make_error(ErrorCode::EmptyInput, path + ": no data rows");
  }
  return rows;
}

Result<bool> write_sweep_meta_toml(const std::string& path, const SweepResult& sweep,
                                   const SceneConfig& base) {
  auto out = open_out(path);
  if (!out) return out.error();
  auto& os = out.value();
  os << "# sweep metadata\n";
  os << "factor = \"" << to_string(sweep.factor) << "\"\n";
  os << "orders = \"";
  for (size_t i = 0; i < sweep.orders.size(); ++i) {
    os << (i > 0 ? "," : "") << to_string(sweep.orders[i]);
  }
  os << "\"\n";
  os << "values = \"";
  for (size_t i = 0; i < sweep.values.size(); ++i) {
    os << (i > 0 ? "," : "") << format_double(sweep.values[i]);
  }
  os << "\"\n";
  os << "trials = " << base.trials << "\n";
  os << "seed = " << base.seed << "\n";
  os << "n_landmarks = " << base.n_landmarks << "\n";
  os << "depth_mean = " << format_double(base.depth_mean) << "\n";
  os << "depth_halfwidth = " << format_double(base.depth_halfwidth) << "\n";
  os << "noise_sigma = " << format_double(base.noise_sigma) << "\n";
  os << "window = " << format_double(base.window) << "\n";
  os << "focal = " << format_double(base.focal) << "\n";
  os << "events_per_track = " << base.events_per_track << "\n";
  os << "tau = " << format_double(base.tau) << "\n";
  os << "d = " << format_double(base.d) << "\n";
  os << "image_width = " << format_double(base.image_width) << "\n";
  os << "omega_true_distribution = \"uniform(-0.5, 0.5) per trial\"\n";
  // Provenance: which knobs come from quoted text vs. read off plots.
  const bool figure_derived = sweep.factor == SweepFactor::Tau ||
                              sweep.factor == SweepFactor::Landmarks ||
                              sweep.factor == SweepFactor::Focal ||
                              sweep.factor == SweepFactor::Depth;
  os << "values_figure_derived = " << (figure_derived ? "true" : "false") << "\n";
  os << "image_width_figure_derived = true\n";
  return true;
}

Result<bool> write_solve_report_toml(const std::string& path, const TrackIngest& ingest,
                                     const WindowRun& run) {
  auto out = open_out(path);
  if (!out) return out.error();
  auto& os = out.value();
  os << "# solve report\n";
  os << "input_tracks = " << ingest.input_tracks << "\n";
  os << "used_tracks = " << ingest.tracks.size() << "\n";
  os << "dropped_tracks = " << ingest.dropped.size() << "\n";
  for (size_t i = 0; i < ingest.dropped.size(); ++i) {
    os << "dropped_" << i << " = \"" << ingest.dropped[i].track_id << ": "
       << ingest.dropped[i].reason << "\"\n";
  }
  os << "windows_estimated = " << run.estimates.size() << "\n";
  os << "windows_gap = " << run.gaps.size() << "\n";
  for (size_t i = 0; i < run.gaps.size(); ++i) {
    os << "gap_" << i << " = \"[" << format_double(run.gaps[i].t_start) << ", "
       << format_double(run.gaps[i].t_end) << "): " << run.gaps[i].reason << "\"\n";
  }
  return true;
}

}  // namespace rotvel
