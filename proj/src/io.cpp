#include "untangle/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace untangle {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& field, const std::string& what) {
  throw FormatError(where + ": " + field + ": " + what);
}

void only_keys(const json& j, const std::string& where, const std::string& field, std::set<std::string> allowed) {
  if (!j.is_object()) bad(where, field, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) bad(where, field.empty() ? key : field + "." + key, "unknown field");
  }
}

const json& require(const json& j, const std::string& where, const std::string& field, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) bad(where, field.empty() ? key : field + "." + key, "missing");
  return *it;
}

std::uint32_t as_id(const json& j, const std::string& where, const std::string& field) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() > UINT32_MAX) bad(where, field, "expected a point id");
  return static_cast<std::uint32_t>(j.get<std::uint64_t>());
}

std::uint64_t as_count(const json& j, const std::string& where, const std::string& field) {
  if (!j.is_number_unsigned()) bad(where, field, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

Segment as_segment(const json& j, const std::string& where, const std::string& field) {
  if (!j.is_array() || j.size() != 2) bad(where, field, "expected [id, id]");
  const auto a = as_id(j[0], where, field + "[0]");
  const auto b = as_id(j[1], where, field + "[1]");
  if (a == b) bad(where, field, "degenerate segment");
  return Segment::make(PointId{a}, PointId{b});
}

json segment_json(const Segment& s) { return json::array({s.a.value, s.b.value}); }

std::array<Segment, 2> as_pair(const json& j, const std::string& where, const std::string& field) {
  if (!j.is_array() || j.size() != 2) bad(where, field, "expected two segments");
  return {as_segment(j[0], where, field + "[0]"), as_segment(j[1], where, field + "[1]")};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path.string() + ": cannot write");
  out << text;
}

}  // namespace

std::string_view to_string(LineSetKind kind) { return kind == LineSetKind::Full ? "full" : "nearconvex"; }

LineSetKind parse_line_set_kind(std::string_view text) {
  if (text == "full") return LineSetKind::Full;
  if (text == "nearconvex") return LineSetKind::NearConvex;
  throw std::invalid_argument("unknown line set '" + std::string(text) + "'");
}

LineSet line_set_for(const PointSet& pts, LineSetKind kind, const std::vector<PointId>& convex_subset) {
  if (kind == LineSetKind::NearConvex && convex_subset.empty()) {
    throw std::invalid_argument("the nearconvex potential needs a convex_subset");
  }
  return build_line_set(pts, kind, convex_subset);
}

json instance_to_json(const Instance& instance) {
  json j;
  j["version"] = std::string(to_string(instance.config.version()));
  json points = json::array();
  for (const auto& p : instance.config.points().points()) {
    json jp{{"id", p.id.value}, {"x", format_coord(p.x)}, {"y", format_coord(p.y)}};
    if (p.color != Color::None) jp["color"] = std::string(to_string(p.color));
    points.push_back(std::move(jp));
  }
  j["points"] = std::move(points);
  json edges = json::array();
  for (const auto& s : instance.config.edge_list()) edges.push_back(segment_json(s));
  j["edges"] = std::move(edges);
  if (!instance.convex_subset.empty()) {
    json subset = json::array();
    for (PointId id : instance.convex_subset) subset.push_back(id.value);
    j["convex_subset"] = std::move(subset);
  }
  return j;
}

Instance instance_from_json(const json& j, const std::string& where) {
  only_keys(j, where, "", {"version", "points", "edges", "convex_subset"});
  const auto& jv = require(j, where, "", "version");
  if (!jv.is_string()) bad(where, "version", "expected a string");
  Version version;
  try {
    version = parse_version(jv.get<std::string>());
  } catch (const std::invalid_argument& e) {
    bad(where, "version", e.what());
  }

  const auto& jpoints = require(j, where, "", "points");
  if (!jpoints.is_array()) bad(where, "points", "expected an array");
  std::vector<Point> points;
  std::set<std::uint32_t> seen;
  for (std::size_t i = 0; i < jpoints.size(); ++i) {
    const std::string field = "points[" + std::to_string(i) + "]";
    const auto& jp = jpoints[i];
    only_keys(jp, where, field, {"id", "x", "y", "color"});
    Point p;
    p.id = PointId{as_id(require(jp, where, field, "id"), where, field + ".id")};
    if (!seen.insert(p.id.value).second) bad(where, field + ".id", "duplicate id");
    for (const char* axis : {"x", "y"}) {
      const auto& jc = require(jp, where, field, axis);
      if (!jc.is_string()) bad(where, field + "." + axis, "expected a \"p/q\" string");
      try {
        (axis[0] == 'x' ? p.x : p.y) = parse_coord(jc.get<std::string>());
      } catch (const std::invalid_argument& e) {
        bad(where, field + "." + axis, e.what());
      }
    }
    if (const auto it = jp.find("color"); it != jp.end()) {
      if (!it->is_string()) bad(where, field + ".color", "expected a string");
      try {
        p.color = parse_color(it->get<std::string>());
      } catch (const std::invalid_argument& e) {
        bad(where, field + ".color", e.what());
      }
    }
    points.push_back(std::move(p));
  }
  auto pts = make_point_set(std::move(points));

  const auto& jedges = require(j, where, "", "edges");
  if (!jedges.is_array()) bad(where, "edges", "expected an array");
  std::vector<Segment> edges;
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    const Segment s = as_segment(jedges[i], where, field);
    if (!pts->contains(s.a) || !pts->contains(s.b)) bad(where, field, "references an unknown point");
    edges.push_back(s);
  }

  Instance out{Configuration(pts, version, edges), {}};
  if (const auto it = j.find("convex_subset"); it != j.end()) {
    if (!it->is_array()) bad(where, "convex_subset", "expected an array of ids");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string field = "convex_subset[" + std::to_string(i) + "]";
      const PointId id{as_id((*it)[i], where, field)};
      if (!pts->contains(id)) bad(where, field, "references an unknown point");
      out.convex_subset.push_back(id);
    }
  }

  if (const auto violations = validate(out.config); !violations.empty()) {
    bad(where, "edges", "invalid " + std::string(to_string(version)) + " configuration: " + violations.front().message);
  }
  return out;
}

json record_to_json(const RecordFile& file) {
  const auto& rec = file.record;
  json j;
  j["instance"] = instance_to_json(Instance{rec.initial, file.convex_subset});
  j["line_set"] = std::string(to_string(rec.lines.kind));
  if (file.strategy) j["strategy"] = *file.strategy;
  if (file.seed) j["seed"] = *file.seed;
  j["terminated"] = rec.terminated;
  json steps = json::array();
  for (const auto& s : rec.steps) {
    steps.push_back(json{{"removed", json::array({segment_json(s.flip.removed[0]), segment_json(s.flip.removed[1])})},
                         {"added", json::array({segment_json(s.flip.added[0]), segment_json(s.flip.added[1])})},
                         {"phi_x", s.phi_x},
                         {"phi_l", s.phi_l},
                         {"drop", s.drop}});
  }
  j["steps"] = std::move(steps);
  return j;
}

RecordFile record_from_json(const json& j, const std::string& where, const std::filesystem::path& base_dir) {
  only_keys(j, where, "", {"instance", "instance_file", "line_set", "strategy", "seed", "terminated", "steps"});
  const bool inline_instance = j.contains("instance");
  if (inline_instance == j.contains("instance_file")) bad(where, "instance", "exactly one of instance / instance_file");

  Instance instance = [&] {
    if (inline_instance) return instance_from_json(j["instance"], where + ": instance");
    const auto& ref = j["instance_file"];
    if (!ref.is_string()) bad(where, "instance_file", "expected a path");
    return read_instance(base_dir / ref.get<std::string>());
  }();

  const auto& jl = require(j, where, "", "line_set");
  if (!jl.is_string()) bad(where, "line_set", "expected \"full\" or \"nearconvex\"");
  LineSet lines;
  try {
    lines = line_set_for(instance.config.points(), parse_line_set_kind(jl.get<std::string>()), instance.convex_subset);
  } catch (const std::invalid_argument& e) {
    bad(where, "line_set", e.what());
  }

  RecordFile out{SequenceRecord{instance.config, std::move(lines), {}, {}, false}, instance.convex_subset, {}, {}};
  if (const auto it = j.find("strategy"); it != j.end()) {
    if (!it->is_string()) bad(where, "strategy", "expected a string");
    out.strategy = it->get<std::string>();
  }
  if (const auto it = j.find("seed"); it != j.end()) out.seed = as_count(*it, where, "seed");
  const auto& jt = require(j, where, "", "terminated");
  if (!jt.is_boolean()) bad(where, "terminated", "expected a boolean");
  out.record.terminated = jt.get<bool>();

  const auto& jsteps = require(j, where, "", "steps");
  if (!jsteps.is_array()) bad(where, "steps", "expected an array");
  for (std::size_t i = 0; i < jsteps.size(); ++i) {
    const std::string field = "steps[" + std::to_string(i) + "]";
    const auto& js = jsteps[i];
    only_keys(js, where, field, {"removed", "added", "phi_x", "phi_l", "drop"});
    const auto removed = as_pair(require(js, where, field, "removed"), where, field + ".removed");
    const auto added = as_pair(require(js, where, field, "added"), where, field + ".added");
    RecordStep step{Flip::make(removed[0], removed[1], added[0], added[1]), 0, 0, 0};
    step.phi_x = as_count(require(js, where, field, "phi_x"), where, field + ".phi_x");
    step.phi_l = as_count(require(js, where, field, "phi_l"), where, field + ".phi_l");
    const auto& jd = require(js, where, field, "drop");
    if (!jd.is_number_integer()) bad(where, field + ".drop", "expected an integer");
    step.drop = jd.get<std::int64_t>();
    out.record.distinct_keys.insert(step.flip.key());
    out.record.steps.push_back(step);
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(parse_file(path), path.string()); }

void write_instance(const std::filesystem::path& path, const Instance& instance) {
  write_text(path, dump(instance_to_json(instance)));
}

RecordFile read_record(const std::filesystem::path& path) {
  return record_from_json(parse_file(path), path.string(), path.parent_path());
}

void write_record(const std::filesystem::path& path, const RecordFile& record) {
  write_text(path, dump(record_to_json(record)));
}

void write_csv(const SequenceRecord& rec, std::ostream& out) {
  out << kCsvHeader << '\n';
  std::set<FlipKey> seen;
  for (std::size_t i = 0; i < rec.steps.size(); ++i) {
    const auto& s = rec.steps[i];
    seen.insert(s.flip.key());
    out << (i + 1) << ',' << s.flip.key().to_string() << ',' << s.phi_x << ',' << s.phi_l << ',' << s.drop << ','
        << seen.size() << '\n';
  }
}

}  // namespace untangle
