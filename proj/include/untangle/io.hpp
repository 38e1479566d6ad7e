#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "untangle/engine.hpp"

namespace untangle {

/// Malformed or unreadable input; the message names the file and field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  Configuration config;
  std::vector<PointId> convex_subset;  // optional in the file; empty when absent
};

struct RecordFile {
  SequenceRecord record;
  std::vector<PointId> convex_subset;   // of the embedded instance
  std::optional<std::string> strategy;  // informational
  std::optional<std::uint64_t> seed;    // informational
};

nlohmann::json instance_to_json(const Instance& instance);
/// `where` prefixes error messages (typically the file name).
Instance instance_from_json(const nlohmann::json& j, const std::string& where);

nlohmann::json record_to_json(const RecordFile& record);
/// `base_dir` resolves an "instance_file" reference.
RecordFile record_from_json(const nlohmann::json& j, const std::string& where,
                            const std::filesystem::path& base_dir = {});

std::string dump(const nlohmann::json& j);

Instance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const Instance& instance);
RecordFile read_record(const std::filesystem::path& path);
void write_record(const std::filesystem::path& path, const RecordFile& record);

/// Line set named by a record: "full" or "nearconvex" (using `convex_subset`).
LineSet line_set_for(const PointSet& pts, LineSetKind kind, const std::vector<PointId>& convex_subset);
std::string_view to_string(LineSetKind kind);
LineSetKind parse_line_set_kind(std::string_view text);

inline constexpr std::string_view kCsvHeader = "step,flip_key,phi_x,phi_l,drop,distinct_so_far";

void write_csv(const SequenceRecord& rec, std::ostream& out);

}  // namespace untangle
