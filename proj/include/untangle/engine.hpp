#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "untangle/configuration.hpp"
#include "untangle/potentials.hpp"

namespace untangle {

enum class StrategyKind : std::uint8_t { FirstLex, Random, GreedyMaxNewCrossings, GreedyMinDrop, Exhaustive };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view text);

/// How run() picks the next flip among applicable_flips (which are sorted by
/// key; every tie goes to the smallest key).
///   FirstLex               smallest key
///   Random                 uniform draw from a seeded generator
///   GreedyMaxNewCrossings  maximizes crossings after the flip
///   GreedyMinDrop          minimizes flip_drop over `drop_lines`
///                          (the run's line set when unset)
///   Exhaustive             follows a longest-sequence witness from
///                          oracle_longest (tiny instances only)
struct Strategy {
  StrategyKind kind = StrategyKind::FirstLex;
  std::uint64_t seed = 0;
  std::optional<LineSet> drop_lines;

  static Strategy first_lex() { return {StrategyKind::FirstLex, 0, std::nullopt}; }
  static Strategy random(std::uint64_t seed) { return {StrategyKind::Random, seed, std::nullopt}; }
  static Strategy greedy_max_new_crossings() { return {StrategyKind::GreedyMaxNewCrossings, 0, std::nullopt}; }
  static Strategy greedy_min_drop(std::optional<LineSet> lines = std::nullopt) {
    return {StrategyKind::GreedyMinDrop, 0, std::move(lines)};
  }
  static Strategy exhaustive() { return {StrategyKind::Exhaustive, 0, std::nullopt}; }
};

struct RecordStep {
  Flip flip;
  std::uint64_t phi_x = 0;  // after the flip
  std::uint64_t phi_l = 0;  // after the flip, over the record's line set
  std::int64_t drop = 0;    // flip_drop against the record's line set

  bool operator==(const RecordStep&) const = default;
};

struct SequenceRecord {
  Configuration initial;
  LineSet lines;
  std::vector<RecordStep> steps;
  std::set<FlipKey> distinct_keys;
  bool terminated = false;

  std::vector<Flip> flips() const;
  /// Configuration after the first `upto` steps (all steps by default).
  Configuration replay(std::optional<std::size_t> upto = std::nullopt) const;
};

class TerminationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Steps allowed by the full-line-set certificate: every flip lowers the full
/// line potential by at least 2.
std::size_t termination_certificate(const Configuration& c);

/// Flips until no crossing remains. With no explicit budget the certificate
/// is the budget and exceeding it throws TerminationError; an explicit budget
/// just stops the run with terminated == false.
SequenceRecord run(const Configuration& c, const Strategy& strategy, const LineSet& lines,
                   std::optional<std::size_t> max_steps = std::nullopt);

/// Builds a record (snapshots and ledger) for a given flip sequence, applying
/// every flip with full legality checks.
SequenceRecord record_sequence(const Configuration& c, const std::vector<Flip>& flips, const LineSet& lines);

std::size_t distinct_count(const SequenceRecord& rec);

struct ThresholdSplit {
  std::int64_t k = 0;
  std::size_t at_least = 0;  // steps with drop >= k
  std::size_t below = 0;     // steps with drop < k
};

struct AuditReport {
  bool ok = true;
  std::optional<std::size_t> failed_step;  // 1-based; 0 = initial configuration
  std::string message;
  std::vector<ThresholdSplit> splits;
};

/// Replays the record and checks per-step legality and validity, snapshot
/// values, monotone line potential, drop == flip_drop(f, lines) == measured
/// potential difference, the distinct-key ledger and the termination flag.
AuditReport audit(const SequenceRecord& rec, const LineSet& lines, const std::vector<std::int64_t>& thresholds = {});

/// ceil(n^(1/3)) for integer n, computed exactly.
std::int64_t cube_root_ceil(std::uint64_t n);

class OracleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws OracleGuardError above 4 edges (matchings and multigraphs) or
/// 6 points (tours).
void check_oracle_guard(const Configuration& c);

struct OracleResult {
  std::size_t length = 0;
  std::vector<Flip> witness;
};

/// Longest flip sequence from c by exhaustive memoized search.
OracleResult oracle_longest(const Configuration& c, std::size_t depth_cap = 64);

/// Fewest flips from c to a crossing-free configuration (breadth-first).
std::size_t oracle_shortest_untangle(const Configuration& c);

}  // namespace untangle
