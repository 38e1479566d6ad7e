#include "untangle/engine.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "untangle/random.hpp"

namespace untangle {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::FirstLex: return "first-lex";
    case StrategyKind::Random: return "random";
    case StrategyKind::GreedyMaxNewCrossings: return "greedy-max-new-crossings";
    case StrategyKind::GreedyMinDrop: return "greedy-min-drop";
    case StrategyKind::Exhaustive: return "exhaustive";
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view text) {
  if (text == "first-lex") return StrategyKind::FirstLex;
  if (text == "random") return StrategyKind::Random;
  if (text == "greedy-max-new-crossings") return StrategyKind::GreedyMaxNewCrossings;
  if (text == "greedy-min-drop") return StrategyKind::GreedyMinDrop;
  if (text == "exhaustive") return StrategyKind::Exhaustive;
  throw std::invalid_argument("unknown strategy '" + std::string(text) + "'");
}

std::vector<Flip> SequenceRecord::flips() const {
  std::vector<Flip> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.flip);
  return out;
}

Configuration SequenceRecord::replay(std::optional<std::size_t> upto) const {
  const std::size_t n = std::min(upto.value_or(steps.size()), steps.size());
  Configuration current = initial;
  for (std::size_t i = 0; i < n; ++i) current = apply_flip(current, steps[i].flip);
  return current;
}

std::size_t termination_certificate(const Configuration& c) {
  const auto full = build_line_set(c.points(), LineSetKind::Full);
  return static_cast<std::size_t>(phi_L(c, full).phi_l_total / 2 + 1);
}

namespace {

void require_valid(const Configuration& c) {
  const auto violations = validate(c);
  if (!violations.empty()) throw std::invalid_argument("invalid configuration: " + violations.front().message);
}

RecordStep make_step(const Flip& f, const Configuration& next, const LineSet& lines) {
  const auto report = phi_L(next, lines);
  return RecordStep{f, report.phi_x, report.phi_l_total, flip_drop(f, lines, next.points())};
}

}  // namespace

SequenceRecord run(const Configuration& c, const Strategy& strategy, const LineSet& lines,
                   std::optional<std::size_t> max_steps) {
  require_valid(c);
  const std::size_t budget = max_steps.value_or(termination_certificate(c));

  SequenceRecord rec{c, lines, {}, {}, false};
  Rng rng(strategy.seed);
  const LineSet& drop_lines = strategy.drop_lines ? *strategy.drop_lines : lines;

  std::vector<Flip> plan;
  if (strategy.kind == StrategyKind::Exhaustive) plan = oracle_longest(c).witness;

  Configuration current = c;
  while (true) {
    auto flips = applicable_flips(current);
    if (flips.empty()) {
      rec.terminated = phi_x(current) == 0;
      break;
    }
    if (rec.steps.size() >= budget) {
      if (!max_steps) {
        throw TerminationError("termination certificate violated after " + std::to_string(budget) + " steps");
      }
      break;
    }

    const Flip* chosen = nullptr;
    switch (strategy.kind) {
      case StrategyKind::FirstLex:
        chosen = &flips.front();
        break;
      case StrategyKind::Random:
        chosen = &flips[rng.below(flips.size())];
        break;
      case StrategyKind::GreedyMaxNewCrossings: {
        std::uint64_t best = 0;
        for (const auto& f : flips) {
          const auto after = phi_x(apply_flip(current, f));
          if (chosen == nullptr || after > best) {
            chosen = &f;
            best = after;
          }
        }
        break;
      }
      case StrategyKind::GreedyMinDrop: {
        std::int64_t best = 0;
        for (const auto& f : flips) {
          const auto drop = flip_drop(f, drop_lines, current.points());
          if (chosen == nullptr || drop < best) {
            chosen = &f;
            best = drop;
          }
        }
        break;
      }
      case StrategyKind::Exhaustive: {
        if (rec.steps.size() >= plan.size()) throw std::logic_error("exhaustive witness ended with crossings left");
        const auto it = std::find(flips.begin(), flips.end(), plan[rec.steps.size()]);
        if (it == flips.end()) throw std::logic_error("exhaustive witness step is not applicable");
        chosen = &*it;
        break;
      }
    }

    Configuration next = apply_flip(current, *chosen);
    rec.steps.push_back(make_step(*chosen, next, lines));
    rec.distinct_keys.insert(chosen->key());
    current = std::move(next);
  }
  return rec;
}

SequenceRecord record_sequence(const Configuration& c, const std::vector<Flip>& flips, const LineSet& lines) {
  require_valid(c);
  SequenceRecord rec{c, lines, {}, {}, false};
  Configuration current = c;
  for (const auto& f : flips) {
    Configuration next = apply_flip(current, f);
    rec.steps.push_back(make_step(f, next, lines));
    rec.distinct_keys.insert(f.key());
    current = std::move(next);
  }
  rec.terminated = phi_x(current) == 0;
  return rec;
}

std::size_t distinct_count(const SequenceRecord& rec) { return rec.distinct_keys.size(); }

AuditReport audit(const SequenceRecord& rec, const LineSet& lines, const std::vector<std::int64_t>& thresholds) {
  AuditReport report;
  const auto fail = [&](std::size_t step, std::string message) {
    report.ok = false;
    report.failed_step = step;
    report.message = std::move(message);
    return report;
  };

  if (const auto v = validate(rec.initial); !v.empty()) return fail(0, "initial configuration invalid: " + v.front().message);

  Configuration current = rec.initial;
  std::uint64_t previous_phi_l = phi_L(current, lines).phi_l_total;
  std::set<FlipKey> keys;
  for (std::size_t i = 0; i < rec.steps.size(); ++i) {
    const auto& step = rec.steps[i];
    const std::size_t n = i + 1;
    std::optional<Configuration> next;
    try {
      next = apply_flip(current, step.flip);
    } catch (const FlipError& e) {
      return fail(n, e.what());
    }
    if (const auto v = validate(*next); !v.empty()) return fail(n, "configuration invalid: " + v.front().message);

    const auto measured = phi_L(*next, lines);
    if (measured.phi_x != step.phi_x) {
      return fail(n, "phi_x snapshot " + std::to_string(step.phi_x) + " != measured " + std::to_string(measured.phi_x));
    }
    if (measured.phi_l_total != step.phi_l) {
      return fail(n, "phi_L snapshot " + std::to_string(step.phi_l) + " != measured " +
                         std::to_string(measured.phi_l_total));
    }
    if (measured.phi_l_total > previous_phi_l) return fail(n, "line potential increased");
    const auto expected_drop = flip_drop(step.flip, lines, next->points());
    if (step.drop != expected_drop) {
      return fail(n, "recorded drop " + std::to_string(step.drop) + " != flip_drop " + std::to_string(expected_drop));
    }
    const auto measured_drop = static_cast<std::int64_t>(previous_phi_l - measured.phi_l_total);
    if (measured_drop != expected_drop) {
      return fail(n, "measured drop " + std::to_string(measured_drop) + " != flip_drop " + std::to_string(expected_drop));
    }
    keys.insert(step.flip.key());
    previous_phi_l = measured.phi_l_total;
    current = std::move(*next);
  }

  if (keys != rec.distinct_keys) return fail(rec.steps.size(), "distinct-flip ledger does not match the steps");
  const bool untangled = phi_x(current) == 0;
  if (rec.terminated && !untangled) return fail(rec.steps.size(), "marked terminated with crossings left");
  if (!rec.terminated && untangled) return fail(rec.steps.size(), "final state is untangled but not marked terminated");

  for (const auto k : thresholds) {
    ThresholdSplit split{k, 0, 0};
    for (const auto& step : rec.steps) (step.drop >= k ? split.at_least : split.below)++;
    report.splits.push_back(split);
  }
  return report;
}

std::int64_t cube_root_ceil(std::uint64_t n) {
  std::int64_t k = 0;
  while (static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k) < n) ++k;
  return k;
}

void check_oracle_guard(const Configuration& c) {
  if (c.version() == Version::TSP) {
    if (c.points().size() > 6) {
      throw OracleGuardError("oracle scale exceeded: " + std::to_string(c.points().size()) + " tour points (max 6)");
    }
    return;
  }
  if (c.edge_count() > 4) {
    throw OracleGuardError("oracle scale exceeded: " + std::to_string(c.edge_count()) + " segments (max 4)");
  }
}

OracleResult oracle_longest(const Configuration& c, std::size_t depth_cap) {
  check_oracle_guard(c);
  require_valid(c);

  struct Entry {
    std::size_t length;
    std::optional<Flip> next;
  };
  std::map<EdgeMultiset, Entry> memo;

  std::function<std::size_t(const Configuration&, std::size_t)> longest = [&](const Configuration& cur,
                                                                             std::size_t depth) -> std::size_t {
    if (const auto it = memo.find(cur.edges()); it != memo.end()) return it->second.length;
    if (depth > depth_cap) throw std::runtime_error("oracle depth cap " + std::to_string(depth_cap) + " exceeded");
    Entry entry{0, std::nullopt};
    for (const auto& f : applicable_flips(cur)) {
      const auto len = 1 + longest(apply_flip(cur, f), depth + 1);
      if (len > entry.length) entry = Entry{len, f};
    }
    memo.emplace(cur.edges(), entry);
    return entry.length;
  };

  OracleResult result;
  result.length = longest(c, 0);
  Configuration cur = c;
  while (true) {
    const auto& entry = memo.at(cur.edges());
    if (!entry.next) break;
    result.witness.push_back(*entry.next);
    cur = apply_flip(cur, *entry.next);
  }
  return result;
}

std::size_t oracle_shortest_untangle(const Configuration& c) {
  check_oracle_guard(c);
  require_valid(c);

  std::set<EdgeMultiset> seen{c.edges()};
  std::deque<std::pair<Configuration, std::size_t>> queue{{c, 0}};
  while (!queue.empty()) {
    auto [cur, dist] = std::move(queue.front());
    queue.pop_front();
    if (phi_x(cur) == 0) return dist;
    for (const auto& f : applicable_flips(cur)) {
      Configuration next = apply_flip(cur, f);
      if (seen.insert(next.edges()).second) queue.emplace_back(std::move(next), dist + 1);
    }
  }
  throw std::logic_error("no crossing-free configuration reachable");
}

}  // namespace untangle
