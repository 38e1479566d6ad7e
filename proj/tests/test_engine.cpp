#include <gtest/gtest.h>

#include <functional>

#include "oracle_fixtures.hpp"
#include "support.hpp"
#include "untangle/engine.hpp"
#include "untangle/generators.hpp"

using namespace untangle;
using namespace untangle::testing;

namespace {

LineSet full_lines(const Configuration& c) { return build_line_set(c.points(), LineSetKind::Full); }

// Naive longest-sequence search without memoization: independent of the
// library's oracle bookkeeping.
std::size_t naive_longest(const Configuration& c) {
  std::size_t best = 0;
  for (const auto& f : applicable_flips(c)) best = std::max(best, 1 + naive_longest(apply_flip(c, f)));
  return best;
}

const std::vector<Strategy> kStrategies{Strategy::first_lex(), Strategy::random(3), Strategy::greedy_max_new_crossings(),
                                        Strategy::greedy_min_drop()};

}  // namespace

TEST(Run, SquareFirstLex) {
  const auto c = square_diagonals();
  const auto rec = run(c, Strategy::first_lex(), full_lines(c));
  ASSERT_EQ(rec.steps.size(), 1u);
  EXPECT_TRUE(rec.terminated);
  EXPECT_EQ(rec.steps[0].phi_x, 0u);
  EXPECT_EQ(rec.steps[0].drop, 2);
  EXPECT_EQ(rec.steps[0].phi_l, 0u);
  EXPECT_EQ(distinct_count(rec), 1u);
}

TEST(Run, UntangledInputIsEmptyRecord) {
  const auto rec = run(square_sides(), Strategy::first_lex(), full_lines(square_sides()));
  EXPECT_TRUE(rec.steps.empty());
  EXPECT_TRUE(rec.terminated);
}

TEST(Run, RejectsInvalidInput) {
  const auto bad = square_diagonals().with_version(Version::TSP);
  EXPECT_THROW(run(bad, Strategy::first_lex(), full_lines(bad)), std::invalid_argument);
}

TEST(Run, RandomIsDeterministicPerSeed) {
  const auto g = gen_points(GenSpec{GenKind::RandomGeneral, 16, 4});
  const auto c = gen_configuration(g.points, Version::MM, 4);
  const auto lines = full_lines(c);
  const auto a = run(c, Strategy::random(1), lines);
  const auto b = run(c, Strategy::random(1), lines);
  EXPECT_EQ(a.steps, b.steps);
  EXPECT_EQ(a.distinct_keys, b.distinct_keys);
}

TEST(Run, ConvexInstancesDecreaseCrossings) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 5 + seed % 6;
    const auto g = gen_points(GenSpec{GenKind::Convex, 2 * n, seed});
    const auto c = gen_configuration(g.points, Version::MM, seed);
    const auto lines = full_lines(c);
    for (const auto& s : kStrategies) {
      const auto rec = run(c, s, lines);
      EXPECT_TRUE(rec.terminated);
      EXPECT_LE(rec.steps.size(), n * (n - 1) / 2);
      std::uint64_t prev = phi_x(c);
      for (const auto& step : rec.steps) {
        EXPECT_LT(step.phi_x, prev);
        prev = step.phi_x;
      }
    }
  }
}

TEST(Run, MaxCrossingMatchingAllStrategies) {
  const auto c = gen_max_crossing_matching(7, 1);
  EXPECT_EQ(phi_x(c), 21u);
  for (const auto& s : kStrategies) {
    const auto rec = run(c, s, full_lines(c));
    EXPECT_TRUE(rec.terminated);
    EXPECT_LE(rec.steps.size(), 21u);
    EXPECT_TRUE(audit(rec, rec.lines).ok);
  }
}

TEST(Run, WithinTerminationCertificate) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto v = static_cast<Version>(seed % 4);
    const auto g = gen_points(GenSpec{GenKind::RandomGeneral, 10 + 2 * (seed % 3), seed});
    const auto c = gen_configuration(g.points, v, seed);
    const auto rec = run(c, kStrategies[seed % kStrategies.size()], full_lines(c));
    EXPECT_TRUE(rec.terminated);
    EXPECT_LE(rec.steps.size(), termination_certificate(c));
    EXPECT_EQ(phi_x(rec.replay()), 0u);
  }
}

TEST(Run, ExplicitBudgetStopsEarly) {
  const auto c = gen_max_crossing_matching(6, 2);
  const auto rec = run(c, Strategy::first_lex(), full_lines(c), 2);
  EXPECT_EQ(rec.steps.size(), 2u);
  EXPECT_FALSE(rec.terminated);
  EXPECT_TRUE(audit(rec, rec.lines).ok);
}

TEST(Run, GreedyMinDropPicksSmallestDrop) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_points(GenSpec{GenKind::RandomGeneral, 12, seed});
    const auto c = gen_configuration(g.points, Version::MM, seed);
    const auto lines = full_lines(c);
    const auto rec = run(c, Strategy::greedy_min_drop(), lines);
    Configuration state = c;
    for (const auto& step : rec.steps) {
      std::int64_t best = INT64_MAX;
      for (const auto& f : applicable_flips(state)) best = std::min(best, flip_drop(f, lines, state.points()));
      EXPECT_EQ(step.drop, best);
      state = apply_flip(state, step.flip);
    }
  }
}

TEST(Run, GreedyMaxNewCrossingsPicksMostCrossings) {
  const auto g = gen_points(GenSpec{GenKind::RandomGeneral, 12, 8});
  const auto c = gen_configuration(g.points, Version::TSP, 8);
  const auto rec = run(c, Strategy::greedy_max_new_crossings(), full_lines(c));
  Configuration state = c;
  for (const auto& step : rec.steps) {
    std::uint64_t best = 0;
    for (const auto& f : applicable_flips(state)) best = std::max(best, phi_x(apply_flip(state, f)));
    EXPECT_EQ(step.phi_x, best);
    state = apply_flip(state, step.flip);
  }
}

TEST(Record, ReplayReproducesSnapshots) {
  const auto g = gen_points(GenSpec{GenKind::NearConvex, 14, 6, 1000, 2});
  const auto c = gen_configuration(g.points, Version::MM, 6);
  const auto lines = build_line_set(c.points(), LineSetKind::NearConvex, g.convex_subset);
  const auto rec = run(c, Strategy::random(9), lines);
  const auto again = record_sequence(c, rec.flips(), lines);
  EXPECT_EQ(again.steps, rec.steps);
  for (std::size_t i = 0; i < rec.steps.size(); ++i) {
    const auto state = rec.replay(i + 1);
    EXPECT_EQ(phi_x(state), rec.steps[i].phi_x);
    EXPECT_EQ(phi_L(state, lines).phi_l_total, rec.steps[i].phi_l);
  }
}

TEST(DistinctCount, RepeatedFlipIdentity) {
  // Two copies of each diagonal: the same flip applies twice.
  const Configuration g(square_points(), Version::G, std::vector<Segment>{S(0, 1), S(0, 1), S(2, 3), S(2, 3)});
  const Flip f = Flip::make(S(0, 1), S(2, 3), S(0, 2), S(1, 3));
  const auto rec = record_sequence(g, {f, f}, full_lines(g));
  EXPECT_EQ(rec.steps.size(), 2u);
  EXPECT_EQ(distinct_count(rec), 1u);
  EXPECT_TRUE(rec.terminated);
  EXPECT_TRUE(audit(rec, rec.lines).ok);
}

TEST(DistinctCount, BoundedBySteps) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_points(GenSpec{GenKind::RandomGeneral, 10, seed});
    const auto c = gen_configuration(g.points, static_cast<Version>(seed % 4), seed);
    const auto rec = run(c, Strategy::random(seed), full_lines(c));
    EXPECT_LE(distinct_count(rec), rec.steps.size());
    EXPECT_LE(distinct_count(rec), 2u * 210u);
  }
}

TEST(Audit, HonestRecordPassesWithSplit) {
  const auto c = gen_max_crossing_matching(6, 5);
  const auto rec = run(c, Strategy::first_lex(), full_lines(c));
  const auto k = cube_root_ceil(c.edge_count());
  EXPECT_EQ(k, 2);
  const auto report = audit(rec, rec.lines, {k});
  EXPECT_TRUE(report.ok) << report.message;
  ASSERT_EQ(report.splits.size(), 1u);
  EXPECT_EQ(report.splits[0].k, k);
  EXPECT_EQ(report.splits[0].at_least + report.splits[0].below, rec.steps.size());
}

TEST(Audit, TamperedRecordsFailAtStep) {
  const auto c = gen_max_crossing_matching(6, 5);
  const auto rec = run(c, Strategy::greedy_max_new_crossings(), full_lines(c));
  ASSERT_GE(rec.steps.size(), 3u);

  auto drop = rec;
  drop.steps[2].drop += 1;
  auto r = audit(drop, drop.lines);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failed_step, 3u);

  auto px = rec;
  px.steps[1].phi_x += 1;
  r = audit(px, px.lines);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failed_step, 2u);

  auto flag = rec;
  flag.terminated = false;
  EXPECT_FALSE(audit(flag, flag.lines).ok);

  auto ledger = rec;
  ledger.distinct_keys.clear();
  EXPECT_FALSE(audit(ledger, ledger.lines).ok);

  // Swapping in a flip that does not apply.
  auto bogus = rec;
  bogus.steps[0].flip = rec.steps[1].flip;
  EXPECT_FALSE(audit(bogus, bogus.lines).ok);
}

TEST(CubeRootCeil, Values) {
  EXPECT_EQ(cube_root_ceil(0), 0);
  EXPECT_EQ(cube_root_ceil(1), 1);
  EXPECT_EQ(cube_root_ceil(8), 2);
  EXPECT_EQ(cube_root_ceil(9), 3);
  EXPECT_EQ(cube_root_ceil(27), 3);
  EXPECT_EQ(cube_root_ceil(28), 4);
  EXPECT_EQ(cube_root_ceil(1000000), 100);
  EXPECT_EQ(cube_root_ceil(1000001), 101);
}

TEST(Oracle, SpecExamples) {
  EXPECT_EQ(oracle_longest(square_diagonals()).length, 1u);
  EXPECT_EQ(oracle_longest(square_sides()).length, 0u);
  EXPECT_EQ(oracle_shortest_untangle(square_sides()), 0u);
  EXPECT_EQ(oracle_shortest_untangle(square_diagonals()), 1u);
}

TEST(Oracle, Guard) {
  const auto big = gen_max_crossing_matching(5, 1);
  EXPECT_THROW(oracle_longest(big), OracleGuardError);
  EXPECT_THROW(oracle_shortest_untangle(big), OracleGuardError);
  const auto g = gen_points(GenSpec{GenKind::RandomGeneral, 7, 1});
  const auto tour = gen_configuration(g.points, Version::TSP, 1);
  EXPECT_THROW(check_oracle_guard(tour), OracleGuardError);
  const auto g6 = gen_points(GenSpec{GenKind::RandomGeneral, 6, 1});
  EXPECT_NO_THROW(check_oracle_guard(gen_configuration(g6.points, Version::TSP, 1)));
}

TEST(Oracle, FrozenFixtures) {
  for (const auto& fx : kOracleFixtures) {
    const auto inst = load_fixture(fx);
    const auto& c = inst.config;
    ASSERT_LE(c.edge_count(), 3u) << fx.file;
    const auto longest = oracle_longest(c);
    EXPECT_EQ(longest.length, fx.longest) << fx.file;
    EXPECT_EQ(naive_longest(c), fx.longest) << fx.file;
    EXPECT_EQ(oracle_shortest_untangle(c), fx.shortest) << fx.file;
    EXPECT_LE(fx.shortest, fx.longest);

    // The witness is a legal untangling sequence of that length.
    const auto rec = record_sequence(c, longest.witness, full_lines(c));
    EXPECT_EQ(rec.steps.size(), fx.longest);
    EXPECT_TRUE(rec.terminated);

    const auto ex = run(c, Strategy::exhaustive(), full_lines(c));
    EXPECT_EQ(ex.steps.size(), fx.longest) << fx.file;
    EXPECT_TRUE(ex.terminated);
  }
}

TEST(Oracle, ShortestNeverExceedsLongestOnTinyTours) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto g = gen_points(GenSpec{GenKind::RandomGeneral, 6, seed});
    const auto c = gen_configuration(g.points, Version::TSP, seed);
    const auto longest = oracle_longest(c).length;
    EXPECT_EQ(longest, naive_longest(c));
    EXPECT_LE(oracle_shortest_untangle(c), longest);
  }
}
