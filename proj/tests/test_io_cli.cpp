#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "untangle/cli.hpp"
#include "untangle/generators.hpp"
#include "untangle/io.hpp"
#include "untangle/svg.hpp"

using namespace untangle;
using namespace untangle::testing;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("untangle_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST(InstanceJson, RoundTripIsExact) {
  const auto pts = make_point_set({Point{P(0), Coord(1, 3), Coord(-7, 2), Color::Red},
                                   Point{P(4), Coord(5), Coord(2, 9), Color::Blue},
                                   Point{P(9), Coord(-3, 11), Coord(13, 5), Color::Red},
                                   Point{P(12), Coord(8), Coord(1), Color::Blue}});
  const Instance inst{Configuration(pts, Version::RB, std::vector<Segment>{S(0, 4), S(9, 12)}), {}};
  ASSERT_TRUE(validate(inst.config).empty());
  const auto text = dump(instance_to_json(inst));
  const auto back = instance_from_json(nlohmann::json::parse(text), "mem");
  EXPECT_EQ(back.config, inst.config);
  EXPECT_EQ(back.config.points().at(P(9)).x, Coord(-3, 11));
  EXPECT_EQ(dump(instance_to_json(back)), text);
  EXPECT_NE(text.find("\"-3/11\""), std::string::npos);
}

TEST(InstanceJson, MultigraphRepeatsEdges) {
  const Configuration g(square_points(), Version::G, std::vector<Segment>{S(0, 1), S(0, 1), S(2, 3)});
  const auto j = instance_to_json(Instance{g, {}});
  EXPECT_EQ(j.at("edges").size(), 3u);
  EXPECT_EQ(instance_from_json(j, "mem").config.multiplicity(S(0, 1)), 2u);
}

TEST(InstanceJson, StrictErrorsNameTheField) {
  const auto base = instance_to_json(Instance{square_diagonals(), {}});
  const auto expect_error = [](const nlohmann::json& j, const std::string& fragment) {
    try {
      instance_from_json(j, "inst.json");
      ADD_FAILURE() << "accepted: " << fragment;
    } catch (const FormatError& e) {
      const std::string msg = e.what();
      EXPECT_NE(msg.find("inst.json"), std::string::npos) << msg;
      EXPECT_NE(msg.find(fragment), std::string::npos) << fragment << " / " << msg;
    }
  };
  auto extra = base;
  extra["colour"] = "red";
  expect_error(extra, "colour");

  auto bad_x = base;
  bad_x["points"][1]["x"] = "1.5";
  expect_error(bad_x, "x");

  auto numeric = base;
  numeric["points"][0]["y"] = 3;
  expect_error(numeric, "y");

  auto version = base;
  version["version"] = "XYZ";
  expect_error(version, "version");

  auto tour = base;
  tour["version"] = "TSP";
  expect_error(tour, "invalid TSP configuration");

  auto missing = base;
  missing.erase("edges");
  expect_error(missing, "edges");

  auto unknown_id = base;
  unknown_id["edges"][0] = {0, 42};
  expect_error(unknown_id, "edges");
}

TEST(Csv, HeaderRowsAndDropSum) {
  const auto c = gen_max_crossing_matching(6, 3);
  const auto lines = build_line_set(c.points(), LineSetKind::Full);
  const auto rec = run(c, Strategy::random(4), lines);
  std::ostringstream out;
  write_csv(rec, out);
  const auto rows = lines_of(out.str());
  ASSERT_EQ(rows.size(), rec.steps.size() + 1);
  EXPECT_EQ(rows[0], kCsvHeader);
  std::int64_t drops = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto last_comma = rows[i].rfind(',');
    const auto prev_comma = rows[i].rfind(',', last_comma - 1);
    drops += std::stoll(rows[i].substr(prev_comma + 1, last_comma - prev_comma - 1));
    EXPECT_EQ(rows[i].substr(0, rows[i].find(',')), std::to_string(i));
  }
  EXPECT_EQ(drops, static_cast<std::int64_t>(phi_L(c, lines).phi_l_total - phi_L(rec.replay(), lines).phi_l_total));
}

TEST(Svg, SquareCounts) {
  const auto plain = render_svg(square_diagonals());
  EXPECT_EQ(count(plain, "<circle"), 4u);
  EXPECT_EQ(count(plain, "<line"), 2u);
  const auto hl = render_svg(square_diagonals(), Flip::make(S(0, 1), S(2, 3), S(0, 2), S(1, 3)));
  EXPECT_EQ(count(hl, "<circle"), 4u);
  EXPECT_EQ(count(hl, "<line"), 4u);
  EXPECT_EQ(count(hl, "stroke-dasharray"), 2u);
  EXPECT_EQ(render_svg(square_diagonals()), plain);

  const auto rb = render_svg(square_diagonals(Version::RB));
  EXPECT_EQ(count(rb, "<circle"), 4u);
  EXPECT_NE(rb, plain);
}

TEST_F(Workdir, RecordRoundTripIsExact) {
  const auto g = gen_points(GenSpec{GenKind::NearConvex, 12, 5, 1000, 2});
  const auto c = gen_configuration(g.points, Version::MM, 5);
  const auto lines = build_line_set(c.points(), LineSetKind::NearConvex, g.convex_subset);
  const RecordFile file{run(c, Strategy::random(2), lines), g.convex_subset, "random", 2};
  write_record(path("r.json"), file);
  const auto back = read_record(path("r.json"));
  EXPECT_EQ(back.record.steps, file.record.steps);
  EXPECT_EQ(back.record.lines.lines, lines.lines);
  EXPECT_EQ(back.record.distinct_keys, file.record.distinct_keys);
  EXPECT_EQ(back.record.terminated, file.record.terminated);
  EXPECT_EQ(back.seed, 2u);
  write_record(path("r2.json"), back);
  EXPECT_EQ(slurp(path("r.json")), slurp(path("r2.json")));
  EXPECT_TRUE(audit(back.record, back.record.lines).ok);
}

TEST_F(Workdir, RecordWithInstanceReference) {
  ASSERT_EQ(cli({"gen", "--kind", "convex", "--points", "8", "--seed", "4", "-o", path("i.json")}).code, 0);
  ASSERT_EQ(cli({"run", path("i.json"), "--record", path("r.json"), "--csv", path("c.csv")}).code, 0);
  auto j = nlohmann::json::parse(slurp(path("r.json")));
  j.erase("instance");
  j["instance_file"] = "i.json";
  spit(path("ref.json"), j.dump(2));
  const auto res = cli({"audit", path("ref.json")});
  EXPECT_EQ(res.code, 0) << res.out << res.err;
}

TEST_F(Workdir, GenRunAuditPipeline) {
  auto r = cli({"gen", "--kind", "convex", "--points", "10", "--seed", "1", "-o", path("i.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = cli({"run", path("i.json"), "--strategy", "first-lex", "--record", path("r.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines_of(r.out);
  ASSERT_GE(rows.size(), 1u);
  EXPECT_EQ(rows[0], kCsvHeader);
  EXPECT_LE(rows.size() - 1, 10u);

  r = cli({"audit", path("r.json")});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
  EXPECT_NE(r.out.find("k=2"), std::string::npos);

  for (const char* strategy : {"random", "greedy-max-new-crossings", "greedy-min-drop"}) {
    r = cli({"run", path("i.json"), "--strategy", strategy, "--seed", "3", "--potential", "nearconvex", "--record",
             path("s.json"), "--csv", path("s.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(cli({"audit", path("s.json")}).code, 0) << strategy;
  }
}

TEST_F(Workdir, TamperedRecordFailsAudit) {
  ASSERT_EQ(cli({"gen", "--kind", "convex", "--points", "12", "--seed", "2", "-o", path("i.json")}).code, 0);
  ASSERT_EQ(cli({"run", path("i.json"), "--strategy", "greedy-max-new-crossings", "--record", path("r.json"), "--csv",
                 path("c.csv")})
                .code,
            0);
  auto j = nlohmann::json::parse(slurp(path("r.json")));
  ASSERT_GE(j["steps"].size(), 2u);
  j["steps"][1]["drop"] = j["steps"][1]["drop"].get<std::int64_t>() + 2;
  spit(path("bad.json"), j.dump(2));
  const auto r = cli({"audit", path("bad.json")});
  EXPECT_NE(r.code, 0);
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.out.find("FAIL step 2"), std::string::npos) << r.out;
}

TEST_F(Workdir, ReduceDoublesSequence) {
  ASSERT_EQ(cli({"gen", "--points", "10", "--seed", "7", "-o", path("i.json")}).code, 0);
  ASSERT_EQ(cli({"run", path("i.json"), "--strategy", "random", "--seed", "7", "--record", path("r.json"), "--csv",
                 path("c.csv")})
                .code,
            0);
  auto r = cli({"reduce", "--to", "rb", "--with-sequence", path("r.json"), "-o", path("rb.json"), "--record-out",
                path("rb_rec.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto src = read_record(path("r.json"));
  const auto tgt = read_record(path("rb_rec.json"));
  EXPECT_EQ(tgt.record.steps.size(), 2 * src.record.steps.size());
  EXPECT_EQ(tgt.record.initial.version(), Version::RB);
  EXPECT_EQ(cli({"audit", path("rb_rec.json")}).code, 0);
  EXPECT_EQ(read_instance(path("rb.json")).config, tgt.record.initial);

  r = cli({"reduce", "--to", "tsp", "--with-sequence", path("rb_rec.json"), "-o", path("tsp.json"), "--record-out",
           path("tsp_rec.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_record(path("tsp_rec.json")).record.steps.size(), 2 * tgt.record.steps.size());

  // A matching is a multigraph, so --to mm accepts it.
  r = cli({"reduce", path("i.json"), "--to", "mm", "-o", path("mm.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  // A tour is not a matching.
  ASSERT_EQ(cli({"gen", "--points", "6", "--version", "TSP", "-o", path("t.json")}).code, 0);
  EXPECT_EQ(cli({"reduce", path("t.json"), "--to", "rb"}).code, kExitFailure);
}

TEST_F(Workdir, OracleCommand) {
  const Instance sq{square_diagonals(), {}};
  write_instance(path("sq.json"), sq);
  auto r = cli({"oracle", path("sq.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines_of(r.out).at(0), "1");
  r = cli({"oracle", path("sq.json"), "--mode", "shortest"});
  EXPECT_EQ(r.out, "1\n");

  write_instance(path("big.json"), Instance{gen_max_crossing_matching(5, 1), {}});
  r = cli({"oracle", path("big.json")});
  EXPECT_EQ(r.code, kExitOracleGuard);
  EXPECT_NE(r.err.find("oracle scale exceeded"), std::string::npos) << r.err;
}

TEST_F(Workdir, ErrorsAndExitCodes) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"gen"}).code, kExitUsage);
  EXPECT_EQ(cli({"run", path("i.json"), "--strategy", "bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);

  auto r = cli({"run", path("missing.json")});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("missing.json"), std::string::npos);

  spit(path("broken.json"), "{ not json");
  r = cli({"audit", path("broken.json")});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("broken.json"), std::string::npos);

  auto j = instance_to_json(Instance{square_diagonals(), {}});
  j["points"][2]["x"] = "two";
  spit(path("bad.json"), j.dump());
  r = cli({"run", path("bad.json")});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("bad.json"), std::string::npos);
  EXPECT_NE(r.err.find("x"), std::string::npos);

  EXPECT_EQ(cli({"gen", "--points", "7", "--version", "MM"}).code, kExitFailure);
}

TEST_F(Workdir, RenderCommand) {
  write_instance(path("sq.json"), Instance{square_diagonals(), {}});
  auto r = cli({"render", path("sq.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count(r.out, "<circle"), 4u);
  EXPECT_EQ(count(r.out, "<line"), 2u);

  ASSERT_EQ(cli({"run", path("sq.json"), "--record", path("r.json"), "--csv", path("c.csv")}).code, 0);
  r = cli({"render", path("r.json"), "--step", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count(r.out, "<line"), 4u);
  EXPECT_EQ(count(r.out, "stroke-dasharray"), 2u);
  r = cli({"render", path("r.json")});
  EXPECT_EQ(count(r.out, "<line"), 2u);
  EXPECT_EQ(cli({"render", path("r.json"), "--step", "5"}).code, kExitUsage);
}

TEST_F(Workdir, DeterministicOutputs) {
  for (int pass = 0; pass < 2; ++pass) {
    const std::string tag = std::to_string(pass);
    ASSERT_EQ(cli({"gen", "--kind", "nearconvex", "--points", "14", "--interior", "2", "--seed", "9", "-o",
                   path("i" + tag + ".json")})
                  .code,
              0);
    ASSERT_EQ(cli({"run", path("i" + tag + ".json"), "--strategy", "random", "--seed", "5", "--record",
                   path("r" + tag + ".json"), "--csv", path("c" + tag + ".csv")})
                  .code,
              0);
    ASSERT_EQ(cli({"render", path("r" + tag + ".json"), "--step", "1", "-o", path("s" + tag + ".svg")}).code, 0);
  }
  for (const char* stem : {"i", "c", "s"}) {
    const auto ext = std::string(stem) == "c" ? ".csv" : (std::string(stem) == "s" ? ".svg" : ".json");
    EXPECT_EQ(slurp(path(std::string(stem) + "0" + ext)), slurp(path(std::string(stem) + "1" + ext))) << stem;
  }
  // Records embed their own paths nowhere, so they match byte for byte too.
  EXPECT_EQ(slurp(path("r0.json")), slurp(path("r1.json")));
}

TEST_F(Workdir, InstalledBinaryExitCodes) {
  const std::string bin = UNTANGLE_CLI_PATH;
  write_instance(path("big.json"), Instance{gen_max_crossing_matching(5, 1), {}});
  const auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("gen --points 8 --seed 1 -o " + path("i.json")), 0);
  EXPECT_EQ(status("oracle " + path("big.json")), 3);
  EXPECT_EQ(status("nonsense"), 2);
  EXPECT_EQ(status("audit " + path("nothing.json")), 1);
}
