#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hopdisc/config.hpp"
#include "hopdisc/csv.hpp"
#include "hopdisc/error.hpp"

using namespace hopdisc;
namespace fs = std::filesystem;

namespace {

KeyValueConfig parse_text(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in, "test");
}

PatternSpec spec_from_text(const std::string& text) {
  auto config = parse_text(text);
  auto spec = pattern_spec_from(config);
  config.finish();
  return spec;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hopdisc_cfg_" + name + "_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("key value grammar") {
  auto config = parse_text("# leading comment\n\n  m =  44 # trailing\nname=a b\nratio = -1.5\nr = inf\n");
  CHECK(config.take_u64("m") == 44u);
  CHECK(config.take("name") == "a b");
  CHECK(config.take_double("ratio") == -1.5);
  CHECK(std::isinf(*config.take_double("r")));
  CHECK_FALSE(config.take("absent").has_value());
  CHECK_NOTHROW(config.finish());

  CHECK_THROWS_AS(parse_text("a = 1\na = 2\n"), Error);
  CHECK_THROWS_AS(parse_text("just words\n"), Error);
  CHECK_THROWS_AS(parse_text(" = 3\n"), Error);

  auto leftover = parse_text("m = 1\nbogus = 2\n");
  leftover.take("m");
  CHECK_THROWS_AS(leftover.finish(), Error);

  auto bad = parse_text("m = x\nk = 1.5\nd = nope\n");
  CHECK_THROWS_AS(bad.take_u64("m"), Error);
  CHECK_THROWS_AS(bad.take_i64("k"), Error);
  CHECK_THROWS_AS(bad.take_double("d"), Error);
  CHECK_THROWS_AS(parse_text("m = -1\n").take_u64("m"), Error);
  CHECK_THROWS_AS(parse_text("").require("kind"), Error);
}

TEST_CASE("pattern specs from config") {
  const auto qc = spec_from_text("kind = qc\nm = 4\nn = 5\nk = 2\n");
  CHECK(std::get<QcKind>(qc.kind()).k == 2);

  const auto random = spec_from_text("kind = random\nm = 4\nn = 5\nseed = 9\n");
  CHECK(std::get<RandomKind>(random.kind()).seed == 9u);

  SUBCASE("new pattern picks a default polynomial") {
    const auto spec = spec_from_text("kind = new\nm = 44\nn = 11\n");
    const auto& nk = std::get<NewKind>(spec.kind());
    CHECK(nk.f.degree() == 2);
    CHECK(satisfies_condition_g(nk.f));
    CHECK(to_string(nk.b) == "1,0");
  }
  SUBCASE("new pattern with explicit f and b") {
    const auto spec = spec_from_text("kind = new\nm = 6\nn = 3\nf = x^2 - x - 1\nb = 1,0\n");
    CHECK(to_string(std::get<NewKind>(spec.kind()).f) == "x^2+2x+2");
  }
  SUBCASE("rejected combinations") {
    CHECK_THROWS_AS(spec_from_text("kind = qc\nm = 4\nn = 5\nseed = 1\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = random\nm = 4\nn = 5\nk = 1\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = new\nm = 4\nn = 6\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = new\nm = 6\nn = 3\nf = x^2 + 1\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = new\nm = 6\nn = 3\nb = 0,0\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = new\nm = 6\nn = 3\nseed = 4\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = hex\nm = 6\nn = 3\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = qc\nm = 6\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = qc\nm = 0\nn = 3\n"), Error);
    CHECK_THROWS_AS(spec_from_text("kind = qc\nm = 6\nn = 3\nextra = 1\n"), Error);
  }
  SUBCASE("config text round trips") {
    for (const auto& text : {"kind = qc\nm = 4\nn = 5\nk = -3\n",
                             "kind = random\nm = 7\nn = 2\nseed = 123\n",
                             "kind = new\nm = 6\nn = 3\nk = 1\nf = x^2+2x+2\nb = 0,1\n"}) {
      const auto spec = spec_from_text(text);
      CHECK(to_config_text(spec) == text);
      CHECK(to_config_text(spec_from_text(to_config_text(spec))) == text);
    }
  }
}

TEST_CASE("initial map files") {
  const auto dir = scratch_dir("init");
  const FrameStructure frame(2, 3);
  write_file(dir / "init.txt", "5\n4\n3\n2\n1\n0\n");
  write_file(dir / "spec.cfg", "kind = qc\nm = 2\nn = 3\ninit = init.txt\n");
  const auto spec = load_pattern_spec(dir / "spec.cfg");
  CHECK(spec.init().at(0) == Coord{1, 2});
  CHECK(spec.init().at(5) == Coord{0, 0});

  std::ostringstream out;
  write_initial_map(out, spec.init());
  CHECK(out.str() == "5\n4\n3\n2\n1\n0\n");
  CHECK_THROWS_AS(to_config_text(spec), Error);
  CHECK(to_config_text(spec, "init.txt").find("init = init.txt\n") != std::string::npos);

  write_file(dir / "dup.txt", "0\n0\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(read_initial_map(dir / "dup.txt", frame), Error);
  write_file(dir / "short.txt", "0\n1\n");
  CHECK_THROWS_AS(read_initial_map(dir / "short.txt", frame), Error);
  write_file(dir / "junk.txt", "0\nx\n");
  CHECK_THROWS_AS(read_initial_map(dir / "junk.txt", frame), Error);
  CHECK_THROWS_AS(read_initial_map(dir / "missing.txt", frame), Error);
  CHECK_THROWS_AS(load_pattern_spec(dir / "missing.cfg"), Error);
  fs::remove_all(dir);
}

TEST_CASE("simulation config") {
  auto config = parse_text(
      "kind = random\nm = 44\nn = 11\npattern_seed = 5\nmode = sinr\nradius = inf\n"
      "frames = 12\nseed = 3\nues_per_cell = 10\ncells = 4\ncell_columns = 2\nisd = 400\n"
      "ibe_attenuation_db = 30\n");
  const auto sim = sim_config_from(config);
  config.finish();
  CHECK(std::get<RandomKind>(sim.pattern.kind()).seed == 5u);
  CHECK(sim.mode == sim::LinkMode::sinr);
  CHECK(sim.frames == 12u);
  CHECK(sim.seed == 3u);
  CHECK(sim.ue_count() == 40u);
  CHECK(sim.isd_m == 400);
  CHECK(sim.ibe_attenuation_db == 30);
  CHECK(sim.tx_power_dbm == 23);

  auto defaults = parse_text("kind = qc\nm = 44\nn = 11\n");
  const auto d = sim_config_from(defaults);
  CHECK(d.mode == sim::LinkMode::ideal);
  CHECK(d.cells == 21u);
  CHECK(d.ues_per_cell == 23u);
  CHECK(d.frames == 150u);

  auto bad_mode = parse_text("kind = qc\nm = 4\nn = 5\nmode = fast\n");
  CHECK_THROWS_AS(sim_config_from(bad_mode), Error);
  auto bad_frames = parse_text("kind = qc\nm = 4\nn = 5\nframes = 0\n");
  CHECK_THROWS_AS(sim_config_from(bad_frames), Error);
}

TEST_CASE("pattern csv") {
  const HoppingPattern pattern(spec_from_text("kind = new\nm = 6\nn = 3\nf = x^2+2x+2\n"));
  std::ostringstream out;
  csv::write_pattern(out, pattern, 9);
  const std::string text = out.str();
  CHECK(text.rfind("s,t,i,j\n0,0,0,0\n", 0) == 0);

  std::istringstream in(text);
  const auto rows = csv::read_pattern(in);
  REQUIRE(rows.size() == 18 * 9);
  for (const auto& row : rows) {
    const auto c = pattern.coords(row.s, row.t);
    CHECK(c.i == row.i);
    CHECK(c.j == row.j);
  }
  CHECK(rows[3 * 9 + 4] == csv::PatternRow{3, 4, 1, 1});

  std::ostringstream again;
  csv::write_pattern(again, pattern, 9);
  CHECK(again.str() == text);

  std::ostringstream header_only;
  csv::write_pattern(header_only, pattern, 0);
  CHECK(header_only.str() == "s,t,i,j\n");

  std::istringstream bad_header("a,b,c,d\n");
  CHECK_THROWS_AS(csv::read_pattern(bad_header), Error);
  std::istringstream bad_row("s,t,i,j\n1,2,3\n");
  CHECK_THROWS_AS(csv::read_pattern(bad_row), Error);
}

TEST_CASE("simulation csv round trip") {
  sim::SimResult result;
  result.new_pairs = {4, 2, 0};
  result.cumulative_mean_discovered = {4.0 / 3.0, 2.0, 2.0};
  result.final_discovered = {2, 2, 2};

  std::ostringstream frames;
  std::ostringstream dist;
  csv::write_sim_frames(frames, result);
  csv::write_sim_distribution(dist, result);
  CHECK(frames.str() == "frame,new_pairs,cum_mean_discovered\n0,4,1.333333\n1,2,2.000000\n2,0,2.000000\n");
  CHECK(dist.str() == "ue,discovered\n0,2\n1,2\n2,2\n");

  std::istringstream frames_in(frames.str());
  std::istringstream dist_in(dist.str());
  const auto back = csv::read_sim_result(frames_in, dist_in);
  CHECK(back.new_pairs == result.new_pairs);
  CHECK(back.final_discovered == result.final_discovered);
  std::ostringstream frames2;
  std::ostringstream dist2;
  csv::write_sim_frames(frames2, back);
  csv::write_sim_distribution(dist2, back);
  CHECK(frames2.str() == frames.str());
  CHECK(dist2.str() == dist.str());
}
