#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hopdisc/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = hopdisc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Scratch {
  fs::path dir;
  explicit Scratch(const std::string& name)
      : dir(fs::temp_directory_path() / ("hopdisc_cli_" + name + "_" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
};

}  // namespace

TEST_CASE("find-poly") {
  const auto r = invoke({"find-poly", "--p", "3", "--r", "2"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "polynomial = x^2+x+2"));
  CHECK(has_line(r.out, "group_order = 8"));
  CHECK(has_line(r.out, "prime_factors = 2"));
  CHECK(has_line(r.out, "witness q=2 : x^4 != 1 mod f"));
  CHECK(has_line(r.out, "condition_g = true"));

  const auto eleven = invoke({"find-poly", "--p", "11", "--r", "2"});
  CHECK(eleven.code == 0);
  CHECK(has_line(eleven.out, "group_order = 120"));
  CHECK(has_line(eleven.out, "prime_factors = 2 3 5"));

  const auto composite = invoke({"find-poly", "--p", "4", "--r", "2"});
  CHECK(composite.code == 1);
  CHECK(composite.err.find("prime") != std::string::npos);
  CHECK(invoke({"find-poly", "--p", "3", "--r", "0"}).code == 1);
  CHECK(invoke({"find-poly", "--p", "3"}).code == 1);
  CHECK(invoke({}).code == 1);
  CHECK(invoke({"bogus"}).code == 1);
}

TEST_CASE("verify-table") {
  const auto builtin = invoke({"verify-table"});
  CHECK(has_line(builtin.out, "rows = 18, failures = 1"));
  CHECK(builtin.code == 1);
  CHECK(builtin.out.find("condition_g=no") == std::string::npos);
  CHECK(builtin.out.find("m_range_outside(47,2209]") != std::string::npos);

  Scratch scratch("table");
  const auto good = scratch.file("good.txt", "# m_min m_max p r f\n4 9 3 2 x^2+x+2\n12 121 11 2 x^2+x+7\n");
  const auto ok = invoke({"verify-table", "--table", good});
  CHECK(ok.code == 0);
  CHECK(has_line(ok.out, "rows = 2, failures = 0"));

  const auto bad = scratch.file("bad.txt", "4 9 3 2 x^2+1\n");
  CHECK(invoke({"verify-table", "--table", bad}).code == 1);
  const auto junk = scratch.file("junk.txt", "4 9 3\n");
  CHECK(invoke({"verify-table", "--table", junk}).code == 1);
  CHECK(invoke({"verify-table", "--table", (scratch.dir / "none.txt").string()}).code == 1);
}

TEST_CASE("pattern") {
  Scratch scratch("pattern");
  const auto spec = scratch.file("new.cfg", "kind = new\nm = 6\nn = 3\nf = x^2+2x+2\n");
  const auto r = invoke({"pattern", "--spec", spec, "--frames", "9"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 1 + 18 * 9);
  std::string s3;
  for (int t = 0; t < 9; ++t) {
    const auto& row = all[1 + 3 * 9 + t];
    s3 += row.substr(row.rfind(',') + 1);
  }
  CHECK(s3 == "010112022");

  const auto empty = invoke({"pattern", "--spec", spec, "--frames", "0"});
  CHECK(empty.out == "s,t,i,j\n");

  const auto qc = scratch.file("qc.cfg", "kind = qc\nm = 4\nn = 5\n");
  const auto q = invoke({"pattern", "--spec", qc, "--frames", "5"});
  CHECK(q.out.find("11,0,2,1\n11,1,2,3\n11,2,2,0\n11,3,2,2\n11,4,2,4\n") != std::string::npos);

  const auto path = (scratch.dir / "out.csv").string();
  CHECK(invoke({"pattern", "--spec", spec, "--frames", "9", "--out", path}).code == 0);
  CHECK(slurp(path) == r.out);

  CHECK(invoke({"pattern", "--spec", (scratch.dir / "nope.cfg").string(), "--frames", "1"}).code == 1);
  const auto bad = scratch.file("bad.cfg", "kind = new\nm = 6\nn = 4\n");
  CHECK(invoke({"pattern", "--spec", bad, "--frames", "1"}).code == 1);
}

TEST_CASE("metrics") {
  Scratch scratch("metrics");
  const auto qc = invoke({"metrics", "--spec", scratch.file("qc.cfg", "kind = qc\nm = 44\nn = 11\n")});
  CHECK(qc.code == 0);
  CHECK(has_line(qc.out, "column_period = 11"));
  CHECK(has_line(qc.out, "max_collision_ratio = 2/11"));

  const auto nw = invoke({"metrics", "--spec", scratch.file("new.cfg", "kind = new\nm = 44\nn = 11\n")});
  CHECK(nw.code == 0);
  CHECK(has_line(nw.out, "column_period = 121"));
  CHECK(has_line(nw.out, "max_collision_ratio = 1/11"));
  CHECK(has_line(nw.out, "max_continual_collision = 2"));
  CHECK(has_line(nw.out, "local_good = true"));

  const auto capped = invoke({"metrics", "--spec", scratch.dir.string() + "/new.cfg", "--t-cap", "100"});
  CHECK(has_line(capped.out, "column_period = cap:100"));
}

TEST_CASE("simulate") {
  Scratch scratch("simulate");
  const auto config = scratch.file(
      "sim.cfg", "kind = qc\nm = 4\nn = 5\ncells = 1\nues_per_cell = 6\nframes = 7\nseed = 5\n");
  const auto out = (scratch.dir / "run.csv").string();
  const auto r = invoke({"simulate", "--config", config, "--out", out});
  CHECK(r.code == 0);
  const auto frames = slurp(out);
  const auto dist = slurp(scratch.dir / "run_dist.csv");
  CHECK(frames.rfind("frame,new_pairs,cum_mean_discovered\n", 0) == 0);
  CHECK(std::count(frames.begin(), frames.end(), '\n') == 8);
  CHECK(dist.rfind("ue,discovered\n", 0) == 0);
  CHECK(std::count(dist.begin(), dist.end(), '\n') == 7);

  const auto explicit_dist = (scratch.dir / "d.csv").string();
  CHECK(invoke({"simulate", "--config", config, "--out", out, "--dist-out", explicit_dist}).code == 0);
  CHECK(slurp(explicit_dist) == dist);
  CHECK(slurp(out) == frames);

  CHECK(invoke({"simulate", "--config", config, "--out", "-"}).code == 1);
  const auto bad = scratch.file("bad.cfg", "kind = qc\nm = 4\nn = 5\ncells = 2\nues_per_cell = 15\n");
  CHECK(invoke({"simulate", "--config", bad, "--out", out}).code == 1);
}
