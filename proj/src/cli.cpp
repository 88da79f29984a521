#include "hopdisc/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include "hopdisc/condition_g_table.hpp"
#include "hopdisc/config.hpp"
#include "hopdisc/csv.hpp"
#include "hopdisc/discovery_sim.hpp"
#include "hopdisc/error.hpp"
#include "hopdisc/fp_poly.hpp"
#include "hopdisc/metrics.hpp"
#include "hopdisc/patterns.hpp"

namespace hopdisc::cli {

namespace {

// "-" means the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int cmd_find_poly(std::uint64_t p_value, unsigned r, std::ostream& out) {
  const Prime p(p_value);
  if (r < 1) throw Error("r must be >= 1");
  const FpPoly f = find_condition_g_poly(p, r);
  const auto check = check_condition_g(f);
  out << "p = " << p.value() << '\n'
      << "r = " << r << '\n'
      << "polynomial = " << to_string(f) << '\n'
      << "irreducible = " << (check.irreducible ? "true" : "false") << '\n'
      << "group_order = " << check.group_order << '\n'
      << "x^group_order = " << (check.full_order ? "1" : "not 1") << '\n';
  out << "prime_factors =";
  for (const auto& w : check.witnesses) out << ' ' << w.prime_factor;
  out << '\n';
  for (const auto& w : check.witnesses) {
    out << "witness q=" << w.prime_factor << " : x^" << w.exponent
        << (w.is_one ? " == 1" : " != 1") << " mod f\n";
  }
  out << "condition_g = " << (check.satisfied ? "true" : "false") << '\n';
  return check.satisfied ? kOk : kInternalError;
}

struct OwnedRow {
  ConditionGTableRow row;
  std::string polynomial;
};

std::vector<OwnedRow> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table file " + path);
  std::vector<OwnedRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    OwnedRow owned{};
    std::string poly;
    if (!(ls >> owned.row.m_min >> owned.row.m_max >> owned.row.p >> owned.row.r >> poly)) {
      throw Error(path + ":" + std::to_string(line_no) + ": expected 'm_min m_max p r f(x)'");
    }
    owned.polynomial = poly;
    rows.push_back(std::move(owned));
  }
  for (auto& r : rows) r.row.polynomial = r.polynomial;
  return rows;
}

int cmd_verify_table(const std::string& table_path, std::ostream& out) {
  std::vector<OwnedRow> custom;
  std::vector<ConditionGTableRow> rows;
  if (table_path.empty()) {
    const auto builtin = condition_g_table();
    rows.assign(builtin.begin(), builtin.end());
  } else {
    custom = read_table(table_path);
    for (const auto& r : custom) rows.push_back(r.row);
  }
  std::size_t failures = 0;
  for (const auto& row : rows) {
    const auto v = verify_table_row(row);
    const std::uint64_t top = checked_pow(row.p, row.r);
    const std::uint64_t bottom = checked_pow(row.p, row.r - 1);
    out << (v.passed() ? "PASS" : "FAIL") << "  p=" << row.p << " r=" << row.r << " m=" << row.m_min
        << "~" << row.m_max << " f=" << row.polynomial << " (" << to_string(v.polynomial) << ")"
        << " order=" << v.check.group_order
        << " condition_g=" << (v.check.satisfied ? "yes" : "no");
    if (!v.degree_matches) out << " degree_mismatch";
    if (!v.m_range_consistent) {
      out << " m_range_outside(" << bottom << "," << top << "]";
    }
    out << '\n';
    failures += v.passed() ? 0 : 1;
  }
  out << "rows = " << rows.size() << ", failures = " << failures << '\n';
  return failures == 0 ? kOk : kValidationFailure;
}

int cmd_pattern(const std::string& spec_path, std::uint64_t frames, const std::string& out_path,
                std::ostream& out) {
  const HoppingPattern pattern(load_pattern_spec(spec_path));
  Sink sink(out_path, out);
  csv::write_pattern(sink.get(), pattern, frames);
  return kOk;
}

int cmd_metrics(const std::string& spec_path, std::uint64_t t_cap, std::uint64_t t_b,
                const std::string& out_path, std::ostream& out) {
  const HoppingPattern pattern(load_pattern_spec(spec_path));
  const auto report = evaluate_metrics(pattern, t_cap, t_b);
  Sink sink(out_path, out);
  sink.get() << format_report(report);
  return kOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::string dist_path, std::ostream& out) {
  const auto config = load_sim_config(config_path);
  if (dist_path.empty()) {
    if (out_path == "-") throw Error("--dist-out is required when --out is '-'");
    std::filesystem::path p(out_path);
    dist_path = (p.parent_path() / (p.stem().string() + "_dist.csv")).string();
  }
  const auto result = sim::run(config);
  {
    Sink frames(out_path, out);
    csv::write_sim_frames(frames.get(), result);
  }
  Sink dist(dist_path, out);
  csv::write_sim_distribution(dist.get(), result);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-time hopping patterns for D2D discovery"};
  app.require_subcommand(1);

  std::function<int()> action;

  std::uint64_t p = 0;
  unsigned r = 0;
  auto* find_poly = app.add_subcommand("find-poly", "First polynomial satisfying condition (G)");
  find_poly->add_option("--p", p, "Prime field size")->required();
  find_poly->add_option("--r", r, "Degree")->required();
  find_poly->callback([&] { action = [&] { return cmd_find_poly(p, r, out); }; });

  std::string table_path;
  auto* verify = app.add_subcommand("verify-table", "Check the primitive polynomial table");
  verify->add_option("--table", table_path,
                     "Rows 'm_min m_max p r f(x)' (defaults to the built-in table)");
  verify->callback([&] { action = [&] { return cmd_verify_table(table_path, out); }; });

  std::string spec_path;
  std::string out_path = "-";
  std::uint64_t frames = 0;
  auto* pattern = app.add_subcommand("pattern", "Emit s,t,i,j rows for a pattern");
  pattern->add_option("--spec", spec_path, "Pattern config file")->required();
  pattern->add_option("--frames", frames, "Number of frames")->required();
  pattern->add_option("--out", out_path, "Output CSV ('-' for stdout)");
  pattern->callback([&] { action = [&] { return cmd_pattern(spec_path, frames, out_path, out); }; });

  std::uint64_t t_cap = 200;
  std::uint64_t t_b = 10000;
  auto* metrics = app.add_subcommand("metrics", "Column period, collision ratio, continual collisions");
  metrics->add_option("--spec", spec_path, "Pattern config file")->required();
  metrics->add_option("--t-cap", t_cap, "Frame budget for empirical searches");
  metrics->add_option("--t-b", t_b, "Horizon for empirical collision ratios");
  metrics->add_option("--out", out_path, "Output file ('-' for stdout)");
  metrics->callback(
      [&] { action = [&] { return cmd_metrics(spec_path, t_cap, t_b, out_path, out); }; });

  std::string config_path;
  std::string dist_path;
  auto* simulate = app.add_subcommand("simulate", "Half-duplex discovery simulation");
  simulate->add_option("--config", config_path, "Simulation config file")->required();
  simulate->add_option("--out", out_path, "Per-frame CSV")->required();
  simulate->add_option("--dist-out", dist_path,
                       "Per-UE discovered-count CSV (default: <out stem>_dist.csv)");
  simulate->callback(
      [&] { action = [&] { return cmd_simulate(config_path, out_path, dist_path, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationFailure;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace hopdisc::cli
