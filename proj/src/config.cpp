#include "hopdisc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hopdisc/error.hpp"

namespace hopdisc {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
std::optional<T> parse_integer(const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return v;
}

std::uint32_t narrow_u32(std::uint64_t v, const char* key) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(std::string(key) + " out of range");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, std::string source) {
  KeyValueConfig config;
  config.source_ = std::move(source);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw Error(config.source_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty()) throw Error(config.source_ + ":" + std::to_string(line_no) + ": empty key");
    if (!config.entries_.emplace(key, Entry{value, line_no}).second) {
      throw Error(config.source_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  auto config = parse(in, path.string());
  config.base_dir_ = path.parent_path();
  return config;
}

Error KeyValueConfig::error(const std::string& key, const std::string& why) const {
  const auto it = entries_.find(key);
  const std::string where =
      it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
  return Error(where + ": " + key + ": " + why);
}

std::optional<std::string> KeyValueConfig::take(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  consumed_.insert(key);
  return it->second.value;
}

std::string KeyValueConfig::require(const std::string& key) {
  auto v = take(key);
  if (!v) throw Error(source_ + ": missing required key '" + key + "'");
  return *v;
}

std::optional<std::uint64_t> KeyValueConfig::take_u64(const std::string& key) {
  const auto v = take(key);
  if (!v) return std::nullopt;
  const auto parsed = parse_integer<std::uint64_t>(*v);
  if (!parsed) throw error(key, "expected a non-negative integer, got '" + *v + "'");
  return parsed;
}

std::optional<std::int64_t> KeyValueConfig::take_i64(const std::string& key) {
  const auto v = take(key);
  if (!v) return std::nullopt;
  const auto parsed = parse_integer<std::int64_t>(*v);
  if (!parsed) throw error(key, "expected an integer, got '" + *v + "'");
  return parsed;
}

std::optional<double> KeyValueConfig::take_double(const std::string& key) {
  const auto v = take(key);
  if (!v) return std::nullopt;
  if (*v == "inf") return std::numeric_limits<double>::infinity();
  double d = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), d);
  if (ec != std::errc() || ptr != v->data() + v->size() || v->empty()) {
    throw error(key, "expected a number, got '" + *v + "'");
  }
  return d;
}

void KeyValueConfig::finish() const {
  for (const auto& [key, entry] : entries_) {
    if (!consumed_.count(key)) {
      throw Error(source_ + ":" + std::to_string(entry.line) + ": unknown key '" + key + "'");
    }
  }
}

InitialMap read_initial_map(const std::filesystem::path& path, FrameStructure frame) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open initial map file " + path.string());
  std::vector<std::uint32_t> cells;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto v = parse_integer<std::uint32_t>(content);
    if (!v) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected a cell index");
    }
    cells.push_back(*v);
  }
  return InitialMap::from_cells(frame, std::move(cells));
}

void write_initial_map(std::ostream& out, const InitialMap& init) {
  for (auto c : init.cells()) out << c << '\n';
}

PatternSpec pattern_spec_from(KeyValueConfig& config, const std::string& seed_key) {
  const std::string kind = config.require("kind");
  const auto m = config.take_u64("m");
  const auto n = config.take_u64("n");
  if (!m || !n) throw Error(config.source() + ": pattern needs both m and n");
  const FrameStructure frame(narrow_u32(*m, "m"), narrow_u32(*n, "n"));
  const auto k = config.take_i64("k");
  const auto seed = config.take_u64(seed_key);
  const auto f_text = config.take("f");
  const auto b_text = config.take("b");
  const auto init_text = config.take("init");

  std::optional<InitialMap> init;
  if (init_text) {
    std::filesystem::path p(*init_text);
    if (p.is_relative()) p = config.base_dir() / p;
    init = read_initial_map(p, frame);
  }

  if (kind == "random") {
    if (k || f_text || b_text || init) {
      throw Error(config.source() + ": random pattern takes only m, n and " + seed_key);
    }
    return PatternSpec::random(frame, seed.value_or(0));
  }
  if (kind == "qc") {
    if (f_text || b_text || seed) {
      throw Error(config.source() + ": qc pattern takes only m, n, k and init");
    }
    return PatternSpec::qc(frame, k.value_or(0), std::move(init));
  }
  if (kind == "new") {
    if (seed) throw Error(config.source() + ": new pattern takes no seed");
    if (!is_prime(frame.n)) {
      throw Error(config.source() + ": new pattern needs prime n, got " + std::to_string(frame.n));
    }
    const Prime p(frame.n);
    const FpPoly f = f_text ? parse_poly(*f_text, p)
                            : find_condition_g_poly(p, std::max(1u, minimal_r(p, frame.m)));
    std::optional<FpVec> b;
    if (b_text) b = parse_vec(*b_text, p);
    return PatternSpec::new_pattern(frame, k.value_or(0), f, std::move(b), std::move(init));
  }
  throw Error(config.source() + ": unknown pattern kind '" + kind + "' (random | qc | new)");
}

PatternSpec load_pattern_spec(const std::filesystem::path& path) {
  auto config = KeyValueConfig::load(path);
  auto spec = pattern_spec_from(config);
  config.finish();
  return spec;
}

std::string to_config_text(const PatternSpec& spec, const std::optional<std::string>& init_path) {
  std::ostringstream os;
  os << "kind = " << spec.kind_name() << '\n'
     << "m = " << spec.frame().m << '\n'
     << "n = " << spec.frame().n << '\n';
  struct Visitor {
    std::ostringstream& os;
    void operator()(const RandomKind& rk) const { os << "seed = " << rk.seed << '\n'; }
    void operator()(const QcKind& qc) const { os << "k = " << qc.k << '\n'; }
    void operator()(const NewKind& nk) const {
      os << "k = " << nk.k << '\n'
         << "f = " << to_string(nk.f) << '\n'
         << "b = " << to_string(nk.b) << '\n';
    }
  };
  std::visit(Visitor{os}, spec.kind());
  if (!std::holds_alternative<RandomKind>(spec.kind())) {
    if (init_path) {
      os << "init = " << *init_path << '\n';
    } else if (!(spec.init().cells().size() == spec.frame().resource_count() &&
                 std::equal(spec.init().cells().begin(), spec.init().cells().end(),
                            InitialMap::row_major(spec.frame()).cells().begin()))) {
      throw Error("non-default initial map needs an init file path");
    }
  }
  return os.str();
}

sim::SimConfig sim_config_from(KeyValueConfig& config) {
  sim::SimConfig sim(pattern_spec_from(config, "pattern_seed"));
  if (auto v = config.take_u64("cells")) sim.cells = narrow_u32(*v, "cells");
  if (auto v = config.take_u64("cell_columns")) sim.cell_columns = narrow_u32(*v, "cell_columns");
  if (auto v = config.take_double("isd")) sim.isd_m = *v;
  if (auto v = config.take_u64("ues_per_cell")) sim.ues_per_cell = narrow_u32(*v, "ues_per_cell");
  if (auto v = config.take_double("pathloss_exponent")) sim.pathloss.exponent = *v;
  if (auto v = config.take_double("reference_loss_db")) sim.pathloss.reference_loss_db = *v;
  if (auto v = config.take_double("offset_db")) sim.pathloss.offset_db = *v;
  if (auto v = config.take_double("tx_power_dbm")) sim.tx_power_dbm = *v;
  if (auto v = config.take_double("noise_dbm")) sim.noise_dbm = *v;
  if (auto v = config.take_double("sinr_threshold_db")) sim.sinr_threshold_db = *v;
  if (auto v = config.take_double("ibe_attenuation_db")) sim.ibe_attenuation_db = *v;
  if (auto v = config.take("mode")) {
    if (*v == "ideal") {
      sim.mode = sim::LinkMode::ideal;
    } else if (*v == "sinr") {
      sim.mode = sim::LinkMode::sinr;
    } else {
      throw Error(config.source() + ": mode must be 'ideal' or 'sinr', got '" + *v + "'");
    }
  }
  if (auto v = config.take_double("radius")) sim.ideal_radius_m = *v;
  if (auto v = config.take_u64("frames")) sim.frames = *v;
  if (auto v = config.take_u64("seed")) sim.seed = *v;
  sim.validate();
  return sim;
}

sim::SimConfig load_sim_config(const std::filesystem::path& path) {
  auto config = KeyValueConfig::load(path);
  auto sim = sim_config_from(config);
  config.finish();
  return sim;
}

}  // namespace hopdisc
