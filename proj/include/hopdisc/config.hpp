#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "hopdisc/discovery_sim.hpp"
#include "hopdisc/error.hpp"
#include "hopdisc/patterns.hpp"

namespace hopdisc {

// Flat configuration: one `key = value` per line, `#` starts a comment,
// blank lines ignored, duplicate keys rejected. Consumers take() the keys
// they understand and then call finish(), which rejects anything left over.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, std::string source = "<config>");
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> take(const std::string& key);
  std::string require(const std::string& key);
  std::optional<std::uint64_t> take_u64(const std::string& key);
  std::optional<std::int64_t> take_i64(const std::string& key);
  std::optional<double> take_double(const std::string& key);

  void finish() const;

  // Directory that relative paths inside the config resolve against.
  const std::filesystem::path& base_dir() const { return base_dir_; }
  const std::string& source() const { return source_; }

 private:
  struct Entry {
    std::string value;
    int line;
  };

  Error error(const std::string& key, const std::string& why) const;

  std::string source_;
  std::filesystem::path base_dir_;
  std::map<std::string, Entry> entries_;
  std::set<std::string> consumed_;
};

// Keys: kind (random | qc | new), m, n, k, seed, f, b, init.
// `init` names a file with one cell index i*n + j per line, line s giving
// resource s. `seed_key` lets the simulator config rename the pattern seed.
PatternSpec pattern_spec_from(KeyValueConfig& config, const std::string& seed_key = "seed");
PatternSpec load_pattern_spec(const std::filesystem::path& path);

// Inverse of pattern_spec_from for specs with the row-major initial map,
// or with `init_path` naming where the caller stored the map.
std::string to_config_text(const PatternSpec& spec,
                           const std::optional<std::string>& init_path = std::nullopt);

InitialMap read_initial_map(const std::filesystem::path& path, FrameStructure frame);
void write_initial_map(std::ostream& out, const InitialMap& init);

// Pattern keys (with pattern_seed for the random pattern's seed) plus:
// cells, cell_columns, isd, ues_per_cell, pathloss_exponent,
// reference_loss_db, offset_db, tx_power_dbm, noise_dbm, sinr_threshold_db,
// ibe_attenuation_db, mode (ideal | sinr), radius, frames, seed.
sim::SimConfig sim_config_from(KeyValueConfig& config);
sim::SimConfig load_sim_config(const std::filesystem::path& path);

}  // namespace hopdisc
