#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hopdisc/patterns.hpp"

namespace hopdisc::sim {

enum class LinkMode {
  ideal,  // link closes iff distance <= ideal_radius_m
  sinr,   // link closes iff SINR >= sinr_threshold_db
};

// PL(d) = reference_loss_db + 10 * exponent * log10(d) + offset_db, with d
// clamped to at least 1 m.
struct PathlossModel {
  double exponent = 3.0;
  double reference_loss_db = 40.0;
  double offset_db = -5.0;

  double loss_db(double distance_m) const;
};

struct SimConfig {
  std::uint32_t cells = 21;
  std::uint32_t cell_columns = 7;  // hex cells per row
  double isd_m = 500.0;
  std::uint32_t ues_per_cell = 23;
  PatternSpec pattern;
  PathlossModel pathloss;
  double tx_power_dbm = 23.0;
  double noise_dbm = -112.0;
  double sinr_threshold_db = 0.0;
  // Attenuation of in-band emission per channel index of separation.
  double ibe_attenuation_db = 3.0;
  LinkMode mode = LinkMode::ideal;
  double ideal_radius_m = std::numeric_limits<double>::infinity();
  std::uint64_t frames = 150;
  std::uint64_t seed = 1;

  explicit SimConfig(PatternSpec spec) : pattern(std::move(spec)) {}

  std::uint32_t ue_count() const { return cells * ues_per_cell; }
  // Throws hopdisc::Error on the first violated invariant.
  void validate() const;
};

struct Point {
  double x;
  double y;
};

struct UE {
  std::uint32_t id;
  std::uint32_t cell;
  Point position;
  Resource resource;
};

// Hex centres, rows of cell_columns cells with odd rows shifted by isd/2.
std::vector<Point> cell_centers(const SimConfig& config);

// Pointy-top hexagon of inter-site distance isd centred at `center`.
bool in_hex_cell(Point p, Point center, double isd_m);

// Seeded uniform drop inside each cell; resources from a seeded permutation
// of [0, m*n).
std::vector<UE> drop_ues(const SimConfig& config);

struct DiscoveredPair {
  std::uint32_t receiver;
  std::uint32_t transmitter;

  friend bool operator==(const DiscoveredPair&, const DiscoveredPair&) = default;
  friend auto operator<=>(const DiscoveredPair&, const DiscoveredPair&) = default;
};

struct SimResult {
  std::vector<std::uint64_t> new_pairs;           // per frame
  std::vector<double> cumulative_mean_discovered;  // per frame, per UE
  std::vector<std::uint32_t> final_discovered;     // per UE, as receiver
};

// Drives discovery frame by frame over a fixed drop.
class DiscoverySimulator {
 public:
  DiscoverySimulator(const SimConfig& config, std::vector<UE> ues);

  const std::vector<UE>& ues() const { return ues_; }

  // Ordered (receiver, transmitter) pairs discovered for the first time at
  // frame t, sorted.
  std::vector<DiscoveredPair> step_frame(std::int64_t t);

  bool discovered(std::uint32_t receiver, std::uint32_t transmitter) const {
    return discovered_[receiver * ues_.size() + transmitter];
  }
  std::uint32_t discovered_count(std::uint32_t receiver) const { return per_receiver_[receiver]; }
  std::uint64_t total_discovered() const { return total_; }

 private:
  bool link_closes_ideal(std::uint32_t r, std::uint32_t u) const;

  SimConfig config_;
  HoppingPattern pattern_;
  std::vector<UE> ues_;
  std::vector<double> rx_mw_;  // received power, [receiver * N + transmitter]
  std::vector<double> distance_;
  std::vector<bool> discovered_;
  std::vector<std::uint32_t> per_receiver_;
  std::uint64_t total_ = 0;
};

SimResult run(const SimConfig& config);

}  // namespace hopdisc::sim
