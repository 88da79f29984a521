#include "hopdisc/discovery_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hopdisc/error.hpp"
#include "hopdisc/keyed_rng.hpp"

namespace hopdisc::sim {

namespace {

constexpr std::uint64_t kDropStream = 1;
constexpr std::uint64_t kResourceStream = 2;

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw Error(std::string(name) + " must be finite");
}

}  // namespace

double PathlossModel::loss_db(double distance_m) const {
  const double d = std::max(distance_m, 1.0);
  return reference_loss_db + 10.0 * exponent * std::log10(d) + offset_db;
}

void SimConfig::validate() const {
  if (cells < 1) throw Error("cells must be >= 1");
  if (cell_columns < 1) throw Error("cell_columns must be >= 1");
  require_finite(isd_m, "isd");
  if (isd_m <= 0) throw Error("isd must be positive");
  require_finite(pathloss.exponent, "pathloss_exponent");
  require_finite(pathloss.reference_loss_db, "reference_loss_db");
  require_finite(pathloss.offset_db, "offset_db");
  require_finite(tx_power_dbm, "tx_power_dbm");
  require_finite(noise_dbm, "noise_dbm");
  require_finite(sinr_threshold_db, "sinr_threshold_db");
  require_finite(ibe_attenuation_db, "ibe_attenuation_db");
  if (ibe_attenuation_db < 0) throw Error("ibe_attenuation_db must be >= 0");
  if (std::isnan(ideal_radius_m) || ideal_radius_m < 0) throw Error("radius must be >= 0");
  if (frames < 1) throw Error("frames must be >= 1");
  const std::uint64_t ues = std::uint64_t{cells} * ues_per_cell;
  if (ues > pattern.frame().resource_count()) {
    throw Error(std::to_string(ues) + " UEs exceed the " +
                std::to_string(pattern.frame().resource_count()) + " logical resources");
  }
}

std::vector<Point> cell_centers(const SimConfig& config) {
  std::vector<Point> centers;
  centers.reserve(config.cells);
  const double row_pitch = config.isd_m * std::sqrt(3.0) / 2.0;
  for (std::uint32_t c = 0; c < config.cells; ++c) {
    const std::uint32_t row = c / config.cell_columns;
    const std::uint32_t col = c % config.cell_columns;
    const double shift = (row % 2 == 1) ? config.isd_m / 2.0 : 0.0;
    centers.push_back({col * config.isd_m + shift, row * row_pitch});
  }
  return centers;
}

bool in_hex_cell(Point p, Point center, double isd_m) {
  const double radius = isd_m / std::sqrt(3.0);
  const double dx = std::abs(p.x - center.x);
  const double dy = std::abs(p.y - center.y);
  return dx <= isd_m / 2.0 && dy + dx / std::sqrt(3.0) <= radius;
}

std::vector<UE> drop_ues(const SimConfig& config) {
  config.validate();
  const auto centers = cell_centers(config);
  const double radius = config.isd_m / std::sqrt(3.0);

  CounterRng position_rng(config.seed, kDropStream);
  CounterRng resource_rng(config.seed, kResourceStream);

  // Partial Fisher-Yates over all resources.
  const std::uint32_t total = config.pattern.frame().resource_count();
  std::vector<Resource> perm(total);
  std::iota(perm.begin(), perm.end(), Resource{0});
  const std::uint32_t count = config.ue_count();
  for (std::uint32_t k = 0; k < count; ++k) {
    const auto pick = k + static_cast<std::uint32_t>(resource_rng.below(total - k));
    std::swap(perm[k], perm[pick]);
  }

  std::vector<UE> ues;
  ues.reserve(count);
  for (std::uint32_t cell = 0; cell < config.cells; ++cell) {
    for (std::uint32_t k = 0; k < config.ues_per_cell; ++k) {
      Point p{};
      do {
        p.x = centers[cell].x + (2.0 * position_rng.uniform01() - 1.0) * config.isd_m / 2.0;
        p.y = centers[cell].y + (2.0 * position_rng.uniform01() - 1.0) * radius;
      } while (!in_hex_cell(p, centers[cell], config.isd_m));
      const auto id = static_cast<std::uint32_t>(ues.size());
      ues.push_back({id, cell, p, perm[id]});
    }
  }
  return ues;
}

DiscoverySimulator::DiscoverySimulator(const SimConfig& config, std::vector<UE> ues)
    : config_(config), pattern_(config.pattern), ues_(std::move(ues)) {
  config_.validate();
  const std::size_t n = ues_.size();
  std::vector<bool> used(pattern_.resource_count(), false);
  for (const auto& ue : ues_) {
    if (ue.resource >= used.size() || used[ue.resource]) {
      throw Error("UE " + std::to_string(ue.id) + " has an invalid or shared resource");
    }
    used[ue.resource] = true;
  }
  rx_mw_.assign(n * n, 0.0);
  distance_.assign(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t u = 0; u < n; ++u) {
      if (r == u) continue;
      const double d = std::hypot(ues_[r].position.x - ues_[u].position.x,
                                  ues_[r].position.y - ues_[u].position.y);
      distance_[r * n + u] = d;
      rx_mw_[r * n + u] = dbm_to_mw(config_.tx_power_dbm - config_.pathloss.loss_db(d));
    }
  }
  discovered_.assign(n * n, false);
  per_receiver_.assign(n, 0);
}

bool DiscoverySimulator::link_closes_ideal(std::uint32_t r, std::uint32_t u) const {
  return distance_[r * ues_.size() + u] <= config_.ideal_radius_m;
}

std::vector<DiscoveredPair> DiscoverySimulator::step_frame(std::int64_t t) {
  if (t < 0) throw Error("frame index must be >= 0");
  const auto n = static_cast<std::uint32_t>(ues_.size());
  const auto frame = pattern_.frame();

  std::vector<Coord> at(n);
  std::vector<std::vector<std::uint32_t>> by_subframe(frame.n);
  for (std::uint32_t u = 0; u < n; ++u) {
    at[u] = pattern_.coords(ues_[u].resource, t);
    by_subframe[at[u].j].push_back(u);
  }

  std::vector<DiscoveredPair> fresh;
  auto record = [&](std::uint32_t r, std::uint32_t u) {
    const std::size_t idx = std::size_t{r} * n + u;
    if (discovered_[idx]) return;
    discovered_[idx] = true;
    ++per_receiver_[r];
    ++total_;
    fresh.push_back({r, u});
  };

  if (config_.mode == LinkMode::ideal) {
    for (std::uint32_t r = 0; r < n; ++r) {
      for (std::uint32_t u = 0; u < n; ++u) {
        // Half duplex: a UE transmitting in subframe j hears nothing in j.
        if (u == r || at[u].j == at[r].j) continue;
        if (link_closes_ideal(r, u)) record(r, u);
      }
    }
  } else {
    const double noise = dbm_to_mw(config_.noise_dbm);
    const double threshold = std::pow(10.0, config_.sinr_threshold_db / 10.0);
    const double leak = std::pow(10.0, -config_.ibe_attenuation_db / 10.0);
    std::vector<double> power(frame.m), left(frame.m), right(frame.m);
    for (std::uint32_t r = 0; r < n; ++r) {
      for (std::uint32_t j = 0; j < frame.n; ++j) {
        if (j == at[r].j || by_subframe[j].empty()) continue;
        std::fill(power.begin(), power.end(), 0.0);
        for (auto u : by_subframe[j]) power[at[u].i] += rx_mw_[r * n + u];
        // Received power on channel c from every channel c' of subframe j,
        // attenuated by leak^|c - c'|: two geometric sweeps.
        for (std::uint32_t c = 0; c < frame.m; ++c) {
          left[c] = power[c] + (c > 0 ? leak * left[c - 1] : 0.0);
        }
        for (std::uint32_t c = frame.m; c-- > 0;) {
          right[c] = power[c] + (c + 1 < frame.m ? leak * right[c + 1] : 0.0);
        }
        for (auto u : by_subframe[j]) {
          const auto c = at[u].i;
          const double signal = rx_mw_[r * n + u];
          const double interference = std::max(0.0, left[c] + right[c] - power[c] - signal);
          if (signal >= threshold * (noise + interference)) record(r, u);
        }
      }
    }
    std::sort(fresh.begin(), fresh.end());
  }
  return fresh;
}

SimResult run(const SimConfig& config) {
  DiscoverySimulator simulator(config, drop_ues(config));
  const auto n = simulator.ues().size();
  SimResult result;
  result.new_pairs.reserve(config.frames);
  result.cumulative_mean_discovered.reserve(config.frames);
  for (std::uint64_t t = 0; t < config.frames; ++t) {
    result.new_pairs.push_back(simulator.step_frame(static_cast<std::int64_t>(t)).size());
    result.cumulative_mean_discovered.push_back(
        n == 0 ? 0.0 : static_cast<double>(simulator.total_discovered()) / static_cast<double>(n));
  }
  result.final_discovered.resize(n);
  for (std::uint32_t r = 0; r < n; ++r) result.final_discovered[r] = simulator.discovered_count(r);
  return result;
}

}  // namespace hopdisc::sim
