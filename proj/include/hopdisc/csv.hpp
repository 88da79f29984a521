#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "hopdisc/discovery_sim.hpp"
#include "hopdisc/patterns.hpp"

namespace hopdisc::csv {

struct PatternRow {
  std::uint32_t s;
  std::int64_t t;
  std::uint32_t i;
  std::uint32_t j;

  friend bool operator==(const PatternRow&, const PatternRow&) = default;
};

// Header `s,t,i,j`; rows s-major, then t in [0, frames).
void write_pattern(std::ostream& out, const HoppingPattern& pattern, std::uint64_t frames);
std::vector<PatternRow> read_pattern(std::istream& in);

// `frame,new_pairs,cum_mean_discovered`, means with six decimals.
void write_sim_frames(std::ostream& out, const sim::SimResult& result);
// `ue,discovered`
void write_sim_distribution(std::ostream& out, const sim::SimResult& result);

// Reads back both files into a SimResult; means carry the written rounding.
sim::SimResult read_sim_result(std::istream& frames, std::istream& distribution);

}  // namespace hopdisc::csv
