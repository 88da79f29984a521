#include "hopdisc/csv.hpp"

#include <charconv>
#include <cstdio>
#include <string>

#include "hopdisc/error.hpp"

namespace hopdisc::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T field(const std::string& text, int line_no) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error("csv line " + std::to_string(line_no) + ": bad field '" + text + "'");
  }
  return v;
}

// Yields data rows after checking the header.
template <typename F>
void for_each_row(std::istream& in, const std::string& header, std::size_t width, F&& fn) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error("csv: expected header '" + header + "'");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cols = split_line(line);
    if (cols.size() != width) {
      throw Error("csv line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                  " fields");
    }
    fn(cols, line_no);
  }
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void write_pattern(std::ostream& out, const HoppingPattern& pattern, std::uint64_t frames) {
  out << "s,t,i,j\n";
  for (Resource s = 0; s < pattern.resource_count(); ++s) {
    for (std::uint64_t t = 0; t < frames; ++t) {
      const auto c = pattern.coords(s, static_cast<std::int64_t>(t));
      out << s << ',' << t << ',' << c.i << ',' << c.j << '\n';
    }
  }
}

std::vector<PatternRow> read_pattern(std::istream& in) {
  std::vector<PatternRow> rows;
  for_each_row(in, "s,t,i,j", 4, [&](const auto& cols, int line_no) {
    rows.push_back({field<std::uint32_t>(cols[0], line_no), field<std::int64_t>(cols[1], line_no),
                    field<std::uint32_t>(cols[2], line_no), field<std::uint32_t>(cols[3], line_no)});
  });
  return rows;
}

void write_sim_frames(std::ostream& out, const sim::SimResult& result) {
  out << "frame,new_pairs,cum_mean_discovered\n";
  for (std::size_t t = 0; t < result.new_pairs.size(); ++t) {
    out << t << ',' << result.new_pairs[t] << ',' << fixed6(result.cumulative_mean_discovered[t])
        << '\n';
  }
}

void write_sim_distribution(std::ostream& out, const sim::SimResult& result) {
  out << "ue,discovered\n";
  for (std::size_t u = 0; u < result.final_discovered.size(); ++u) {
    out << u << ',' << result.final_discovered[u] << '\n';
  }
}

sim::SimResult read_sim_result(std::istream& frames, std::istream& distribution) {
  sim::SimResult result;
  for_each_row(frames, "frame,new_pairs,cum_mean_discovered", 3, [&](const auto& cols, int line_no) {
    if (field<std::size_t>(cols[0], line_no) != result.new_pairs.size()) {
      throw Error("csv line " + std::to_string(line_no) + ": frames out of order");
    }
    result.new_pairs.push_back(field<std::uint64_t>(cols[1], line_no));
    result.cumulative_mean_discovered.push_back(field<double>(cols[2], line_no));
  });
  for_each_row(distribution, "ue,discovered", 2, [&](const auto& cols, int line_no) {
    if (field<std::size_t>(cols[0], line_no) != result.final_discovered.size()) {
      throw Error("csv line " + std::to_string(line_no) + ": UEs out of order");
    }
    result.final_discovered.push_back(field<std::uint32_t>(cols[1], line_no));
  });
  return result;
}

}  // namespace hopdisc::csv
