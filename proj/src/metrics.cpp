#include "hopdisc/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "hopdisc/error.hpp"

namespace hopdisc {

namespace {

// Subframe sequences laid out per resource: seq[s * frames + t].
struct SubframeTable {
  std::uint32_t resources = 0;
  std::uint64_t frames = 0;
  std::vector<std::uint32_t> seq;

  std::span<const std::uint32_t> of(Resource s) const {
    return std::span<const std::uint32_t>(seq).subspan(s * frames, frames);
  }
};

SubframeTable tabulate(const HoppingPattern& pattern, std::uint64_t first, std::uint64_t frames) {
  SubframeTable table;
  table.resources = pattern.resource_count();
  table.frames = frames;
  table.seq.resize(static_cast<std::size_t>(table.resources) * frames);
  for (std::uint64_t t = 0; t < frames; ++t) {
    const auto row = pattern.subframes_at(static_cast<std::int64_t>(first + t));
    for (Resource s = 0; s < table.resources; ++s) table.seq[s * frames + t] = row[s];
  }
  return table;
}

// Tracks the maximum of a per-pair score together with the lexicographically
// first pairs attaining it.
class ArgMax {
 public:
  void offer(std::uint64_t score, Resource a, Resource b) {
    if (!any_ || score > best_) {
      any_ = true;
      best_ = score;
      offenders_.clear();
      count_ = 0;
    }
    if (score == best_) {
      ++count_;
      if (offenders_.size() < kMaxOffenders) offenders_.push_back({a, b});
    }
  }

  bool any() const { return any_; }
  std::uint64_t best() const { return best_; }
  std::vector<ResourcePair> take_offenders() { return std::move(offenders_); }
  std::uint64_t count() const { return count_; }

 private:
  bool any_ = false;
  std::uint64_t best_ = 0;
  std::vector<ResourcePair> offenders_;
  std::uint64_t count_ = 0;
};

std::uint64_t require_period(const HoppingPattern& pattern, const char* what) {
  const auto period = pattern.j_period();
  if (!period) {
    throw Error(std::string(what) + " needs a deterministic pattern; got " +
                pattern.spec().kind_name());
  }
  return *period;
}

CollisionRatio collision_ratio_over(const SubframeTable& table, bool exact) {
  ArgMax arg;
  const auto frames = table.frames;
  for (Resource a = 0; a < table.resources; ++a) {
    const auto sa = table.of(a);
    for (Resource b = a + 1; b < table.resources; ++b) {
      const auto sb = table.of(b);
      std::uint64_t hits = 0;
      for (std::uint64_t t = 0; t < frames; ++t) hits += sa[t] == sb[t];
      arg.offer(hits, a, b);
    }
  }
  CollisionRatio out;
  out.horizon = frames;
  out.exact = exact;
  out.collisions = arg.best();
  out.ratio = Rational::reduced(arg.best(), frames);
  out.offender_count = arg.count();
  out.offenders = arg.take_offenders();
  return out;
}

}  // namespace

std::string to_string(const ExtendedCount& c) {
  switch (c.kind()) {
    case ExtendedCount::Kind::finite:
      return std::to_string(c.value());
    case ExtendedCount::Kind::infinite:
      return "inf";
    case ExtendedCount::Kind::exceeds_cap:
      return "cap:" + std::to_string(c.value());
  }
  return {};
}

ExtendedCount parse_extended_count(std::string_view text) {
  auto parse_u64 = [&](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw Error("cannot parse count '" + std::string(text) + "'");
    }
    return v;
  };
  if (text == "inf") return ExtendedCount::infinite();
  if (text.starts_with("cap:")) return ExtendedCount::exceeds_cap(parse_u64(text.substr(4)));
  return ExtendedCount::finite(parse_u64(text));
}

Rational Rational::reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error("zero denominator");
  const auto g = std::gcd(num, den);
  return {num / g, den / g};
}

std::string to_string(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

ExtendedCount column_period(const HoppingPattern& pattern, std::uint64_t t_cap) {
  if (t_cap < 1) throw Error("column_period: t_cap must be >= 1");

  if (const auto period = pattern.j_period()) {
    const std::uint64_t p = *period;
    // Periodicity of the j-values reduces condition (P) over all t to one
    // period; assert it rather than assume it.
    for (std::uint64_t t = 0; t < p; ++t) {
      const auto ti = static_cast<std::int64_t>(t);
      if (pattern.subframes_at(ti) != pattern.subframes_at(ti + static_cast<std::int64_t>(p))) {
        throw std::logic_error("j-values are not periodic with period " + std::to_string(p));
      }
    }
    std::vector<CollisionPartition> parts;
    parts.reserve(p);
    for (std::uint64_t t = 0; t < p; ++t) {
      parts.push_back(collision_partition(pattern, static_cast<std::int64_t>(t)));
    }
    for (std::uint64_t shift = 1; shift <= p; ++shift) {
      bool holds = true;
      for (std::uint64_t t = 0; t < p && holds; ++t) holds = parts[t] == parts[(t + shift) % p];
      if (holds) {
        if (p % shift != 0) {
          throw std::logic_error("column period " + std::to_string(shift) +
                                 " does not divide the j-period " + std::to_string(p));
        }
        return shift <= t_cap ? ExtendedCount::finite(shift) : ExtendedCount::exceeds_cap(t_cap);
      }
    }
    throw std::logic_error("j-period " + std::to_string(p) + " fails condition (P)");
  }

  std::vector<CollisionPartition> parts;
  parts.reserve(2 * t_cap);
  for (std::uint64_t t = 0; t < 2 * t_cap; ++t) {
    parts.push_back(collision_partition(pattern, static_cast<std::int64_t>(t)));
  }
  for (std::uint64_t shift = 1; shift <= t_cap; ++shift) {
    bool holds = true;
    for (std::uint64_t t = 0; t < t_cap && holds; ++t) holds = parts[t] == parts[t + shift];
    if (holds) return ExtendedCount::finite(shift);
  }
  return ExtendedCount::exceeds_cap(t_cap);
}

CollisionRatio max_collision_ratio_exact(const HoppingPattern& pattern) {
  const auto period = require_period(pattern, "exact collision ratio");
  return collision_ratio_over(tabulate(pattern, 0, period), true);
}

CollisionRatio max_collision_ratio_empirical(const HoppingPattern& pattern, std::uint64_t t_b) {
  if (t_b < 1) throw Error("collision ratio horizon t_b must be >= 1");
  return collision_ratio_over(tabulate(pattern, 0, t_b), false);
}

ContinualCollision max_continual_collision(const HoppingPattern& pattern, std::uint64_t t_cap) {
  if (t_cap < 1) throw Error("max_continual_collision: t_cap must be >= 1");
  ContinualCollision out;

  if (const auto period = pattern.j_period()) {
    const std::uint64_t p = *period;
    const auto table = tabulate(pattern, 0, p);
    out.frames_scanned = 2 * p;
    ArgMax finite_runs;
    ArgMax infinite_runs;
    for (Resource a = 0; a < table.resources; ++a) {
      const auto sa = table.of(a);
      for (Resource b = a + 1; b < table.resources; ++b) {
        const auto sb = table.of(b);
        // Two passes over the period catch runs that wrap around.
        std::uint64_t run = 0, longest = 0;
        for (std::uint64_t t = 0; t < 2 * p; ++t) {
          run = sa[t % p] == sb[t % p] ? run + 1 : 0;
          longest = std::max(longest, run);
        }
        if (longest >= p) {
          infinite_runs.offer(1, a, b);
        } else {
          finite_runs.offer(longest, a, b);
        }
        out.observed_longest = std::max(out.observed_longest, longest);
      }
    }
    if (infinite_runs.any()) {
      out.value = ExtendedCount::infinite();
      out.offender_count = infinite_runs.count();
      out.offenders = infinite_runs.take_offenders();
    } else {
      out.value = ExtendedCount::finite(finite_runs.best());
      out.offender_count = finite_runs.count();
      out.offenders = finite_runs.take_offenders();
    }
    return out;
  }

  const auto table = tabulate(pattern, 0, t_cap);
  out.frames_scanned = t_cap;
  ArgMax interior;
  ArgMax edge;
  for (Resource a = 0; a < table.resources; ++a) {
    const auto sa = table.of(a);
    for (Resource b = a + 1; b < table.resources; ++b) {
      const auto sb = table.of(b);
      std::uint64_t run = 0, longest = 0;
      for (std::uint64_t t = 0; t < t_cap; ++t) {
        if (sa[t] == sb[t]) {
          ++run;
        } else {
          longest = std::max(longest, run);
          run = 0;
        }
      }
      interior.offer(longest, a, b);
      if (run > 0) edge.offer(run, a, b);
      out.observed_longest = std::max({out.observed_longest, longest, run});
    }
  }
  if (edge.any() && edge.best() > interior.best()) {
    out.value = ExtendedCount::exceeds_cap(t_cap);
    out.offender_count = edge.count();
    out.offenders = edge.take_offenders();
  } else {
    out.value = ExtendedCount::finite(interior.best());
    out.offender_count = interior.count();
    out.offenders = interior.take_offenders();
  }
  return out;
}

std::uint64_t continual_collision_bound(FrameStructure frame) {
  if (frame.n == 1) return 0;
  return ceil_log(frame.n, frame.m);
}

bool is_local_good(const HoppingPattern& pattern, std::uint64_t t_cap) {
  const auto c = max_continual_collision(pattern, t_cap);
  return c.value.is_finite() && c.value.value() == continual_collision_bound(pattern.frame());
}

MetricsReport evaluate_metrics(const HoppingPattern& pattern, std::uint64_t t_cap,
                               std::uint64_t t_b) {
  MetricsReport report;
  report.kind = pattern.spec().kind_name();
  report.frame = pattern.frame();
  report.column_period = column_period(pattern, t_cap);
  report.collision_ratio = pattern.is_deterministic() ? max_collision_ratio_exact(pattern)
                                                      : max_collision_ratio_empirical(pattern, t_b);
  report.continual = max_continual_collision(pattern, t_cap);
  report.continual_bound = continual_collision_bound(pattern.frame());
  report.local_good = report.continual.value.is_finite() &&
                      report.continual.value.value() == report.continual_bound;
  return report;
}

std::string format_report(const MetricsReport& report, std::size_t max_offenders) {
  auto pairs = [&](const std::vector<ResourcePair>& list) {
    std::string out;
    for (std::size_t k = 0; k < list.size() && k < max_offenders; ++k) {
      if (k) out += ',';
      out += std::to_string(list[k].first) + ":" + std::to_string(list[k].second);
    }
    return out;
  };
  std::ostringstream os;
  os << "kind = " << report.kind << '\n'
     << "m = " << report.frame.m << '\n'
     << "n = " << report.frame.n << '\n'
     << "column_period = " << to_string(report.column_period) << '\n'
     << "max_collision_ratio = " << to_string(report.collision_ratio.ratio) << '\n'
     << "max_collision_ratio_exact = " << (report.collision_ratio.exact ? "true" : "false") << '\n'
     << "collision_count = " << report.collision_ratio.collisions << '\n'
     << "collision_horizon = " << report.collision_ratio.horizon << '\n'
     << "collision_offender_count = " << report.collision_ratio.offender_count << '\n'
     << "collision_offenders = " << pairs(report.collision_ratio.offenders) << '\n'
     << "max_continual_collision = " << to_string(report.continual.value) << '\n'
     << "continual_observed_longest = " << report.continual.observed_longest << '\n'
     << "continual_frames_scanned = " << report.continual.frames_scanned << '\n'
     << "continual_offender_count = " << report.continual.offender_count << '\n'
     << "continual_offenders = " << pairs(report.continual.offenders) << '\n'
     << "continual_bound = " << report.continual_bound << '\n'
     << "local_good = " << (report.local_good ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace hopdisc
