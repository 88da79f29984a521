#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hopdisc/patterns.hpp"

namespace hopdisc {

// A non-negative count that may also be infinite, or unresolved because an
// empirical search hit its frame budget.
class ExtendedCount {
 public:
  enum class Kind { finite, infinite, exceeds_cap };

  static ExtendedCount finite(std::uint64_t v) { return {Kind::finite, v}; }
  static ExtendedCount infinite() { return {Kind::infinite, 0}; }
  static ExtendedCount exceeds_cap(std::uint64_t cap) { return {Kind::exceeds_cap, cap}; }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_infinite() const { return kind_ == Kind::infinite; }
  bool exceeds_cap() const { return kind_ == Kind::exceeds_cap; }
  // Finite value, or the cap for exceeds_cap.
  std::uint64_t value() const { return value_; }

  friend bool operator==(const ExtendedCount&, const ExtendedCount&) = default;

 private:
  ExtendedCount(Kind kind, std::uint64_t v) : kind_(kind), value_(v) {}

  Kind kind_;
  std::uint64_t value_;
};

// "7", "inf", "cap:200"
std::string to_string(const ExtendedCount& c);
ExtendedCount parse_extended_count(std::string_view text);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational reduced(std::uint64_t num, std::uint64_t den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::string to_string(const Rational& r);

struct ResourcePair {
  Resource first;
  Resource second;

  friend bool operator==(const ResourcePair&, const ResourcePair&) = default;
  friend auto operator<=>(const ResourcePair&, const ResourcePair&) = default;
};

// Offender lists keep the lexicographically smallest pairs attaining the
// maximum, up to this many; the total is reported separately.
inline constexpr std::size_t kMaxOffenders = 256;

struct CollisionRatio {
  Rational ratio;               // collisions / horizon for the worst pair
  std::uint64_t collisions = 0;  // raw count for the worst pair
  std::uint64_t horizon = 0;     // frames examined
  bool exact = false;
  std::vector<ResourcePair> offenders;
  std::uint64_t offender_count = 0;
};

struct ContinualCollision {
  ExtendedCount value = ExtendedCount::finite(0);
  // Longest run actually seen in the scanned window.
  std::uint64_t observed_longest = 0;
  std::uint64_t frames_scanned = 0;
  std::vector<ResourcePair> offenders;
  std::uint64_t offender_count = 0;
};

// Minimal T in [1, t_cap] such that the subframe partition at t equals the
// one at t + T for every t. Deterministic patterns are checked over one
// j-period (after asserting j(t + P) = j(t)); random patterns over
// t in [0, t_cap) against a 2 * t_cap window.
ExtendedCount column_period(const HoppingPattern& pattern, std::uint64_t t_cap);

// Exact worst-pair collision fraction over one j-period. Deterministic
// patterns only.
CollisionRatio max_collision_ratio_exact(const HoppingPattern& pattern);

// Worst-pair collision fraction over frames [0, t_b).
CollisionRatio max_collision_ratio_empirical(const HoppingPattern& pattern, std::uint64_t t_b);

// Longest run of consecutive frames in which some pair shares a subframe.
// Deterministic patterns scan two periods (t_cap is unused) and report
// infinite for a pair colliding in every frame. Random patterns scan
// [0, t_cap); if the longest run ends on the last frame it could extend
// further, and the result is exceeds_cap(t_cap).
ContinualCollision max_continual_collision(const HoppingPattern& pattern, std::uint64_t t_cap);

// Smallest l with n^l >= m, the lower bound on the maximal continual
// collision number. n = 1 has no such bound; returns 0 there.
std::uint64_t continual_collision_bound(FrameStructure frame);

bool is_local_good(const HoppingPattern& pattern, std::uint64_t t_cap);

struct MetricsReport {
  std::string kind;
  FrameStructure frame{1, 1};
  ExtendedCount column_period = ExtendedCount::finite(0);
  CollisionRatio collision_ratio;
  ContinualCollision continual;
  std::uint64_t continual_bound = 0;
  bool local_good = false;
};

// Deterministic patterns get the exact ratio; random ones use t_b.
MetricsReport evaluate_metrics(const HoppingPattern& pattern, std::uint64_t t_cap,
                               std::uint64_t t_b);

// Flat "key = value" record.
std::string format_report(const MetricsReport& report, std::size_t max_offenders = 8);

}  // namespace hopdisc
