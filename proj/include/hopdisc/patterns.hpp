#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hopdisc/fp_linalg.hpp"
#include "hopdisc/fp_poly.hpp"

namespace hopdisc {

// m frequency channels by n subframes.
struct FrameStructure {
  std::uint32_t m;
  std::uint32_t n;

  FrameStructure(std::uint32_t channels, std::uint32_t subframes);
  std::uint32_t resource_count() const { return m * n; }

  friend bool operator==(const FrameStructure&, const FrameStructure&) = default;
};

struct Coord {
  std::uint32_t i;  // channel
  std::uint32_t j;  // subframe

  friend bool operator==(const Coord&, const Coord&) = default;
};

using Resource = std::uint32_t;

// Bijection from logical resources onto the frame grid, held as cell
// indices i*n + j.
class InitialMap {
 public:
  // s -> (s / n, s % n)
  static InitialMap row_major(FrameStructure frame);
  // cells[s] = i*n + j; must be a permutation of [0, m*n).
  static InitialMap from_cells(FrameStructure frame, std::vector<std::uint32_t> cells);

  FrameStructure frame() const { return frame_; }
  Coord at(Resource s) const {
    const auto c = cells_[s];
    return {c / frame_.n, c % frame_.n};
  }
  std::span<const std::uint32_t> cells() const { return cells_; }
  // Resource sitting on (i, j) at t = 0.
  Resource resource_at(Coord c) const { return inverse_[c.i * frame_.n + c.j]; }

 private:
  InitialMap(FrameStructure frame, std::vector<std::uint32_t> cells);

  FrameStructure frame_;
  std::vector<std::uint32_t> cells_;
  std::vector<Resource> inverse_;
};

struct RandomKind {
  std::uint64_t seed;
};

struct QcKind {
  std::int64_t k;
};

struct NewKind {
  std::int64_t k;
  FpPoly f;
  FpVec b;
};

using PatternKind = std::variant<RandomKind, QcKind, NewKind>;

// Validated pattern description. Immutable once built.
class PatternSpec {
 public:
  static PatternSpec random(FrameStructure frame, std::uint64_t seed);
  static PatternSpec qc(FrameStructure frame, std::int64_t k,
                        std::optional<InitialMap> init = std::nullopt);
  // n must be prime, deg f = minimal_r(n, m), f satisfies condition (G).
  // An omitted b defaults to (1, 0, ..., 0).
  static PatternSpec new_pattern(FrameStructure frame, std::int64_t k, FpPoly f,
                                 std::optional<FpVec> b = std::nullopt,
                                 std::optional<InitialMap> init = std::nullopt);

  FrameStructure frame() const { return frame_; }
  const PatternKind& kind() const { return kind_; }
  const InitialMap& init() const { return init_; }
  const char* kind_name() const;

 private:
  PatternSpec(FrameStructure frame, PatternKind kind, InitialMap init);

  FrameStructure frame_;
  PatternKind kind_;
  InitialMap init_;
};

// Base-p digits of i0, least significant first, exactly r of them.
std::vector<std::uint32_t> digits(std::uint64_t i0, Prime p, unsigned r);

// Evaluable coordinate function (i(t), j(t)) for every logical resource.
class HoppingPattern {
 public:
  explicit HoppingPattern(PatternSpec spec);

  const PatternSpec& spec() const { return spec_; }
  FrameStructure frame() const { return spec_.frame(); }
  std::uint32_t resource_count() const { return spec_.frame().resource_count(); }
  bool is_deterministic() const;

  // Period of the j-values in t: n for QC, p^r for the new pattern,
  // nullopt for random.
  std::optional<std::uint64_t> j_period() const;

  // Random patterns require t >= 0.
  Coord coords(Resource s, std::int64_t t) const;
  std::uint32_t subframe(Resource s, std::int64_t t) const { return coords(s, t).j; }

  // Subframe of every resource at frame t.
  std::vector<std::uint32_t> subframes_at(std::int64_t t) const;

 private:
  PatternSpec spec_;
  // New pattern only.
  std::optional<BSequenceTable> b_table_;
  std::vector<std::vector<std::uint32_t>> digit_rows_;
};

// Resources grouped by j(t). label[s] is the smallest resource sharing s's
// subframe, so two partitions are equal iff their label vectors are.
struct CollisionPartition {
  std::vector<Resource> label;

  std::vector<std::vector<Resource>> groups() const;
  friend bool operator==(const CollisionPartition&, const CollisionPartition&) = default;
};

CollisionPartition collision_partition(const HoppingPattern& pattern, std::int64_t t);
CollisionPartition partition_from_subframes(std::span<const std::uint32_t> subframes);

}  // namespace hopdisc
