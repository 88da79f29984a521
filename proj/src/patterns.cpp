#include "hopdisc/patterns.hpp"

#include <algorithm>
#include <limits>

#include "hopdisc/error.hpp"
#include "hopdisc/keyed_rng.hpp"

namespace hopdisc {

namespace {

__extension__ using int128 = __int128;

std::uint32_t mod_signed(int128 v, std::uint32_t m) {
  auto r = static_cast<std::int64_t>(v % m);
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

unsigned new_pattern_degree(FrameStructure frame) {
  return std::max(1u, minimal_r(Prime(frame.n), frame.m));
}

}  // namespace

FrameStructure::FrameStructure(std::uint32_t channels, std::uint32_t subframes)
    : m(channels), n(subframes) {
  if (m < 1 || n < 1) throw Error("frame structure needs m >= 1 and n >= 1");
  if (std::uint64_t{m} * n > std::numeric_limits<std::uint32_t>::max()) {
    throw Error("frame structure too large");
  }
}

InitialMap::InitialMap(FrameStructure frame, std::vector<std::uint32_t> cells)
    : frame_(frame), cells_(std::move(cells)), inverse_(frame.resource_count(), 0) {
  const auto count = frame_.resource_count();
  if (cells_.size() != count) {
    throw Error("initial map has " + std::to_string(cells_.size()) + " entries, expected " +
                std::to_string(count));
  }
  std::vector<bool> seen(count, false);
  for (Resource s = 0; s < count; ++s) {
    const auto c = cells_[s];
    if (c >= count) throw Error("initial map cell " + std::to_string(c) + " out of range");
    if (seen[c]) throw Error("initial map is not a bijection: cell " + std::to_string(c) +
                             " used twice");
    seen[c] = true;
    inverse_[c] = s;
  }
}

InitialMap InitialMap::row_major(FrameStructure frame) {
  std::vector<std::uint32_t> cells(frame.resource_count());
  for (std::uint32_t s = 0; s < cells.size(); ++s) cells[s] = s;
  return InitialMap(frame, std::move(cells));
}

InitialMap InitialMap::from_cells(FrameStructure frame, std::vector<std::uint32_t> cells) {
  return InitialMap(frame, std::move(cells));
}

PatternSpec::PatternSpec(FrameStructure frame, PatternKind kind, InitialMap init)
    : frame_(frame), kind_(std::move(kind)), init_(std::move(init)) {
  if (!(init_.frame() == frame_)) throw Error("initial map frame does not match pattern frame");
}

PatternSpec PatternSpec::random(FrameStructure frame, std::uint64_t seed) {
  return PatternSpec(frame, RandomKind{seed}, InitialMap::row_major(frame));
}

PatternSpec PatternSpec::qc(FrameStructure frame, std::int64_t k, std::optional<InitialMap> init) {
  return PatternSpec(frame, QcKind{k}, init ? std::move(*init) : InitialMap::row_major(frame));
}

PatternSpec PatternSpec::new_pattern(FrameStructure frame, std::int64_t k, FpPoly f,
                                     std::optional<FpVec> b, std::optional<InitialMap> init) {
  if (!is_prime(frame.n)) {
    throw Error("new pattern needs a prime number of subframes, got n=" + std::to_string(frame.n));
  }
  const Prime p(frame.n);
  if (f.prime() != p) throw Error("polynomial field does not match n=" + std::to_string(frame.n));
  const unsigned r = new_pattern_degree(frame);
  if (!f.is_monic() || f.degree() != static_cast<int>(r)) {
    throw Error("new pattern on " + std::to_string(frame.m) + "x" + std::to_string(frame.n) +
                " needs a monic polynomial of degree " + std::to_string(r) + ", got " +
                to_string(f));
  }
  if (!satisfies_condition_g(f)) {
    throw Error(to_string(f) + " does not satisfy condition (G) over GF(" +
                std::to_string(frame.n) + ")");
  }
  FpVec bv = b ? std::move(*b) : FpVec::unit(p, r);
  if (bv.prime() != p || bv.size() != r) {
    throw Error("b must have " + std::to_string(r) + " entries over GF(" +
                std::to_string(frame.n) + ")");
  }
  if (bv.is_zero()) throw Error("b must be nonzero");
  return PatternSpec(frame, NewKind{k, std::move(f), std::move(bv)},
                     init ? std::move(*init) : InitialMap::row_major(frame));
}

const char* PatternSpec::kind_name() const {
  struct Visitor {
    const char* operator()(const RandomKind&) const { return "random"; }
    const char* operator()(const QcKind&) const { return "qc"; }
    const char* operator()(const NewKind&) const { return "new"; }
  };
  return std::visit(Visitor{}, kind_);
}

std::vector<std::uint32_t> digits(std::uint64_t i0, Prime p, unsigned r) {
  if (i0 >= checked_pow(p.value(), r)) {
    throw Error(std::to_string(i0) + " has more than " + std::to_string(r) + " base-" +
                std::to_string(p.value()) + " digits");
  }
  std::vector<std::uint32_t> out(r);
  for (unsigned k = 0; k < r; ++k) {
    out[k] = static_cast<std::uint32_t>(i0 % p.value());
    i0 /= p.value();
  }
  return out;
}

HoppingPattern::HoppingPattern(PatternSpec spec) : spec_(std::move(spec)) {
  if (const auto* nk = std::get_if<NewKind>(&spec_.kind())) {
    b_table_.emplace(nk->f, nk->b);
    const Prime p(frame().n);
    const unsigned r = static_cast<unsigned>(nk->f.degree());
    digit_rows_.reserve(frame().m);
    for (std::uint32_t i = 0; i < frame().m; ++i) digit_rows_.push_back(digits(i, p, r));
  }
}

bool HoppingPattern::is_deterministic() const {
  return !std::holds_alternative<RandomKind>(spec_.kind());
}

std::optional<std::uint64_t> HoppingPattern::j_period() const {
  if (std::holds_alternative<QcKind>(spec_.kind())) return frame().n;
  if (b_table_) return b_table_->period();
  return std::nullopt;
}

Coord HoppingPattern::coords(Resource s, std::int64_t t) const {
  const auto fr = frame();
  if (s >= fr.resource_count()) {
    throw Error("resource " + std::to_string(s) + " out of range");
  }
  struct Visitor {
    const HoppingPattern& self;
    Resource s;
    std::int64_t t;

    Coord operator()(const RandomKind& rk) const {
      if (t < 0) throw Error("random pattern is defined for t >= 0 only");
      const auto fr = self.frame();
      const auto cell = scale_to(keyed_draw(rk.seed, s, static_cast<std::uint64_t>(t)),
                                 fr.resource_count());
      return {static_cast<std::uint32_t>(cell / fr.n), static_cast<std::uint32_t>(cell % fr.n)};
    }

    Coord operator()(const QcKind& qc) const {
      const auto fr = self.frame();
      const Coord c0 = self.spec_.init().at(s);
      const std::uint32_t n = fr.n;
      // Everything is reduced mod n before multiplying; the quadratic term
      // is periodic in t with period n.
      const std::uint64_t tn = mod_signed(t, n);
      const std::uint64_t lin = c0.i % n;
      const std::uint64_t quad = (c0.i / n) % n;
      const std::uint64_t j = (c0.j + lin * tn % n + quad * (tn * tn % n) % n) % n;
      const auto i = mod_signed(static_cast<int128>(c0.i) + static_cast<int128>(qc.k) * t, fr.m);
      return {i, static_cast<std::uint32_t>(j)};
    }

    Coord operator()(const NewKind& nk) const {
      const auto fr = self.frame();
      const Coord c0 = self.spec_.init().at(s);
      const auto bt = self.b_table_->at(t);
      const auto& alpha = self.digit_rows_[c0.i];
      std::uint64_t j = c0.j;
      for (std::size_t k = 0; k < alpha.size(); ++k) j += alpha[k] * bt[k];
      const auto i = mod_signed(static_cast<int128>(c0.i) + static_cast<int128>(nk.k) * t, fr.m);
      return {i, static_cast<std::uint32_t>(j % fr.n)};
    }
  };
  return std::visit(Visitor{*this, s, t}, spec_.kind());
}

std::vector<std::uint32_t> HoppingPattern::subframes_at(std::int64_t t) const {
  std::vector<std::uint32_t> out(resource_count());
  for (Resource s = 0; s < out.size(); ++s) out[s] = subframe(s, t);
  return out;
}

std::vector<std::vector<Resource>> CollisionPartition::groups() const {
  std::vector<std::vector<Resource>> out;
  std::vector<std::size_t> slot(label.size(), 0);
  for (Resource s = 0; s < label.size(); ++s) {
    if (label[s] == s) {
      slot[s] = out.size();
      out.push_back({s});
    } else {
      out[slot[label[s]]].push_back(s);
    }
  }
  return out;
}

CollisionPartition partition_from_subframes(std::span<const std::uint32_t> subframes) {
  CollisionPartition part;
  part.label.resize(subframes.size());
  std::vector<std::pair<std::uint32_t, Resource>> first;
  for (Resource s = 0; s < subframes.size(); ++s) {
    auto it = std::find_if(first.begin(), first.end(),
                           [&](const auto& e) { return e.first == subframes[s]; });
    if (it == first.end()) {
      first.emplace_back(subframes[s], s);
      part.label[s] = s;
    } else {
      part.label[s] = it->second;
    }
  }
  return part;
}

CollisionPartition collision_partition(const HoppingPattern& pattern, std::int64_t t) {
  return partition_from_subframes(pattern.subframes_at(t));
}

}  // namespace hopdisc
