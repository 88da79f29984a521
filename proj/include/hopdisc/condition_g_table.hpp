#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "hopdisc/fp_poly.hpp"

namespace hopdisc {

// Published primitive polynomials for p < 50, with the range of channel
// counts m each one serves.
struct ConditionGTableRow {
  std::uint64_t m_min;
  std::uint64_t m_max;
  std::uint64_t p;
  unsigned r;
  std::string_view polynomial;
};

std::span<const ConditionGTableRow> condition_g_table();

struct TableRowVerdict {
  FpPoly polynomial;
  ConditionGCheck check;
  // p^(r-1) < m_min <= m_max <= p^r, i.e. minimal_r(p, m) == r across the range.
  bool m_range_consistent;
  bool degree_matches;

  bool passed() const { return check.satisfied && m_range_consistent && degree_matches; }
};

TableRowVerdict verify_table_row(const ConditionGTableRow& row);

}  // namespace hopdisc
