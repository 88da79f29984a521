#include "hopdisc/condition_g_table.hpp"

#include <array>

namespace hopdisc {

namespace {

constexpr std::array<ConditionGTableRow, 18> kTable{{
    {33, 64, 2, 6, "x^6+x^5+x^3+x^2+1"},
    {4, 9, 3, 2, "x^2-x-1"},
    {10, 27, 3, 3, "x^3+2x^2+x+1"},
    {28, 81, 3, 4, "x^4+2x+2"},
    {26, 125, 5, 3, "x^3+4x^2+x+2"},
    {50, 343, 7, 3, "x^3+5x+2"},
    {8, 49, 7, 2, "x^2+6x+3"},
    {12, 121, 11, 2, "x^2+3x+6"},
    {14, 169, 13, 2, "x^2+4x+2"},
    {18, 289, 17, 2, "x^2+15x+12"},
    {20, 361, 19, 2, "x^2+12x+2"},
    {24, 529, 23, 2, "x^2+10x+10"},
    {30, 841, 29, 2, "x^2+22x+19"},
    {32, 961, 31, 2, "x^2+16x+3"},
    {38, 1369, 37, 2, "x^2+12x+19"},
    {42, 1681, 41, 2, "x^2+9x+29"},
    {44, 1849, 43, 2, "x^2+25x+26"},
    {48, 2304, 47, 2, "x^2+14x+10"},
}};

}  // namespace

std::span<const ConditionGTableRow> condition_g_table() { return kTable; }

TableRowVerdict verify_table_row(const ConditionGTableRow& row) {
  const Prime p(row.p);
  FpPoly f = parse_poly(row.polynomial, p);
  auto check = check_condition_g(f);
  const bool range_ok = row.m_min <= row.m_max && minimal_r(p, row.m_min) == row.r &&
                        minimal_r(p, row.m_max) == row.r;
  const bool degree_ok = f.degree() == static_cast<int>(row.r);
  return {std::move(f), std::move(check), range_ok, degree_ok};
}

}  // namespace hopdisc
