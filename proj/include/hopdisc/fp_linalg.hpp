#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopdisc/fp_poly.hpp"

namespace hopdisc {

// Column vector over GF(p).
class FpVec {
 public:
  using Entry = std::uint64_t;

  FpVec(Prime p, std::vector<Entry> entries);
  static FpVec zero(Prime p, std::size_t len);
  // (1, 0, ..., 0)
  static FpVec unit(Prime p, std::size_t len);

  Prime prime() const { return p_; }
  std::size_t size() const { return entries_.size(); }
  Entry operator[](std::size_t k) const { return entries_[k]; }
  std::span<const Entry> entries() const { return entries_; }
  bool is_zero() const;

  friend bool operator==(const FpVec&, const FpVec&) = default;

 private:
  Prime p_;
  std::vector<Entry> entries_;
};

// Dense square matrix over GF(p), row-major.
class FpMatrix {
 public:
  using Entry = std::uint64_t;

  FpMatrix(Prime p, std::size_t dim, std::vector<Entry> row_major);
  static FpMatrix identity(Prime p, std::size_t dim);
  static FpMatrix zero(Prime p, std::size_t dim);

  Prime prime() const { return p_; }
  std::size_t dim() const { return dim_; }
  Entry at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const Entry> entries() const { return entries_; }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  Prime p_;
  std::size_t dim_;
  std::vector<Entry> entries_;
};

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
FpVec operator*(const FpMatrix& a, const FpVec& v);

// The r x r matrix with ones on the sub-diagonal and last column
// (-a_r, ..., -a_1) top to bottom; its characteristic polynomial is f.
FpMatrix companion_matrix(const FpPoly& f);

FpMatrix mat_pow(const FpMatrix& a, std::uint64_t e);

FpMatrix::Entry determinant(const FpMatrix& m);
bool is_nonsingular(const FpMatrix& m);

enum class ConditionGPolicy { enforce, skip };

// b(t) = 0 if t == 0 (mod p^r), else A^{(t mod p^r) - 1} b, with A the
// companion matrix of f. Random-access path via mat_pow.
FpVec b_sequence(const FpPoly& f, const FpVec& b, std::int64_t t,
                 ConditionGPolicy policy = ConditionGPolicy::enforce);

// One full period of b(t), t = 0 .. p^r - 1, built by repeated
// multiplication by A.
class BSequenceTable {
 public:
  BSequenceTable(const FpPoly& f, const FpVec& b,
                 ConditionGPolicy policy = ConditionGPolicy::enforce);

  std::uint64_t period() const { return period_; }
  std::size_t dim() const { return dim_; }
  // Entries of b(t), any integer t.
  std::span<const FpVec::Entry> at(std::int64_t t) const;
  FpVec vec(std::int64_t t) const;

  // Largest period this table will materialise.
  static constexpr std::uint64_t kMaxPeriod = std::uint64_t{1} << 22;

 private:
  Prime p_;
  std::size_t dim_;
  std::uint64_t period_;
  std::vector<FpVec::Entry> values_;
};

// The (r+1) x (r+1) matrix whose columns are (1, b(t+c)) for c = 0..r.
FpMatrix collision_window_matrix(const FpPoly& f, const FpVec& b, std::int64_t t);

// "1,0,2"
FpVec parse_vec(std::string_view text, Prime p);
std::string to_string(const FpVec& v);
// Rows separated by ';', entries by ','.
FpMatrix parse_matrix(std::string_view text, Prime p);
std::string to_string(const FpMatrix& m);

}  // namespace hopdisc
