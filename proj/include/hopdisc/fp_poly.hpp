#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hopdisc {

bool is_prime(std::uint64_t n);

// Distinct prime divisors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// A prime modulus. Restricted to p < 2^32 so products of two residues fit
// in 64 bits.
class Prime {
 public:
  explicit Prime(std::uint64_t p);

  std::uint64_t value() const { return p_; }
  operator std::uint64_t() const { return p_; }

  friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
};

// base^exp, throwing if the result does not fit in 63 bits.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

// Smallest r >= 0 with base^r >= m. Integer arithmetic only.
unsigned ceil_log(std::uint64_t base, std::uint64_t m);

// Smallest r with p^r >= m; m must be positive.
unsigned minimal_r(Prime p, std::uint64_t m);

// Polynomial over GF(p). Coefficients are stored lowest degree first with
// trailing zeros trimmed, so the zero polynomial has an empty coefficient
// list.
class FpPoly {
 public:
  using Coeff = std::uint64_t;

  // Every coefficient must already lie in [0, p).
  FpPoly(Prime p, std::vector<Coeff> coeffs);

  // Reduces arbitrary signed integers into [0, p).
  static FpPoly from_signed(Prime p, std::span<const std::int64_t> coeffs);

  // x^r + a_1 x^{r-1} + ... + a_r, given (a_1, ..., a_r) as signed integers.
  static FpPoly monic(Prime p, std::span<const std::int64_t> tail);

  static FpPoly zero(Prime p) { return FpPoly(p, {}); }
  static FpPoly constant(Prime p, Coeff c);
  static FpPoly x(Prime p) { return FpPoly(p, {0, 1}); }

  Prime prime() const { return p_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  Coeff coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }
  std::span<const Coeff> coeffs() const { return coeffs_; }

  // Tail (a_1, ..., a_r) of a monic x^r + a_1 x^(r-1) + ... + a_r.
  std::vector<Coeff> monic_tail() const;

  friend bool operator==(const FpPoly&, const FpPoly&) = default;

 private:
  void trim();

  Prime p_;
  std::vector<Coeff> coeffs_;
};

FpPoly operator+(const FpPoly& a, const FpPoly& b);
FpPoly operator-(const FpPoly& a, const FpPoly& b);
FpPoly operator*(const FpPoly& a, const FpPoly& b);

struct PolyDivision {
  FpPoly quotient;
  FpPoly remainder;
};

// Euclidean division; divisor must be nonzero.
PolyDivision divmod(const FpPoly& dividend, const FpPoly& divisor);

// (a * b) mod modulus. modulus must be monic of degree >= 1.
FpPoly poly_mul_mod(const FpPoly& a, const FpPoly& b, const FpPoly& modulus);

// base^exp mod modulus by square-and-multiply.
FpPoly poly_pow_mod(const FpPoly& base, std::uint64_t exp, const FpPoly& modulus);

// Trial division by every monic polynomial of degree 1..deg(f)/2.
bool is_irreducible(const FpPoly& f);

struct OrderWitness {
  std::uint64_t prime_factor;  // q divides p^r - 1
  std::uint64_t exponent;      // (p^r - 1) / q
  bool is_one;                 // x^exponent == 1 mod f
};

// Evidence for or against x being a generator of GF(p)[x]/(f)^*.
struct ConditionGCheck {
  std::uint64_t group_order = 0;  // p^r - 1
  bool irreducible = false;
  bool full_order = false;  // x^(p^r-1) == 1 mod f
  std::vector<OrderWitness> witnesses;
  bool satisfied = false;
};

// f must be monic of degree >= 1.
ConditionGCheck check_condition_g(const FpPoly& f);
bool satisfies_condition_g(const FpPoly& f);

// First monic degree-r polynomial, in lexicographic order of (a_1, ..., a_r),
// for which x has multiplicative order exactly p^r - 1.
FpPoly find_condition_g_poly(Prime p, unsigned r);

// Text form "x^2+3x+6". Terms may appear in any order and repeat; negative
// coefficients ("x^2-x-1") are reduced mod p.
FpPoly parse_poly(std::string_view text, Prime p);

// Highest degree first, zero terms omitted, unit coefficients elided.
std::string to_string(const FpPoly& f);

}  // namespace hopdisc
