#include "hopdisc/fp_poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "hopdisc/error.hpp"

namespace hopdisc {

namespace {

using Coeff = FpPoly::Coeff;

Coeff add_mod(Coeff a, Coeff b, std::uint64_t p) { return (a + b) % p; }
Coeff sub_mod(Coeff a, Coeff b, std::uint64_t p) { return (a + p - b) % p; }
Coeff mul_mod(Coeff a, Coeff b, std::uint64_t p) { return (a * b) % p; }

Coeff inv_mod(Coeff a, std::uint64_t p) {
  // Fermat: a^(p-2).
  Coeff result = 1;
  Coeff base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

Coeff reduce_signed(std::int64_t v, std::uint64_t p) {
  auto sp = static_cast<std::int64_t>(p);
  auto r = v % sp;
  if (r < 0) r += sp;
  return static_cast<Coeff>(r);
}

void require_same_field(const FpPoly& a, const FpPoly& b) {
  if (a.prime() != b.prime()) {
    throw Error("polynomials over different fields: GF(" + std::to_string(a.prime().value()) +
                ") vs GF(" + std::to_string(b.prime().value()) + ")");
  }
}

void require_monic(const FpPoly& f, const char* what) {
  if (!f.is_monic() || f.degree() < 1) {
    throw Error(std::string(what) + ": expected a monic polynomial of degree >= 1, got " +
                to_string(f));
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Prime::Prime(std::uint64_t p) : p_(p) {
  if (p > std::numeric_limits<std::uint32_t>::max()) {
    throw Error("prime " + std::to_string(p) + " too large (must be < 2^32)");
  }
  if (!is_prime(p)) throw Error("p must be prime, got " + std::to_string(p));
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  constexpr std::uint64_t limit = std::numeric_limits<std::int64_t>::max();
  std::uint64_t result = 1;
  for (unsigned k = 0; k < exp; ++k) {
    if (base != 0 && result > limit / base) {
      throw Error(std::to_string(base) + "^" + std::to_string(exp) + " overflows");
    }
    result *= base;
  }
  return result;
}

unsigned ceil_log(std::uint64_t base, std::uint64_t m) {
  if (base < 2) throw Error("logarithm base must be >= 2");
  if (m == 0) throw Error("m must be positive");
  unsigned r = 0;
  std::uint64_t power = 1;
  while (power < m) {
    power = power > std::numeric_limits<std::uint64_t>::max() / base
                ? std::numeric_limits<std::uint64_t>::max()
                : power * base;
    ++r;
  }
  return r;
}

unsigned minimal_r(Prime p, std::uint64_t m) { return ceil_log(p.value(), m); }

// ---------------------------------------------------------------------------

FpPoly::FpPoly(Prime p, std::vector<Coeff> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  for (Coeff c : coeffs_) {
    if (c >= p_.value()) {
      throw Error("coefficient " + std::to_string(c) + " not reduced mod " +
                  std::to_string(p_.value()));
    }
  }
  trim();
}

FpPoly FpPoly::from_signed(Prime p, std::span<const std::int64_t> coeffs) {
  std::vector<Coeff> reduced;
  reduced.reserve(coeffs.size());
  for (auto c : coeffs) reduced.push_back(reduce_signed(c, p.value()));
  return FpPoly(p, std::move(reduced));
}

FpPoly FpPoly::monic(Prime p, std::span<const std::int64_t> tail) {
  // tail = (a_1, ..., a_r); a_r is the constant term.
  std::vector<Coeff> coeffs(tail.size() + 1);
  for (std::size_t k = 0; k < tail.size(); ++k) {
    coeffs[tail.size() - 1 - k] = reduce_signed(tail[k], p.value());
  }
  coeffs.back() = 1;
  return FpPoly(p, std::move(coeffs));
}

FpPoly FpPoly::constant(Prime p, Coeff c) { return FpPoly(p, {c % p.value()}); }

std::vector<Coeff> FpPoly::monic_tail() const {
  if (!is_monic()) throw Error("monic_tail: polynomial is not monic");
  std::vector<Coeff> tail;
  for (int k = degree() - 1; k >= 0; --k) tail.push_back(coeffs_[static_cast<std::size_t>(k)]);
  return tail;
}

void FpPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  require_same_field(a, b);
  const auto p = a.prime().value();
  std::vector<Coeff> out(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = add_mod(a.coeff(k), b.coeff(k), p);
  return FpPoly(a.prime(), std::move(out));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  require_same_field(a, b);
  const auto p = a.prime().value();
  std::vector<Coeff> out(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sub_mod(a.coeff(k), b.coeff(k), p);
  return FpPoly(a.prime(), std::move(out));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return FpPoly::zero(a.prime());
  const auto p = a.prime().value();
  std::vector<Coeff> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      out[i + j] = add_mod(out[i + j], mul_mod(a.coeffs()[i], b.coeffs()[j], p), p);
    }
  }
  return FpPoly(a.prime(), std::move(out));
}

PolyDivision divmod(const FpPoly& dividend, const FpPoly& divisor) {
  require_same_field(dividend, divisor);
  if (divisor.is_zero()) throw Error("division by the zero polynomial");
  const auto p = dividend.prime().value();
  const auto dd = static_cast<std::size_t>(divisor.degree());
  const Coeff lead_inv = inv_mod(divisor.coeffs().back(), p);

  std::vector<Coeff> rem(dividend.coeffs().begin(), dividend.coeffs().end());
  if (rem.size() <= dd) {
    return {FpPoly::zero(dividend.prime()), dividend};
  }
  std::vector<Coeff> quot(rem.size() - dd, 0);
  for (std::size_t k = rem.size(); k-- > dd;) {
    const Coeff factor = mul_mod(rem[k], lead_inv, p);
    if (factor == 0) continue;
    quot[k - dd] = factor;
    for (std::size_t i = 0; i <= dd; ++i) {
      auto& slot = rem[k - dd + i];
      slot = sub_mod(slot, mul_mod(factor, divisor.coeffs()[i], p), p);
    }
  }
  rem.resize(dd);
  return {FpPoly(dividend.prime(), std::move(quot)), FpPoly(dividend.prime(), std::move(rem))};
}

FpPoly poly_mul_mod(const FpPoly& a, const FpPoly& b, const FpPoly& modulus) {
  require_same_field(a, b);
  require_same_field(a, modulus);
  require_monic(modulus, "poly_mul_mod modulus");
  return divmod(a * b, modulus).remainder;
}

FpPoly poly_pow_mod(const FpPoly& base, std::uint64_t exp, const FpPoly& modulus) {
  require_same_field(base, modulus);
  require_monic(modulus, "poly_pow_mod modulus");
  FpPoly result = divmod(FpPoly::constant(base.prime(), 1), modulus).remainder;
  FpPoly acc = divmod(base, modulus).remainder;
  while (exp > 0) {
    if (exp & 1) result = poly_mul_mod(result, acc, modulus);
    exp >>= 1;
    if (exp > 0) acc = poly_mul_mod(acc, acc, modulus);
  }
  return result;
}

bool is_irreducible(const FpPoly& f) {
  require_monic(f, "is_irreducible");
  const Prime p = f.prime();
  const unsigned half = static_cast<unsigned>(f.degree()) / 2;
  for (unsigned d = 1; d <= half; ++d) {
    // Enumerate the monic degree-d candidates as base-p counters.
    std::vector<std::int64_t> tail(d, 0);
    const std::uint64_t count = checked_pow(p.value(), d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t v = idx;
      for (unsigned k = 0; k < d; ++k) {
        tail[d - 1 - k] = static_cast<std::int64_t>(v % p.value());
        v /= p.value();
      }
      if (divmod(f, FpPoly::monic(p, tail)).remainder.is_zero()) return false;
    }
  }
  return true;
}

ConditionGCheck check_condition_g(const FpPoly& f) {
  require_monic(f, "condition (G)");
  ConditionGCheck check;
  const Prime p = f.prime();
  check.group_order = checked_pow(p.value(), static_cast<unsigned>(f.degree())) - 1;
  check.irreducible = is_irreducible(f);
  if (!check.irreducible) return check;

  const FpPoly x = FpPoly::x(p);
  const FpPoly one = FpPoly::constant(p, 1);
  check.full_order = poly_pow_mod(x, check.group_order, f) == one;
  bool all_witnesses_differ = true;
  for (std::uint64_t q : prime_factors(check.group_order)) {
    OrderWitness w{q, check.group_order / q, false};
    w.is_one = poly_pow_mod(x, w.exponent, f) == one;
    all_witnesses_differ = all_witnesses_differ && !w.is_one;
    check.witnesses.push_back(w);
  }
  check.satisfied = check.full_order && all_witnesses_differ;
  return check;
}

bool satisfies_condition_g(const FpPoly& f) { return check_condition_g(f).satisfied; }

FpPoly find_condition_g_poly(Prime p, unsigned r) {
  if (r < 1) throw Error("degree r must be >= 1");
  const std::uint64_t count = checked_pow(p.value(), r);
  std::vector<std::int64_t> tail(r, 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // idx enumerates (a_1, ..., a_r) with a_1 most significant.
    std::uint64_t v = idx;
    for (unsigned k = 0; k < r; ++k) {
      tail[r - 1 - k] = static_cast<std::int64_t>(v % p.value());
      v /= p.value();
    }
    // a_r == 0 means x divides f.
    if (tail.back() == 0) continue;
    FpPoly candidate = FpPoly::monic(p, tail);
    if (satisfies_condition_g(candidate)) return candidate;
  }
  throw std::logic_error("no primitive polynomial found for p=" + std::to_string(p.value()) +
                         ", r=" + std::to_string(r));
}

// ---------------------------------------------------------------------------

FpPoly parse_poly(std::string_view text, Prime p) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw Error("empty polynomial text");

  auto fail = [&](const std::string& why) -> Error {
    return Error("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_uint = [&](std::size_t& pos) -> std::uint64_t {
    std::uint64_t v = 0;
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) throw fail("number too large");
      v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      ++pos;
    }
    if (pos == start) throw fail("expected a number at offset " + std::to_string(start));
    return v;
  };

  std::vector<Coeff> coeffs;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (!first) {
      throw fail("expected '+' or '-' at offset " + std::to_string(pos));
    }
    first = false;

    std::uint64_t coef = 1;
    bool has_coef = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coef = read_uint(pos);
      has_coef = true;
      if (pos < s.size() && s[pos] == '*') ++pos;
    }
    std::uint64_t power = 0;
    if (pos < s.size() && s[pos] == 'x') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        power = read_uint(pos);
        if (power > 4096) throw fail("degree too large");
      }
    } else if (!has_coef) {
      throw fail("expected a term at offset " + std::to_string(pos));
    }

    const auto pv = p.value();
    Coeff c = coef % pv;
    if (negative) c = (pv - c) % pv;
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] = (coeffs[power] + c) % pv;
  }
  return FpPoly(p, std::move(coeffs));
}

std::string to_string(const FpPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    const Coeff c = f.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (c != 1 || k == 0) out += std::to_string(c);
    if (k >= 1) out += 'x';
    if (k >= 2) out += '^' + std::to_string(k);
  }
  return out;
}

}  // namespace hopdisc
