#include "hopdisc/fp_linalg.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

#include "hopdisc/error.hpp"

namespace hopdisc {

namespace {

using Entry = FpVec::Entry;

std::uint64_t reduce_t(std::int64_t t, std::uint64_t period) {
  const auto sp = static_cast<std::int64_t>(period);
  auto r = t % sp;
  if (r < 0) r += sp;
  return static_cast<std::uint64_t>(r);
}

void check_b_inputs(const FpPoly& f, const FpVec& b, ConditionGPolicy policy) {
  if (!f.is_monic() || f.degree() < 1) {
    throw Error("b(t): f must be monic of degree >= 1, got " + to_string(f));
  }
  if (b.prime() != f.prime()) throw Error("b(t): b and f live over different fields");
  if (b.size() != static_cast<std::size_t>(f.degree())) {
    throw Error("b(t): vector length " + std::to_string(b.size()) + " does not match deg f = " +
                std::to_string(f.degree()));
  }
  if (b.is_zero()) throw Error("b(t): b must be nonzero");
  if (policy == ConditionGPolicy::enforce && !satisfies_condition_g(f)) {
    throw Error("b(t): " + to_string(f) + " does not satisfy condition (G)");
  }
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Entry parse_entry(std::string_view tok, Prime p, std::string_view context) {
  tok = strip(tok);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
    throw Error("cannot parse integer '" + std::string(tok) + "' in '" + std::string(context) +
                "'");
  }
  const auto sp = static_cast<std::int64_t>(p.value());
  v %= sp;
  if (v < 0) v += sp;
  return static_cast<Entry>(v);
}

}  // namespace

FpVec::FpVec(Prime p, std::vector<Entry> entries) : p_(p), entries_(std::move(entries)) {
  if (entries_.empty()) throw Error("vector must have positive length");
  for (Entry e : entries_) {
    if (e >= p_.value()) throw Error("vector entry " + std::to_string(e) + " not reduced");
  }
}

FpVec FpVec::zero(Prime p, std::size_t len) { return FpVec(p, std::vector<Entry>(len, 0)); }

FpVec FpVec::unit(Prime p, std::size_t len) {
  std::vector<Entry> e(len, 0);
  if (len > 0) e[0] = 1;
  return FpVec(p, std::move(e));
}

bool FpVec::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Entry e) { return e == 0; });
}

FpMatrix::FpMatrix(Prime p, std::size_t dim, std::vector<Entry> row_major)
    : p_(p), dim_(dim), entries_(std::move(row_major)) {
  if (entries_.size() != dim_ * dim_) {
    throw Error("matrix of dimension " + std::to_string(dim_) + " needs " +
                std::to_string(dim_ * dim_) + " entries, got " + std::to_string(entries_.size()));
  }
  for (Entry e : entries_) {
    if (e >= p_.value()) throw Error("matrix entry " + std::to_string(e) + " not reduced");
  }
}

FpMatrix FpMatrix::identity(Prime p, std::size_t dim) {
  std::vector<Entry> e(dim * dim, 0);
  for (std::size_t k = 0; k < dim; ++k) e[k * dim + k] = 1;
  return FpMatrix(p, dim, std::move(e));
}

FpMatrix FpMatrix::zero(Prime p, std::size_t dim) {
  return FpMatrix(p, dim, std::vector<Entry>(dim * dim, 0));
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  if (a.prime() != b.prime() || a.dim() != b.dim()) throw Error("matrix product: shape mismatch");
  const auto p = a.prime().value();
  const auto n = a.dim();
  std::vector<Entry> out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Entry aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out[i * n + j] = (out[i * n + j] + aik * b.at(k, j)) % p;
      }
    }
  }
  return FpMatrix(a.prime(), n, std::move(out));
}

FpVec operator*(const FpMatrix& a, const FpVec& v) {
  if (a.prime() != v.prime() || a.dim() != v.size()) {
    throw Error("matrix-vector product: shape mismatch");
  }
  const auto p = a.prime().value();
  std::vector<Entry> out(v.size(), 0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Entry acc = 0;
    for (std::size_t k = 0; k < a.dim(); ++k) acc = (acc + a.at(i, k) * v[k]) % p;
    out[i] = acc;
  }
  return FpVec(a.prime(), std::move(out));
}

FpMatrix companion_matrix(const FpPoly& f) {
  if (!f.is_monic() || f.degree() < 1) {
    throw Error("companion_matrix: f must be monic of degree >= 1, got " + to_string(f));
  }
  const auto p = f.prime().value();
  const auto r = static_cast<std::size_t>(f.degree());
  std::vector<Entry> e(r * r, 0);
  for (std::size_t row = 1; row < r; ++row) e[row * r + (row - 1)] = 1;
  // Row `row` of the last column holds -a_{r-row}, i.e. minus the
  // coefficient of x^row.
  for (std::size_t row = 0; row < r; ++row) {
    e[row * r + (r - 1)] = (p - f.coeff(row)) % p;
  }
  return FpMatrix(f.prime(), r, std::move(e));
}

FpMatrix mat_pow(const FpMatrix& a, std::uint64_t e) {
  FpMatrix result = FpMatrix::identity(a.prime(), a.dim());
  FpMatrix base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Entry determinant(const FpMatrix& m) {
  const auto p = m.prime().value();
  const auto n = m.dim();
  std::vector<Entry> a(m.entries().begin(), m.entries().end());
  Entry det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      det = (p - det) % p;
    }
    const Entry pv = a[col * n + col];
    det = det * pv % p;
    // Inverse by Fermat.
    Entry inv = 1, base = pv;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const Entry factor = a[row * n + col] * inv % p;
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) {
        a[row * n + j] = (a[row * n + j] + p - factor * a[col * n + j] % p) % p;
      }
    }
  }
  return det;
}

bool is_nonsingular(const FpMatrix& m) { return determinant(m) != 0; }

FpVec b_sequence(const FpPoly& f, const FpVec& b, std::int64_t t, ConditionGPolicy policy) {
  check_b_inputs(f, b, policy);
  const auto r = static_cast<unsigned>(f.degree());
  const std::uint64_t period = checked_pow(f.prime().value(), r);
  const std::uint64_t tm = reduce_t(t, period);
  if (tm == 0) return FpVec::zero(f.prime(), r);
  return mat_pow(companion_matrix(f), tm - 1) * b;
}

BSequenceTable::BSequenceTable(const FpPoly& f, const FpVec& b, ConditionGPolicy policy)
    : p_(f.prime()), dim_(b.size()), period_(0) {
  check_b_inputs(f, b, policy);
  period_ = checked_pow(p_.value(), static_cast<unsigned>(f.degree()));
  if (period_ > kMaxPeriod) {
    throw Error("b(t) period " + std::to_string(period_) + " exceeds table limit " +
                std::to_string(kMaxPeriod));
  }
  values_.assign(period_ * dim_, 0);
  const FpMatrix a = companion_matrix(f);
  FpVec v = b;
  for (std::uint64_t t = 1; t < period_; ++t) {
    std::copy(v.entries().begin(), v.entries().end(), values_.begin() + t * dim_);
    v = a * v;
  }
}

std::span<const Entry> BSequenceTable::at(std::int64_t t) const {
  const auto tm = reduce_t(t, period_);
  return std::span<const Entry>(values_).subspan(tm * dim_, dim_);
}

FpVec BSequenceTable::vec(std::int64_t t) const {
  const auto s = at(t);
  return FpVec(p_, std::vector<Entry>(s.begin(), s.end()));
}

FpMatrix collision_window_matrix(const FpPoly& f, const FpVec& b, std::int64_t t) {
  const auto r = b.size();
  const auto n = r + 1;
  std::vector<Entry> e(n * n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = 1;
    const FpVec col = b_sequence(f, b, t + static_cast<std::int64_t>(c));
    for (std::size_t row = 0; row < r; ++row) e[(row + 1) * n + c] = col[row];
  }
  return FpMatrix(f.prime(), n, std::move(e));
}

FpVec parse_vec(std::string_view text, Prime p) {
  std::vector<Entry> entries;
  for (auto tok : split(text, ',')) entries.push_back(parse_entry(tok, p, text));
  return FpVec(p, std::move(entries));
}

std::string to_string(const FpVec& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(v[k]);
  }
  return out;
}

FpMatrix parse_matrix(std::string_view text, Prime p) {
  std::vector<Entry> entries;
  const auto rows = split(text, ';');
  for (auto row : rows) {
    const auto cols = split(row, ',');
    if (cols.size() != rows.size()) {
      throw Error("matrix text '" + std::string(text) + "' is not square");
    }
    for (auto tok : cols) entries.push_back(parse_entry(tok, p, text));
  }
  return FpMatrix(p, rows.size(), std::move(entries));
}

std::string to_string(const FpMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out += ',';
      out += std::to_string(m.at(i, j));
    }
  }
  return out;
}

}  // namespace hopdisc
