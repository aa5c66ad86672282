#pragma once

/**
 * @file ring.hpp
 * @brief Exact truncated multivariate polynomials over the rationals.
 *
 * Every symbolic object in the library is a Poly: a finite sum of rational
 * multiples of monomials in the symbols of a VarTable. Each symbol carries a
 * class which controls truncation:
 *
 *  - the single `lambda` symbol grades by order in the argument function
 *    and is truncated at `Caps::lambda`;
 *  - the optional `epsilon` symbol is square-zero;
 *  - `q` covectors and `p` momenta are truncated in total degree.
 *
 * Truncation is applied eagerly after every arithmetic step, so the ring laws
 * hold exactly modulo the caps.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace thickmorph {

using Scalar = mpq_class;

/// Thrown on API misuse: mismatched rings, unknown symbols, bad indices.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an order or degree argument exceeds the available range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

enum class SymbolClass : std::uint8_t { x, y, q, p, lambda, epsilon, param };

struct Symbol {
  std::string name;
  SymbolClass cls;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

inline constexpr std::size_t kMaxSymbols = 32;
inline constexpr unsigned kUnbounded = std::numeric_limits<unsigned>::max();

/// Ordered symbol table. The order fixes the canonical monomial ordering.
class VarTable {
 public:
  VarTable() = default;

  explicit VarTable(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() > kMaxSymbols) {
      throw UsageError("VarTable: at most " + std::to_string(kMaxSymbols) + " symbols supported");
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const auto& s = symbols_[i];
      if (!valid_name(s.name)) throw UsageError("VarTable: invalid symbol name '" + s.name + "'");
      if (!by_name_.emplace(s.name, i).second) {
        throw UsageError("VarTable: duplicate symbol '" + s.name + "'");
      }
      if (s.cls == SymbolClass::lambda) {
        if (lambda_) throw UsageError("VarTable: more than one lambda symbol");
        lambda_ = i;
      }
      if (s.cls == SymbolClass::epsilon) {
        if (epsilon_) throw UsageError("VarTable: more than one epsilon symbol");
        epsilon_ = i;
      }
    }
    if (!lambda_) throw UsageError("VarTable: exactly one lambda symbol is required");
  }

  static bool valid_name(const std::string& n) {
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0]))) return false;
    return std::all_of(n.begin(), n.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw UsageError("unknown symbol '" + name + "'");
  }

  std::size_t lambda() const noexcept { return *lambda_; }
  std::optional<std::size_t> epsilon() const noexcept { return epsilon_; }

  std::vector<std::size_t> of_class(SymbolClass c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].cls == c) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::map<std::string, std::size_t> by_name_;
  std::optional<std::size_t> lambda_;
  std::optional<std::size_t> epsilon_;
};

/// Truncation caps. `kUnbounded` disables a cap.
struct Caps {
  unsigned lambda = kUnbounded;
  unsigned q = kUnbounded;
  unsigned p = kUnbounded;
  friend bool operator==(const Caps&, const Caps&) = default;
};

/// A symbol table together with truncation caps; cheap to copy.
class Ring {
 public:
  Ring() = default;
  Ring(std::shared_ptr<const VarTable> vars, Caps caps = {}) : vars_(std::move(vars)), caps_(caps) {
    if (!vars_) throw UsageError("Ring: null VarTable");
  }

  const VarTable& vars() const { return *vars_; }
  const std::shared_ptr<const VarTable>& vars_ptr() const noexcept { return vars_; }
  const Caps& caps() const noexcept { return caps_; }

  Ring with_caps(Caps c) const { return Ring(vars_, c); }
  Ring with_lambda_cap(unsigned k) const {
    Caps c = caps_;
    c.lambda = k;
    return Ring(vars_, c);
  }

  bool same_table(const Ring& o) const {
    return vars_ == o.vars_ || (vars_ && o.vars_ && *vars_ == *o.vars_);
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.same_table(b) && a.caps_ == b.caps_; }

 private:
  std::shared_ptr<const VarTable> vars_;
  Caps caps_;
};

/// Dense exponent vector, one slot per VarTable symbol.
struct Monomial {
  std::array<std::uint16_t, kMaxSymbols> e{};

  std::uint16_t operator[](std::size_t i) const { return e[i]; }
  std::uint16_t& operator[](std::size_t i) { return e[i]; }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      unsigned s = unsigned(e[i]) + o.e[i];
      if (s > std::numeric_limits<std::uint16_t>::max()) throw RangeError("Monomial: exponent overflow");
      r.e[i] = static_cast<std::uint16_t>(s);
    }
    return r;
  }

  bool is_one() const {
    return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::array<std::uint64_t, kMaxSymbols / 4> w;
    std::memcpy(w.data(), m.e.data(), sizeof w);
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto v : w) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

struct Term {
  Monomial mono;
  Scalar coeff;
};

namespace detail {

/// Per-class degree data needed to apply the caps to a monomial.
struct Grading {
  unsigned lambda_index = 0;
  std::optional<std::size_t> epsilon_index;
  std::vector<std::size_t> q_indices;
  std::vector<std::size_t> p_indices;

  explicit Grading(const VarTable& v)
      : lambda_index(static_cast<unsigned>(v.lambda())),
        epsilon_index(v.epsilon()),
        q_indices(v.of_class(SymbolClass::q)),
        p_indices(v.of_class(SymbolClass::p)) {}

  bool admissible(const Monomial& m, const Caps& c) const {
    if (epsilon_index && m[*epsilon_index] > 1) return false;
    if (c.lambda != kUnbounded && m[lambda_index] > c.lambda) return false;
    if (c.q != kUnbounded && degree(m, q_indices) > c.q) return false;
    if (c.p != kUnbounded && degree(m, p_indices) > c.p) return false;
    return true;
  }

  /// Graded degrees of one monomial, for cheap pairwise cap tests.
  struct Degrees {
    unsigned lambda, epsilon, q, p;
  };

  Degrees degrees(const Monomial& m) const {
    return {m[lambda_index], epsilon_index ? unsigned(m[*epsilon_index]) : 0U, degree(m, q_indices),
            degree(m, p_indices)};
  }

  static bool admissible_sum(const Degrees& a, const Degrees& b, const Caps& c) {
    if (a.epsilon + b.epsilon > 1) return false;
    if (c.lambda != kUnbounded && a.lambda + b.lambda > c.lambda) return false;
    if (c.q != kUnbounded && a.q + b.q > c.q) return false;
    if (c.p != kUnbounded && a.p + b.p > c.p) return false;
    return true;
  }

  static unsigned degree(const Monomial& m, const std::vector<std::size_t>& idx) {
    unsigned d = 0;
    for (auto i : idx) d += m[i];
    return d;
  }
};

}  // namespace detail

/**
 * Immutable truncated polynomial. Terms are kept sorted ascending by
 * exponent vector with no zero coefficients, so structural equality is
 * mathematical equality.
 */
class Poly {
 public:
  Poly() = default;
  explicit Poly(Ring ring) : ring_(std::move(ring)) {}

  static Poly constant(const Ring& ring, const Scalar& c) {
    Poly r(ring);
    if (c != 0) r.terms_.push_back({Monomial{}, c});
    return r;
  }

  static Poly variable(const Ring& ring, std::size_t index, unsigned power = 1) {
    if (index >= ring.vars().size()) throw UsageError("Poly::variable: index out of range");
    Monomial m;
    m[index] = static_cast<std::uint16_t>(power);
    return monomial(ring, m, Scalar(1));
  }

  static Poly variable(const Ring& ring, const std::string& name, unsigned power = 1) {
    return variable(ring, ring.vars().index(name), power);
  }

  static Poly monomial(const Ring& ring, const Monomial& m, const Scalar& c) {
    Poly r(ring);
    if (c != 0 && detail::Grading(ring.vars()).admissible(m, ring.caps())) r.terms_.push_back({m, c});
    return r;
  }

  /// Builds a Poly from arbitrary terms: merges duplicates, drops zeros, applies caps.
  static Poly from_terms(const Ring& ring, std::vector<Term> terms) {
    Poly r(ring);
    detail::Grading gr(ring.vars());
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    for (auto& t : terms) {
      if (!gr.admissible(t.mono, ring.caps())) continue;
      if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
        r.terms_.back().coeff += t.coeff;
        if (r.terms_.back().coeff == 0) r.terms_.pop_back();
      } else if (t.coeff != 0) {
        r.terms_.push_back(std::move(t));
      }
    }
    return r;
  }

  const Ring& ring() const noexcept { return ring_; }
  const VarTable& vars() const { return ring_.vars(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
  }

  /// Constant term (coefficient of the unit monomial).
  Scalar constant_term() const {
    if (!terms_.empty() && terms_.front().mono.is_one()) return terms_.front().coeff;
    return Scalar(0);
  }

  Scalar coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& k) { return t.mono < k; });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return Scalar(0);
  }

  /// Highest exponent of one symbol.
  unsigned degree_in(std::size_t index) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[index]);
    return d;
  }

  /// Highest total degree over a set of symbols.
  unsigned degree_in(std::span<const std::size_t> indices) const {
    unsigned d = 0;
    for (const auto& t : terms_) {
      unsigned s = 0;
      for (auto i : indices) s += t.mono[i];
      d = std::max(d, s);
    }
    return d;
  }

  /// True when every symbol occurring belongs to one of `allowed`.
  bool only_classes(std::initializer_list<SymbolClass> allowed) const {
    const auto& v = vars();
    for (const auto& t : terms_) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (t.mono[i] == 0) continue;
        if (std::find(allowed.begin(), allowed.end(), v[i].cls) == allowed.end()) return false;
      }
    }
    return true;
  }

  /// Re-expresses this Poly in another ring over the same table (re-truncating).
  Poly in_ring(const Ring& target) const {
    if (!ring_.same_table(target)) throw UsageError("Poly::in_ring: different VarTable");
    if (ring_.caps() == target.caps()) {
      Poly r = *this;
      r.ring_ = target;
      return r;
    }
    Poly r(target);
    detail::Grading gr(target.vars());
    for (const auto& t : terms_) {
      if (gr.admissible(t.mono, target.caps())) r.terms_.push_back(t);
    }
    return r;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    Poly r(a.ring_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.is_constant()) return b * a.constant_term();
    if (b.is_constant()) return a * b.constant_term();

    detail::Grading gr(a.vars());
    const Caps& caps = a.ring_.caps();
    using Degrees = detail::Grading::Degrees;
    std::vector<Degrees> da;
    da.reserve(a.size());
    for (const auto& t : a.terms_) da.push_back(gr.degrees(t.mono));
    // b's terms by ascending lambda degree, so the inner loop can stop at the cap.
    std::vector<std::pair<Degrees, const Term*>> sb;
    sb.reserve(b.size());
    for (const auto& t : b.terms_) sb.push_back({gr.degrees(t.mono), &t});
    std::stable_sort(sb.begin(), sb.end(), [](const auto& x, const auto& y) { return x.first.lambda < y.first.lambda; });

    std::unordered_map<Monomial, Scalar, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1U << 16));
    Scalar prod;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      const auto& ta = a.terms_[i];
      for (const auto& [db, tb] : sb) {
        if (caps.lambda != kUnbounded && da[i].lambda + db.lambda > caps.lambda) break;
        if (!detail::Grading::admissible_sum(da[i], db, caps)) continue;
        Monomial m = ta.mono * tb->mono;
        prod = ta.coeff * tb->coeff;
        auto [it, inserted] = acc.try_emplace(m, prod);
        if (!inserted) it->second += prod;
      }
    }
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) {
      if (c != 0) r.terms_.push_back({m, std::move(c)});
    }
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.mono < y.mono; });
    return r;
  }

  friend Poly operator*(const Poly& a, const Scalar& c) {
    Poly r(a.ring_);
    if (c == 0) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  friend Poly operator*(const Scalar& c, const Poly& a) { return a * c; }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned n) const {
    Poly result = constant(ring_, 1);
    Poly base = *this;
    while (n > 0) {
      if (n & 1U) result *= base;
      n >>= 1U;
      if (n > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (!a.ring_.same_table(b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
  }

 private:
  static void check_same(const Poly& a, const Poly& b) {
    if (!(a.ring_ == b.ring_)) {
      throw UsageError(a.ring_.same_table(b.ring_) ? "Poly: mismatched truncation caps"
                                                   : "Poly: mismatched VarTable");
    }
  }

  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    check_same(a, b);
    Poly r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->mono < ib->mono)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->mono < ia->mono) {
        r.terms_.push_back({ib->mono, subtract ? Scalar(-ib->coeff) : ib->coeff});
        ++ib;
      } else {
        Scalar c = subtract ? Scalar(ia->coeff - ib->coeff) : Scalar(ia->coeff + ib->coeff);
        if (c != 0) r.terms_.push_back({ia->mono, std::move(c)});
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  Ring ring_;
  std::vector<Term> terms_;

  friend Poly partial(const Poly&, std::size_t);
  friend Poly grade_component(const Poly&, unsigned);
  friend Poly epsilon_part(const Poly&);
  friend Poly epsilon_free(const Poly&);
};

inline Poly operator+(const Poly& a, const Scalar& c) { return a + Poly::constant(a.ring(), c); }
inline Poly operator-(const Poly& a, const Scalar& c) { return a - Poly::constant(a.ring(), c); }

// ---------------------------------------------------------------------------
// Calculus and projections
// ---------------------------------------------------------------------------

inline Poly partial(const Poly& a, std::size_t index) {
  if (index >= a.vars().size()) throw UsageError("partial: symbol index out of range");
  Poly r(a.ring());
  for (const auto& t : a.terms_) {
    auto e = t.mono[index];
    if (e == 0) continue;
    Term d{t.mono, t.coeff * e};
    d.mono[index] = static_cast<std::uint16_t>(e - 1);
    r.terms_.push_back(std::move(d));
  }
  // Lowering one exponent keeps relative order within fixed other exponents but
  // not globally, so re-sort.
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.mono < y.mono; });
  return r;
}

inline Poly partial(const Poly& a, const std::string& symbol) {
  auto i = a.vars().find(symbol);
  if (!i) throw UsageError("partial: unknown symbol '" + symbol + "'");
  return partial(a, *i);
}

/// Coefficient of lambda^k, with lambda removed.
inline Poly grade_component(const Poly& a, unsigned k) {
  if (a.ring().caps().lambda != kUnbounded && k > a.ring().caps().lambda) {
    throw RangeError("grade_component: order " + std::to_string(k) + " exceeds lambda cap " +
                     std::to_string(a.ring().caps().lambda));
  }
  const auto li = a.vars().lambda();
  Poly r(a.ring());
  for (const auto& t : a.terms_) {
    if (t.mono[li] != k) continue;
    Term c = t;
    c.mono[li] = 0;
    r.terms_.push_back(std::move(c));
  }
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.mono < y.mono; });
  return r;
}

/// Drops every term of lambda-degree above k (equality "mod lambda^(k+1)").
inline Poly truncate_lambda(const Poly& a, unsigned k) {
  Caps c = a.ring().caps();
  c.lambda = std::min(c.lambda, k);
  return a.in_ring(a.ring().with_caps(c)).in_ring(a.ring());
}

/// Coefficient of epsilon^1.
inline Poly epsilon_part(const Poly& a) {
  auto ei = a.vars().epsilon();
  if (!ei) throw UsageError("epsilon_part: VarTable has no epsilon symbol");
  Poly r(a.ring());
  for (const auto& t : a.terms_) {
    if (t.mono[*ei] != 1) continue;
    Term c = t;
    c.mono[*ei] = 0;
    r.terms_.push_back(std::move(c));
  }
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.mono < y.mono; });
  return r;
}

/// The epsilon^0 part.
inline Poly epsilon_free(const Poly& a) {
  auto ei = a.vars().epsilon();
  if (!ei) return a;
  Poly r(a.ring());
  for (const auto& t : a.terms_) {
    if (t.mono[*ei] == 0) r.terms_.push_back(t);
  }
  return r;
}

/// Multiplies by lambda^k (one order shift in the grading).
inline Poly lambda_shift(const Poly& a, unsigned k = 1) {
  return a * Poly::variable(a.ring(), a.vars().lambda(), k);
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

struct Binding {
  std::size_t index;
  Poly value;
};

/**
 * Simultaneous substitution of symbols by Polys. Terms sharing the same
 * exponents on the bound symbols are grouped, so each distinct product of
 * powers is formed once.
 */
inline Poly substitute(const Poly& a, std::span<const Binding> bindings) {
  const Ring& ring = a.ring();
  const std::size_t n = a.vars().size();
  std::vector<int> slot(n, -1);
  for (std::size_t b = 0; b < bindings.size(); ++b) {
    const auto& bd = bindings[b];
    if (bd.index >= n) throw UsageError("substitute: binding index out of range");
    if (!bd.value.ring().same_table(ring)) throw UsageError("substitute: binding over a different VarTable");
    if (slot[bd.index] != -1) throw UsageError("substitute: symbol bound twice");
    slot[bd.index] = static_cast<int>(b);
  }
  if (bindings.empty()) return a;

  std::map<Monomial, std::vector<Term>> groups;
  for (const auto& t : a.terms()) {
    Monomial bound;
    Monomial rest = t.mono;
    for (std::size_t i = 0; i < n; ++i) {
      if (slot[i] >= 0 && t.mono[i] > 0) {
        bound[i] = t.mono[i];
        rest[i] = 0;
      }
    }
    groups[bound].push_back({rest, t.coeff});
  }

  std::vector<Poly> values;
  values.reserve(bindings.size());
  for (const auto& bd : bindings) values.push_back(bd.value.in_ring(ring));
  std::vector<std::vector<Poly>> powers(bindings.size());
  auto power_of = [&](std::size_t b, unsigned e) -> const Poly& {
    auto& cache = powers[b];
    if (cache.empty()) cache.push_back(Poly::constant(ring, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * values[b]);
    return cache[e];
  };

  Poly result(ring);
  for (auto& [bound, rest_terms] : groups) {
    Poly factor = Poly::from_terms(ring, std::move(rest_terms));
    for (std::size_t i = 0; i < n && !factor.is_zero(); ++i) {
      if (bound[i] == 0) continue;
      factor *= power_of(static_cast<std::size_t>(slot[i]), bound[i]);
    }
    result += factor;
  }
  return result;
}

inline Poly substitute(const Poly& a, std::initializer_list<Binding> bindings) {
  std::vector<Binding> v(bindings);
  return substitute(a, std::span<const Binding>(v));
}

inline Poly substitute(const Poly& a, const std::vector<Binding>& bindings) {
  return substitute(a, std::span<const Binding>(bindings));
}

/**
 * Scalar c with b == c * a, when b is an exact rational multiple of a.
 * Returns nullopt when not proportional, or when a is zero and b is not.
 */
inline std::optional<Scalar> proportionality(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? std::optional<Scalar>(Scalar(0)) : std::nullopt;
  Scalar c = b.coefficient(a.terms().front().mono) / a.terms().front().coeff;
  if (a * c == b) return c;
  return std::nullopt;
}

}  // namespace thickmorph
