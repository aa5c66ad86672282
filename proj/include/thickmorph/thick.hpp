#pragma once

/**
 * @file thick.hpp
 * @brief Generating functions S(x,q) of thick morphisms and their pull-backs.
 *
 * A generating function is a polynomial in the target covector q whose
 * coefficients are functions of the source coordinates x:
 *
 *     S(x,q) = S_0(x) + S_1^a(x) q_a + S_2^{ab}(x) q_a q_b + ...
 *
 * with full (unordered) index summation over symmetric tensors S_k. The
 * pull-back of g(y) is g(y) + S(x,q) - y^a q_a evaluated on the stationary
 * point y^a = dS/dq_a, q_a = dg/dy^a, which is solved as a formal series in
 * the grading parameter lambda attached to g.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "thickmorph/parse.hpp"
#include "thickmorph/ring.hpp"

namespace thickmorph {

/// Sorted (non-decreasing) 0-based index tuple into a symmetric tensor.
using MultiIndex = std::vector<unsigned>;

/// Symmetric tensor stored on sorted multi-indices only.
using SymmetricTensor = std::map<MultiIndex, Poly>;

/// Number of distinct orderings of a multi-index: k! / prod(count_i!).
inline mpz_class multiplicity(const MultiIndex& idx) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), idx.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j < idx.size() && idx[j] == idx[i]) ++j;
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), j - i);
    r /= f;
    i = j;
  }
  return r;
}

/// All sorted multi-indices of length k over [0, n).
inline std::vector<MultiIndex> sorted_multi_indices(unsigned n, unsigned k) {
  std::vector<MultiIndex> out;
  MultiIndex cur;
  auto rec = [&](auto&& self, unsigned from) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (unsigned a = from; a < n; ++a) {
      cur.push_back(a);
      self(self, a);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/**
 * Coordinates of a chart pair M -> N sharing one VarTable.
 *
 * Symbols, in canonical order: x1..xm, y1..yn, q1..qn, p1..pm, qb1..qbn
 * (free covector values used to probe functionals on linear functions),
 * t1..t<probes> (free scalars for multilinear extraction), lambda, eps, and
 * any user parameters.
 */
class ChartPair {
 public:
  static constexpr unsigned kProbeSlots = 5;

  ChartPair(unsigned dim_M, unsigned dim_N, std::vector<std::string> params = {})
      : dim_M_(dim_M), dim_N_(dim_N), params_(std::move(params)) {
    if (dim_M == 0 || dim_N == 0) throw UsageError("ChartPair: dimensions must be positive");
    std::vector<Symbol> syms;
    auto add = [&](const std::string& base, unsigned count, SymbolClass cls) {
      for (unsigned i = 1; i <= count; ++i) syms.push_back({base + std::to_string(i), cls});
    };
    add("x", dim_M, SymbolClass::x);
    add("y", dim_N, SymbolClass::y);
    add("q", dim_N, SymbolClass::q);
    add("p", dim_M, SymbolClass::p);
    add("qb", dim_N, SymbolClass::param);
    add("t", kProbeSlots, SymbolClass::param);
    syms.push_back({"lambda", SymbolClass::lambda});
    syms.push_back({"eps", SymbolClass::epsilon});
    for (const auto& p : params_) syms.push_back({p, SymbolClass::param});
    vars_ = std::make_shared<const VarTable>(std::move(syms));
  }

  unsigned dim_M() const noexcept { return dim_M_; }
  unsigned dim_N() const noexcept { return dim_N_; }
  const std::vector<std::string>& params() const noexcept { return params_; }
  const VarTable& vars() const { return *vars_; }

  /// Ring with no caps.
  Ring base() const { return Ring(vars_); }
  /// Ring truncated at lambda^K.
  Ring ring(unsigned lambda_cap) const { return Ring(vars_, Caps{lambda_cap, kUnbounded, kUnbounded}); }

  std::size_t x(unsigned i) const { return check(i, dim_M_) + 0; }
  std::size_t y(unsigned a) const { return check(a, dim_N_) + dim_M_; }
  std::size_t q(unsigned a) const { return check(a, dim_N_) + dim_M_ + dim_N_; }
  std::size_t p(unsigned i) const { return check(i, dim_M_) + dim_M_ + 2 * dim_N_; }
  std::size_t qbar(unsigned a) const { return check(a, dim_N_) + 2 * dim_M_ + 2 * dim_N_; }
  std::size_t probe(unsigned i) const { return check(i, kProbeSlots) + 2 * dim_M_ + 3 * dim_N_; }
  std::size_t lambda() const { return vars_->lambda(); }
  std::size_t eps() const { return *vars_->epsilon(); }

  Poly lambda_poly(const Ring& r) const { return Poly::variable(r, lambda()); }
  Poly eps_poly(const Ring& r) const { return Poly::variable(r, eps()); }

  friend bool operator==(const ChartPair& a, const ChartPair& b) {
    return a.dim_M_ == b.dim_M_ && a.dim_N_ == b.dim_N_ && a.params_ == b.params_;
  }

 private:
  static std::size_t check(unsigned i, unsigned n) {
    if (i >= n) throw UsageError("ChartPair: coordinate index out of range");
    return i;
  }

  unsigned dim_M_;
  unsigned dim_N_;
  std::vector<std::string> params_;
  std::shared_ptr<const VarTable> vars_;
};

/// Formal map y^a(x, lambda), one component per target coordinate.
struct FormalMap {
  std::vector<Poly> components;

  friend bool operator==(const FormalMap&, const FormalMap&) = default;
};

/// Generating function S(x,q) as symmetric coefficient tensors S_0..S_Kq.
class GenFunction {
 public:
  GenFunction(ChartPair chart, unsigned max_q_degree)
      : chart_(std::move(chart)), tensors_(max_q_degree + 1) {}

  const ChartPair& chart() const noexcept { return chart_; }
  unsigned max_q_degree() const noexcept { return static_cast<unsigned>(tensors_.size() - 1); }
  const SymmetricTensor& tensor(unsigned k) const {
    if (k >= tensors_.size()) throw RangeError("GenFunction::tensor: degree above max_q_degree");
    return tensors_[k];
  }

  /// Entry S_k^{idx} for any index order (zero when absent).
  Poly at(MultiIndex idx) const {
    const unsigned k = static_cast<unsigned>(idx.size());
    if (k >= tensors_.size()) return Poly(chart_.base());
    std::sort(idx.begin(), idx.end());
    auto it = tensors_[k].find(idx);
    if (it == tensors_[k].end()) return Poly(chart_.base());
    return it->second;
  }

  /// Sets S_k^{idx}; idx may be in any order. Entries must depend only on x and parameters.
  void set(MultiIndex idx, const Poly& value) {
    const unsigned k = static_cast<unsigned>(idx.size());
    if (k >= tensors_.size()) throw RangeError("GenFunction::set: degree above max_q_degree");
    for (auto a : idx) {
      if (a >= chart_.dim_N()) throw UsageError("GenFunction::set: index out of range");
    }
    if (!value.ring().same_table(chart_.base())) throw UsageError("GenFunction::set: foreign VarTable");
    if (!value.only_classes({SymbolClass::x, SymbolClass::param})) {
      throw UsageError("GenFunction::set: coefficients may only involve x coordinates and parameters");
    }
    std::sort(idx.begin(), idx.end());
    Poly v = value.in_ring(chart_.base());
    if (v.is_zero()) {
      tensors_[k].erase(idx);
    } else {
      tensors_[k][idx] = std::move(v);
    }
  }

  /// The truncation S_0 + ... + S_k (q-degree at most k).
  GenFunction truncated(unsigned k) const {
    GenFunction r(chart_, std::min(k, max_q_degree()));
    for (unsigned d = 0; d <= r.max_q_degree(); ++d) r.tensors_[d] = tensors_[d];
    return r;
  }

  friend bool operator==(const GenFunction& a, const GenFunction& b) {
    if (!(a.chart_ == b.chart_)) return false;
    const auto n = std::max(a.tensors_.size(), b.tensors_.size());
    for (std::size_t k = 0; k < n; ++k) {
      static const SymmetricTensor empty;
      const auto& ta = k < a.tensors_.size() ? a.tensors_[k] : empty;
      const auto& tb = k < b.tensors_.size() ? b.tensors_[k] : empty;
      if (ta.size() != tb.size()) return false;
      for (auto ia = ta.begin(), ib = tb.begin(); ia != ta.end(); ++ia, ++ib) {
        if (ia->first != ib->first || !(ia->second == ib->second)) return false;
      }
    }
    return true;
  }

 private:
  ChartPair chart_;
  std::vector<SymmetricTensor> tensors_;
};

// ---------------------------------------------------------------------------
// Contraction and extraction
// ---------------------------------------------------------------------------

/// sum over sorted idx of multiplicity(idx) * T^{idx} * prod_j v[idx_j].
inline Poly contract(const SymmetricTensor& T, const std::vector<Poly>& v, const Ring& ring) {
  Poly acc(ring);
  for (const auto& [idx, coeff] : T) {
    Poly term = coeff.in_ring(ring) * Scalar(multiplicity(idx));
    for (auto a : idx) term *= v.at(a);
    acc += term;
  }
  return acc;
}

/// S as a Poly in (x, q).
inline Poly gen_as_poly(const GenFunction& S) {
  const auto& ch = S.chart();
  const Ring r = ch.base();
  std::vector<Poly> q;
  for (unsigned a = 0; a < ch.dim_N(); ++a) q.push_back(Poly::variable(r, ch.q(a)));
  Poly acc(r);
  for (unsigned k = 0; k <= S.max_q_degree(); ++k) acc += contract(S.tensor(k), q, r);
  return acc;
}

/**
 * Reads symmetric tensors off a Poly that is polynomial in the covector
 * symbols `covectors` (one per tensor index value): the coefficient of the
 * monomial w^alpha, divided by its multiplicity, is the tensor entry. Entry
 * k of the result is the degree-k tensor; the remaining symbols stay in the
 * entries.
 */
inline std::vector<SymmetricTensor> extract_tensors(const Poly& value, const std::vector<std::size_t>& covectors,
                                                    unsigned max_degree) {
  std::vector<std::map<MultiIndex, std::vector<Term>>> entries(max_degree + 1);
  for (const auto& t : value.terms()) {
    MultiIndex idx;
    Monomial rest = t.mono;
    for (unsigned a = 0; a < covectors.size(); ++a) {
      for (unsigned e = 0; e < t.mono[covectors[a]]; ++e) idx.push_back(a);
      rest[covectors[a]] = 0;
    }
    if (idx.size() > max_degree) throw RangeError("extract_tensors: covector degree above the requested maximum");
    entries[idx.size()][idx].push_back({rest, t.coeff / Scalar(multiplicity(idx))});
  }
  std::vector<SymmetricTensor> out(max_degree + 1);
  for (unsigned k = 0; k <= max_degree; ++k) {
    for (auto& [idx, terms] : entries[k]) out[k].emplace(idx, Poly::from_terms(value.ring(), std::move(terms)));
  }
  return out;
}

/// Generating function whose q-symbols are played by `covectors` in `value`.
inline GenFunction tensors_from_poly(const ChartPair& chart, const Poly& value, const std::vector<std::size_t>& covectors,
                                     unsigned max_q_degree) {
  if (covectors.size() != chart.dim_N()) throw UsageError("tensors_from_poly: need one covector symbol per index");
  GenFunction S(chart, max_q_degree);
  const auto tensors = extract_tensors(value.in_ring(chart.base()), covectors, max_q_degree);
  for (unsigned k = 0; k <= max_q_degree; ++k) {
    for (const auto& [idx, v] : tensors[k]) S.set(idx, v);
  }
  return S;
}

/// Inverse of gen_as_poly for a Poly in (x, q).
inline GenFunction gen_from_poly(const ChartPair& chart, const Poly& value, unsigned max_q_degree) {
  std::vector<std::size_t> qs;
  for (unsigned a = 0; a < chart.dim_N(); ++a) qs.push_back(chart.q(a));
  return tensors_from_poly(chart, value, qs, max_q_degree);
}

// ---------------------------------------------------------------------------
// Pull-back solver
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<Binding> y_bindings(const ChartPair& ch, const std::vector<Poly>& ys) {
  std::vector<Binding> b;
  for (unsigned a = 0; a < ch.dim_N(); ++a) b.push_back({ch.y(a), ys[a]});
  return b;
}

inline std::vector<Binding> q_bindings(const ChartPair& ch, const std::vector<Poly>& qs) {
  std::vector<Binding> b;
  for (unsigned a = 0; a < ch.dim_N(); ++a) b.push_back({ch.q(a), qs[a]});
  return b;
}

inline void require_function_on_N(const Poly& g, const char* who) {
  if (!g.only_classes({SymbolClass::y, SymbolClass::param, SymbolClass::lambda, SymbolClass::epsilon})) {
    throw UsageError(std::string(who) + ": argument must be a function of y (and parameters) only");
  }
}

inline std::vector<Poly> support_components(const GenFunction& S, const Ring& r) {
  std::vector<Poly> ys;
  for (unsigned a = 0; a < S.chart().dim_N(); ++a) ys.push_back(S.at({a}).in_ring(r));
  return ys;
}

/// q_a = dG/dy^a at y = ys.
inline std::vector<Poly> covector_along(const ChartPair& ch, const std::vector<Poly>& dG, const std::vector<Poly>& ys) {
  auto yb = y_bindings(ch, ys);
  std::vector<Poly> qs;
  for (const auto& d : dG) qs.push_back(substitute(d, yb));
  return qs;
}

}  // namespace detail

/**
 * Solves y^a = dS/dq_a at q_a = dG/dy^a(y) for a graded argument G, i.e. a
 * function of y already carrying positive lambda/eps order. Starting from
 * S_1(x), each pass fixes one further order; K + 1 passes make the result
 * exact through lambda^K including first-order eps terms.
 */
inline FormalMap solve_y_map_graded(const GenFunction& S, const Poly& G, unsigned K) {
  detail::require_function_on_N(G, "solve_y_map");
  const auto& ch = S.chart();
  const Ring r = ch.ring(K);
  const Poly Sq = gen_as_poly(S).in_ring(r);
  const Poly Gr = G.in_ring(r);
  std::vector<Poly> dS, dG;
  for (unsigned a = 0; a < ch.dim_N(); ++a) {
    dS.push_back(partial(Sq, ch.q(a)));
    dG.push_back(partial(Gr, ch.y(a)));
  }
  std::vector<Poly> ys = detail::support_components(S, r);
  for (unsigned pass = 0; pass <= K; ++pass) {
    auto qb = detail::q_bindings(ch, detail::covector_along(ch, dG, ys));
    std::vector<Poly> next;
    for (const auto& d : dS) next.push_back(substitute(d, qb));
    if (next == ys) break;
    ys = std::move(next);
  }
  return FormalMap{std::move(ys)};
}

/// Formal map for g with lambda attached: y(x, lambda*g) mod lambda^(K+1).
inline FormalMap solve_y_map(const GenFunction& S, const Poly& g, unsigned K) {
  const Ring r = S.chart().ring(K);
  return solve_y_map_graded(S, lambda_shift(g.in_ring(r)), K);
}

/// Pull-back of a graded argument G (see solve_y_map_graded).
inline Poly pullback_graded(const GenFunction& S, const Poly& G, unsigned K) {
  const auto& ch = S.chart();
  const Ring r = ch.ring(K);
  const Poly Gr = G.in_ring(r);
  const FormalMap ym = solve_y_map_graded(S, Gr, K);

  std::vector<Poly> dG;
  for (unsigned a = 0; a < ch.dim_N(); ++a) dG.push_back(partial(Gr, ch.y(a)));
  const auto qs = detail::covector_along(ch, dG, ym.components);

  // S - y^a q_a on the stationary point equals sum_k (1 - k) S_k(q).
  std::vector<Poly> qv;
  for (unsigned a = 0; a < ch.dim_N(); ++a) qv.push_back(Poly::variable(r, ch.q(a)));
  Poly legendre(r);
  for (unsigned k = 0; k <= S.max_q_degree(); ++k) {
    if (k == 1) continue;
    legendre += contract(S.tensor(k), qv, r) * Scalar(1 - static_cast<int>(k));
  }
  return substitute(Gr, detail::y_bindings(ch, ym.components)) + substitute(legendre, detail::q_bindings(ch, qs));
}

/// Non-linear pull-back of g: sum_k lambda^k [Phi_S^*(g)]_k mod lambda^(K+1).
inline Poly pullback(const GenFunction& S, const Poly& g, unsigned K) {
  detail::require_function_on_N(g, "pullback");
  const Ring r = S.chart().ring(K);
  return pullback_graded(S, lambda_shift(g.in_ring(r)), K);
}

// ---------------------------------------------------------------------------
// Low-order closed forms
// ---------------------------------------------------------------------------

/// Jets g*, g*_a, g*_ab of g along the support map y = S_1(x).
struct Jets {
  Poly value;
  std::vector<Poly> first;
  std::vector<std::vector<Poly>> second;
};

inline Jets jets_at_support(const GenFunction& S, const Poly& g, const Ring& r) {
  const auto& ch = S.chart();
  const unsigned n = ch.dim_N();
  const auto yb = detail::y_bindings(ch, detail::support_components(S, r));
  const Poly gr = g.in_ring(r);
  Jets j{substitute(gr, yb), {}, std::vector<std::vector<Poly>>(n)};
  for (unsigned a = 0; a < n; ++a) {
    Poly da = partial(gr, ch.y(a));
    j.first.push_back(substitute(da, yb));
    for (unsigned b = 0; b < n; ++b) j.second[a].push_back(substitute(partial(da, ch.y(b)), yb));
  }
  return j;
}

/**
 * y^a = S_1^a + lambda 2 S_2^{ab} g*_b
 *       + lambda^2 (3 S_3^{abc} g*_b g*_c + 4 S_2^{ab} S_2^{cd} g*_{bc} g*_d).
 */
inline FormalMap closed_form_y2(const GenFunction& S, const Poly& g) {
  detail::require_function_on_N(g, "closed_form_y2");
  const auto& ch = S.chart();
  const unsigned n = ch.dim_N();
  const Ring r = ch.ring(2);
  const Poly lam = ch.lambda_poly(r);
  const Jets j = jets_at_support(S, g, r);
  FormalMap out;
  for (unsigned a = 0; a < n; ++a) {
    Poly o1(r), o2(r);
    for (unsigned b = 0; b < n; ++b) {
      o1 += S.at({a, b}).in_ring(r) * j.first[b] * Scalar(2);
      for (unsigned c = 0; c < n; ++c) {
        o2 += S.at({a, b, c}).in_ring(r) * j.first[b] * j.first[c] * Scalar(3);
        for (unsigned d = 0; d < n; ++d) {
          o2 += S.at({a, b}).in_ring(r) * S.at({c, d}).in_ring(r) * j.second[b][c] * j.first[d] * Scalar(4);
        }
      }
    }
    out.components.push_back(S.at({a}).in_ring(r) + lam * o1 + lam * lam * o2);
  }
  return out;
}

/**
 * Phi_S^*(g) = S_0 + lambda g* + lambda^2 S_2^{ab} g*_a g*_b
 *            + lambda^3 (S_3^{abc} g*_a g*_b g*_c + 2 S_2^{ac} S_2^{bd} g*_{ab} g*_c g*_d).
 */
inline Poly closed_form_pullback3(const GenFunction& S, const Poly& g) {
  detail::require_function_on_N(g, "closed_form_pullback3");
  const auto& ch = S.chart();
  const unsigned n = ch.dim_N();
  const Ring r = ch.ring(3);
  const Poly lam = ch.lambda_poly(r);
  const Jets j = jets_at_support(S, g, r);
  Poly o2(r), o3(r);
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = 0; b < n; ++b) {
      o2 += S.at({a, b}).in_ring(r) * j.first[a] * j.first[b];
      for (unsigned c = 0; c < n; ++c) {
        o3 += S.at({a, b, c}).in_ring(r) * j.first[a] * j.first[b] * j.first[c];
        for (unsigned d = 0; d < n; ++d) {
          o3 += S.at({a, c}).in_ring(r) * S.at({b, d}).in_ring(r) * j.second[a][b] * j.first[c] * j.first[d] *
                Scalar(2);
        }
      }
    }
  }
  return S.at({}).in_ring(r) + lam * j.value + lam.pow(2) * o2 + lam.pow(3) * o3;
}

// ---------------------------------------------------------------------------
// Fixture format
// ---------------------------------------------------------------------------

/// Extra evaluator term c(x) * G(S_1(x))^power attached to a fixture.
struct Perturbation {
  unsigned power;
  Poly coefficient;
};

struct GenFunctionFile {
  GenFunction S;
  std::vector<Perturbation> perturbations;
};

/**
 * Parses a generating-function fixture:
 *
 *     dims m n Kq
 *     params s t            # optional, before any entry
 *     k a1 .. ak <expr>     # S_k^{a1..ak}, sorted 1-based indices
 *     perturb m <expr>      # optional non-thick evaluator term
 */
inline GenFunctionFile parse_genfunction(std::string_view content, const std::string& name = "<genfunction>") {
  auto lines = expression_lines(content);
  auto fail = [&](const ExprLine& l, std::size_t off, const std::string& what) -> FixtureError {
    return FixtureError(name, l.line, l.column + off, what);
  };
  if (lines.empty()) throw FixtureError(name, 1, 0, "missing 'dims' header");

  std::istringstream head(lines[0].text);
  std::string kw;
  long m = 0, n = 0, kq = 0;
  if (!(head >> kw >> m >> n >> kq) || kw != "dims" || m <= 0 || n <= 0 || kq < 0 || !(head >> std::ws).eof()) {
    throw fail(lines[0], 0, "expected header 'dims m n Kq'");
  }
  std::size_t cursor = 1;
  std::vector<std::string> params;
  if (cursor < lines.size() && lines[cursor].text.rfind("params", 0) == 0) {
    std::istringstream ps(lines[cursor].text.substr(6));
    std::string p;
    while (ps >> p) params.push_back(p);
    ++cursor;
  }
  ChartPair chart(static_cast<unsigned>(m), static_cast<unsigned>(n), params);
  GenFunctionFile out{GenFunction(chart, static_cast<unsigned>(kq)), {}};

  for (; cursor < lines.size(); ++cursor) {
    const auto& l = lines[cursor];
    const std::string& s = l.text;
    std::size_t pos = 0;
    auto next_token = [&]() -> std::pair<std::size_t, std::string> {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      std::size_t b = pos;
      while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      return {b, s.substr(b, pos - b)};
    };
    auto to_uint = [&](const std::pair<std::size_t, std::string>& tok) -> unsigned {
      if (tok.second.empty() ||
          !std::all_of(tok.second.begin(), tok.second.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        throw fail(l, tok.first, "expected unsigned integer");
      }
      return static_cast<unsigned>(std::stoul(tok.second));
    };
    auto parse_rest = [&]() -> Poly {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      try {
        return parse_poly(std::string_view(s).substr(pos), chart.base());
      } catch (const ParseError& e) {
        throw fail(l, pos + e.offset(), e.what());
      }
    };

    auto first = next_token();
    if (first.second == "perturb") {
      unsigned power = to_uint(next_token());
      Poly c = parse_rest();
      if (!c.only_classes({SymbolClass::x, SymbolClass::param})) throw fail(l, 0, "perturbation coefficient must depend on x only");
      out.perturbations.push_back({power, c});
      continue;
    }
    unsigned k = to_uint(first);
    if (k > static_cast<unsigned>(kq)) throw fail(l, first.first, "q-degree above declared Kq");
    MultiIndex idx;
    for (unsigned i = 0; i < k; ++i) {
      auto tok = next_token();
      unsigned a = to_uint(tok);
      if (a < 1 || a > static_cast<unsigned>(n)) throw fail(l, tok.first, "index out of range");
      if (!idx.empty() && a - 1 < idx.back()) throw fail(l, tok.first, "indices must be sorted");
      idx.push_back(a - 1);
    }
    Poly v = parse_rest();
    if (!v.only_classes({SymbolClass::x, SymbolClass::param})) throw fail(l, 0, "tensor entries must depend on x only");
    out.S.set(idx, out.S.at(idx) + v);
  }
  return out;
}

/// Serializes S in the fixture format (entries in tensor order).
inline std::string render_genfunction(const GenFunction& S) {
  const auto& ch = S.chart();
  std::string out = "dims " + std::to_string(ch.dim_M()) + " " + std::to_string(ch.dim_N()) + " " +
                    std::to_string(S.max_q_degree()) + "\n";
  if (!ch.params().empty()) {
    out += "params";
    for (const auto& p : ch.params()) out += " " + p;
    out += "\n";
  }
  for (unsigned k = 0; k <= S.max_q_degree(); ++k) {
    for (const auto& [idx, v] : S.tensor(k)) {
      out += std::to_string(k);
      for (auto a : idx) out += " " + std::to_string(a + 1);
      out += " " + render_canonical(v) + "\n";
    }
  }
  return out;
}

}  // namespace thickmorph
