#pragma once

/**
 * @file functional.hpp
 * @brief Formal functionals L(x, g) as evaluators, and the two directions
 *        between generating functions and non-linear homomorphisms.
 *
 * A Functional maps a graded argument G (a function of y carrying lambda,
 * and possibly eps and parameters) to a Poly in x, lambda truncated at
 * lambda^K. Evaluating at G = lambda * g places the order-k-in-g part of
 * L(g) at lambda^k.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thickmorph/ring.hpp"
#include "thickmorph/thick.hpp"

namespace thickmorph {

/// A precondition of an operation was checked and found violated.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& what, unsigned order)
      : std::runtime_error(what + " (first disagreement at order " + std::to_string(order) + ")"), order_(order) {}
  unsigned order() const noexcept { return order_; }

 private:
  unsigned order_;
};

enum class Provenance { thick, composed };

class Functional {
 public:
  using Evaluator = std::function<Poly(const Poly& graded_argument, const Ring& ring)>;

  Functional(ChartPair chart, unsigned order_cap, Evaluator ev, Provenance prov = Provenance::composed,
             std::optional<GenFunction> source = std::nullopt)
      : chart_(std::move(chart)), cap_(order_cap), ev_(std::move(ev)), prov_(prov), source_(std::move(source)) {}

  /// Phi_S^* truncated at lambda^K.
  static Functional thick(const GenFunction& S, unsigned K) {
    return Functional(
        S.chart(), K, [S, K](const Poly& G, const Ring&) { return pullback_graded(S, G, K); }, Provenance::thick, S);
  }

  const ChartPair& chart() const noexcept { return chart_; }
  unsigned order_cap() const noexcept { return cap_; }
  Provenance provenance() const noexcept { return prov_; }
  /// Generating function for thick-provenance functionals.
  const std::optional<GenFunction>& source() const noexcept { return source_; }
  Ring ring() const { return chart_.ring(cap_); }

  Poly apply_graded(const Poly& G) const {
    const Ring r = ring();
    return ev_(G.in_ring(r), r).in_ring(r);
  }

  /// The same evaluator read at a lower order cap.
  Functional with_order_cap(unsigned K) const {
    if (K > cap_) throw RangeError("Functional::with_order_cap: cannot raise the order cap");
    auto inner = *this;
    return Functional(
        chart_, K, [inner](const Poly& G, const Ring& r) { return inner.apply_graded(G).in_ring(r); }, prov_,
        source_ ? std::optional<GenFunction>(*source_) : std::nullopt);
  }

 private:
  ChartPair chart_;
  unsigned cap_;
  Evaluator ev_;
  Provenance prov_;
  std::optional<GenFunction> source_;
};

// ---------------------------------------------------------------------------
// Hand-built functionals
// ---------------------------------------------------------------------------

/// (d^alpha G / dy^alpha)(point(x)) for a y-derivative multi-index alpha.
struct PointForm {
  MultiIndex derivative;
  std::vector<Poly> point;  // one Poly in x per target coordinate
};

/// coefficient(x) * prod_j factors_j(G); homogeneous of degree factors.size().
struct ProductTerm {
  Poly coefficient;
  std::vector<PointForm> factors;
};

inline Poly apply_point_form(const ChartPair& ch, const PointForm& f, const Poly& G) {
  Poly d = G;
  for (auto a : f.derivative) d = partial(d, ch.y(a));
  std::vector<Binding> b;
  for (unsigned a = 0; a < ch.dim_N(); ++a) b.push_back({ch.y(a), f.point.at(a)});
  return substitute(d, b);
}

/// Sum of products of point evaluations of derivatives of G.
inline Functional product_functional(const ChartPair& chart, unsigned K, std::vector<ProductTerm> terms) {
  return Functional(chart, K, [chart, terms = std::move(terms)](const Poly& G, const Ring& r) {
    Poly acc(r);
    for (const auto& t : terms) {
      Poly term = t.coefficient.in_ring(r);
      for (const auto& f : t.factors) term *= apply_point_form(chart, f, G);
      acc += term;
    }
    return acc;
  });
}

/// L + other, evaluated pointwise.
inline Functional sum(const Functional& a, const Functional& b) {
  if (!(a.chart() == b.chart())) throw UsageError("sum: functionals on different charts");
  const unsigned K = std::min(a.order_cap(), b.order_cap());
  return Functional(a.chart(), K, [a, b](const Poly& G, const Ring& r) {
    return a.apply_graded(G).in_ring(r) + b.apply_graded(G).in_ring(r);
  });
}

/// Phi_S^* plus the fixture perturbations c(x) * G(S_1(x))^m.
inline Functional perturbed_thick(const GenFunction& S, unsigned K, const std::vector<Perturbation>& perturbations) {
  Functional base = Functional::thick(S, K);
  if (perturbations.empty()) return base;
  std::vector<Poly> support;
  for (unsigned a = 0; a < S.chart().dim_N(); ++a) support.push_back(S.at({a}));
  std::vector<ProductTerm> terms;
  for (const auto& p : perturbations) {
    terms.push_back({p.coefficient, std::vector<PointForm>(p.power, PointForm{{}, support})});
  }
  return sum(base, product_functional(S.chart(), K, std::move(terms)));
}

// ---------------------------------------------------------------------------
// Evaluation and differentials
// ---------------------------------------------------------------------------

inline void require_on_N(const Poly& g, const char* who) {
  if (!g.only_classes({SymbolClass::y, SymbolClass::param})) {
    throw UsageError(std::string(who) + ": argument must be a function of y (and parameters) only");
  }
}

/// L(g) with order-k-in-g components at lambda^k.
inline Poly evaluate(const Functional& L, const Poly& g) {
  require_on_N(g, "evaluate");
  const Ring r = L.ring();
  return L.apply_graded(lambda_shift(g.in_ring(r)));
}

/**
 * Coefficient of eps in L(lambda g + eps h). Since eps is symbolic this is
 * exact through lambda^K; for a thick functional it equals h(y(x, g)).
 */
inline Poly differential(const Functional& L, const Poly& g, const Poly& h) {
  require_on_N(g, "differential");
  require_on_N(h, "differential");
  const Ring r = L.ring();
  const Poly G = lambda_shift(g.in_ring(r)) + L.chart().eps_poly(r) * h.in_ring(r);
  return epsilon_part(L.apply_graded(G));
}

struct CheckResult {
  bool holds = false;
  Poly witness;  // difference of the two sides, zero when holds

  explicit operator bool() const noexcept { return holds; }
};

/// d L_g(h1 h2) == d L_g(h1) * d L_g(h2) through lambda^K.
inline CheckResult homomorphism_check(const Functional& L, const Poly& g, const Poly& h1, const Poly& h2, unsigned K) {
  if (K > L.order_cap()) throw RangeError("homomorphism_check: K exceeds the functional's order cap");
  const Ring r = L.chart().ring(K);
  Poly lhs = differential(L, g, h1 * h2).in_ring(r);
  Poly rhs = differential(L, g, h1).in_ring(r) * differential(L, g, h2).in_ring(r);
  Poly diff = lhs - rhs;
  return {diff.is_zero(), diff};
}

/// K_0^a(x) = [L(y^a)]_1.
inline std::vector<Poly> support_map(const Functional& L) {
  if (L.order_cap() < 1) throw RangeError("support_map: order cap must be at least 1");
  const auto& ch = L.chart();
  std::vector<Poly> out;
  for (unsigned a = 0; a < ch.dim_N(); ++a) {
    out.push_back(grade_component(evaluate(L, Poly::variable(ch.base(), ch.y(a))), 1).in_ring(ch.base()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polarisation
// ---------------------------------------------------------------------------

/**
 * Symmetric k-linear form of L_k by inclusion-exclusion:
 *   (1/k!) sum over subsets I of {1..k} of (-1)^(k-|I|) [L(sum_{i in I} g_i)]_k.
 * The empty subset contributes [L(0)]_k = 0 for k >= 1.
 */
inline Poly polarise(const Functional& L, unsigned k, const std::vector<Poly>& gs) {
  if (k < 1 || k > L.order_cap()) throw RangeError("polarise: k must satisfy 1 <= k <= K");
  if (gs.size() != k) throw UsageError("polarise: need exactly k functions");
  const Ring base = L.chart().base();
  Poly acc(base);
  for (unsigned mask = 0; mask < (1U << k); ++mask) {
    Poly g(base);
    unsigned n = 0;
    for (unsigned i = 0; i < k; ++i) {
      if (mask & (1U << i)) {
        g += gs[i].in_ring(base);
        ++n;
      }
    }
    Poly v = grade_component(evaluate(L, g), k).in_ring(base);
    acc += ((k - n) % 2 == 0) ? v : -v;
  }
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), k);
  return acc * Scalar(Scalar(1) / Scalar(fact));
}

/// The same form read as the coefficient of t_1...t_k in [L(sum t_i g_i)]_k, over k!.
inline Poly polarise_by_extraction(const Functional& L, unsigned k, const std::vector<Poly>& gs) {
  if (k < 1 || k > L.order_cap()) throw RangeError("polarise_by_extraction: k must satisfy 1 <= k <= K");
  if (k > ChartPair::kProbeSlots) throw RangeError("polarise_by_extraction: not enough probe symbols");
  if (gs.size() != k) throw UsageError("polarise_by_extraction: need exactly k functions");
  const auto& ch = L.chart();
  const Ring base = ch.base();
  Poly g(base);
  for (unsigned i = 0; i < k; ++i) g += Poly::variable(base, ch.probe(i)) * gs[i].in_ring(base);
  Poly v = grade_component(evaluate(L, g), k).in_ring(base);
  std::vector<Term> picked;
  for (const auto& t : v.terms()) {
    bool square_free = true;
    for (unsigned i = 0; i < k; ++i) square_free = square_free && t.mono[ch.probe(i)] == 1;
    if (!square_free) continue;
    Term c = t;
    for (unsigned i = 0; i < k; ++i) c.mono[ch.probe(i)] = 0;
    picked.push_back(std::move(c));
  }
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), k);
  return Poly::from_terms(base, std::move(picked)) * Scalar(Scalar(1) / Scalar(fact));
}

// ---------------------------------------------------------------------------
// Associated generating function and the round trip
// ---------------------------------------------------------------------------

/// S_L(x, qb) = L(qb_a y^a): the values of L on linear functions.
inline GenFunction associate(const Functional& L) {
  const auto& ch = L.chart();
  const Ring base = ch.base();
  Poly linear(base);
  std::vector<std::size_t> qb;
  for (unsigned a = 0; a < ch.dim_N(); ++a) {
    linear += Poly::variable(base, ch.qbar(a)) * Poly::variable(base, ch.y(a));
    qb.push_back(ch.qbar(a));
  }
  const Poly value = evaluate(L, linear);
  const auto lam = ch.lambda();
  Poly stripped(base);
  std::vector<Term> terms;
  for (const auto& t : value.terms()) {
    unsigned deg = 0;
    for (auto i : qb) deg += t.mono[i];
    if (deg != t.mono[lam]) throw UsageError("associate: evaluator is not lambda-graded on linear functions");
    Term c = t;
    c.mono[lam] = 0;
    terms.push_back(std::move(c));
  }
  return tensors_from_poly(ch, Poly::from_terms(base, std::move(terms)), qb, L.order_cap());
}

/// S_k^{a_1..a_k} = polarise(L, k, y^{a_1}, .., y^{a_k}), with S_0 = L(0).
inline GenFunction associate_by_polarisation(const Functional& L) {
  const auto& ch = L.chart();
  const Ring base = ch.base();
  GenFunction S(ch, L.order_cap());
  S.set({}, grade_component(evaluate(L, Poly(base)), 0).in_ring(base));
  for (unsigned k = 1; k <= L.order_cap(); ++k) {
    for (const auto& idx : sorted_multi_indices(ch.dim_N(), k)) {
      std::vector<Poly> gs;
      for (auto a : idx) gs.push_back(Poly::variable(base, ch.y(a)));
      S.set(idx, polarise(L, k, gs));
    }
  }
  return S;
}

struct OrderReport {
  unsigned order;
  bool ok;
  std::size_t test_index;  // first failing test function (meaningful when !ok)
  Poly witness;            // L(g) - Phi_{S_k}^*(g) mod lambda^(k+1) for that function
};

struct RoundtripReport {
  bool ok = true;
  std::optional<unsigned> first_failure;
  std::vector<OrderReport> orders;
  GenFunction associated;
};

/**
 * Builds S_L and its truncation tower S_0, S_0+S_1, ..., and checks
 * L(g) == Phi_{tower k}^*(g) mod lambda^(k+1) for every k <= K and g in gs.
 */
inline RoundtripReport roundtrip_verify(const Functional& L, unsigned K, const std::vector<Poly>& gs) {
  if (K > L.order_cap()) throw RangeError("roundtrip_verify: K exceeds the functional's order cap");
  const auto& ch = L.chart();
  GenFunction SL = associate(L.with_order_cap(K));
  std::vector<Poly> values;
  for (const auto& g : gs) values.push_back(evaluate(L, g));

  RoundtripReport rep{true, std::nullopt, {}, SL};
  for (unsigned k = 0; k <= K; ++k) {
    const GenFunction tower = SL.truncated(k);
    const Ring r = ch.ring(k);
    OrderReport o{k, true, 0, Poly(r)};
    for (std::size_t i = 0; i < gs.size(); ++i) {
      Poly diff = values[i].in_ring(r) - pullback(tower, gs[i], k);
      if (!diff.is_zero()) {
        o = {k, false, i, diff};
        break;
      }
    }
    if (!o.ok) {
      rep.ok = false;
      if (!rep.first_failure) rep.first_failure = k;
    }
    rep.orders.push_back(std::move(o));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Order difference of two functionals
// ---------------------------------------------------------------------------

/// First order at which L1 and L2 differ on one of gs, if any order < k does.
inline std::optional<unsigned> first_disagreement(const Functional& L1, const Functional& L2, unsigned below,
                                                  const std::vector<Poly>& gs) {
  for (const auto& g : gs) {
    Poly a = evaluate(L1, g);
    Poly b = evaluate(L2, g).in_ring(a.ring());
    for (unsigned j = 0; j < below; ++j) {
      if (!(grade_component(a, j) == grade_component(b, j))) return j;
    }
  }
  return std::nullopt;
}

/**
 * T^{a_1..a_k} = polarise(L1, k, y^{a_i}) - polarise(L2, k, y^{a_i}) for
 * functionals that agree below order k on the test set `gs`.
 */
inline SymmetricTensor order_difference(const Functional& L1, const Functional& L2, unsigned k,
                                        const std::vector<Poly>& gs) {
  if (!(L1.chart() == L2.chart())) throw UsageError("order_difference: functionals on different charts");
  if (k < 1 || k > std::min(L1.order_cap(), L2.order_cap())) throw RangeError("order_difference: k out of range");
  if (auto j = first_disagreement(L1, L2, k, gs)) {
    throw PreconditionError("order_difference: functionals do not agree below order " + std::to_string(k), *j);
  }
  const auto& ch = L1.chart();
  const Ring base = ch.base();
  SymmetricTensor T;
  for (const auto& idx : sorted_multi_indices(ch.dim_N(), k)) {
    std::vector<Poly> ys;
    for (auto a : idx) ys.push_back(Poly::variable(base, ch.y(a)));
    Poly d = polarise(L1, k, ys) - polarise(L2, k, ys);
    if (!d.is_zero()) T.emplace(idx, std::move(d));
  }
  return T;
}

/// [L1(g)]_k - [L2(g)]_k == T^{a_1..a_k} g*_{a_1}...g*_{a_k}, jets at the support map of L1.
/// Meaningful for k >= 2, where agreement below order k fixes a common support map.
inline CheckResult order_difference_identity(const Functional& L1, const Functional& L2, unsigned k,
                                             const SymmetricTensor& T, const Poly& g) {
  const auto& ch = L1.chart();
  const Ring base = ch.base();
  const auto K0 = support_map(L1);
  std::vector<Binding> at_support;
  for (unsigned a = 0; a < ch.dim_N(); ++a) at_support.push_back({ch.y(a), K0[a]});
  std::vector<Poly> jets;
  for (unsigned a = 0; a < ch.dim_N(); ++a) jets.push_back(substitute(partial(g.in_ring(base), ch.y(a)), at_support));
  Poly lhs = grade_component(evaluate(L1, g), k).in_ring(base) - grade_component(evaluate(L2, g), k).in_ring(base);
  Poly diff = lhs - contract(T, jets, base);
  return {diff.is_zero(), diff};
}

}  // namespace thickmorph
