#pragma once

/**
 * @file hamilton.hpp
 * @brief Hamiltonians on cotangent charts, their derived brackets, and the
 *        bracket-connection property of thick pull-backs.
 *
 * The source cotangent chart is (x, p), the target one is (y, q); both live
 * in the ChartPair VarTable so Hamiltonians on either side can be combined
 * with a generating function directly.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thickmorph/functional.hpp"
#include "thickmorph/parse.hpp"
#include "thickmorph/ring.hpp"
#include "thickmorph/thick.hpp"

namespace thickmorph {

enum class Side { source, target };

/// Coordinate and momentum symbol indices of one cotangent chart.
struct PhaseChart {
  std::vector<std::size_t> coords;
  std::vector<std::size_t> momenta;

  static PhaseChart of(const ChartPair& ch, Side side) {
    PhaseChart pc;
    if (side == Side::source) {
      for (unsigned i = 0; i < ch.dim_M(); ++i) {
        pc.coords.push_back(ch.x(i));
        pc.momenta.push_back(ch.p(i));
      }
    } else {
      for (unsigned a = 0; a < ch.dim_N(); ++a) {
        pc.coords.push_back(ch.y(a));
        pc.momenta.push_back(ch.q(a));
      }
    }
    return pc;
  }
};

struct Hamiltonian {
  ChartPair chart;
  Side side;
  Poly value;
  unsigned momentum_cap = kUnbounded;

  Hamiltonian(ChartPair ch, Side s, Poly v, unsigned cap = kUnbounded)
      : chart(std::move(ch)), side(s), value(std::move(v)), momentum_cap(cap) {
    const bool ok = side == Side::source ? value.only_classes({SymbolClass::x, SymbolClass::p, SymbolClass::param})
                                         : value.only_classes({SymbolClass::y, SymbolClass::q, SymbolClass::param});
    if (!ok) {
      throw UsageError(side == Side::source ? "Hamiltonian: source side uses only x and p symbols"
                                            : "Hamiltonian: target side uses only y and q symbols");
    }
    value = value.in_ring(chart.base());
    if (momentum_cap != kUnbounded) {
      PhaseChart pc = phase();
      std::vector<Term> kept;
      for (const auto& t : value.terms()) {
        unsigned d = 0;
        for (auto i : pc.momenta) d += t.mono[i];
        if (d <= momentum_cap) kept.push_back(t);
      }
      value = Poly::from_terms(chart.base(), std::move(kept));
    }
  }

  PhaseChart phase() const { return PhaseChart::of(chart, side); }
};

/// (F, G) = dF/dp_a dG/dx^a - dG/dp_a dF/dx^a.
inline Poly poisson(const Poly& F, const Poly& G, const PhaseChart& pc) {
  Poly acc(F.ring());
  for (std::size_t a = 0; a < pc.coords.size(); ++a) {
    acc += partial(F, pc.momenta[a]) * partial(G, pc.coords[a]);
    acc -= partial(G, pc.momenta[a]) * partial(F, pc.coords[a]);
  }
  return acc;
}

inline Poly restrict_to_zero_section(const Poly& F, const PhaseChart& pc) {
  std::vector<Binding> zero;
  for (auto i : pc.momenta) zero.push_back({i, Poly(F.ring())});
  return substitute(F, zero);
}

/// <f_1, ..., f_k>_H = ((..(H, f_1), ..), f_k) at p = 0.
inline Poly derived_bracket(const Hamiltonian& H, const std::vector<Poly>& fs) {
  const PhaseChart pc = H.phase();
  Poly acc = H.value;
  for (const auto& f : fs) {
    for (auto i : pc.momenta) {
      if (f.degree_in(i) > 0) throw UsageError("derived_bracket: arguments must not depend on momenta");
    }
    acc = poisson(acc, f.in_ring(acc.ring()), pc);
  }
  return restrict_to_zero_section(acc, pc);
}

/// H(x, df/dx): momenta replaced by the gradient of f, base point unchanged.
inline Poly ham_vector(const Hamiltonian& H, const Poly& f) {
  const PhaseChart pc = H.phase();
  const Poly fr = f.in_ring(f.ring());
  std::vector<Binding> b;
  for (std::size_t a = 0; a < pc.coords.size(); ++a) b.push_back({pc.momenta[a], partial(fr, pc.coords[a])});
  return substitute(H.value.in_ring(f.ring()), b);
}

/**
 * Full-index contraction H_k^{a_1..a_k} df_1/dx^{a_1} ... df_k/dx^{a_k} of
 * the momentum-degree-k part of H (tensor read off with multiplicities).
 */
inline Poly coefficient_contraction(const Hamiltonian& H, const std::vector<Poly>& fs) {
  const PhaseChart pc = H.phase();
  const unsigned k = static_cast<unsigned>(fs.size());
  const unsigned top = std::max(k, H.value.degree_in(std::span<const std::size_t>(pc.momenta)));
  const auto tensors = extract_tensors(H.value, pc.momenta, top);
  const unsigned n = static_cast<unsigned>(pc.coords.size());
  const Ring r = H.value.ring();

  // Every ordered tuple (a_1..a_k), not just sorted ones.
  Poly acc(r);
  std::vector<unsigned> tuple(k, 0);
  while (true) {
    MultiIndex sorted(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    auto it = tensors[k].find(sorted);
    if (it != tensors[k].end()) {
      Poly term = it->second;
      for (unsigned j = 0; j < k; ++j) term *= partial(fs[j].in_ring(r), pc.coords[tuple[j]]);
      acc += term;
    }
    unsigned pos = 0;
    while (pos < k && ++tuple[pos] == n) tuple[pos++] = 0;
    if (pos == k) break;
  }
  return restrict_to_zero_section(acc, pc);
}

/// c with derived_bracket(H, fs) == c * coefficient_contraction(H, fs), if one exists.
inline std::optional<Scalar> measured_bracket_constant(const Hamiltonian& H, const std::vector<Poly>& fs) {
  return proportionality(coefficient_contraction(H, fs), derived_bracket(H, fs));
}

/// H_M(x, dS/dx) == H_N(dS/dq, q) modulo total q-degree above q_cap.
inline CheckResult s_related_check(const Hamiltonian& HM, const Hamiltonian& HN, const GenFunction& S, unsigned q_cap) {
  if (HM.side != Side::source || HN.side != Side::target) {
    throw UsageError("s_related_check: expects a source and a target Hamiltonian");
  }
  const auto& ch = S.chart();
  const Ring r = ch.base().with_caps(Caps{kUnbounded, q_cap, kUnbounded});
  const Poly Sq = gen_as_poly(S).in_ring(r);
  std::vector<Binding> p_to_dSdx, y_to_dSdq;
  for (unsigned i = 0; i < ch.dim_M(); ++i) p_to_dSdx.push_back({ch.p(i), partial(Sq, ch.x(i))});
  for (unsigned a = 0; a < ch.dim_N(); ++a) y_to_dSdq.push_back({ch.y(a), partial(Sq, ch.q(a))});
  Poly lhs = substitute(HM.value.in_ring(r), p_to_dSdx);
  Poly rhs = substitute(HN.value.in_ring(r), y_to_dSdq);
  Poly diff = lhs - rhs;
  return {diff.is_zero(), diff};
}

enum class MorphismStatus { holds, morphism_fails, precondition_fails };

struct MorphismResult {
  MorphismStatus status;
  Poly witness;  // morphism difference, or the S-relatedness difference on precondition failure

  bool holds() const noexcept { return status == MorphismStatus::holds; }
};

/**
 * With L = Phi_S^*: checks coefficient of eps in L(lambda g + eps X_N(lambda g))
 * against X_M(L(lambda g)) through lambda^K, where X_H(f) = H(., df/d.).
 * S-relatedness modulo q-degree above K is checked first unless disabled.
 */
inline MorphismResult bracket_morphism_check(const GenFunction& S, const Hamiltonian& HM, const Hamiltonian& HN,
                                             const Poly& g, unsigned K, bool check_precondition = true) {
  if (check_precondition) {
    auto rel = s_related_check(HM, HN, S, K);
    if (!rel.holds) return {MorphismStatus::precondition_fails, rel.witness};
  }
  require_on_N(g, "bracket_morphism_check");
  const auto& ch = S.chart();
  const Ring r = ch.ring(K);
  const Poly G = lambda_shift(g.in_ring(r));
  const Poly moved = G + ch.eps_poly(r) * ham_vector(HN, G);
  Poly lhs = epsilon_part(pullback_graded(S, moved, K));
  Poly rhs = ham_vector(HM, pullback_graded(S, G, K));
  Poly diff = lhs - rhs;
  return {diff.is_zero() ? MorphismStatus::holds : MorphismStatus::morphism_fails, diff};
}

/// Hamiltonian fixture: header "pdeg <cap>", then expression lines that are summed.
inline Hamiltonian parse_hamiltonian(std::string_view content, const ChartPair& chart, Side side,
                                     const std::string& name = "<hamiltonian>") {
  auto lines = expression_lines(content);
  if (lines.empty()) throw FixtureError(name, 1, 0, "missing 'pdeg' header");
  std::istringstream head(lines[0].text);
  std::string kw;
  long cap = -1;
  if (!(head >> kw >> cap) || kw != "pdeg" || cap < 0 || !(head >> std::ws).eof()) {
    throw FixtureError(name, lines[0].line, lines[0].column, "expected header 'pdeg <cap>'");
  }
  Poly acc(chart.base());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    try {
      acc += parse_poly(lines[i].text, chart.base());
    } catch (const ParseError& e) {
      throw FixtureError(name, lines[i].line, lines[i].column + e.offset(), e.what());
    }
  }
  try {
    return Hamiltonian(chart, side, acc, static_cast<unsigned>(cap));
  } catch (const UsageError& e) {
    throw FixtureError(name, lines[0].line, 0, e.what());
  }
}

}  // namespace thickmorph
