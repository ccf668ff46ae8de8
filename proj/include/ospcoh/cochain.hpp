#pragma once

// Cochains C^n(osp(1|2), M) stored on canonical super-monomials, the graded
// coboundary, reduction, restriction to sl(2) and the cup product.

#include "ospcoh/audit.hpp"
#include "ospcoh/linalg.hpp"
#include "ospcoh/superalgebra.hpp"
#include "ospcoh/weight_module.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ospcoh {

class SolveFailed : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class TypeMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotACocycle : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NoCocycle : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

using CochainValues = std::map<SuperMonomial, ModuleVector>;

namespace detail {
inline const ModuleVector& empty_vector() {
  static const ModuleVector zero;
  return zero;
}
}  // namespace detail

struct Cochain {
  int degree = 0;
  int parity = 0;
  TruncatedDlm module;
  CochainValues values;  // canonical monomials only, no zero entries

  Cochain() = default;
  Cochain(int n, int par, TruncatedDlm mod) : degree(n), parity(par % 2), module(std::move(mod)) {}

  [[nodiscard]] const ModuleVector& at(const SuperMonomial& u) const {
    auto it = values.find(u);
    return it == values.end() ? detail::empty_vector() : it->second;
  }

  void set(const SuperMonomial& u, ModuleVector v) {
    check(u, v);
    if (v.empty())
      values.erase(u);
    else
      values[u] = std::move(v);
  }

  void add(const SuperMonomial& u, const ModuleVector& v, const Rational& coeff = Rational(1)) {
    check(u, v);
    auto& slot = values[u];
    axpy(slot, coeff, v);
    if (slot.empty()) values.erase(u);
  }

  [[nodiscard]] bool is_zero() const { return values.empty(); }

  friend bool operator==(const Cochain& x, const Cochain& y) {
    return x.degree == y.degree && x.values == y.values && (x.values.empty() || x.parity == y.parity);
  }

private:
  void check(const SuperMonomial& u, const ModuleVector& v) const {
    if (u.degree() != degree) throw std::invalid_argument("cochain: monomial degree differs from cochain degree");
    for (const auto& [bv, coeff] : v)
      if (bv.parity() != (parity + u.parity()) % 2)
        throw std::invalid_argument("cochain: value " + bv.str() + " on " + u.str() + " breaks parity");
  }
};

inline Cochain operator+(Cochain f, const Cochain& g) {
  if (f.degree != g.degree || !(f.module == g.module)) throw TypeMismatch("cochain sum: incompatible cochains");
  if (f.is_zero()) f.parity = g.parity;
  for (const auto& [u, v] : g.values) f.add(u, v);
  return f;
}

inline Cochain operator*(const Rational& s, Cochain f) {
  for (auto& [u, v] : f.values) v = scaled(v, s);
  if (s.is_zero()) f.values.clear();
  return f;
}

inline Cochain operator-(Cochain f, const Cochain& g) { return f + Rational(-1) * g; }

/// f(U_1,...,U_n) for an arbitrary tuple.
inline ModuleVector evaluate(const Cochain& f, std::span<const Gen> tuple) {
  if (static_cast<int>(tuple.size()) != f.degree) throw std::invalid_argument("evaluate: tuple length differs from degree");
  auto [u, sign] = canonicalize(tuple);
  if (sign == 0) return {};
  return scaled(f.at(u), Rational(sign));
}

inline ModuleVector evaluate(const Cochain& f, std::initializer_list<Gen> tuple) {
  return evaluate(f, std::span<const Gen>(tuple.begin(), tuple.size()));
}

namespace detail {

inline std::vector<Gen> drop(const std::vector<Gen>& t, std::size_t i) {
  std::vector<Gen> out;
  for (std::size_t l = 0; l < t.size(); ++l)
    if (l != i) out.push_back(t[l]);
  return out;
}

inline std::vector<Gen> drop2(const std::vector<Gen>& t, std::size_t i, std::size_t j) {
  std::vector<Gen> out;
  for (std::size_t l = 0; l < t.size(); ++l)
    if (l != i && l != j) out.push_back(t[l]);
  return out;
}

}  // namespace detail

/// (∂f)(U_0..U_n) = Σ_i (−1)^i (−1)^{U_i(f+U_0+…+U_{i−1})} U_i·f(…Û_i…)
///   + Σ_{i<j} (−1)^{i+j} (−1)^{U_i(U_0+…+U_{i−1})} (−1)^{U_j(U_0+…Û_i…+U_{j−1})} f([U_i,U_j],…Û_i…Û_j…),
/// evaluated on the canonical tuple of every degree-(n+1) monomial.
inline Cochain coboundary(const Cochain& f, const StructureTable& table = adopted_table()) {
  Cochain out(f.degree + 1, f.parity, f.module);
  if (f.degree < 0) return out;
  for (const auto& target : monomial_basis(f.degree + 1)) {
    const auto t = target.tuple();
    ModuleVector acc;
    int before = 0;  // parity of U_0..U_{i-1}
    for (std::size_t i = 0; i < t.size(); ++i) {
      const int pi = parity(t[i]);
      const int s = parity_sign(static_cast<int>(i)) * parity_sign(pi * (f.parity + before));
      ModuleVector inner = evaluate(f, detail::drop(t, i));
      if (!inner.empty()) axpy(acc, Rational(s), act(f.module, t[i], inner));

      int between = 0;  // parity of U_0..U_{j-1} without U_i
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (j <= i) {
          if (j < i) between += parity(t[j]);
          continue;
        }
        const int sij = parity_sign(static_cast<int>(i + j)) * parity_sign(pi * before) *
                        parity_sign(parity(t[j]) * between);
        const LieVec br = table.bracket(t[i], t[j]);
        const auto rest = detail::drop2(t, i, j);
        for (Gen w : kGenerators) {
          const Rational& cw = br[index(w)];
          if (cw.is_zero()) continue;
          std::vector<Gen> args{w};
          args.insert(args.end(), rest.begin(), rest.end());
          axpy(acc, Rational(sij) * cw, evaluate(f, args));
        }
        between += parity(t[j]);
      }
      before += pi;
    }
    if (!acc.empty()) out.values.emplace(target, std::move(acc));
  }
  return out;
}

/// True iff f vanishes on every monomial containing A.
inline bool is_reduced(const Cochain& f) {
  for (const auto& [u, v] : f.values)
    if (u.contains(Gen::A) && !v.empty()) return false;
  return true;
}

/// Cochain weight of a value: f(u) component in M^{w+wt(u)} has weight w.
inline Rational cell_weight(const TruncatedDlm& mod, const SuperMonomial& u, const BasisVector& v) {
  return mod.weight(v) - u.weight();
}

inline std::map<Rational, Cochain> weight_components(const Cochain& f) {
  std::map<Rational, Cochain> out;
  for (const auto& [u, v] : f.values)
    for (const auto& [bv, coeff] : v) {
      const Rational w = cell_weight(f.module, u, bv);
      auto it = out.try_emplace(w, f.degree, f.parity, f.module).first;
      it->second.add(u, vec(bv, coeff));
    }
  return out;
}

// ---- block-level machinery shared with the engine ----

enum class Algebra : std::uint8_t { osp, sl2 };

inline std::vector<SuperMonomial> cochain_monomials(Algebra alg, int n) {
  std::vector<SuperMonomial> out;
  for (const auto& u : monomial_basis(n))
    if (alg == Algebra::osp || (!u.contains(Gen::A) && !u.contains(Gen::B))) out.push_back(u);
  return out;
}

/// One pair (monomial, module basis vector): the delta-cochain supported there.
struct Cell {
  SuperMonomial mono;
  BasisVector vector;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct CellBasis {
  std::vector<Cell> cells;
  std::map<Cell, std::size_t> index;

  [[nodiscard]] std::size_t size() const { return cells.size(); }
};

/// Cells of cochain degree n and cochain weight w, optionally of one cochain
/// parity.
inline CellBasis cell_basis(const TruncatedDlm& mod, Algebra alg, int n, const Rational& w,
                            std::optional<int> cochain_parity = std::nullopt) {
  CellBasis out;
  for (const auto& u : cochain_monomials(alg, n)) {
    std::optional<int> vp;
    if (cochain_parity) vp = (*cochain_parity + u.parity()) % 2;
    for (const auto& v : weight_basis(mod, w + u.weight(), vp)) {
      out.index.emplace(Cell{u, v}, out.cells.size());
      out.cells.push_back({u, v});
    }
  }
  return out;
}

/// Term of ∂ for one target monomial: either U·f(source) or coeff·f(source).
struct StencilTerm {
  std::size_t source;  // index into Stencil::domain
  int sign;            // excludes the (−1)^{U·f} factor of action terms
  std::optional<Gen> acting;
  Rational coeff{1};
};

struct Stencil {
  std::vector<SuperMonomial> domain;
  std::vector<SuperMonomial> codomain;
  std::vector<std::vector<StencilTerm>> terms;  // per codomain monomial
};

/// The coboundary formula resolved to monomial-level terms, independent of
/// the module.
inline Stencil coboundary_stencil(const StructureTable& table, Algebra alg, int n) {
  Stencil st;
  st.domain = cochain_monomials(alg, n);
  st.codomain = cochain_monomials(alg, n + 1);
  std::map<SuperMonomial, std::size_t> dom_index;
  for (std::size_t i = 0; i < st.domain.size(); ++i) dom_index.emplace(st.domain[i], i);
  st.terms.resize(st.codomain.size());
  if (n < 0) return st;
  for (std::size_t ti = 0; ti < st.codomain.size(); ++ti) {
    const auto t = st.codomain[ti].tuple();
    auto& terms = st.terms[ti];
    int before = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const int pi = parity(t[i]);
      auto [src, s] = canonicalize(detail::drop(t, i));
      if (s != 0) terms.push_back({dom_index.at(src), parity_sign(static_cast<int>(i) + pi * before) * s, t[i], Rational(1)});
      int between = 0;
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (j <= i) {
          if (j < i) between += parity(t[j]);
          continue;
        }
        const int sij = parity_sign(static_cast<int>(i + j) + pi * before + parity(t[j]) * between);
        const LieVec br = table.bracket(t[i], t[j]);
        const auto rest = detail::drop2(t, i, j);
        for (Gen w : kGenerators) {
          if (br[index(w)].is_zero()) continue;
          std::vector<Gen> args{w};
          args.insert(args.end(), rest.begin(), rest.end());
          auto [src2, s2] = canonicalize(args);
          if (s2 == 0) continue;
          auto it = dom_index.find(src2);
          if (it == dom_index.end()) throw std::logic_error("stencil: bracket leaves the subalgebra");
          terms.push_back({it->second, sij * s2, std::nullopt, br[index(w)]});
        }
        between += parity(t[j]);
      }
      before += pi;
    }
  }
  return st;
}

/// Matrix of ∂ from the cells `dom` (degree n) to the cells `cod`
/// (degree n+1, same weight). Every image cell must lie in `cod`.
inline SparseMatrix coboundary_matrix(const TruncatedDlm& mod, const Stencil& st, const CellBasis& dom,
                                      const CellBasis& cod) {
  std::map<SuperMonomial, std::vector<std::pair<std::size_t, const StencilTerm*>>> by_source;
  for (std::size_t ti = 0; ti < st.terms.size(); ++ti)
    for (const auto& term : st.terms[ti]) by_source[st.domain[term.source]].emplace_back(ti, &term);
  SparseMatrix m(cod.size(), dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j) {
    const auto& [u, v] = dom.cells[j];
    const int fpar = (u.parity() + v.parity()) % 2;
    auto it = by_source.find(u);
    if (it == by_source.end()) continue;
    for (const auto& [ti, term] : it->second) {
      const SuperMonomial& target = st.codomain[ti];
      if (term->acting) {
        const Gen g = *term->acting;
        const Rational s(term->sign * parity_sign(parity(g) * fpar));
        for (const auto& [bv, coeff] : act(mod, g, v)) m.add(cod.index.at(Cell{target, bv}), j, s * coeff);
      } else {
        m.add(cod.index.at(Cell{target, v}), j, Rational(term->sign) * term->coeff);
      }
    }
  }
  return m;
}

inline SparseVec<std::size_t> to_cells(const CochainValues& values, const CellBasis& basis) {
  SparseVec<std::size_t> out;
  for (const auto& [u, v] : values)
    for (const auto& [bv, coeff] : v) {
      auto it = basis.index.find(Cell{u, bv});
      if (it == basis.index.end()) throw std::invalid_argument("to_cells: value outside the cell basis");
      add_term(out, it->second, coeff);
    }
  return out;
}

inline CochainValues from_cells(const SparseVec<std::size_t>& x, const CellBasis& basis) {
  CochainValues out;
  for (const auto& [j, coeff] : x) {
    const auto& cell = basis.cells.at(j);
    add_term(out[cell.mono], cell.vector, coeff);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

namespace detail {

inline SparseMatrix select_rows(const SparseMatrix& m, const std::vector<std::size_t>& rows) {
  SparseMatrix out(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, v] : m.row(rows[r])) out.set(r, c, v);
  return out;
}

}  // namespace detail

struct Reduction {
  Cochain g;        // degree n−1
  Cochain reduced;  // f − ∂g, reduced
};

/// Finds g with f − ∂g reduced, by an exact solve in each weight component.
inline Reduction reduce(const Cochain& f, const StructureTable& table = adopted_table()) {
  Reduction out{Cochain(f.degree - 1, f.parity, f.module), f};
  if (f.degree <= 0 || is_reduced(f)) return out;
  const Stencil st = coboundary_stencil(table, Algebra::osp, f.degree - 1);
  for (const auto& [w, fw] : weight_components(f)) {
    const CellBasis dom = cell_basis(f.module, Algebra::osp, f.degree - 1, w, f.parity);
    const CellBasis cod = cell_basis(f.module, Algebra::osp, f.degree, w, f.parity);
    const SparseMatrix m = coboundary_matrix(f.module, st, dom, cod);
    std::vector<std::size_t> rows;
    std::map<std::size_t, std::size_t> local;
    for (std::size_t r = 0; r < cod.size(); ++r)
      if (cod.cells[r].mono.contains(Gen::A)) {
        local.emplace(r, rows.size());
        rows.push_back(r);
      }
    SparseVec<std::size_t> rhs;
    for (const auto& [r, coeff] : to_cells(fw.values, cod))
      if (auto it = local.find(r); it != local.end()) rhs.emplace(it->second, coeff);
    if (rhs.empty()) continue;
    auto x = solve(detail::select_rows(m, rows), rhs);
    if (!x) throw SolveFailed("reduce: no primitive removes the A-slots at weight " + w.str());
    for (const auto& [u, v] : from_cells(*x, dom)) out.g.add(u, v);
  }
  out.reduced = f - coboundary(out.g, table);
  if (!is_reduced(out.reduced)) throw SolveFailed("reduce: result is not reduced");
  return out;
}

/// Some g with ∂g = f (verified), or nullopt.
inline std::optional<Cochain> is_coboundary(const Cochain& f, const StructureTable& table = adopted_table()) {
  if (!coboundary(f, table).is_zero()) throw NotACocycle("is_coboundary: input is not a cocycle");
  Cochain g(f.degree - 1, f.parity, f.module);
  if (f.is_zero()) return g;
  if (f.degree == 0) return std::nullopt;
  const Stencil st = coboundary_stencil(table, Algebra::osp, f.degree - 1);
  for (const auto& [w, fw] : weight_components(f)) {
    const CellBasis dom = cell_basis(f.module, Algebra::osp, f.degree - 1, w, f.parity);
    const CellBasis cod = cell_basis(f.module, Algebra::osp, f.degree, w, f.parity);
    auto x = solve(coboundary_matrix(f.module, st, dom, cod), to_cells(fw.values, cod));
    if (!x) return std::nullopt;
    for (const auto& [u, v] : from_cells(*x, dom)) g.add(u, v);
  }
  if (!(coboundary(g, table) == f)) throw std::logic_error("is_coboundary: primitive fails verification");
  return g;
}

// ---- sl(2) ----

struct Sl2Cochain {
  int degree = 0;
  int parity = 0;
  TruncatedDlm module;
  CochainValues values;  // monomials in X, H, Y only

  [[nodiscard]] const ModuleVector& at(const SuperMonomial& u) const {
    auto it = values.find(u);
    return it == values.end() ? detail::empty_vector() : it->second;
  }
  [[nodiscard]] bool is_zero() const { return values.empty(); }
  friend bool operator==(const Sl2Cochain& x, const Sl2Cochain& y) {
    return x.degree == y.degree && x.values == y.values;
  }
};

inline Sl2Cochain restrict_sl2(const Cochain& f) {
  Sl2Cochain out{f.degree, f.parity, f.module, {}};
  for (const auto& [u, v] : f.values)
    if (!u.contains(Gen::A) && !u.contains(Gen::B)) out.values.emplace(u, v);
  return out;
}

inline ModuleVector evaluate(const Sl2Cochain& h, const std::vector<Gen>& tuple) {
  auto [u, sign] = canonicalize(tuple);
  if (sign == 0) return {};
  return scaled(h.at(u), Rational(sign));
}

/// Classical differential on {X,H,Y}:
/// (∂h)(U_0..U_n) = Σ_i (−1)^i U_i·h(…Û_i…) + Σ_{i<j} (−1)^{i+j} h([U_i,U_j],…).
inline Sl2Cochain sl2_coboundary(const Sl2Cochain& h, const StructureTable& table = adopted_table()) {
  Sl2Cochain out{h.degree + 1, h.parity, h.module, {}};
  if (h.degree < 0 || h.degree + 1 > 3) return out;
  for (const auto& target : cochain_monomials(Algebra::sl2, h.degree + 1)) {
    const auto t = target.tuple();
    ModuleVector acc;
    for (std::size_t i = 0; i < t.size(); ++i) {
      ModuleVector inner = evaluate(h, detail::drop(t, i));
      if (!inner.empty()) axpy(acc, Rational(parity_sign(static_cast<int>(i))), act(h.module, t[i], inner));
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        const LieVec br = table.bracket(t[i], t[j]);
        for (Gen w : kEvenGenerators) {
          if (br[index(w)].is_zero()) continue;
          std::vector<Gen> args{w};
          const auto rest = detail::drop2(t, i, j);
          args.insert(args.end(), rest.begin(), rest.end());
          axpy(acc, Rational(parity_sign(static_cast<int>(i + j))) * br[index(w)], evaluate(h, args));
        }
      }
    }
    if (!acc.empty()) out.values.emplace(target, std::move(acc));
  }
  return out;
}

/// Some sl(2) primitive g with ∂g = h (verified), or nullopt.
inline std::optional<Sl2Cochain> is_sl2_coboundary(const Sl2Cochain& h, const StructureTable& table = adopted_table()) {
  if (!sl2_coboundary(h, table).is_zero()) throw NotACocycle("is_sl2_coboundary: input is not a cocycle");
  Sl2Cochain g{h.degree - 1, h.parity, h.module, {}};
  if (h.is_zero()) return g;
  if (h.degree == 0) return std::nullopt;
  const Stencil st = coboundary_stencil(table, Algebra::sl2, h.degree - 1);
  std::map<Rational, CochainValues> comps;
  for (const auto& [u, v] : h.values)
    for (const auto& [bv, coeff] : v) add_term(comps[cell_weight(h.module, u, bv)][u], bv, coeff);
  for (const auto& [w, values] : comps) {
    const CellBasis dom = cell_basis(h.module, Algebra::sl2, h.degree - 1, w, h.parity);
    const CellBasis cod = cell_basis(h.module, Algebra::sl2, h.degree, w, h.parity);
    auto x = solve(coboundary_matrix(h.module, st, dom, cod), to_cells(values, cod));
    if (!x) return std::nullopt;
    for (const auto& [u, v] : from_cells(*x, dom)) axpy(g.values[u], Rational(1), v);
  }
  std::erase_if(g.values, [](const auto& kv) { return kv.second.empty(); });
  if (!(sl2_coboundary(g, table) == h)) throw std::logic_error("is_sl2_coboundary: primitive fails verification");
  return g;
}

// ---- cup product ----

/// printed: Ω(U,V) = f(U)∘h(V) − (−1)^{UV} f(V)∘h(U).
/// koszul:  Ω(U,V) = (−1)^{hU} f(U)∘h(V) − (−1)^{UV+hV} f(V)∘h(U).
enum class CupSign : std::uint8_t { printed, koszul };

inline const char* name(CupSign s) { return s == CupSign::printed ? "printed" : "koszul"; }

/// f into D_{λ2,μ}, h into D_{λ1,λ2}; result into D_{λ1,μ} truncated at the
/// sum of the two orders.
inline Cochain cup(const Cochain& f, const Cochain& h, CupSign sign = CupSign::printed) {
  if (f.degree != 1 || h.degree != 1) throw TypeMismatch("cup: both factors must be 1-cochains");
  if (f.module.lambda != h.module.mu)
    throw TypeMismatch("cup: source density of f (" + f.module.lambda.str() + ") differs from target of h (" +
                       h.module.mu.str() + ")");
  TruncatedDlm mod{h.module.lambda, f.module.mu, f.module.K + h.module.K};
  Cochain out(2, (f.parity + h.parity) % 2, mod);
  auto prod = [&](Gen u, Gen v) {
    return from_operator(compose(to_operator(evaluate(f, {u})), to_operator(evaluate(h, {v}))));
  };
  for (const auto& mono : monomial_basis(2)) {
    const auto t = mono.tuple();
    const Gen u = t[0];
    const Gen v = t[1];
    int s1 = 1;
    int s2 = parity_sign(parity(u) * parity(v));
    if (sign == CupSign::koszul) {
      s1 *= parity_sign(h.parity * parity(u));
      s2 *= parity_sign(h.parity * parity(v));
    }
    ModuleVector val = scaled(prod(u, v), Rational(s1));
    axpy(val, Rational(-s2), prod(v, u));
    if (!val.empty()) out.set(mono, std::move(val));
  }
  return out;
}

struct CupResult {
  Cochain omega;
  CupSign sign = CupSign::printed;
};

/// The printed sign first; the Koszul variant if the printed one fails to give
/// a cocycle.
inline CupResult cup_cocycle(const Cochain& f, const Cochain& h, const StructureTable& table = adopted_table()) {
  for (CupSign s : {CupSign::printed, CupSign::koszul}) {
    Cochain omega = cup(f, h, s);
    if (coboundary(omega, table).is_zero()) return {std::move(omega), s};
  }
  throw NoCocycle("cup: neither sign convention yields a cocycle");
}

// ---- explicit cocycles: printed slot templates, re-derived coefficients ----

struct SlotTemplate {
  Gen slot;
  ModuleVector printed;
};

struct SlotRatio {
  Gen slot;
  ModuleVector printed;
  ModuleVector derived;
  Rational ratio;  // derived = ratio · printed
};

struct DerivedCocycle {
  Cochain cocycle;
  std::vector<SlotRatio> slots;
};

/// Solves for one scalar per slot so that Σ s_i·(slot_i ↦ printed_i) is a
/// cocycle; requires a one-dimensional solution space and normalizes the slot
/// `normalize` to ratio 1.
inline DerivedCocycle solve_template_cocycle(const TruncatedDlm& mod, int parity_, const std::vector<SlotTemplate>& slots,
                                             Gen normalize, const StructureTable& table = adopted_table()) {
  std::vector<Cochain> pieces;
  std::map<std::pair<SuperMonomial, BasisVector>, std::size_t> rows;
  std::vector<Cochain> images;
  for (const auto& s : slots) {
    Cochain piece(1, parity_, mod);
    piece.set(canonicalize({s.slot}).first, s.printed);
    images.push_back(coboundary(piece, table));
    for (const auto& [u, v] : images.back().values)
      for (const auto& [bv, coeff] : v) rows.emplace(std::make_pair(u, bv), 0);
    pieces.push_back(std::move(piece));
  }
  std::size_t n = 0;
  for (auto& [key, i] : rows) i = n++;
  SparseMatrix m(n, slots.size());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [u, v] : images[j].values)
      for (const auto& [bv, coeff] : v) m.add(rows.at({u, bv}), j, coeff);
  const auto ker = kernel_basis(m);
  if (ker.size() != 1)
    throw NoCocycle("template cocycle: solution space has dimension " + std::to_string(ker.size()));
  std::size_t norm_index = slots.size();
  for (std::size_t j = 0; j < slots.size(); ++j)
    if (slots[j].slot == normalize) norm_index = j;
  auto it = ker[0].find(norm_index);
  if (it == ker[0].end()) throw NoCocycle("template cocycle: normalizing slot vanishes");
  const Rational scale = Rational(1) / it->second;

  DerivedCocycle out{Cochain(1, parity_, mod), {}};
  for (std::size_t j = 0; j < slots.size(); ++j) {
    auto kj = ker[0].find(j);
    const Rational r = kj == ker[0].end() ? Rational(0) : kj->second * scale;
    out.cocycle = out.cocycle + r * pieces[j];
    out.slots.push_back({slots[j].slot, slots[j].printed, scaled(slots[j].printed, r), r});
  }
  return out;
}

inline TruncatedDlm h_lambda_module(const Rational& lambda, int K = 3) { return {lambda, lambda, K}; }

inline TruncatedDlm f_k_module(int k, int K = -1) {
  return {Rational(-k, 2), Rational(k + 1, 2), K < 0 ? std::max(3, k + 2) : K};
}

/// h_λ(H) = −id, h_λ(B) = θ·, h_λ(Y) = −2x· as printed.
inline std::vector<SlotTemplate> h_lambda_template() {
  return {{Gen::H, vec(a(0, 0), Rational(-1))}, {Gen::B, vec(c(0, 0))}, {Gen::Y, vec(a(1, 0), Rational(-2))}};
}

/// f_k(H) = ∂θ∂x^k − θ∂x^{k+1}, f_k(B) = θ∂θ∂x^k, f_k(Y) = 2x f_k(H).
inline std::vector<SlotTemplate> f_k_template(int k) {
  return {{Gen::H, vec(d(0, k))}, {Gen::B, vec(b(0, k))}, {Gen::Y, vec(d(1, k), Rational(2))}};
}

/// f̃_k(B) = ∂x^k, f̃_k(Y) = −2k∂θ∂x^{k−1} + 2(k+1)θ∂x^k.
inline std::vector<SlotTemplate> ftilde_k_template(int k) {
  OpPoly y = op(0, 1, 0, k, Rational(2 * (k + 1)));
  if (k > 0) y = y + op(0, 0, 1, k - 1, Rational(-2 * k));
  return {{Gen::B, vec(a(0, k))}, {Gen::Y, from_operator(y)}};
}

inline DerivedCocycle make_h_lambda(const Rational& lambda, int K = 3) {
  return solve_template_cocycle(h_lambda_module(lambda, K), 0, h_lambda_template(), Gen::B);
}

inline DerivedCocycle make_f_k(int k, int K = -1) {
  return solve_template_cocycle(f_k_module(k, K), 1, f_k_template(k), Gen::B);
}

inline DerivedCocycle make_ftilde_k(int k, int K = -1) {
  return solve_template_cocycle(f_k_module(k, K), 1, ftilde_k_template(k), Gen::B);
}

}  // namespace ospcoh
