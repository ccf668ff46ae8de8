#pragma once

// The module D_{λ,μ} of differential operators between densities, truncated
// at ∂x-order K, with its action tables and weight-slice subspace algebra.

#include "ospcoh/linalg.hpp"
#include "ospcoh/superalgebra.hpp"
#include "ospcoh/superdiff.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ospcoh {

enum class Family : std::uint8_t { a = 0, b = 1, c = 2, d = 3 };

inline constexpr std::array<Family, 4> kFamilies{Family::a, Family::b, Family::c, Family::d};

inline const char* name(Family f) {
  constexpr std::array<const char*, 4> n{"a", "b", "c", "d"};
  return n[static_cast<std::size_t>(f)];
}

inline Family parse_family(std::string_view s) {
  for (Family f : kFamilies)
    if (s == name(f)) return f;
  throw std::invalid_argument("unknown basis family: " + std::string(s));
}

/// a_{m,k}=x^m∂x^k, b_{m,k}=x^mθ∂θ∂x^k, c_{m,k}=x^mθ∂x^k,
/// d_{m,k}=x^m∂θ∂x^k − x^mθ∂x^{k+1}.
struct BasisVector {
  Family family = Family::a;
  int m = 0;
  int k = 0;

  [[nodiscard]] int parity() const { return (family == Family::a || family == Family::b) ? 0 : 1; }

  /// 2·(weight + p): a,b → 2(k−m); c → 2(k−m)−1; d → 2(k−m)+1.
  [[nodiscard]] int twice_shifted_weight() const {
    int w = 2 * (k - m);
    if (family == Family::c) w -= 1;
    if (family == Family::d) w += 1;
    return w;
  }

  [[nodiscard]] std::string str() const {
    return std::string(name(family)) + "_{" + std::to_string(m) + "," + std::to_string(k) + "}";
  }

  friend auto operator<=>(const BasisVector&, const BasisVector&) = default;
};

inline BasisVector a(int m, int k) { return {Family::a, m, k}; }
inline BasisVector b(int m, int k) { return {Family::b, m, k}; }
inline BasisVector c(int m, int k) { return {Family::c, m, k}; }
inline BasisVector d(int m, int k) { return {Family::d, m, k}; }

using ModuleVector = SparseVec<BasisVector>;

inline ModuleVector vec(const BasisVector& v, const Rational& coeff = Rational(1)) {
  ModuleVector out;
  add_term(out, v, coeff);
  return out;
}

inline std::string to_string(const ModuleVector& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [bv, coeff] : v) {
    const bool neg = coeff.sign() < 0;
    const Rational mag = neg ? -coeff : coeff;
    std::string term = (mag == Rational(1) ? "" : mag.str() + " ") + bv.str();
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

inline std::optional<int> vector_parity(const ModuleVector& v) {
  std::optional<int> p;
  for (const auto& [bv, coeff] : v) {
    if (p && *p != bv.parity()) return std::nullopt;
    p = bv.parity();
  }
  return p;
}

class TruncationViolation : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

class NotContained : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Which Y·d_{m,k} row to use. The printed row carries −(2λ+2k+1)c_{m,k};
/// Y = −B² and the density realization both give −(2λ+k)c_{m,k}.
enum class ActionRows : std::uint8_t { corrected, printed };

/// Span of the basis operators with k ≤ K inside D_{λ,μ}. No table row raises
/// k, so this is a submodule.
struct TruncatedDlm {
  Rational lambda;
  Rational mu;
  int K = 3;
  ActionRows rows = ActionRows::corrected;

  [[nodiscard]] Rational p() const { return mu - lambda; }

  [[nodiscard]] Rational weight(const BasisVector& v) const {
    return Rational(v.twice_shifted_weight(), 2) - p();
  }

  friend bool operator==(const TruncatedDlm&, const TruncatedDlm&) = default;
};

/// The printed action tables.
inline ModuleVector act(const TruncatedDlm& mod, Gen gen, const BasisVector& v) {
  if (v.k > mod.K || v.k < 0 || v.m < 0)
    throw TruncationViolation("basis vector " + v.str() + " outside truncation K=" +
                              std::to_string(mod.K));
  const int m = v.m;
  const int k = v.k;
  const Rational p = mod.p();
  const Rational two_l = Rational(2) * mod.lambda;
  ModuleVector out;
  auto put = [&](Family f, int mm, int kk, const Rational& coeff) {
    if (coeff.is_zero()) return;
    if (mm < 0 || kk < 0) throw std::logic_error("action produced negative index");
    add_term(out, BasisVector{f, mm, kk}, coeff);
  };
  const Rational M(m);
  const Rational Kk(k);
  switch (gen) {
    case Gen::H:
      put(v.family, m, k, mod.weight(v));
      break;
    case Gen::X:
      if (m > 0) put(v.family, m - 1, k, M);
      break;
    case Gen::A:
      switch (v.family) {
        case Family::a: if (m > 0) put(Family::c, m - 1, k, M); break;
        case Family::b: put(Family::d, m, k, Rational(1)); break;
        case Family::c: put(Family::a, m, k, Rational(1)); break;
        case Family::d: if (m > 0) put(Family::b, m - 1, k, M); break;
      }
      break;
    case Gen::B:
      switch (v.family) {
        case Family::a:
          put(Family::c, m, k, M - Rational(2) * Kk + Rational(2) * p);
          if (k > 0) put(Family::d, m, k - 1, -Kk);
          break;
        case Family::b:
          put(Family::d, m + 1, k, Rational(1));
          put(Family::c, m, k, -(two_l + Kk));
          break;
        case Family::c:
          put(Family::a, m + 1, k, Rational(1));
          if (k > 0) put(Family::b, m, k - 1, Kk);
          break;
        case Family::d:
          put(Family::b, m, k, M - Rational(2) * Kk + Rational(2) * p - Rational(1));
          put(Family::a, m, k, two_l + Kk);
          break;
      }
      break;
    case Gen::Y: {
      const Rational lead = Rational(2) * Kk - Rational(2) * p - M;
      switch (v.family) {
        case Family::a:
          put(Family::a, m + 1, k, lead);
          if (k > 0) put(Family::a, m, k - 1, Kk * (two_l + Kk - Rational(1)));
          if (k > 0) put(Family::b, m, k - 1, Kk);
          break;
        case Family::b:
          put(Family::b, m + 1, k, lead);
          if (k > 0) put(Family::b, m, k - 1, Kk * (two_l + Kk));
          break;
        case Family::c:
          put(Family::c, m + 1, k, lead - Rational(1));
          if (k > 0) put(Family::c, m, k - 1, Kk * (two_l + Kk - Rational(1)));
          break;
        case Family::d:
          put(Family::d, m + 1, k, lead + Rational(1));
          if (k > 0) put(Family::d, m, k - 1, Kk * (two_l + Kk));
          if (mod.rows == ActionRows::printed)
            put(Family::c, m, k, -(two_l + Rational(2) * Kk + Rational(1)));
          else
            put(Family::c, m, k, -(two_l + Kk));
          break;
      }
      break;
    }
  }
  return out;
}

inline ModuleVector act(const TruncatedDlm& mod, Gen gen, const ModuleVector& v) {
  ModuleVector out;
  for (const auto& [bv, coeff] : v) axpy(out, coeff, act(mod, gen, bv));
  return out;
}

inline ModuleVector act(const TruncatedDlm& mod, const LieVec& x, const ModuleVector& v) {
  ModuleVector out;
  for (Gen g : kGenerators)
    if (!x[index(g)].is_zero()) axpy(out, x[index(g)], act(mod, g, v));
  return out;
}

/// [u,v]·w − (u·(v·w) − (−1)^{uv} v·(u·w)) for an arbitrary action callable
/// `act_fn(Gen, const ModuleVector&) -> ModuleVector`.
template <class ActFn>
ModuleVector compat_defect_with(const StructureTable& table, ActFn&& act_fn, Gen u, Gen v,
                                const ModuleVector& w) {
  ModuleVector lhs;
  for (Gen g : kGenerators) {
    const Rational& coeff = table.bracket(u, v)[index(g)];
    if (!coeff.is_zero()) axpy(lhs, coeff, act_fn(g, w));
  }
  ModuleVector rhs = act_fn(u, act_fn(v, w));
  axpy(rhs, Rational(-parity_sign(parity(u) * parity(v))), act_fn(v, act_fn(u, w)));
  return lhs - rhs;
}

inline ModuleVector action_compat_defect(const TruncatedDlm& mod, const StructureTable& table, Gen u,
                                         Gen v, const BasisVector& w) {
  return compat_defect_with(
      table, [&](Gen g, const ModuleVector& x) { return act(mod, g, x); }, u, v, vec(w));
}

/// Basis vectors with m ≤ mmax and k ≤ min(kmax, K).
inline std::vector<BasisVector> basis_box(const TruncatedDlm& mod, int mmax, int kmax) {
  std::vector<BasisVector> out;
  for (Family f : kFamilies)
    for (int m = 0; m <= mmax; ++m)
      for (int k = 0; k <= std::min(kmax, mod.K); ++k) out.push_back({f, m, k});
  return out;
}

/// All basis vectors of weight α (k ≤ K), optionally of one parity.
inline std::vector<BasisVector> weight_basis(const TruncatedDlm& mod, const Rational& alpha,
                                             std::optional<int> parity_filter = std::nullopt) {
  std::vector<BasisVector> out;
  for (Family f : kFamilies) {
    BasisVector probe{f, 0, 0};
    if (parity_filter && probe.parity() != *parity_filter) continue;
    const Rational offset = Rational(probe.twice_shifted_weight(), 2);
    for (int k = 0; k <= mod.K; ++k) {
      // weight = k − m − p + offset = α
      const Rational m = Rational(k) - mod.p() + offset - alpha;
      if (m.is_integer() && m.sign() >= 0) out.push_back({f, static_cast<int>(m.to_long()), k});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- operator form ----

inline OpPoly to_operator(const BasisVector& v) {
  switch (v.family) {
    case Family::a: return op(v.m, 0, 0, v.k);
    case Family::b: return op(v.m, 1, 1, v.k);
    case Family::c: return op(v.m, 1, 0, v.k);
    case Family::d: return op(v.m, 0, 1, v.k) - op(v.m, 1, 0, v.k + 1);
  }
  throw std::logic_error("bad family");
}

inline OpPoly to_operator(const ModuleVector& v) {
  OpPoly out;
  for (const auto& [bv, coeff] : v) axpy(out, coeff, to_operator(bv));
  return out;
}

/// Expands an operator in the a/b/c/d basis; x^m∂θ∂x^k = d_{m,k} + c_{m,k+1}.
inline ModuleVector from_operator(const OpPoly& p) {
  ModuleVector out;
  for (const auto& [t, coeff] : p) {
    if (t.e1 == 0 && t.e2 == 0) add_term(out, a(t.m, t.k), coeff);
    if (t.e1 == 1 && t.e2 == 1) add_term(out, b(t.m, t.k), coeff);
    if (t.e1 == 1 && t.e2 == 0) add_term(out, c(t.m, t.k), coeff);
    if (t.e1 == 0 && t.e2 == 1) {
      add_term(out, d(t.m, t.k), coeff);
      add_term(out, c(t.m, t.k + 1), coeff);
    }
  }
  return out;
}

inline int max_order(const ModuleVector& v) {
  int k = -1;
  for (const auto& [bv, coeff] : v) k = std::max(k, bv.k);
  return k;
}

// ---- weight-slice subspaces ----

/// Subspace of one weight slice, held in canonical echelon form.
struct Subspace {
  Rational weight;
  Echelon<BasisVector> space;

  [[nodiscard]] std::size_t dim() const { return space.dim(); }
  [[nodiscard]] std::vector<ModuleVector> basis() const { return space.basis(); }
  [[nodiscard]] bool contains(const ModuleVector& v) const { return space.contains(v); }
  [[nodiscard]] bool contains(const Subspace& s) const { return subspace_contains(space, s.space); }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.space == y.space && (x.space.empty() || x.weight == y.weight);
  }
};

inline Subspace full_slice(const TruncatedDlm& mod, const Rational& alpha,
                           std::optional<int> parity_filter = std::nullopt) {
  Subspace s{alpha, {}};
  for (const auto& v : weight_basis(mod, alpha, parity_filter)) s.space.insert(vec(v));
  return s;
}

/// Joint kernel of the listed generator actions inside the weight-α slice.
inline Subspace kernel_slice(const TruncatedDlm& mod, const std::vector<Gen>& gens,
                             const Rational& alpha,
                             std::optional<int> parity_filter = std::nullopt) {
  if (gens.empty()) throw std::invalid_argument("kernel_slice: empty generator set");
  const auto dom = weight_basis(mod, alpha, parity_filter);
  std::map<std::pair<std::size_t, BasisVector>, std::size_t> row_index;
  std::vector<std::vector<std::pair<std::size_t, ModuleVector>>> images(dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      ModuleVector img = act(mod, gens[gi], dom[j]);
      for (const auto& [bv, coeff] : img) row_index.emplace(std::make_pair(gi, bv), 0);
      images[j].emplace_back(gi, std::move(img));
    }
  std::size_t n = 0;
  for (auto& [key, i] : row_index) i = n++;
  SparseMatrix m(n, dom.size());
  for (std::size_t j = 0; j < dom.size(); ++j)
    for (const auto& [gi, img] : images[j])
      for (const auto& [bv, coeff] : img) m.add(row_index.at({gi, bv}), j, coeff);
  Subspace out{alpha, {}};
  for (const auto& x : kernel_basis(m)) {
    ModuleVector v;
    for (const auto& [j, coeff] : x) add_term(v, dom[j], coeff);
    out.space.insert(v);
  }
  return out;
}

inline Subspace image_of_subspace(const TruncatedDlm& mod, Gen gen, const Subspace& s) {
  Subspace out{s.weight + weight(gen), {}};
  for (const auto& v : s.basis()) out.space.insert(act(mod, gen, v));
  return out;
}

inline std::size_t quotient_dim(const Subspace& s, const Subspace& t) {
  if (!s.contains(t)) throw NotContained("quotient_dim: subspace not contained");
  return s.dim() - t.dim();
}

inline Subspace complement(const Subspace& s, const Subspace& inside) {
  if (!inside.contains(s)) throw NotContained("complement: subspace not contained");
  return Subspace{inside.weight, subspace_complement(s.space, inside.space)};
}

inline Subspace intersection(const Subspace& s, const Subspace& t) {
  return Subspace{s.weight, subspace_intersection(s.space, t.space)};
}

/// Rank of A from the weight-(α−½) slice onto the weight-α slice equals the
/// slice dimension, for every α = −p + j/2 with |j| ≤ 2·window.
inline bool a_is_onto(const TruncatedDlm& mod, int window = 4) {
  for (int j = -2 * window; j <= 2 * window; ++j) {
    const Rational alpha = Rational(j, 2) - mod.p();
    Subspace target = full_slice(mod, alpha);
    Subspace img = image_of_subspace(mod, Gen::A, full_slice(mod, alpha - Rational(1, 2)));
    if (img.dim() != target.dim()) return false;
  }
  return true;
}

}  // namespace ospcoh
