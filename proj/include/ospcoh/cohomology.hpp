#pragma once

// Per-weight coboundary blocks, brute-force H^n dimensions, the closed-form
// predictions and the structural checks built on them.

#include "ospcoh/cochain.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ospcoh {

class HypothesisViolated : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NotProportional : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Runs fn(items[i]) for all i on up to `threads` workers; results keep the
/// input order.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn fn, unsigned threads = 0) {
  using R = std::invoke_result_t<Fn&, const T&>;
  std::vector<std::optional<R>> slots(items.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct WeightBlock {
  int degree = 0;
  Rational weight;
  Algebra algebra = Algebra::osp;
  std::optional<int> parity;
  CellBasis domain;      // C^n_w
  CellBasis codomain;    // C^{n+1}_w
  SparseMatrix outgoing;  // ∂: C^n_w → C^{n+1}_w
  CellBasis previous;     // C^{n−1}_w (empty for n = 0)
  SparseMatrix incoming;  // ∂: C^{n−1}_w → C^n_w
};

inline WeightBlock build_block(const TruncatedDlm& mod, int n, const Rational& w,
                               std::optional<int> parity_filter = std::nullopt, Algebra alg = Algebra::osp,
                               const StructureTable& table = adopted_table()) {
  WeightBlock b;
  b.degree = n;
  b.weight = w;
  b.algebra = alg;
  b.parity = parity_filter;
  b.domain = cell_basis(mod, alg, n, w, parity_filter);
  b.codomain = cell_basis(mod, alg, n + 1, w, parity_filter);
  b.outgoing = coboundary_matrix(mod, coboundary_stencil(table, alg, n), b.domain, b.codomain);
  if (n > 0) {
    b.previous = cell_basis(mod, alg, n - 1, w, parity_filter);
    b.incoming = coboundary_matrix(mod, coboundary_stencil(table, alg, n - 1), b.previous, b.domain);
  } else {
    b.incoming = SparseMatrix(b.domain.size(), 0);
  }
  return b;
}

inline Cochain cochain_from_cells(const TruncatedDlm& mod, int n, int par, const SparseVec<std::size_t>& x,
                                  const CellBasis& basis) {
  Cochain f(n, par, mod);
  for (const auto& [u, v] : from_cells(x, basis)) f.set(u, v);
  return f;
}

struct HDim {
  std::size_t total = 0;
  std::size_t even = 0;
  std::size_t odd = 0;
  friend bool operator==(const HDim&, const HDim&) = default;
};

/// dim ker ∂_n − rank ∂_{n−1} on the weight-w part, split by cochain parity.
inline HDim h_dim(const TruncatedDlm& mod, int n, const Rational& w, Algebra alg = Algebra::osp,
                  const StructureTable& table = adopted_table()) {
  HDim out;
  for (int par : {0, 1}) {
    const WeightBlock b = build_block(mod, n, w, par, alg, table);
    const std::size_t d = b.domain.size() - rank(b.outgoing) - (n > 0 ? rank(b.incoming) : 0);
    (par == 0 ? out.even : out.odd) = d;
    out.total += d;
  }
  return out;
}

/// Dimensions for n = 0..nmax at weight w with each rank computed once.
inline std::vector<HDim> h_dims(const TruncatedDlm& mod, int nmax, const Rational& w, Algebra alg = Algebra::osp,
                                unsigned threads = 1, const StructureTable& table = adopted_table()) {
  struct Item {
    int n;
    int par;
  };
  std::vector<Item> items;
  for (int n = 0; n <= nmax; ++n)
    for (int par : {0, 1}) items.push_back({n, par});
  // rank of ∂_n and size of C^n_w per item
  auto ranks = parallel_map(
      items,
      [&](const Item& it) {
        const CellBasis dom = cell_basis(mod, alg, it.n, w, it.par);
        const CellBasis cod = cell_basis(mod, alg, it.n + 1, w, it.par);
        const SparseMatrix m = coboundary_matrix(mod, coboundary_stencil(table, alg, it.n), dom, cod);
        return std::make_pair(dom.size(), rank(m));
      },
      threads);
  std::vector<HDim> out(static_cast<std::size_t>(nmax) + 1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto [n, par] = items[i];
    std::size_t prev_rank = n > 0 ? ranks[i - 2].second : 0;
    const std::size_t d = ranks[i].first - ranks[i].second - prev_rank;
    (par == 0 ? out[n].even : out[n].odd) = d;
    out[n].total += d;
  }
  return out;
}

// ---- closed-form predictions ----

using DimTable = std::vector<std::size_t>;  // index = degree

inline DimTable dims_from(std::size_t d0, std::size_t q, int nmax) {
  DimTable t(static_cast<std::size_t>(nmax) + 1, 0);
  if (nmax >= 0) t[0] = d0;
  if (nmax >= 1) t[1] = d0 + q;
  if (nmax >= 2) t[2] = q;
  return t;
}

/// d0 = dim(ker A ∩ ker B)^0, q = dim (ker A)^{−½} / B((ker A)^0).
inline DimTable predict_theorem(const TruncatedDlm& mod, int nmax = 4) {
  if (!a_is_onto(mod)) throw HypothesisViolated("predict_theorem: A is not onto on the truncation");
  const std::size_t d0 = kernel_slice(mod, {Gen::A, Gen::B}, Rational(0)).dim();
  const Subspace ka_half = kernel_slice(mod, {Gen::A}, Rational(-1, 2));
  const Subspace b_img = image_of_subspace(mod, Gen::B, kernel_slice(mod, {Gen::A}, Rational(0)));
  return dims_from(d0, quotient_dim(ka_half, b_img), nmax);
}

/// The case table on p = μ − λ: p = 0 gives (1,1,0,…); p = k+½ with λ = −k/2
/// gives (1,2,1,0,…); otherwise 0.
inline DimTable predict_proposition(const Rational& lambda, const Rational& mu, int nmax = 4) {
  const Rational p = mu - lambda;
  if (p.is_zero()) return dims_from(1, 0, nmax);
  const Rational k = p - Rational(1, 2);
  if (k.is_integer() && k.sign() >= 0 && lambda == Rational(-1, 2) * k) return dims_from(1, 1, nmax);
  return dims_from(0, 0, nmax);
}

/// d0 = dim(ker X ∩ ker Y)^0, q = dim (ker X)^{−1} / Y((ker X)^0).
inline DimTable predict_sl2(const TruncatedDlm& mod, int nmax = 3) {
  const std::size_t d0 = kernel_slice(mod, {Gen::X, Gen::Y}, Rational(0)).dim();
  const Subspace kx = kernel_slice(mod, {Gen::X}, Rational(-1));
  const Subspace y_img = image_of_subspace(mod, Gen::Y, kernel_slice(mod, {Gen::X}, Rational(0)));
  return dims_from(d0, quotient_dim(kx, y_img), nmax);
}

/// K large enough that the weight-0 slices near the boundary behave as in the
/// full module.
inline int guarded_K(const Rational& p, int K) {
  const Rational ap = p.sign() < 0 ? -p : p;
  return std::max(K, static_cast<int>(ap.ceil().get_si()) + 1);
}

// ---- structural checks ----

namespace detail {

inline SparseMatrix select_columns(const SparseMatrix& m, const std::vector<std::size_t>& cols) {
  std::map<std::size_t, std::size_t> local;
  for (std::size_t j = 0; j < cols.size(); ++j) local.emplace(cols[j], j);
  SparseMatrix out(m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r))
      if (auto it = local.find(c); it != local.end()) out.set(r, it->second, v);
  return out;
}

/// Stacks m with one unit row per listed column.
inline SparseMatrix with_coordinate_rows(const SparseMatrix& m, const std::vector<std::size_t>& cols) {
  SparseMatrix out(m.rows() + cols.size(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) out.set(r, c, v);
  for (std::size_t i = 0; i < cols.size(); ++i) out.set(m.rows() + i, cols[i], Rational(1));
  return out;
}

inline SuperMonomial power_of_b(int n) {
  std::array<std::uint8_t, 5> counts{};
  counts[index(Gen::B)] = static_cast<std::uint8_t>(n);
  return SuperMonomial::from_counts(counts);
}

inline SuperMonomial h_times_power_of_b(int n) {
  std::array<std::uint8_t, 5> counts{};
  counts[index(Gen::H)] = 1;
  counts[index(Gen::B)] = static_cast<std::uint8_t>(n);
  return SuperMonomial::from_counts(counts);
}

struct ReducedCocycles {
  WeightBlock block;
  std::vector<std::size_t> columns;  // cells on monomials without A
  SparseMatrix restricted;           // ∂ on those columns
};

inline ReducedCocycles reduced_cocycles(const TruncatedDlm& mod, int n, const Rational& w, int par) {
  ReducedCocycles r{build_block(mod, n, w, par), {}, {}};
  for (std::size_t j = 0; j < r.block.domain.size(); ++j)
    if (!r.block.domain.cells[j].mono.contains(Gen::A)) r.columns.push_back(j);
  r.restricted = select_columns(r.block.outgoing, r.columns);
  return r;
}

}  // namespace detail

/// Dimension of the reduced n-cocycles at (w, parity) that vanish on B^n.
/// Zero means f ↦ f(B^n) is injective on reduced cocycles.
inline std::size_t localization_kernel_dim(const TruncatedDlm& mod, int n, const Rational& w, int par) {
  auto r = detail::reduced_cocycles(mod, n, w, par);
  const SuperMonomial bn = detail::power_of_b(n);
  std::vector<std::size_t> coords;
  for (std::size_t j = 0; j < r.columns.size(); ++j)
    if (r.block.domain.cells[r.columns[j]].mono == bn) coords.push_back(j);
  return kernel_basis(detail::with_coordinate_rows(r.restricted, coords)).size();
}

/// Every reduced n-cocycle (n ≥ 2) at (w, parity) vanishing on H·B^{n−1} is
/// a coboundary. Returns the number of basis cocycles that are not.
inline std::size_t reduced_coboundary_failures(const TruncatedDlm& mod, int n, const Rational& w, int par) {
  if (n < 2) throw std::invalid_argument("reduced_coboundary_failures: needs n >= 2");
  auto r = detail::reduced_cocycles(mod, n, w, par);
  const SuperMonomial hb = detail::h_times_power_of_b(n - 1);
  std::vector<std::size_t> coords;
  for (std::size_t j = 0; j < r.columns.size(); ++j)
    if (r.block.domain.cells[r.columns[j]].mono == hb) coords.push_back(j);
  std::size_t failures = 0;
  for (const auto& z : kernel_basis(detail::with_coordinate_rows(r.restricted, coords))) {
    SparseVec<std::size_t> full;
    for (const auto& [j, c] : z) full.emplace(r.columns[j], c);
    if (!solve(r.block.incoming, full)) ++failures;
  }
  return failures;
}

/// Basis of H^n_w representatives: cocycles completing B^n to Z^n.
inline std::vector<Cochain> class_representatives(const TruncatedDlm& mod, int n, const Rational& w, int par,
                                                  Algebra alg = Algebra::osp) {
  const WeightBlock b = build_block(mod, n, w, par, alg);
  Echelon<std::size_t> acc;
  if (n > 0)
    for (std::size_t j = 0; j < b.previous.size(); ++j) acc.insert(b.incoming.column(j));
  std::vector<Cochain> out;
  for (const auto& z : kernel_basis(b.outgoing))
    if (acc.insert(z)) out.push_back(cochain_from_cells(mod, n, par, z, b.domain));
  return out;
}

struct ClassCheck {
  int degree = 0;
  int parity = 0;
  Cochain representative;
  bool restriction_nontrivial = false;
  bool localized_nonzero = false;  // reduced representative nonzero on B^n
};

struct RestrictionReport {
  TruncatedDlm module;
  std::vector<ClassCheck> classes;
  [[nodiscard]] bool ok() const {
    return std::all_of(classes.begin(), classes.end(),
                       [](const ClassCheck& c) { return c.restriction_nontrivial && c.localized_nonzero; });
  }
};

/// For a basis of H^n at weight 0 (n ≤ nmax): the sl(2) restriction is not an
/// sl(2) coboundary, and the reduced representative does not vanish on B^n.
inline RestrictionReport restriction_injectivity_check(const TruncatedDlm& mod, int nmax = 2) {
  RestrictionReport rep{mod, {}};
  for (int n = 0; n <= nmax; ++n)
    for (int par : {0, 1})
      for (auto& f : class_representatives(mod, n, Rational(0), par)) {
        ClassCheck c{n, par, f, false, false};
        const Sl2Cochain r = restrict_sl2(f);
        c.restriction_nontrivial = !r.is_zero() && !is_sl2_coboundary(r).has_value();
        const Cochain red = reduce(f).reduced;
        c.localized_nonzero = n == 0 ? !red.is_zero() : !red.at(detail::power_of_b(n)).empty();
        c.representative = std::move(f);
        rep.classes.push_back(std::move(c));
      }
  return rep;
}

struct LemmaReport {
  std::size_t preimage_dim = 0;  // {v ∈ (ker A)^{−½} : Bv ∈ Y((ker X)^0)}
  std::size_t image_dim = 0;     // B((ker A)^0)
  bool holds = false;
};

/// Elements of (ker A)^{−½} whose B-image lies in Y((ker X)^0) lie in
/// B((ker A)^0).
inline LemmaReport lemma_check(const TruncatedDlm& mod) {
  const auto s = kernel_slice(mod, {Gen::A}, Rational(-1, 2)).basis();
  const auto y = image_of_subspace(mod, Gen::Y, kernel_slice(mod, {Gen::X}, Rational(0))).basis();
  const Subspace target = image_of_subspace(mod, Gen::B, kernel_slice(mod, {Gen::A}, Rational(0)));
  std::vector<ModuleVector> cols;
  for (const auto& v : s) cols.push_back(act(mod, Gen::B, v));
  for (const auto& v : y) cols.push_back(scaled(v, Rational(-1)));
  std::map<BasisVector, std::size_t> rows;
  for (const auto& v : cols)
    for (const auto& [bv, c] : v) rows.emplace(bv, 0);
  std::size_t n = 0;
  for (auto& [bv, i] : rows) i = n++;
  SparseMatrix m(n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [bv, c] : cols[j]) m.set(rows.at(bv), j, c);
  Echelon<BasisVector> pre;
  for (const auto& x : kernel_basis(m)) {
    ModuleVector v;
    for (const auto& [j, c] : x)
      if (j < s.size()) axpy(v, c, s[j]);
    pre.insert(v);
  }
  LemmaReport out{pre.dim(), target.dim(), subspace_contains(target.space, pre)};
  return out;
}

// ---- cup product and the Gelfand–Fuchs restriction ----

struct GelfandFuchsPair {
  std::string f, g;
  ModuleVector value;  // Ω_k(X_f, X_g)
  Rational omega;      // ω(f, g)
};

struct GelfandFuchsReport {
  int k = 0;
  CupSign sign = CupSign::printed;
  Cochain omega_k;
  Rational C;                // Ω_k(X_f,X_g) = C·ω(f,g)·(k∂θ∂x^{k−1} − (k+1)θ∂x^k)
  Rational ratio_to_printed;  // C / (−(−1)^k)
  std::vector<GelfandFuchsPair> pairs;
  bool cocycle = false;
  bool nontrivial = false;
  bool sl2_nontrivial = false;
};

/// k∂θ∂x^{k−1} − (k+1)θ∂x^k in the module basis.
inline ModuleVector gelfand_fuchs_operator(int k) {
  OpPoly t = op(0, 1, 0, k, Rational(-(k + 1)));
  if (k > 0) t = t + op(0, 0, 1, k - 1, Rational(k));
  return from_operator(t);
}

inline GelfandFuchsReport gelfand_fuchs_check(int k) {
  if (k < 0) throw std::invalid_argument("gelfand_fuchs_check: k must be non-negative");
  const DerivedCocycle f = make_f_k(k);
  const DerivedCocycle h = make_h_lambda(Rational(-k, 2), f.cocycle.module.K);
  CupResult cr = cup_cocycle(f.cocycle, h.cocycle);
  GelfandFuchsReport rep;
  rep.k = k;
  rep.sign = cr.sign;
  rep.cocycle = coboundary(cr.omega).is_zero();

  // X_1 = X, X_x = −H, X_{x²} = −Y
  struct Field {
    std::string name;
    SuperFunction poly;
    LieVec element;
  };
  const std::vector<Field> fields{{"1", fn(0, 0), unit(Gen::X)},
                                  {"x", fn(1, 0), Rational(-1) * unit(Gen::H)},
                                  {"x^2", fn(2, 0), Rational(-1) * unit(Gen::Y)}};
  auto omega_value = [&](const LieVec& u, const LieVec& v) {
    ModuleVector out;
    for (Gen a : kGenerators)
      for (Gen b : kGenerators) {
        const Rational c = u[index(a)] * v[index(b)];
        if (!c.is_zero()) axpy(out, c, evaluate(cr.omega, {a, b}));
      }
    return out;
  };
  const ModuleVector T = gelfand_fuchs_operator(k);
  std::optional<Rational> C;
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = i + 1; j < fields.size(); ++j) {
      const auto& F = fields[i];
      const auto& G = fields[j];
      const SuperFunction w = multiply(d_x(F.poly), d_x(d_x(G.poly))) - multiply(d_x(G.poly), d_x(d_x(F.poly)));
      Rational wc;
      for (const auto& [mono, c] : w) {
        if (mono.m != 0 || mono.eps != 0) throw NotProportional("ω(f,g) is not constant on sl(2) pairs");
        wc = c;
      }
      const ModuleVector val = omega_value(F.element, G.element);
      rep.pairs.push_back({F.name, G.name, val, wc});
      if (wc.is_zero()) {
        if (!val.empty()) throw NotProportional("Ω_k nonzero where ω vanishes");
        continue;
      }
      const ModuleVector unit_t = scaled(T, wc);
      const Rational c = val.empty() ? Rational(0) : val.begin()->second / unit_t.at(val.begin()->first);
      if (val.empty() || scaled(unit_t, c) != val) throw NotProportional("Ω_k(X_f,X_g) not proportional to ω·T");
      if (C && *C != c) throw NotProportional("Ω_k: constant differs between pairs");
      C = c;
    }
  rep.C = C.value_or(Rational(0));
  rep.ratio_to_printed = rep.C / Rational(-parity_sign(k));
  rep.nontrivial = !is_coboundary(cr.omega).has_value();
  rep.sl2_nontrivial = !is_sl2_coboundary(restrict_sl2(cr.omega)).has_value();
  rep.omega_k = std::move(cr.omega);
  return rep;
}

// ---- reports ----

struct ReportOptions {
  int K = 3;
  int nmax = 4;
  int window = 2;  // weights j/2 with |j| ≤ 2·window
  unsigned threads = 0;
};

struct CohomologyReport {
  Rational lambda;
  Rational mu;
  int K = 3;
  int nmax = 4;
  std::map<int, std::map<Rational, HDim>> computed;  // n → w → dims
  DimTable theorem;
  DimTable proposition;
  bool weight_vanishing = true;  // all w ≠ 0 entries are 0
  bool match = false;            // weight-0 totals equal both predictions
};

inline CohomologyReport compute_report(const Rational& lambda, const Rational& mu, const ReportOptions& opt = {}) {
  if (opt.K < 0) throw std::invalid_argument("compute_report: K must be non-negative");
  if (opt.nmax < 0 || opt.nmax > 6) throw std::invalid_argument("compute_report: nmax must lie in 0..6");
  CohomologyReport rep;
  rep.lambda = lambda;
  rep.mu = mu;
  rep.K = guarded_K(mu - lambda, opt.K);
  rep.nmax = opt.nmax;
  const TruncatedDlm mod{lambda, mu, rep.K};

  std::vector<Rational> weights;
  for (int j = -2 * opt.window; j <= 2 * opt.window; ++j) weights.push_back(Rational(j, 2));
  auto per_weight =
      parallel_map(weights, [&](const Rational& w) { return h_dims(mod, opt.nmax, w, Algebra::osp, 1); }, opt.threads);
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (int n = 0; n <= opt.nmax; ++n) {
      const HDim& d = per_weight[i][n];
      rep.computed[n][weights[i]] = d;
      if (!weights[i].is_zero() && d.total != 0) rep.weight_vanishing = false;
    }
  rep.theorem = predict_theorem(mod, opt.nmax);
  rep.proposition = predict_proposition(lambda, mu, opt.nmax);
  rep.match = true;
  for (int n = 0; n <= opt.nmax; ++n) {
    const std::size_t c = rep.computed[n][Rational(0)].total;
    if (c != rep.theorem[n] || c != rep.proposition[n]) rep.match = false;
  }
  return rep;
}

}  // namespace ospcoh
