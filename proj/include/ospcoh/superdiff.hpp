#pragma once

// Polynomial-coefficient differential operators on R^{1|1}.
//
// Operators are normal ordered as x^m θ^e1 ∂θ^e2 ∂x^k. ∂θ is a left
// derivative, so ∂θ∘θ + θ∘∂θ = 1; x and ∂x commute with θ and ∂θ.

#include "ospcoh/linalg.hpp"
#include "ospcoh/superalgebra.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ospcoh {

/// x^m θ^eps.
struct FnMonomial {
  int m = 0;
  int eps = 0;
  friend auto operator<=>(const FnMonomial&, const FnMonomial&) = default;
};

using SuperFunction = SparseVec<FnMonomial>;

/// x^m θ^e1 ∂θ^e2 ∂x^k.
struct OpMonomial {
  int m = 0;
  int e1 = 0;
  int e2 = 0;
  int k = 0;
  [[nodiscard]] int parity() const { return (e1 + e2) % 2; }
  friend auto operator<=>(const OpMonomial&, const OpMonomial&) = default;
};

using OpPoly = SparseVec<OpMonomial>;

namespace detail {

inline Rational falling_factorial(int n, int j) {
  Rational r(1);
  for (int i = 0; i < j; ++i) r *= Rational(n - i);
  return r;
}

inline Rational binomial(int n, int j) {
  if (j < 0 || j > n) return Rational(0);
  return falling_factorial(n, j) / falling_factorial(j, j);
}

}  // namespace detail

// ---- functions ----

inline SuperFunction fn(int m, int eps, const Rational& c = Rational(1)) {
  SuperFunction f;
  add_term(f, FnMonomial{m, eps}, c);
  return f;
}

inline SuperFunction multiply(const SuperFunction& f, const SuperFunction& g) {
  SuperFunction out;
  for (const auto& [a, ca] : f)
    for (const auto& [b, cb] : g) {
      if (a.eps == 1 && b.eps == 1) continue;
      add_term(out, FnMonomial{a.m + b.m, a.eps + b.eps}, ca * cb);
    }
  return out;
}

inline SuperFunction d_x(const SuperFunction& f) {
  SuperFunction out;
  for (const auto& [t, c] : f)
    if (t.m > 0) add_term(out, FnMonomial{t.m - 1, t.eps}, c * Rational(t.m));
  return out;
}

inline SuperFunction d_theta(const SuperFunction& f) {
  SuperFunction out;
  for (const auto& [t, c] : f)
    if (t.eps == 1) add_term(out, FnMonomial{t.m, 0}, c);
  return out;
}

/// θ·f
inline SuperFunction times_theta(const SuperFunction& f) {
  SuperFunction out;
  for (const auto& [t, c] : f)
    if (t.eps == 0) add_term(out, FnMonomial{t.m, 1}, c);
  return out;
}

/// η = ∂θ + θ∂x
inline SuperFunction eta(const SuperFunction& f) { return d_theta(f) + times_theta(d_x(f)); }
/// η̄ = ∂θ − θ∂x
inline SuperFunction eta_bar(const SuperFunction& f) { return d_theta(f) - times_theta(d_x(f)); }

/// 0 or 1 for a parity-homogeneous nonzero function; nullopt otherwise.
inline std::optional<int> fn_parity(const SuperFunction& f) {
  std::optional<int> p;
  for (const auto& [t, c] : f) {
    if (p && *p != t.eps) return std::nullopt;
    p = t.eps;
  }
  return p;
}

/// {F,G} = FG′ − F′G + ½ η(F) η̄(G)
inline SuperFunction contact_bracket(const SuperFunction& f, const SuperFunction& g) {
  SuperFunction out = multiply(f, d_x(g)) - multiply(d_x(f), g);
  axpy(out, Rational(1, 2), multiply(eta(f), eta_bar(g)));
  return out;
}

// ---- operators ----

inline OpPoly op(int m, int e1, int e2, int k, const Rational& c = Rational(1)) {
  OpPoly p;
  add_term(p, OpMonomial{m, e1, e2, k}, c);
  return p;
}

inline OpPoly identity_op() { return op(0, 0, 0, 0); }
inline OpPoly dx_op() { return op(0, 0, 0, 1); }
inline OpPoly dtheta_op() { return op(0, 0, 1, 0); }
inline OpPoly eta_op() { return op(0, 0, 1, 0) + op(0, 1, 0, 1); }
inline OpPoly eta_bar_op() { return op(0, 0, 1, 0) - op(0, 1, 0, 1); }

/// Multiplication by a function.
inline OpPoly multiplication(const SuperFunction& f) {
  OpPoly p;
  for (const auto& [t, c] : f) add_term(p, OpMonomial{t.m, t.eps, 0, 0}, c);
  return p;
}

inline std::optional<int> op_parity(const OpPoly& p) {
  std::optional<int> par;
  for (const auto& [t, c] : p) {
    if (par && *par != t.parity()) return std::nullopt;
    par = t.parity();
  }
  return par;
}

/// Normal-ordered product a∘b.
inline OpPoly compose(const OpPoly& a, const OpPoly& b) {
  OpPoly out;
  struct ThetaPart {
    int e1, e2, sign;
  };
  for (const auto& [p, cp] : a)
    for (const auto& [q, cq] : b) {
      // θ^{p.e1} ∂θ^{p.e2} θ^{q.e1} ∂θ^{q.e2}
      std::vector<ThetaPart> theta;
      if (p.e2 == 0) {
        if (!(p.e1 == 1 && q.e1 == 1)) theta.push_back({p.e1 | q.e1, q.e2, 1});
      } else if (q.e1 == 0) {
        if (q.e2 == 0) theta.push_back({p.e1, 1, 1});
      } else {
        theta.push_back({p.e1, q.e2, 1});
        if (p.e1 == 0 && q.e2 == 0) theta.push_back({1, 1, -1});
      }
      if (theta.empty()) continue;
      // ∂x^{p.k} x^{q.m} = Σ_j C(k,j) q.m!/(q.m-j)! x^{q.m-j} ∂x^{k-j}
      for (int j = 0; j <= std::min(p.k, q.m); ++j) {
        const Rational leibniz =
            detail::binomial(p.k, j) * detail::falling_factorial(q.m, j) * cp * cq;
        for (const auto& t : theta)
          add_term(out, OpMonomial{p.m + q.m - j, t.e1, t.e2, p.k - j + q.k},
                   leibniz * Rational(t.sign));
      }
    }
  return out;
}

/// a∘b − (−1)^{ab} b∘a for parity-homogeneous operators.
inline OpPoly graded_commutator(const OpPoly& a, const OpPoly& b) {
  const int pa = op_parity(a).value_or(0);
  const int pb = op_parity(b).value_or(0);
  OpPoly out = compose(a, b);
  axpy(out, Rational(-parity_sign(pa * pb)), compose(b, a));
  return out;
}

inline SuperFunction apply(const OpPoly& p, const SuperFunction& f) {
  SuperFunction out;
  for (const auto& [t, ct] : p)
    for (const auto& [u, cu] : f) {
      if (t.k > u.m) continue;
      Rational c = ct * cu * detail::falling_factorial(u.m, t.k);
      int xm = u.m - t.k;
      int eps = u.eps;
      if (t.e2 == 1) {
        if (eps == 0) continue;
        eps = 0;
      }
      if (t.e1 == 1) {
        if (eps == 1) continue;
        eps = 1;
      }
      add_term(out, FnMonomial{xm + t.m, eps}, c);
    }
  return out;
}

/// X_G = G∂x + ½ η(G) η̄
inline OpPoly vector_field(const SuperFunction& g) {
  OpPoly out = compose(multiplication(g), dx_op());
  axpy(out, Rational(1, 2), compose(multiplication(eta(g)), eta_bar_op()));
  return out;
}

/// Action of X_G on λ-densities: X_G + λ G′.
inline OpPoly density_action(const SuperFunction& g, const Rational& lambda) {
  OpPoly out = vector_field(g);
  axpy(out, lambda, multiplication(d_x(g)));
  return out;
}

/// Scale factors identifying (H, X, Y, A, B) with multiples of
/// (X_x, X_1, X_{x²}, X_θ, X_{xθ}).
struct RealizationConstants {
  Rational cH{1}, cX{1}, cY{1}, cA{1}, cB{1};

  [[nodiscard]] const Rational& of(Gen g) const {
    switch (g) {
      case Gen::X: return cX;
      case Gen::A: return cA;
      case Gen::H: return cH;
      case Gen::B: return cB;
      case Gen::Y: return cY;
    }
    throw std::logic_error("bad generator");
  }
  Rational& of(Gen g) { return const_cast<Rational&>(std::as_const(*this).of(g)); }

  friend bool operator==(const RealizationConstants&, const RealizationConstants&) = default;
};

/// The mapping as printed: (−X_x, X_1, −X_{x²}, 2X_θ, X_{xθ}) = (H, X, Y, A, B).
inline RealizationConstants printed_realization() {
  return {Rational(-1), Rational(1), Rational(-1), Rational(2), Rational(1)};
}

/// Unscaled contact symbol of a generator: H→x, X→1, Y→x², A→θ, B→xθ.
inline SuperFunction base_symbol(Gen g) {
  switch (g) {
    case Gen::X: return fn(0, 0);
    case Gen::A: return fn(0, 1);
    case Gen::H: return fn(1, 0);
    case Gen::B: return fn(1, 1);
    case Gen::Y: return fn(2, 0);
  }
  throw std::logic_error("bad generator");
}

inline SuperFunction symbol(Gen g, const RealizationConstants& c) {
  return scaled(base_symbol(g), c.of(g));
}

/// Generator acting on D_{λ,μ}: L_μ(g)∘T − (−1)^{gT} T∘L_λ(g).
inline OpPoly derived_module_action(Gen gen, const OpPoly& t, const Rational& lambda,
                                    const Rational& mu, const RealizationConstants& c) {
  const SuperFunction g = symbol(gen, c);
  const int pt = op_parity(t).value_or(0);
  OpPoly out = compose(density_action(g, mu), t);
  axpy(out, Rational(-parity_sign(pt * parity(gen))), compose(t, density_action(g, lambda)));
  return out;
}

/// True iff the graded commutators of the scaled contact fields reproduce
/// every bracket of `table` exactly.
inline bool realization_reproduces(const StructureTable& table, const RealizationConstants& c) {
  for (Gen u : kGenerators)
    for (Gen v : kGenerators) {
      OpPoly lhs = graded_commutator(vector_field(symbol(u, c)), vector_field(symbol(v, c)));
      OpPoly rhs;
      for (Gen w : kGenerators) axpy(rhs, table.bracket(u, v)[index(w)], vector_field(symbol(w, c)));
      if (lhs != rhs) return false;
    }
  return true;
}

/// Finds scale factors in {±1, ±2, ±4, ±1/2, ±1/4} such that
/// c_U c_V {g_U, g_V} = Σ_W t_{UV}^W c_W g_W for all pairs. Backtracking over
/// H, X, Y, A, B; the first solution in candidate order is returned.
inline std::optional<RealizationConstants> solve_realization_constants(const StructureTable& table) {
  // beta[u][v][w]: coefficient of base_symbol(w) in {base_symbol(u), base_symbol(v)}.
  std::array<std::array<LieVec, 5>, 5> beta{};
  for (Gen u : kGenerators)
    for (Gen v : kGenerators) {
      SuperFunction br = contact_bracket(base_symbol(u), base_symbol(v));
      for (Gen w : kGenerators) {
        const FnMonomial key = base_symbol(w).begin()->first;
        auto it = br.find(key);
        if (it != br.end()) {
          beta[index(u)][index(v)][index(w)] = it->second;
          br.erase(it);
        }
      }
      if (!br.empty()) return std::nullopt;
    }

  std::vector<Rational> candidates;
  for (long n : {1, 2, 4})
    for (long d : {1, 2, 4}) {
      if (n != 1 && d != 1) continue;
      Rational r(n, d);
      candidates.push_back(r);
      candidates.push_back(-r);
    }

  constexpr std::array<Gen, 5> order{Gen::H, Gen::X, Gen::Y, Gen::A, Gen::B};
  std::array<std::optional<Rational>, 5> assigned{};
  auto consistent = [&]() {
    for (Gen u : kGenerators)
      for (Gen v : kGenerators)
        for (Gen w : kGenerators) {
          const auto& cu = assigned[index(u)];
          const auto& cv = assigned[index(v)];
          const auto& cw = assigned[index(w)];
          if (!cu || !cv || !cw) continue;
          if (*cu * *cv * beta[index(u)][index(v)][index(w)] != table.bracket(u, v)[index(w)] * *cw)
            return false;
        }
    return true;
  };
  std::optional<RealizationConstants> found;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) {
      RealizationConstants c;
      for (Gen g : kGenerators) c.of(g) = *assigned[index(g)];
      found = c;
      return true;
    }
    for (const auto& r : candidates) {
      assigned[index(order[depth])] = r;
      if (consistent() && self(self, depth + 1)) return true;
    }
    assigned[index(order[depth])].reset();
    return false;
  };
  search(search, 0);
  return found;
}

// ---- text form: "x^2 θ ∂θ ∂x^3" ----

inline std::string to_string(const OpMonomial& t) {
  std::vector<std::string> f;
  if (t.m == 1) f.emplace_back("x");
  if (t.m > 1) f.push_back("x^" + std::to_string(t.m));
  if (t.e1) f.emplace_back("θ");
  if (t.e2) f.emplace_back("∂θ");
  if (t.k == 1) f.emplace_back("∂x");
  if (t.k > 1) f.push_back("∂x^" + std::to_string(t.k));
  std::string out;
  for (const auto& s : f) out += (out.empty() ? "" : " ") + s;
  return out;
}

/// Terms in decreasing monomial order, e.g. "1/2 ∂θ + 1/2 θ ∂x", "0" if empty.
inline std::string to_string(const OpPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [t, c] = *it;
    const bool neg = c.sign() < 0;
    const Rational a = neg ? -c : c;
    std::string body = to_string(t);
    std::string term;
    if (body.empty())
      term = a.str();
    else if (a == Rational(1))
      term = body;
    else
      term = a.str() + " " + body;
    if (out.empty())
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out;
}

/// Inverse of to_string(OpPoly). Accepts "∂x"/"dx", "∂θ"/"dtheta",
/// "θ"/"theta" spellings.
inline OpPoly parse_op(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; is >> tok;) tokens.push_back(tok);
  OpPoly out;
  int sign = 1;
  Rational coeff(1);
  OpMonomial mono;
  bool have_term = false;
  auto flush = [&]() {
    if (have_term) add_term(out, mono, coeff * Rational(sign));
    sign = 1;
    coeff = Rational(1);
    mono = OpMonomial{};
    have_term = false;
  };
  auto power = [](const std::string& tok, const std::string& base) -> std::optional<int> {
    if (tok == base) return 1;
    if (tok.rfind(base + "^", 0) == 0) {
      std::string e = tok.substr(base.size() + 1);
      if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad exponent in operator token: " + tok);
      return std::stoi(e);
    }
    return std::nullopt;
  };
  for (std::string tok : tokens) {
    if (tok == "+" || tok == "-") {
      flush();
      sign = tok == "-" ? -1 : 1;
      continue;
    }
    if (tok.size() > 1 && tok[0] == '-' && !have_term) {
      sign = -sign;
      tok = tok.substr(1);
    }
    if (tok.find_first_not_of("0123456789/") == std::string::npos) {
      if (tok == "0" && !have_term) continue;
      coeff *= Rational::parse(tok);
      have_term = true;
      continue;
    }
    have_term = true;
    if (auto e = power(tok, "∂x"); e) {
      mono.k += *e;
    } else if (auto e2 = power(tok, "dx"); e2) {
      mono.k += *e2;
    } else if (tok == "∂θ" || tok == "dtheta") {
      mono.e2 = 1;
    } else if (tok == "θ" || tok == "theta") {
      mono.e1 = 1;
    } else if (auto e3 = power(tok, "x"); e3) {
      mono.m += *e3;
    } else {
      throw std::invalid_argument("unknown operator token: " + tok);
    }
  }
  flush();
  return out;
}

}  // namespace ospcoh
