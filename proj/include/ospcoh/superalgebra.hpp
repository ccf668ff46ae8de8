#pragma once

// osp(1|2): generators, bracket tables, graded signs and the super-monomial
// basis of cochain domains.

#include "ospcoh/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ospcoh {

/// Root vectors in canonical order (descending weight).
enum class Gen : std::uint8_t { X = 0, A = 1, H = 2, B = 3, Y = 4 };

inline constexpr std::array<Gen, 5> kGenerators{Gen::X, Gen::A, Gen::H, Gen::B, Gen::Y};
inline constexpr std::array<Gen, 3> kEvenGenerators{Gen::X, Gen::H, Gen::Y};

constexpr std::size_t index(Gen g) { return static_cast<std::size_t>(g); }
constexpr int parity(Gen g) { return (g == Gen::A || g == Gen::B) ? 1 : 0; }

/// Weight as a multiple of 1/2: X:2, A:1, H:0, B:-1, Y:-2.
constexpr int twice_weight(Gen g) {
  constexpr std::array<int, 5> w{2, 1, 0, -1, -2};
  return w[index(g)];
}
inline Rational weight(Gen g) { return Rational(twice_weight(g), 2); }

inline const char* name(Gen g) {
  constexpr std::array<const char*, 5> n{"X", "A", "H", "B", "Y"};
  return n[index(g)];
}

inline Gen parse_gen(std::string_view s) {
  for (Gen g : kGenerators)
    if (s == name(g)) return g;
  throw std::invalid_argument("unknown generator: " + std::string(s));
}

/// Element of the algebra in the basis (X, A, H, B, Y).
using LieVec = std::array<Rational, 5>;

inline LieVec unit(Gen g) {
  LieVec v{};
  v[index(g)] = Rational(1);
  return v;
}

inline bool is_zero(const LieVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

inline LieVec operator+(LieVec a, const LieVec& b) {
  for (std::size_t i = 0; i < 5; ++i) a[i] += b[i];
  return a;
}
inline LieVec operator-(LieVec a, const LieVec& b) {
  for (std::size_t i = 0; i < 5; ++i) a[i] -= b[i];
  return a;
}
inline LieVec operator*(const Rational& s, LieVec a) {
  for (auto& x : a) x *= s;
  return a;
}

/// Renders e.g. "2H", "-B", "1/2A", "X-2Y", "0".
inline std::string to_string(const LieVec& v) {
  std::string out;
  for (Gen g : kGenerators) {
    const Rational& c = v[index(g)];
    if (c.is_zero()) continue;
    std::string coeff;
    if (c == Rational(1))
      coeff = out.empty() ? "" : "+";
    else if (c == Rational(-1))
      coeff = "-";
    else
      coeff = (c.sign() > 0 && !out.empty() ? "+" : "") + c.str();
    out += coeff + name(g);
  }
  return out.empty() ? "0" : out;
}

/// Bracket coefficients [u,v] for all ordered pairs of generators.
class StructureTable {
public:
  StructureTable() = default;
  explicit StructureTable(std::string label) : label_(std::move(label)) {}

  /// Sets [u,v] and its graded-antisymmetric partner [v,u].
  void set(Gen u, Gen v, const LieVec& value) {
    coeffs_[index(u)][index(v)] = value;
    const int s = -parity_sign(parity(u) * parity(v));
    coeffs_[index(v)][index(u)] = Rational(s) * value;
  }

  [[nodiscard]] const LieVec& bracket(Gen u, Gen v) const { return coeffs_[index(u)][index(v)]; }

  [[nodiscard]] LieVec bracket(const LieVec& a, const LieVec& b) const {
    LieVec out{};
    for (Gen u : kGenerators) {
      if (a[index(u)].is_zero()) continue;
      for (Gen v : kGenerators) {
        if (b[index(v)].is_zero()) continue;
        out = out + (a[index(u)] * b[index(v)]) * bracket(u, v);
      }
    }
    return out;
  }

  [[nodiscard]] const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  [[nodiscard]] bool is_graded_antisymmetric() const {
    for (Gen u : kGenerators)
      for (Gen v : kGenerators) {
        const int s = parity_sign(parity(u) * parity(v));
        if (!is_zero(bracket(u, v) + Rational(s) * bracket(v, u))) return false;
      }
    return true;
  }

  [[nodiscard]] bool is_weight_additive() const {
    for (Gen u : kGenerators)
      for (Gen v : kGenerators)
        for (Gen w : kGenerators)
          if (!bracket(u, v)[index(w)].is_zero() &&
              twice_weight(w) != twice_weight(u) + twice_weight(v))
            return false;
    return true;
  }

  friend bool operator==(const StructureTable& a, const StructureTable& b) {
    return a.coeffs_ == b.coeffs_;
  }

private:
  std::string label_;
  std::array<std::array<LieVec, 5>, 5> coeffs_{};
};

/// The commutation relations exactly as printed. This table fails the graded
/// Jacobi identity; see audit.hpp for the repair.
inline StructureTable printed_table() {
  StructureTable t("printed");
  auto c = [](Gen g, long num = 1, long den = 1) { return Rational(num, den) * unit(g); };
  t.set(Gen::H, Gen::X, c(Gen::X));
  t.set(Gen::H, Gen::Y, c(Gen::Y, -1));
  t.set(Gen::X, Gen::Y, c(Gen::H, 2));
  t.set(Gen::H, Gen::A, c(Gen::A, 1, 2));
  t.set(Gen::X, Gen::A, LieVec{});
  t.set(Gen::Y, Gen::A, c(Gen::B, -1));
  t.set(Gen::H, Gen::B, c(Gen::B, -1, 2));
  t.set(Gen::X, Gen::B, c(Gen::A));
  t.set(Gen::Y, Gen::B, LieVec{});
  t.set(Gen::A, Gen::A, c(Gen::X, 2));
  t.set(Gen::A, Gen::B, c(Gen::H, 2));
  t.set(Gen::B, Gen::B, c(Gen::Y, -2));
  return t;
}

/// [u,[v,w]] - [[u,v],w] - (-1)^{uv}[v,[u,w]]: zero iff ad_u acts as a graded
/// derivation on [v,w].
inline LieVec jacobi_defect(const StructureTable& t, Gen u, Gen v, Gen w) {
  const LieVec uv_w = t.bracket(t.bracket(u, v), unit(w));
  const LieVec u_vw = t.bracket(unit(u), t.bracket(v, w));
  const LieVec v_uw = t.bracket(unit(v), t.bracket(u, w));
  return u_vw - uv_w - Rational(parity_sign(parity(u) * parity(v))) * v_uw;
}

struct JacobiFailure {
  Gen u, v, w;
  LieVec defect;
};

inline std::vector<JacobiFailure> jacobi_failures(const StructureTable& t) {
  std::vector<JacobiFailure> out;
  for (Gen u : kGenerators)
    for (Gen v : kGenerators)
      for (Gen w : kGenerators) {
        LieVec d = jacobi_defect(t, u, v, w);
        if (!is_zero(d)) out.push_back({u, v, w, d});
      }
  return out;
}

inline bool satisfies_jacobi(const StructureTable& t) {
  for (Gen u : kGenerators)
    for (Gen v : kGenerators)
      for (Gen w : kGenerators)
        if (!is_zero(jacobi_defect(t, u, v, w))) return false;
  return true;
}

/// Basis element U_1...U_n of the graded-antisymmetric power: multiplicities
/// per generator, with X, H, Y each appearing at most once.
class SuperMonomial {
public:
  SuperMonomial() = default;

  static SuperMonomial from_counts(std::array<std::uint8_t, 5> counts) {
    for (Gen g : kEvenGenerators)
      if (counts[index(g)] > 1) throw std::invalid_argument("even generator repeated in monomial");
    SuperMonomial m;
    m.counts_ = counts;
    return m;
  }

  [[nodiscard]] std::uint8_t count(Gen g) const { return counts_[index(g)]; }
  [[nodiscard]] int degree() const {
    int d = 0;
    for (auto c : counts_) d += c;
    return d;
  }
  [[nodiscard]] int parity() const { return (count(Gen::A) + count(Gen::B)) % 2; }
  [[nodiscard]] int twice_weight() const {
    int w = 0;
    for (Gen g : kGenerators) w += count(g) * ospcoh::twice_weight(g);
    return w;
  }
  [[nodiscard]] Rational weight() const { return Rational(twice_weight(), 2); }
  [[nodiscard]] bool contains(Gen g) const { return count(g) > 0; }

  /// Generators in canonical order, with multiplicity.
  [[nodiscard]] std::vector<Gen> tuple() const {
    std::vector<Gen> out;
    for (Gen g : kGenerators)
      for (int i = 0; i < count(g); ++i) out.push_back(g);
    return out;
  }

  /// "A^2 H B"; the empty monomial renders as "1".
  [[nodiscard]] std::string str() const {
    std::string out;
    for (Gen g : kGenerators) {
      if (count(g) == 0) continue;
      if (!out.empty()) out += ' ';
      out += name(g);
      if (count(g) > 1) out += "^" + std::to_string(count(g));
    }
    return out.empty() ? "1" : out;
  }

  static SuperMonomial parse(std::string_view text);

  friend bool operator==(const SuperMonomial&, const SuperMonomial&) = default;
  friend auto operator<=>(const SuperMonomial& a, const SuperMonomial& b) {
    return a.counts_ <=> b.counts_;
  }

private:
  std::array<std::uint8_t, 5> counts_{};
};

/// Sorts a tuple of generators into canonical order. Returns the monomial and
/// the graded sign (ordinary permutation sign times the sign of the induced
/// permutation on odd entries); the sign is 0 if an even generator repeats.
inline std::pair<SuperMonomial, int> canonicalize(std::span<const Gen> tuple) {
  std::vector<Gen> t(tuple.begin(), tuple.end());
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j + 1 < t.size() - i; ++j)
      if (index(t[j]) > index(t[j + 1])) {
        std::swap(t[j], t[j + 1]);
        sign *= (parity(t[j]) == 1 && parity(t[j + 1]) == 1) ? 1 : -1;
      }
  std::array<std::uint8_t, 5> counts{};
  for (Gen g : t) ++counts[index(g)];
  for (Gen g : kEvenGenerators)
    if (counts[index(g)] > 1) return {SuperMonomial{}, 0};
  return {SuperMonomial::from_counts(counts), sign};
}

inline std::pair<SuperMonomial, int> canonicalize(std::initializer_list<Gen> tuple) {
  return canonicalize(std::span<const Gen>(tuple.begin(), tuple.size()));
}

inline SuperMonomial SuperMonomial::parse(std::string_view text) {
  std::array<std::uint8_t, 5> counts{};
  std::string s(text);
  if (s == "1") return {};
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    Gen g = parse_gen(std::string_view(&s[i], 1));
    ++i;
    int mult = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t j = i;
      while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
      if (j == i) throw std::invalid_argument("bad exponent in monomial: " + s);
      mult = std::stoi(s.substr(i, j - i));
      i = j;
    }
    counts[index(g)] += static_cast<std::uint8_t>(mult);
  }
  return from_counts(counts);
}

/// All degree-n monomials, sorted by canonical tuple.
inline std::vector<SuperMonomial> monomial_basis(int n) {
  std::vector<SuperMonomial> out;
  if (n < 0) return out;
  for (int mask = 0; mask < 8; ++mask) {
    std::array<std::uint8_t, 5> counts{};
    int evens = 0;
    for (int b = 0; b < 3; ++b)
      if (mask & (1 << b)) {
        counts[index(kEvenGenerators[b])] = 1;
        ++evens;
      }
    const int rest = n - evens;
    if (rest < 0) continue;
    for (int a = 0; a <= rest; ++a) {
      counts[index(Gen::A)] = static_cast<std::uint8_t>(a);
      counts[index(Gen::B)] = static_cast<std::uint8_t>(rest - a);
      out.push_back(SuperMonomial::from_counts(counts));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SuperMonomial& a, const SuperMonomial& b) { return a.tuple() < b.tuple(); });
  return out;
}

}  // namespace ospcoh
