#pragma once

// Invariant suites run by `ospcoh selftest`.

#include "ospcoh/audit.hpp"
#include "ospcoh/cochain.hpp"
#include "ospcoh/cohomology.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ospcoh {

struct CheckResult {
  std::string suite;
  std::string check;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline CheckResult run_check(const std::string& suite, const std::string& check, const std::function<std::string()>& body) {
  try {
    std::string failure = body();
    return {suite, check, failure.empty(), failure};
  } catch (const std::exception& e) {
    return {suite, check, false, std::string("exception: ") + e.what()};
  }
}

inline std::vector<TruncatedDlm> selftest_modules() {
  return {{Rational(0), Rational(1, 2), 3}, {Rational(1, 3), Rational(5, 7), 3}, {Rational(1), Rational(1), 3}};
}

}  // namespace detail

inline std::vector<CheckResult> suite_algebra() {
  const std::string s = "algebra";
  std::vector<CheckResult> out;
  out.push_back(detail::run_check(s, "adopted table satisfies graded Jacobi", [] {
    auto f = jacobi_failures(adopted_table());
    return f.empty() ? std::string() : std::to_string(f.size()) + " failing triples";
  }));
  out.push_back(detail::run_check(s, "adopted table antisymmetric and weight-additive", [] {
    const auto& t = adopted_table();
    return t.is_graded_antisymmetric() && t.is_weight_additive() ? std::string() : std::string("violated");
  }));
  out.push_back(detail::run_check(s, "printed table fails Jacobi at (A,A,B)", [] {
    return is_zero(jacobi_defect(printed_table(), Gen::A, Gen::A, Gen::B)) ? std::string("defect vanishes")
                                                                           : std::string();
  }));
  out.push_back(detail::run_check(s, "canonicalize sign is multiplicative under transpositions", [] {
    for (int n = 2; n <= 4; ++n)
      for (const auto& u : monomial_basis(n)) {
        auto t = u.tuple();
        for (std::size_t i = 0; i + 1 < t.size(); ++i) {
          auto swapped = t;
          std::swap(swapped[i], swapped[i + 1]);
          const int expected = (parity(t[i]) == 1 && parity(t[i + 1]) == 1) ? 1 : -1;
          auto [m, sign] = canonicalize(swapped);
          if (t[i] == t[i + 1] && parity(t[i]) == 1) {
            if (sign != 1) return "odd repeat sign at " + u.str();
            continue;
          }
          if (m != u || sign != expected) return "transposition sign at " + u.str();
        }
      }
    return std::string();
  }));
  return out;
}

inline std::vector<CheckResult> suite_module() {
  const std::string s = "module";
  std::vector<CheckResult> out;
  out.push_back(detail::run_check(s, "action tables are a module for the adopted table", [] {
    return is_module_compatible(adopted_table()) ? std::string() : std::string("compatibility defect");
  }));
  out.push_back(detail::run_check(s, "A is onto on the truncations", [] {
    for (const auto& mod : detail::selftest_modules())
      if (!a_is_onto(mod)) return "A not onto at λ=" + mod.lambda.str() + " μ=" + mod.mu.str();
    return std::string();
  }));
  return out;
}

inline std::vector<CheckResult> suite_complex() {
  const std::string s = "complex";
  std::vector<CheckResult> out;
  out.push_back(detail::run_check(s, "∂∘∂ = 0 on delta-cochain bases, n ≤ 2", [] {
    for (const auto& mod : detail::selftest_modules())
      for (int n = 0; n <= 2; ++n)
        for (int j = -4; j <= 4; ++j) {
          const Rational w = Rational(j, 2) - mod.p();
          const WeightBlock b = build_block(mod, n + 1, w);
          if (!b.outgoing.multiply(b.incoming).is_zero()) return "∂∂ ≠ 0 at n=" + std::to_string(n) + " w=" + w.str();
        }
    return std::string();
  }));
  out.push_back(detail::run_check(s, "matrix columns equal the coboundary of delta-cochains", [] {
    const TruncatedDlm mod{Rational(1, 3), Rational(5, 7), 3};
    for (int n = 0; n <= 2; ++n) {
      const WeightBlock b = build_block(mod, n, Rational(-1, 2) - mod.p());
      for (std::size_t j = 0; j < b.domain.size(); ++j) {
        const auto& cell = b.domain.cells[j];
        Cochain f(n, (cell.mono.parity() + cell.vector.parity()) % 2, mod);
        f.set(cell.mono, vec(cell.vector));
        if (to_cells(coboundary(f).values, b.codomain) != b.outgoing.column(j))
          return "column " + std::to_string(j) + " at n=" + std::to_string(n);
      }
    }
    return std::string();
  }));
  out.push_back(detail::run_check(s, "explicit cocycles are closed, reduced and nontrivial", [] {
    for (int k = 0; k <= 2; ++k)
      for (const auto& d : {make_f_k(k), make_ftilde_k(k)}) {
        if (!coboundary(d.cocycle).is_zero() || !is_reduced(d.cocycle) || is_coboundary(d.cocycle))
          return "cocycle check failed at k=" + std::to_string(k);
      }
    const auto h = make_h_lambda(Rational(0));
    if (!coboundary(h.cocycle).is_zero() || is_coboundary(h.cocycle)) return std::string("h_0 check failed");
    return std::string();
  }));
  return out;
}

inline std::vector<CheckResult> suite_oracle() {
  const std::string s = "oracle";
  std::vector<CheckResult> out;
  out.push_back(detail::run_check(s, "realization reproduces the adopted table", [] {
    return realization_reproduces(adopted_table(), adopted_realization()) ? std::string() : std::string("mismatch");
  }));
  out.push_back(detail::run_check(s, "table action equals realization action", [] {
    for (const auto& mod : detail::selftest_modules()) {
      auto bad = oracle_mismatches(TruncatedDlm{mod.lambda, mod.mu, 4}, adopted_realization());
      if (!bad.empty()) return std::string(name(bad[0].gen)) + " on " + bad[0].vector.str();
    }
    return std::string();
  }));
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "module", "complex", "oracle", "all"};
  return names;
}

inline std::vector<CheckResult> run_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> r) { out.insert(out.end(), r.begin(), r.end()); };
  if (suite == "algebra" || suite == "all") append(suite_algebra());
  if (suite == "module" || suite == "all") append(suite_module());
  if (suite == "complex" || suite == "all") append(suite_complex());
  if (suite == "oracle" || suite == "all") append(suite_oracle());
  if (out.empty()) throw std::invalid_argument("unknown suite: " + suite);
  return out;
}

}  // namespace ospcoh
