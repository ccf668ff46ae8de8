#pragma once

// Random generators shared by the test binaries.

#include "ospcoh/cochain.hpp"

#include <random>
#include <vector>

namespace testsupport {

using namespace ospcoh;

inline Rational random_rational(std::mt19937& rng, int span = 5, int maxden = 3) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, maxden);
  return Rational(num(rng), den(rng));
}

inline Rational random_nonzero(std::mt19937& rng) {
  Rational r;
  while (r.is_zero()) r = random_rational(rng);
  return r;
}

/// Parity-homogeneous cochain with ~`density` of the admissible cells filled.
inline Cochain random_cochain(std::mt19937& rng, const TruncatedDlm& mod, int n, int par, int mmax = 3,
                              double density = 0.3) {
  std::bernoulli_distribution keep(density);
  Cochain f(n, par, mod);
  for (const auto& u : monomial_basis(n))
    for (Family fam : kFamilies)
      for (int m = 0; m <= mmax; ++m)
        for (int k = 0; k <= mod.K; ++k) {
          BasisVector v{fam, m, k};
          if ((v.parity() + u.parity()) % 2 != par || !keep(rng)) continue;
          f.add(u, vec(v, random_nonzero(rng)));
        }
  return f;
}

inline std::vector<TruncatedDlm> sample_modules() {
  return {{Rational(0), Rational(1, 2), 3}, {Rational(1, 3), Rational(5, 7), 3}, {Rational(1), Rational(1), 3},
          {Rational(-1, 2), Rational(1), 3}};
}

}  // namespace testsupport
