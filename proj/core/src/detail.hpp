#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "qrlift/errors.hpp"

// Small internal helpers shared across the library's translation units.

namespace qrlift::detail {

struct PrimePower {
  mpz_class p;
  unsigned k = 0;
};

// Trial division by 2 and odd d <= bound, ascending. A leftover cofactor is
// accepted when provably (below bound^2) or probabilistically prime;
// otherwise this throws CapError, since a partial factorization would poison
// every count derived from it.
inline std::vector<PrimePower> factorize(mpz_class n, std::uint64_t bound) {
  if (n < 1) throw DomainError("factorize: argument must be positive");
  if (bound < 2 || bound > (std::uint64_t{1} << 31)) {
    throw DomainError("factorize: trial bound out of range");
  }
  std::vector<PrimePower> out;
  auto take = [&](unsigned long p) {
    unsigned k = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++k;
    }
    if (k > 0) out.push_back({mpz_class(p), k});
  };
  take(2);
  for (unsigned long d = 3; n > 1 && d <= bound; d += 2) {
    if (mpz_fdiv_ui(n.get_mpz_t(), d) == 0) take(d);
    if (n > 1 && mpz_cmp_ui(n.get_mpz_t(), d * d) < 0) {
      // No factor <= d remains and n < d^2, so n is prime.
      out.push_back({n, 1});
      n = 1;
    }
  }
  if (n > 1) {
    mpz_class bound_sq = mpz_class(static_cast<unsigned long>(bound));
    bound_sq *= static_cast<unsigned long>(bound);
    if (n < bound_sq || mpz_probab_prime_p(n.get_mpz_t(), 32) >= 1) {
      out.push_back({n, 1});
    } else {
      throw CapError("factorize: composite cofactor " + n.get_str() +
                     " beyond trial-division bound " + std::to_string(bound) +
                     "; supply a factorization instead");
    }
  }
  return out;
}

}  // namespace qrlift::detail
