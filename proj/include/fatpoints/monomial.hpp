#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace fatpoints {

/// Exponent vector; entry l is the power of X_l.
using Monomial = std::vector<unsigned>;

unsigned degree(const Monomial& m);

/// All monomials of total degree `deg` in `nvars` variables, in graded-lex
/// order with X_0 > X_1 > ... (so X_0^deg comes first).
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned deg);

/// Binomial coefficient; throws InvalidInput if the value exceeds 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
mpz_class binomial_mpz(unsigned long n, unsigned long k);

/// Column position of each monomial of one degree.
class MonomialIndex {
 public:
  MonomialIndex(std::size_t nvars, unsigned deg);

  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  /// Throws InvalidInput for a monomial of the wrong shape or degree.
  std::size_t index(const Monomial& m) const;

 private:
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> position_;
};

}  // namespace fatpoints
