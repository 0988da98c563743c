#include "fatpoints/monomial.hpp"

#include <numeric>
#include <string>

#include "fatpoints/error.hpp"

namespace fatpoints {

unsigned degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0U); }

namespace {

void fill(std::vector<Monomial>& out, Monomial& cur, std::size_t var, unsigned left) {
  if (var + 1 == cur.size()) {
    cur[var] = left;
    out.push_back(cur);
    return;
  }
  for (unsigned e = left + 1; e-- > 0;) {
    cur[var] = e;
    fill(out, cur, var + 1, left - e);
  }
  cur[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned deg) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (deg == 0) out.emplace_back();
    return out;
  }
  out.reserve(static_cast<std::size_t>(binomial(deg + nvars - 1, nvars - 1)));
  Monomial cur(nvars, 0);
  fill(out, cur, 0, deg);
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > ~0ULL) {
      throw InvalidInput("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                         ") does not fit in 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

mpz_class binomial_mpz(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

MonomialIndex::MonomialIndex(std::size_t nvars, unsigned deg)
    : monomials_(monomials_of_degree(nvars, deg)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i) position_.emplace(monomials_[i], i);
}

std::size_t MonomialIndex::index(const Monomial& m) const {
  const auto it = position_.find(m);
  if (it == position_.end()) throw InvalidInput("monomial has the wrong number of variables or degree");
  return it->second;
}

}  // namespace fatpoints
