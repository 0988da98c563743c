#include <doctest.h>

#include <algorithm>
#include <functional>

#include "fatpoints/error.hpp"
#include "fatpoints/scheme.hpp"
#include "fatpoints/segre.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace fatpoints;
using oracle::pt;
using oracle::scheme;

namespace {

FatPointScheme two_lines_scheme(unsigned m) {
  return scheme({{{1, 0, 0}, m}, {{0, 1, 0}, m}, {{1, 1, 0}, m}, {{2, 1, 1}, m}, {{2, 1, 2}, m}, {{1, 3, 7}, m}});
}

FatPointScheme generic_double_points_p4(Rng& rng) {
  for (;;) {
    auto z = gen::random_scheme(rng, 4, 7, 1, 10000);
    if (!in_linearly_general_position(z.points())) continue;
    std::vector<FatPoint> items = z.items();
    for (auto& it : items) it.m = 2;
    return FatPointScheme(items);
  }
}

unsigned top_pair(const FatPointScheme& z) {
  auto m = z.multiplicities();
  std::sort(m.begin(), m.end(), std::greater<>());
  return m[0] + m[1] - 1;
}

}  // namespace

TEST_CASE("scheme validation") {
  CHECK_THROWS_AS(FatPointScheme({}), InvalidInput);
  CHECK_THROWS_AS(scheme({{{1, 0}, 0}}), InvalidInput);
  CHECK_THROWS_AS(scheme({{{1, 2}, 1}, {{2, 4}, 1}}), InvalidInput);
  CHECK_THROWS_AS(scheme({{{1}, 1}}), InvalidInput);
  CHECK_THROWS_AS(FatPointScheme({{pt({1, 0}), 1}, {pt({0, 1}, Field::prime(101)), 1}}), InvalidInput);
}

TEST_CASE("condition matrix examples") {
  for (long long n = 1; n <= 4; ++n) {
    std::vector<long long> c(static_cast<std::size_t>(n + 1), 0);
    c[0] = 3;
    c[1] = -1;
    const FatPointScheme z({{ProjectivePoint::from_ints(c, Field::rational()), 1}});
    const ConditionMatrix cm = conditions_matrix(z, 1);
    CHECK(cm.matrix.rows() == 1);
    CHECK(cm.matrix.cols() == static_cast<std::size_t>(n + 1));
    CHECK(rank(cm.matrix) == 1);
  }
  const auto dp = scheme({{{1, 2}, 2}});
  const ConditionMatrix cm = conditions_matrix(dp, 2);
  CHECK(cm.matrix.rows() == 2);
  CHECK(cm.matrix.cols() == 3);
  CHECK(rank(cm.matrix) == 2);
  CHECK(ideal_dim(dp, 2) == 1);
  // columns X0^2, X0X1, X1^2; derivative rows d/dX0 and d/dX1 at (1,2)
  CHECK(cm.matrix.at(0, 0).to_string() == "2");
  CHECK(cm.matrix.at(0, 1).to_string() == "2");
  CHECK(cm.matrix.at(0, 2).to_string() == "0");
  CHECK(cm.matrix.at(1, 1).to_string() == "1");
  CHECK(cm.matrix.at(1, 2).to_string() == "4");
  CHECK(cm.block_offsets == std::vector<std::size_t>{0, 2});
}

TEST_CASE("ideal_dim, hilbert and multiplicity examples") {
  CHECK(ideal_dim(scheme({{{1, 0, 0}, 3}, {{0, 1, 0}, 1}}), 0) == 0);
  CHECK(ideal_dim(scheme({{{1, 0, 0}, 1}, {{0, 1, 0}, 1}}), 1) == 1);
  CHECK(hilbert(scheme({{{1, 2, 3}, 4}}), 0) == 1);
  CHECK(multiplicity(scheme({{{1, 0, 0, 0}, 1}})) == 1);
  CHECK(multiplicity(scheme({{{1, 0, 0}, 1}, {{0, 1, 0}, 2}, {{0, 0, 1}, 3}})) == 10);
  CHECK(multiplicity(scheme({{{1, 0, 0}, 1}, {{0, 1, 0}, 2}, {{0, 0, 1}, 3}})) ==
        binomial(2, 2) + binomial(3, 2) + binomial(4, 2));
}

TEST_CASE("seven generic double points in P4") {
  Rng rng(2024);
  for (int sample = 0; sample < 2; ++sample) {
    const auto z = generic_double_points_p4(rng);
    CHECK(multiplicity(z) == 35);
    CHECK(hilbert(z, 3) == 34);
    CHECK(ideal_dim(z, 3) == 1);
    CHECK(regularity_index(z) == 4);
    CHECK(segre_bound(z).T == 4);
  }
}

TEST_CASE("regularity index examples") {
  for (unsigned m = 1; m <= 5; ++m) CHECK(regularity_index(scheme({{{1, 2, -1}, m}})) == m - 1);
  CHECK(regularity_index(scheme({{{1, 0, 0}, 1}, {{1, 1, 0}, 1}, {{1, 2, 0}, 1}})) == 2);
  CHECK(regularity_index(two_lines_scheme(2)) == 5);
  for (unsigned m = 1; m <= 3; ++m) CHECK(regularity_index(two_lines_scheme(m)) == 3 * m - 1);
}

TEST_CASE("hilbert profile examples") {
  const auto collinear = scheme({{{1, 0, 0}, 1}, {{1, 1, 0}, 1}, {{1, 2, 0}, 1}});
  const auto p = hilbert_profile(collinear, 3);
  CHECK(p.hilbert == std::vector<std::uint64_t>{1, 2, 3, 3});
  CHECK(p.ideal_dim == std::vector<std::uint64_t>{0, 1, 3, 7});
  CHECK(p.e == 3);
  CHECK(p.reg == 2u);
  const auto dp = hilbert_profile(scheme({{{1, 1, 1}, 2}}), 2);
  CHECK(dp.hilbert == std::vector<std::uint64_t>{1, 3, 3});
  CHECK(dp.reg == 1u);
  CHECK_FALSE(hilbert_profile(collinear, 1).reg.has_value());
}

TEST_CASE("characteristic guard") {
  const auto z = scheme({{{1, 0, 0}, 2}, {{0, 1, 0}, 2}}, Field::prime(5));
  CHECK_NOTHROW(hilbert(z, 4));
  CHECK_THROWS_AS(hilbert(z, 5), UnsupportedCharacteristic);
  CHECK_THROWS_AS(conditions_matrix(z, 7), UnsupportedCharacteristic);
  CHECK_THROWS_AS(hilbert_profile(z, 5), UnsupportedCharacteristic);
}

TEST_CASE("derivative rows and substitution rows have equal rank") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto s = static_cast<std::size_t>(rng.uniform(1, 4));
    const Field f = trial % 4 == 0 ? Field::rational() : Field::prime();
    const auto z = gen::random_scheme(rng, n, s, 3, trial % 2 == 0 ? 2 : 50, f);
    for (unsigned t = 0; t < z.total_multiplicity(); ++t) {
      CHECK(condition_rank(z, t) == oracle::substitution_rank(z, t));
    }
  }
  // a small prime above t still gives the same rank
  const auto z = scheme({{{1, 2, 3}, 3}, {{0, 1, 4}, 2}}, Field::prime(11));
  for (unsigned t = 0; t <= 4; ++t) CHECK(condition_rank(z, t) == oracle::substitution_rank(z, t));
}

TEST_CASE("Hilbert function invariants on random schemes") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto s = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto z = gen::random_scheme(rng, n, s, 3, trial % 3 == 0 ? 1 : 30, Field::prime());
    const unsigned reg = regularity_index(z);
    const auto p = hilbert_profile(z, reg + 1);
    CHECK(p.reg == reg);
    for (unsigned t = 0; t <= reg + 1; ++t) {
      CHECK(p.hilbert[t] + p.ideal_dim[t] == binomial(t + n, n));
      CHECK(p.hilbert[t] <= p.e);
      if (t > 0) {
        CHECK(p.hilbert[t - 1] <= p.hilbert[t]);
        if (p.hilbert[t - 1] < p.e) CHECK(p.hilbert[t - 1] < p.hilbert[t]);
      }
    }
    if (s >= 2) CHECK(reg >= top_pair(z));
    CHECK(reg <= segre_bound(z).T);
    CHECK(reg == oracle::substitution_regularity(z));
  }
}

TEST_CASE("prime and rational modes agree") {
  Rng rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    const auto z = gen::random_scheme(rng, static_cast<std::size_t>(rng.uniform(1, 3)),
                                      static_cast<std::size_t>(rng.uniform(1, 5)), 3, 100);
    const auto zp = z.reduced_to(Field::prime());
    CHECK(regularity_index(z) == regularity_index(zp));
    for (unsigned t = 0; t < 4; ++t) CHECK(hilbert(z, t) == hilbert(zp, t));
  }
}

TEST_CASE("subscheme") {
  const auto z = two_lines_scheme(2);
  CHECK(subscheme(z, {0, 1, 2, 3, 4, 5}) == z);
  const auto u = subscheme(z, {0, 1, 2, 3, 4});
  CHECK(u.size() == 5);
  CHECK(regularity_index(u) == 5);
  CHECK(regularity_index(subscheme(z, {3})) == 1);
  CHECK_THROWS_AS(subscheme(z, {}), InvalidInput);
  CHECK_THROWS_AS(subscheme(z, {6}), InvalidInput);
  CHECK_THROWS_AS(subscheme(z, {1, 1}), InvalidInput);

  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = gen::random_scheme(rng, 2, static_cast<std::size_t>(rng.uniform(2, 5)), 3, 3, Field::prime());
    const unsigned reg = regularity_index(w);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (rng.uniform(0, 1) == 1) idx.push_back(i);
    }
    if (idx.empty()) idx.push_back(0);
    CHECK(regularity_index(subscheme(w, idx)) <= reg);
  }
}

TEST_CASE("embedding and restriction") {
  const auto z = two_lines_scheme(2);
  CHECK(embed(z, 2) == z);
  CHECK(regularity_index(embed(z, 5)) == 5);
  CHECK_THROWS_AS(embed(z, 1), InvalidInput);
  Matrix bad(4, 3, Field::rational());
  bad.set(0, 0, Scalar::one(Field::rational()));
  CHECK_THROWS_AS(embed(z, 3, bad), InvalidInput);

  const Flat image = flat_from_rows(identity_embedding_map(2, 4, Field::rational()).transpose());
  CHECK(restrict_to_flat(embed(z, 4), image) == z);

  const auto collinear = scheme({{{1, 0, 0, 0}, 2}, {{1, 1, 2, 3}, 2}, {{1, 2, 4, 6}, 2}});
  CHECK(regularity_index(collinear) == 5);
  const auto on_line = restrict_to_flat(collinear, flat_from_points(collinear.points()));
  CHECK(on_line.n() == 1);
  CHECK(regularity_index(on_line) == 5);
  CHECK_THROWS_AS(restrict_to_flat(z, flat_from_points({pt({1, 0, 0}), pt({0, 1, 0})})), InvalidInput);
  CHECK(regularity_index(restrict_to_flat(z, ambient_flat(2, Field::rational()))) == 5);

  Rng rng(12);
  for (int trial = 0; trial < 12; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto w = gen::random_scheme(rng, n, static_cast<std::size_t>(rng.uniform(1, 4)), 3, 20, Field::prime());
    const unsigned reg = regularity_index(w);
    const std::size_t target = n + static_cast<std::size_t>(rng.uniform(1, 2));
    const Matrix map = random_embedding_map(n, target, rng.next(), w.field());
    const auto up = embed(w, target, map);
    std::uint64_t expected_e = 0;
    for (const auto& it : w.items()) expected_e += binomial(it.m + target - 1, target);
    CHECK(multiplicity(up) == expected_e);
    CHECK(regularity_index(up) == reg);
    const auto down = restrict_to_flat(up, flat_from_rows(map.transpose()));
    CHECK(hilbert_profile(down, reg + 1).hilbert == hilbert_profile(w, reg + 1).hilbert);
  }
}

TEST_CASE("restricted and ambient Hilbert functions above the regularity index") {
  Rng rng(44);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t r = static_cast<std::size_t>(rng.uniform(1, 2));
    const std::size_t n = r + static_cast<std::size_t>(rng.uniform(1, 2));
    const auto small = gen::random_scheme(rng, r, static_cast<std::size_t>(rng.uniform(1, 4)), 3, 20, Field::prime());
    const Matrix map = random_embedding_map(r, n, rng.next(), small.field());
    const auto big = embed(small, n, map);
    const auto alpha = restrict_to_flat(big, flat_from_rows(map.transpose()));
    const unsigned reg = regularity_index(big);
    const bool fat = small.max_multiplicity() >= 2;
    for (unsigned t = reg; t <= reg + 2; ++t) {
      const std::uint64_t ha = hilbert(alpha, t);
      const std::uint64_t hz = hilbert(big, t);
      CHECK(ha <= hz);
      if (fat) CHECK(ha < hz);
      mpz_class lhs = 1;
      mpz_class rhs = 1;
      for (std::size_t k = r + 1; k <= n; ++k) {
        lhs *= static_cast<unsigned long>(t + k);
        rhs *= static_cast<unsigned long>(k);
      }
      mpz_class ea = 0;
      mpz_class ez = 0;
      for (const auto& it : small.items()) {
        ea += binomial_mpz(it.m + r - 1, r);
        ez += binomial_mpz(it.m + n - 1, n);
      }
      lhs *= ea + static_cast<unsigned long>(ideal_dim(alpha, t));
      rhs *= ez + static_cast<unsigned long>(ideal_dim(big, t));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("projective invariance") {
  Rng rng(55);
  for (int trial = 0; trial < 12; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto z = gen::random_scheme(rng, n, static_cast<std::size_t>(rng.uniform(1, 4)), 3, 2);
    const auto moved = apply_projective_transform(z, gen::invertible(rng, n + 1));
    const unsigned reg = regularity_index(z);
    CHECK(regularity_index(moved) == reg);
    CHECK(multiplicity(moved) == multiplicity(z));
    CHECK(hilbert_profile(moved, reg).hilbert == hilbert_profile(z, reg).hilbert);
  }
  CHECK_THROWS_AS(apply_projective_transform(two_lines_scheme(1), Matrix(3, 3, Field::rational())), InvalidInput);
}

TEST_CASE("graded pieces of J + P^a") {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<long long> c1(n + 1, 0);
    std::vector<long long> c0(n + 1, 0);
    c1[1] = 1;
    c0[0] = 1;
    const FatPointScheme j({{ProjectivePoint::from_ints(c1, Field::rational()), 1}});
    const auto p = ProjectivePoint::from_ints(c0, Field::rational());
    CHECK(sum_graded_dim(j, p, 1, 1) == n + 1);
    CHECK(sum_graded_dim(j, p, 1, 0) == 0);
    CHECK(quotient_sum_reg(j, p, 1) == 1);
  }
  const auto z = two_lines_scheme(2);
  CHECK(quotient_sum_reg(subscheme(z, {0, 1, 2, 3, 4}), z.point(5), 2) <= 5);
  CHECK_THROWS_AS(sum_graded_dim(z, z.point(0), 1, 1), InvalidInput);

  // two simple points in P^1: reg 1 = max{0, 0, 1}
  const auto two = scheme({{{1, 0}, 1}, {{0, 1}, 1}});
  CHECK(regularity_index(two) == 1);
  CHECK(quotient_sum_reg(subscheme(two, {0}), two.point(1), 1) == 1);
}

TEST_CASE("sum of graded pieces: stacked span versus dimension count, and the splitting identity") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto s = static_cast<std::size_t>(rng.uniform(2, 5));
    const Field f = trial % 5 == 0 ? Field::rational() : Field::prime();
    const auto z = gen::random_scheme(rng, n, s, 3, trial % 2 == 0 ? 2 : 40, f);
    const std::size_t last = s - 1;
    std::vector<std::size_t> rest(last);
    for (std::size_t i = 0; i < last; ++i) rest[i] = i;
    const auto j = subscheme(z, rest);
    const auto& p = z.point(last);
    const unsigned a = z.m(last);
    const FatPointScheme ap({{p, a}});
    for (unsigned t = 0; t < z.total_multiplicity(); ++t) {
      const std::uint64_t sum = sum_graded_dim(j, p, a, t);
      const std::uint64_t dj = ideal_dim(j, t);
      const std::uint64_t dp = ideal_dim(ap, t);
      CHECK(sum == dj + dp - ideal_dim(z, t));
      CHECK(sum >= std::max(dj, dp));
    }
    const unsigned expected = std::max({a - 1, regularity_index(j), quotient_sum_reg(j, p, a)});
    CHECK(regularity_index(z) == expected);
  }
}

TEST_CASE("monomial membership in J + P^{i+1}") {
  const auto p = pt({1, 0, 0});
  // X_0 vanishes on (0,1,0), so X_0^b lies in J.
  const auto j = scheme({{{0, 1, 0}, 1}});
  CHECK(monomial_in_sum(3, 0, {0, 0}, j, p));
  CHECK_FALSE(monomial_in_power(3, 1, {1, 0}, p));
  CHECK(monomial_in_power(3, 1, {2, 0}, p));
  CHECK(monomial_in_sum(3, 1, {1, 1}, j, p));
  CHECK_THROWS_AS(monomial_in_sum(3, 0, {0, 0, 0}, j, p), InvalidInput);
  CHECK_THROWS_AS(monomial_in_sum(1, 0, {2, 0}, j, p), InvalidInput);
  CHECK_THROWS_AS(monomial_in_power(2, 0, {1}, p), InvalidInput);

  // quotient_sum_reg(J, p, a) <= b exactly when every X_0^{b-i} M, deg M = i < a, is in J + P^{i+1}
  Rng rng(73);
  for (int trial = 0; trial < 12; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 2));
    const auto z = gen::random_scheme(rng, n, static_cast<std::size_t>(rng.uniform(2, 4)), 3, 5, Field::prime());
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) rest.push_back(i);
    const auto jj = subscheme(z, rest);
    const auto& q = z.point(z.size() - 1);
    const unsigned a = z.m(z.size() - 1);
    const unsigned qreg = quotient_sum_reg(jj, q, a);
    for (unsigned b = 0; b <= qreg + 1; ++b) {
      bool all = true;
      for (unsigned i = 0; i < a && all; ++i) {
        if (i > b) {
          all = false;
          break;
        }
        for (const Monomial& mono : monomials_of_degree(n, i)) {
          if (!monomial_in_sum(b, i, mono, jj, q)) {
            all = false;
            break;
          }
        }
      }
      CHECK(all == (qreg <= b));
    }
  }
}
