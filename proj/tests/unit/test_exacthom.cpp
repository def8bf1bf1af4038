#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "nccw/error.hpp"
#include "nccw/exacthom.hpp"
#include "oracles.hpp"

using namespace nccw;
using nccw::testing::cohomology_by_minors;
using nccw::testing::determinant;
using nccw::testing::invariant_factors_by_minors;

namespace {

void check_smith(const IntMatrix& m) {
  const SmithForm snf = smith_normal_form(m);
  REQUIRE(snf.u * m * snf.v == snf.d);
  CHECK(abs(determinant(snf.u)) == 1);
  CHECK(abs(determinant(snf.v)) == 1);
  CHECK(snf.u * snf.u_inv == IntMatrix::identity(m.rows()));
  CHECK(snf.v * snf.v_inv == IntMatrix::identity(m.cols()));
  for (std::size_t i = 0; i < snf.d.rows(); ++i)
    for (std::size_t j = 0; j < snf.d.cols(); ++j)
      if (i != j) CHECK(sgn(snf.d(i, j)) == 0);
  const auto diag = snf.diagonal();
  for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
    CHECK(sgn(diag[i]) >= 0);
    if (sgn(diag[i]) == 0) {
      CHECK(sgn(diag[i + 1]) == 0);
    } else {
      CHECK(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()));
    }
  }
  // Nonzero diagonal = determinantal-divisor invariant factors.
  const auto oracle = invariant_factors_by_minors(m);
  REQUIRE(snf.rank() == oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(diag[i] == oracle[i]);
}

CochainComplex complex_of(std::vector<std::size_t> ranks, std::vector<IntMatrix> ds) {
  CochainComplex c;
  c.ranks = std::move(ranks);
  c.differentials = std::move(ds);
  c.validate();
  return c;
}

CochainComplex rp2() { return complex_of({1, 1, 1}, {IntMatrix{{0}}, IntMatrix{{2}}}); }
CochainComplex circle() { return complex_of({1, 1}, {IntMatrix{{0}}}); }
CochainComplex i2() { return complex_of({2, 1}, {IntMatrix{{2, -2}}}); }

FGAbelianGroup z(std::size_t r) { return FGAbelianGroup::free(r); }
FGAbelianGroup zmod(long d) { return FGAbelianGroup::from_cyclic_orders(0, {Integer(d)}); }

}  // namespace

TEST_CASE("smith normal form examples") {
  SUBCASE("row vector [2,-2]") {
    const SmithForm snf = smith_normal_form(IntMatrix{{2, -2}});
    CHECK(snf.d == IntMatrix{{2, 0}});
    check_smith(IntMatrix{{2, -2}});
  }
  SUBCASE("zero matrix keeps identity transforms") {
    const SmithForm snf = smith_normal_form(IntMatrix::zero(2, 3));
    CHECK(snf.d.is_zero());
    CHECK(snf.u == IntMatrix::identity(2));
    CHECK(snf.v == IntMatrix::identity(3));
  }
  SUBCASE("already diagonal") {
    const IntMatrix m{{1, 0}, {0, 3}};
    CHECK(smith_normal_form(m).d == m);
  }
  SUBCASE("non-divisible diagonal gets fixed") {
    // diag(2,3) ~ diag(1,6)
    CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).d == IntMatrix{{1, 0}, {0, 6}});
  }
  SUBCASE("empty shapes") {
    check_smith(IntMatrix(0, 3));
    check_smith(IntMatrix(2, 0));
  }
}

TEST_CASE("smith normal form postconditions on random matrices") {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    const IntMatrix m = nccw::testing::random_matrix(rng, dim(rng), dim(rng), trial % 3 == 0 ? 9 : 3);
    check_smith(m);
  }
}

TEST_CASE("smith normal form handles large entries exactly") {
  IntMatrix m{{1, 0}, {0, 1}};
  m(0, 0) = Integer("123456789012345678901234567890");
  m(0, 1) = Integer("987654321098765432109876543210");
  m(1, 0) = 3;
  m(1, 1) = 7;
  check_smith(m);
}

TEST_CASE("group canonical form") {
  CHECK(direct_sum(zmod(2), zmod(3)) == zmod(6));
  CHECK(FGAbelianGroup::from_cyclic_orders(1, {Integer(4), Integer(6)}).torsion() ==
        std::vector<Integer>{Integer(2), Integer(12)});
  CHECK(FGAbelianGroup::from_cyclic_orders(0, {Integer(1)}).is_zero());
  CHECK(to_string(FGAbelianGroup{}) == "0");
  CHECK(to_string(z(1)) == "Z");
  CHECK(to_string(direct_sum(z(2), zmod(2))) == "Z^2 (+) Z/2");
  CHECK(to_string(direct_sum(z(2), zmod(2)), Ring::rationals) == "Q^2");
  CHECK(to_string(zmod(5), Ring::rationals) == "0");
  CHECK(FGAbelianGroup::cokernel(IntMatrix{{2}, {0}}) == direct_sum(z(1), zmod(2)));
}

TEST_CASE("cohomology_at examples") {
  CHECK(cohomology_at(rp2(), 2) == zmod(2));
  CHECK(cohomology_at(rp2(), 1) == FGAbelianGroup{});
  CHECK(cohomology_at(rp2(), 0) == z(1));
  CHECK(cohomology_at(circle(), 1) == z(1));
  CHECK(cohomology_at(i2(), 1) == zmod(2));
  CHECK(cohomology_at(i2(), 0) == z(1));

  CochainComplex rational = rp2();
  rational.ring = Ring::rationals;
  CHECK(cohomology_at(rational, 2) == FGAbelianGroup{});

  CHECK_THROWS_AS(cohomology_at(rp2(), 3), Error);
  try {
    cohomology_at(rp2(), -1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
}

TEST_CASE("complex validation") {
  CochainComplex c;
  c.ranks = {1, 1, 1};
  c.differentials = {IntMatrix{{1}}, IntMatrix{{1}}};
  try {
    c.validate();
    FAIL("expected ComplexViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ComplexViolation);
    CHECK(e.where() == 0);
  }
  c.differentials = {IntMatrix{{1, 0}}, IntMatrix{{0}}};
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("cohomology agrees with the minors oracle and is stable under basis shuffles") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    CochainComplex c = nccw::testing::random_complex(rng);
    c.validate();

    // Relabel the basis of every degree by a random permutation.
    CochainComplex shuffled = c;
    std::vector<std::vector<std::size_t>> perms;
    for (std::size_t rank : c.ranks) {
      std::vector<std::size_t> perm(rank);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      perms.push_back(perm);
    }
    for (std::size_t p = 0; p < c.differentials.size(); ++p) {
      const IntMatrix& d = c.differentials[p];
      IntMatrix s(d.rows(), d.cols());
      for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) s(perms[p + 1][i], perms[p][j]) = d(i, j);
      shuffled.differentials[p] = s;
    }

    long euler_cells = 0, euler_free = 0;
    for (int p = 0; p <= c.last_degree(); ++p) {
      const FGAbelianGroup h = cohomology_at(c, p);
      CHECK(h == cohomology_by_minors(c, p));
      CHECK(h == cohomology_at(shuffled, p));
      // General presented-group route.
      CHECK(h == subquotient(Presentation::free(c.rank_at(p)), c.incoming(p), c.outgoing(p),
                             Presentation::free(c.rank_at(p + 1)), Ring::integers));
      // Rank-nullity over Q.
      CHECK(h.free_rank() == c.rank_at(p) - rank(c.outgoing(p)) - rank(c.incoming(p)));
      const long sign = p % 2 == 0 ? 1 : -1;
      euler_cells += sign * static_cast<long>(c.rank_at(p));
      euler_free += sign * static_cast<long>(h.free_rank());
    }
    CHECK(euler_cells == euler_free);
  }
}

TEST_CASE("homology with coefficients") {
  SUBCASE("circle with Z^2") {
    const auto h = homology_with_coefficients(circle(), z(2));
    CHECK(h == std::vector<FGAbelianGroup>{z(2), z(2)});
  }
  SUBCASE("zero coefficients") {
    for (const auto& g : homology_with_coefficients(rp2(), FGAbelianGroup{})) CHECK(g.is_zero());
  }
  SUBCASE("RP2 mod 2") {
    const auto h = homology_with_coefficients(rp2(), zmod(2));
    CHECK(h == std::vector<FGAbelianGroup>{zmod(2), zmod(2), zmod(2)});
  }
  SUBCASE("RP2 with Z/3 kills the torsion") {
    const auto h = homology_with_coefficients(rp2(), zmod(3));
    CHECK(h == std::vector<FGAbelianGroup>{zmod(3), FGAbelianGroup{}, FGAbelianGroup{}});
  }
  SUBCASE("Z coefficients reproduce integral cohomology") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      const CochainComplex c = nccw::testing::random_complex(rng);
      CHECK(homology_with_coefficients(c, z(1)) == cohomology(c));
    }
  }
}

TEST_CASE("dual transpose") {
  const CochainComplex c = rp2();
  CHECK(dual_transpose(dual_transpose(c)) == c);
  const CochainComplex chains = dual_transpose(c);
  CHECK(chains.orientation == Orientation::homological);
  CHECK(chains.differentials[1] == IntMatrix{{2}});
  chains.validate();
  // Homology of the RP2 chain complex: Z, Z/2, 0.
  CHECK(cohomology_at(chains, 0) == z(1));
  CHECK(cohomology_at(chains, 1) == zmod(2));
  CHECK(cohomology_at(chains, 2).is_zero());

  CochainComplex zero;
  zero.ranks = {0, 0};
  zero.differentials = {IntMatrix(0, 0)};
  CHECK(dual_transpose(zero).differentials == zero.differentials);
}

TEST_CASE("lattice helpers") {
  const IntMatrix a{{1, 2, 3}};
  const IntMatrix k = integer_kernel(a);
  CHECK(k.cols() == 2);
  CHECK((a * k).is_zero());
  // Basis of the lattice spanned by (2,0),(0,2),(2,2) is index-4 in Z^2.
  const IntMatrix basis = lattice_basis(IntMatrix{{2, 0, 2}, {0, 2, 2}});
  CHECK(basis.cols() == 2);
  CHECK(abs(determinant(basis)) == 4);
}
