#include <random>

#include "doctest.h"
#include "nccw/error.hpp"
#include "nccw/findim.hpp"

using namespace nccw;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::ParseError;
}

// Random morphism src -> dst built by packing random multiplicities until the
// target block is full or a coin flip stops it.
MultMorphism random_morphism(std::mt19937& rng, const FinDimAlgebra& src, const FinDimAlgebra& dst) {
  IntMatrix mult(dst.block_count(), src.block_count());
  std::uniform_int_distribution<long> step(0, 2);
  for (std::size_t j = 0; j < dst.block_count(); ++j) {
    long room = dst.sizes()[j];
    for (std::size_t i = 0; i < src.block_count(); ++i) {
      long k = std::min(step(rng), room / src.sizes()[i]);
      mult(j, i) = k;
      room -= k * src.sizes()[i];
    }
  }
  return MultMorphism(src, dst, mult);
}

FinDimAlgebra random_algebra(std::mt19937& rng, long max_size) {
  std::uniform_int_distribution<std::size_t> count(0, 3);
  std::uniform_int_distribution<long> size(1, max_size);
  std::vector<long> sizes(count(rng));
  for (auto& n : sizes) n = size(rng);
  return FinDimAlgebra(sizes);
}

}  // namespace

TEST_CASE("linear dimension") {
  CHECK(linear_dimension(FinDimAlgebra({2, 3})) == 13);
  CHECK(linear_dimension(FinDimAlgebra{}) == 0);
  CHECK(linear_dimension(FinDimAlgebra({1, 1})) == 2);
  CHECK(kind_of([] { FinDimAlgebra({2, 0}); }) == ErrorKind::OutOfRange);
}

TEST_CASE("validate morphism") {
  const FinDimAlgebra c2({1, 1}), m2({2});
  CHECK(MultMorphism(c2, m2, IntMatrix{{2, 0}}).unital());
  CHECK(MultMorphism(m2, m2, IntMatrix{{1}}).unital());
  CHECK_FALSE(MultMorphism(c2, m2, IntMatrix{{1, 0}}).unital());

  try {
    MultMorphism(c2, m2, IntMatrix{{3, 0}});
    FAIL("expected SizeOverflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeOverflow);
    CHECK(e.where() == 0);
  }
  CHECK(kind_of([&] { MultMorphism(c2, m2, IntMatrix{{1}}); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([&] { MultMorphism(c2, m2, IntMatrix{{-1, 0}}); }) == ErrorKind::SizeOverflow);
}

TEST_CASE("compose") {
  const FinDimAlgebra c1({1}), c2({1, 1}), m2({2});
  const MultMorphism f(c1, c2, IntMatrix{{1}, {1}});
  const MultMorphism g(c2, m2, IntMatrix{{1, 1}});
  CHECK(compose(g, f).mult() == IntMatrix{{2}});
  CHECK(compose(MultMorphism::identity(c2), f) == f);
  CHECK(compose(MultMorphism::zero(c2, m2), f).mult().is_zero());
  CHECK(kind_of([&] { compose(f, f); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("theory groups of matrix algebras") {
  auto [k_even, k_odd] = theory_groups(FinDimAlgebra({2, 3}), Theory::k);
  CHECK(k_even == FGAbelianGroup::free(2));
  CHECK(k_odd.is_zero());
  auto [hp_even, hp_odd] = theory_groups(FinDimAlgebra({1}), Theory::hp);
  CHECK(to_string(hp_even, Ring::rationals) == "Q");
  CHECK(hp_odd.is_zero());
  auto [z_even, z_odd] = theory_groups(FinDimAlgebra{}, Theory::k);
  CHECK(z_even.is_zero());
  CHECK(z_odd.is_zero());
}

TEST_CASE("k0 map") {
  const MultMorphism f(FinDimAlgebra({1, 1}), FinDimAlgebra({2}), IntMatrix{{2, 0}});
  CHECK(k0_map(f) == IntMatrix{{2, 0}});
  CHECK(k0_map(MultMorphism::identity(FinDimAlgebra({3, 1}))) == IntMatrix::identity(2));
}

TEST_CASE("functoriality and additivity on random morphisms") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const FinDimAlgebra a = random_algebra(rng, 2), b = random_algebra(rng, 4), c = random_algebra(rng, 9);
    const MultMorphism f = random_morphism(rng, a, b);
    const MultMorphism g = random_morphism(rng, b, c);
    CHECK(k0_map(compose(g, f)) == k0_map(g) * k0_map(f));
    CHECK(MultMorphism::identity(a).unital());
    const auto rank_a = theory_groups(a, Theory::k).first.free_rank();
    const auto rank_b = theory_groups(b, Theory::k).first.free_rank();
    CHECK(theory_groups(direct_sum(a, b), Theory::k).first.free_rank() == rank_a + rank_b);
  }
}
