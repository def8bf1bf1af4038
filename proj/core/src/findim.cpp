#include "nccw/findim.hpp"

#include "nccw/error.hpp"

namespace nccw {

FinDimAlgebra::FinDimAlgebra(std::vector<long> sizes) : sizes_(std::move(sizes)) {
  for (std::size_t i = 0; i < sizes_.size(); ++i)
    if (sizes_[i] < 1) throw Error(ErrorKind::OutOfRange, "matrix block size must be positive", static_cast<int>(i));
}

FinDimAlgebra FinDimAlgebra::commutative(std::size_t points) {
  return FinDimAlgebra(std::vector<long>(points, 1));
}

FinDimAlgebra direct_sum(const FinDimAlgebra& a, const FinDimAlgebra& b) {
  std::vector<long> sizes = a.sizes_;
  sizes.insert(sizes.end(), b.sizes_.begin(), b.sizes_.end());
  return FinDimAlgebra(std::move(sizes));
}

Integer linear_dimension(const FinDimAlgebra& a) {
  Integer total = 0;
  for (long n : a.sizes()) total += Integer(n) * n;
  return total;
}

std::pair<FGAbelianGroup, FGAbelianGroup> theory_groups(const FinDimAlgebra& a, Theory) {
  // Over Q or Z alike the even group is free on the blocks; the ring only
  // changes how it is printed. Odd groups of matrix algebras vanish.
  return {FGAbelianGroup::free(a.block_count()), FGAbelianGroup{}};
}

MorphismCheck validate_morphism(const FinDimAlgebra& src, const FinDimAlgebra& dst, const IntMatrix& mult) {
  if (mult.rows() != dst.block_count() || mult.cols() != src.block_count())
    throw Error(ErrorKind::ShapeMismatch, "multiplicity matrix must be (target blocks) x (source blocks)");
  MorphismCheck check{true};
  for (std::size_t j = 0; j < mult.rows(); ++j) {
    Integer used = 0;
    for (std::size_t i = 0; i < mult.cols(); ++i) {
      if (sgn(mult(j, i)) < 0)
        throw Error(ErrorKind::SizeOverflow, "negative multiplicity", static_cast<int>(j));
      used += mult(j, i) * src.sizes()[i];
    }
    if (used > dst.sizes()[j])
      throw Error(ErrorKind::SizeOverflow, "source blocks do not fit in target block", static_cast<int>(j));
    if (used != dst.sizes()[j]) check.unital = false;
  }
  return check;
}

MultMorphism::MultMorphism(FinDimAlgebra src, FinDimAlgebra dst, IntMatrix mult)
    : src_(std::move(src)), dst_(std::move(dst)), mult_(std::move(mult)) {
  validate_morphism(src_, dst_, mult_);
}

MultMorphism MultMorphism::identity(const FinDimAlgebra& a) {
  return MultMorphism(a, a, IntMatrix::identity(a.block_count()));
}

MultMorphism MultMorphism::zero(const FinDimAlgebra& src, const FinDimAlgebra& dst) {
  return MultMorphism(src, dst, IntMatrix(dst.block_count(), src.block_count()));
}

bool MultMorphism::unital() const { return validate_morphism(src_, dst_, mult_).unital; }

MultMorphism compose(const MultMorphism& g, const MultMorphism& f) {
  if (!(f.dst() == g.src())) throw Error(ErrorKind::ShapeMismatch, "composition of non-composable morphisms");
  return MultMorphism(f.src(), g.dst(), g.mult() * f.mult());
}

}  // namespace nccw
