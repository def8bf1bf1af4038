#pragma once

// Finite-dimensional C*-algebras as lists of matrix block sizes, and
// *-homomorphisms between them up to multiplicity.

#include <cstddef>
#include <utility>
#include <vector>

#include "nccw/exacthom.hpp"

namespace nccw {

enum class Theory { k, hp };
enum class Parity { even = 0, odd = 1 };

inline Ring coefficient_ring(Theory theory) { return theory == Theory::k ? Ring::integers : Ring::rationals; }
inline Parity parity_of(long n) { return (n % 2 == 0) ? Parity::even : Parity::odd; }

// M_{n_1} (+) ... (+) M_{n_s}. The empty list is the zero algebra.
class FinDimAlgebra {
 public:
  FinDimAlgebra() = default;
  explicit FinDimAlgebra(std::vector<long> sizes);

  // c copies of the scalars, the algebra of functions on c points.
  static FinDimAlgebra commutative(std::size_t points);

  const std::vector<long>& sizes() const noexcept { return sizes_; }
  std::size_t block_count() const noexcept { return sizes_.size(); }
  bool is_zero() const noexcept { return sizes_.empty(); }

  friend FinDimAlgebra direct_sum(const FinDimAlgebra& a, const FinDimAlgebra& b);
  friend bool operator==(const FinDimAlgebra&, const FinDimAlgebra&) = default;

 private:
  std::vector<long> sizes_;
};

Integer linear_dimension(const FinDimAlgebra& a);

// K: (Z^s, 0); HP: (Q^s, 0) with s the block count.
std::pair<FGAbelianGroup, FGAbelianGroup> theory_groups(const FinDimAlgebra& a, Theory theory);

// mult(j, i) copies of source block i sit inside target block j.
class MultMorphism {
 public:
  // Validates on construction; throws ShapeMismatch or SizeOverflow(j).
  MultMorphism(FinDimAlgebra src, FinDimAlgebra dst, IntMatrix mult);

  static MultMorphism identity(const FinDimAlgebra& a);
  static MultMorphism zero(const FinDimAlgebra& src, const FinDimAlgebra& dst);

  const FinDimAlgebra& src() const noexcept { return src_; }
  const FinDimAlgebra& dst() const noexcept { return dst_; }
  const IntMatrix& mult() const noexcept { return mult_; }

  bool unital() const;

  friend bool operator==(const MultMorphism&, const MultMorphism&) = default;

 private:
  FinDimAlgebra src_;
  FinDimAlgebra dst_;
  IntMatrix mult_;
};

struct MorphismCheck {
  bool unital = false;
};

// Standalone check used by the file loader before constructing a morphism.
MorphismCheck validate_morphism(const FinDimAlgebra& src, const FinDimAlgebra& dst, const IntMatrix& mult);

// g after f.
MultMorphism compose(const MultMorphism& g, const MultMorphism& f);

inline const IntMatrix& k0_map(const MultMorphism& f) { return f.mult(); }

}  // namespace nccw
