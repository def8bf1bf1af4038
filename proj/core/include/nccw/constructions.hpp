#pragma once

// Cone, suspension, mapping cylinder and mapping cone, realised on cellular
// cochain models.

#include <vector>

#include "nccw/cellmodel.hpp"
#include "nccw/exacthom.hpp"
#include "nccw/findim.hpp"
#include "nccw/ssengine.hpp"

namespace nccw {

// f_p : C^p(src) -> C^p(dst) for p = first_degree, first_degree + 1, ...
// Degrees outside `maps` are zero maps.
struct CellularMorphism {
  CochainComplex src;
  CochainComplex dst;
  int first_degree = 0;
  std::vector<IntMatrix> maps;

  static CellularMorphism identity(const CochainComplex& c);
  // The morphism into the zero complex.
  static CellularMorphism to_zero(const CochainComplex& c);

  IntMatrix at(int degree) const;
  int lowest_degree() const;
  int highest_degree() const;

  // Throws InvalidMorphism(p) on a bad shape or a non-commuting square
  // f_{p+1} delta_p != delta_p f_p.
  void validate() const;
};

// C(0,1) (x) A: ranks move up one degree, differentials are unchanged.
CochainComplex suspend(const CochainComplex& c);
// The same shift on a tower: a zero stage 0, then F_p moved to stage p+1 with
// its coboundary supplied explicitly.
NCCWComplex suspend(const NCCWComplex& x);

// C_0((0,1]) (x) A is contractible.
struct ConeResult {
  bool contractible = true;
  TheoryGroups theories(Theory theory) const;
};

ConeResult cone();
template <typename T>
ConeResult cone(const T&) {
  return cone();
}

struct CylinderResult {
  CochainComplex model;
  CellularMorphism embedded_src;
};

// Cyl(f) deformation retracts onto the codomain; the model is the codomain
// complex and embedded_src records src -> Cyl(f).
CylinderResult mapping_cylinder(const CellularMorphism& f);

// Degree p: C^p(dst) (+) C^{p+1}(src), differential
// (b, a) -> (delta_dst b + f(a), -delta_src a). Its cohomology is the
// relative theory of the pair.
CochainComplex mapping_cone_complex(const CellularMorphism& f);

}  // namespace nccw
