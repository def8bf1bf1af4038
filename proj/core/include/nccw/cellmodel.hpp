#pragma once

// Noncommutative CW complexes as towers of pullback stages
//   A_k = I^k F_k (+)_{S^{k-1} F_k} A_{k-1},
// recorded through what K-theory and periodic cyclic homology see: the cells
// (blocks of F_k) and the coboundary between consecutive stages.
//
// The tower is a quotient tower (A_k -> A_{k-1}), so the derived cellular
// complex is cohomological: the coboundary delta_p raises p.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "nccw/exacthom.hpp"
#include "nccw/findim.hpp"

namespace nccw {

// Stage-1 attaching map sigma_1 : A_0 -> F_1 (+) F_1, given by its two
// endpoint evaluations.
struct EndpointPair {
  MultMorphism phi0;
  MultMorphism phi1;
};

// Coboundary of shape c_k x c_{k-1}, supplied directly.
struct ProvidedCoboundary {
  IntMatrix delta;
};

using AttachingData = std::variant<EndpointPair, ProvidedCoboundary>;

struct NCCWStage {
  int dim = 0;
  FinDimAlgebra cells;  // A_0 itself when dim == 0, F_dim otherwise.
  std::optional<AttachingData> attaching;
};

class NCCWComplex {
 public:
  // Throws ShapeMismatch, EndpointPairAtHigherStage, or ComplexViolation(p)
  // when delta_{p+1} * delta_p != 0.
  static NCCWComplex build(std::vector<NCCWStage> stages);

  const std::vector<NCCWStage>& stages() const noexcept { return stages_; }
  const std::vector<std::size_t>& cell_counts() const noexcept { return cell_counts_; }
  // coboundaries()[p] = delta_p : C^p -> C^{p+1}.
  const std::vector<IntMatrix>& coboundaries() const noexcept { return coboundaries_; }
  int top_dimension() const noexcept { return static_cast<int>(stages_.size()) - 1; }

 private:
  std::vector<NCCWStage> stages_;
  std::vector<std::size_t> cell_counts_;
  std::vector<IntMatrix> coboundaries_;
};

// Connecting map of the six-term sequence for 0 -> I_0 F_1 -> A_1 -> A_0 -> 0:
// K_0(phi0) - K_0(phi1).
IntMatrix boundary_from_endpoints(const MultMorphism& phi0, const MultMorphism& phi1);

CochainComplex cochain_complex(const NCCWComplex& x, Theory theory);

// Commutative input: c_p cells in dimension p and cellular chain boundaries
// boundaries[p-1] = d_p of shape c_{p-1} x c_p. F_p becomes C^{c_p} and the
// coboundary is the transpose of the boundary.
NCCWComplex from_classical_cw(const std::vector<std::size_t>& cell_counts, const std::vector<IntMatrix>& boundaries);

NCCWComplex skeleton(const NCCWComplex& x, int p);

long euler_characteristic(const NCCWComplex& x);

}  // namespace nccw
