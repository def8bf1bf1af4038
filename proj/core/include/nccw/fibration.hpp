#pragma once

// Leray-Serre spectral sequence of a noncommutative Serre fibration with a
// simple system of local coefficients. A morphism is first replaced by the
// inclusion into its mapping cylinder; the coefficient groups are the
// relative theory of the pair, read off the mapping cone.

#include <utility>

#include "nccw/constructions.hpp"
#include "nccw/exacthom.hpp"
#include "nccw/findim.hpp"
#include "nccw/ssengine.hpp"

namespace nccw {

struct SerreFibrationData {
  CochainComplex base;
  FGAbelianGroup coeff_even;
  FGAbelianGroup coeff_odd;
  Theory theory = Theory::k;
  // Simplicity is an assumption supplied by the caller; it cannot be checked
  // from cellular data.
  bool simple = true;
};

struct FibrationReplacement {
  CochainComplex total;
  CellularMorphism inclusion;
};

FibrationReplacement fibration_replace(const CellularMorphism& f);

// (K_even(B, A), K_odd(B, A)) or the HP analogue. Throws UnresolvedExtension
// when the mapping cone does not determine the groups.
std::pair<FGAbelianGroup, FGAbelianGroup> relative_coefficients(const CellularMorphism& f, Theory theory);

// E^2_{p,q} = H^p(base; G_{q mod 2}). Throws NotSimple.
Page leray_serre_e2(const SerreFibrationData& data);

SpectralSequence leray_serre_sequence(const SerreFibrationData& data);

// Assemblies of total parity even and odd, default zero higher differentials.
TheoryGroups compute_total(const SerreFibrationData& data);

}  // namespace nccw
