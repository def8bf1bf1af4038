#include "nccw/fibration.hpp"

#include <string>

#include "nccw/error.hpp"

namespace nccw {

FibrationReplacement fibration_replace(const CellularMorphism& f) {
  CylinderResult cyl = mapping_cylinder(f);
  return {std::move(cyl.model), std::move(cyl.embedded_src)};
}

std::pair<FGAbelianGroup, FGAbelianGroup> relative_coefficients(const CellularMorphism& f, Theory theory) {
  TheoryGroups rel = compute_theories(mapping_cone_complex(f), theory);
  if (rel.even.up_to_extension())
    throw Error(ErrorKind::UnresolvedExtension, "even relative group is only known up to extension");
  if (rel.odd.up_to_extension())
    throw Error(ErrorKind::UnresolvedExtension, "odd relative group is only known up to extension");
  return {*rel.even.resolved, *rel.odd.resolved};
}

namespace {

void check(const SerreFibrationData& data) {
  if (!data.simple) throw Error(ErrorKind::NotSimple, "local coefficient system must be simple");
  if (data.base.ranks.empty()) throw Error(ErrorKind::ShapeMismatch, "base complex is empty");
  data.base.validate();
}

}  // namespace

Page leray_serre_e2(const SerreFibrationData& data) {
  check(data);
  CochainComplex base = data.base;
  base.ring = Ring::integers;
  const bool rational = data.theory == Theory::hp;
  const FGAbelianGroup g_even = rational ? data.coeff_even.rationalized() : data.coeff_even;
  const FGAbelianGroup g_odd = rational ? data.coeff_odd.rationalized() : data.coeff_odd;

  const auto even_row = homology_with_coefficients(base, g_even);
  const auto odd_row = homology_with_coefficients(base, g_odd);
  Page e2;
  e2.r = 2;
  for (std::size_t i = 0; i < even_row.size(); ++i) {
    const int p = base.first_degree + static_cast<int>(i);
    e2.entries[{p, Parity::even}] = rational ? even_row[i].rationalized() : even_row[i];
    e2.entries[{p, Parity::odd}] = rational ? odd_row[i].rationalized() : odd_row[i];
  }
  return e2;
}

SpectralSequence leray_serre_sequence(const SerreFibrationData& data) {
  return SpectralSequence::from_page(leray_serre_e2(data), data.theory, data.base.first_degree,
                                     data.base.last_degree(), true);
}

TheoryGroups compute_total(const SerreFibrationData& data) {
  SpectralSequence ss = leray_serre_sequence(data);
  Assembly even = ss.assemble(Parity::even);
  Assembly odd = ss.assemble(Parity::odd);
  return {std::move(even), std::move(odd)};
}

}  // namespace nccw
