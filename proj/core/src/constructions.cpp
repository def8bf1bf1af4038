#include "nccw/constructions.hpp"

#include <algorithm>

#include "nccw/error.hpp"

namespace nccw {

CellularMorphism CellularMorphism::identity(const CochainComplex& c) {
  CellularMorphism f{c, c, c.first_degree, {}};
  for (std::size_t rank : c.ranks) f.maps.push_back(IntMatrix::identity(rank));
  return f;
}

CellularMorphism CellularMorphism::to_zero(const CochainComplex& c) {
  CochainComplex zero;
  zero.ring = c.ring;
  zero.first_degree = c.first_degree;
  return {c, zero, c.first_degree, {}};
}

int CellularMorphism::lowest_degree() const { return std::min(src.first_degree, dst.first_degree); }

int CellularMorphism::highest_degree() const { return std::max(src.last_degree(), dst.last_degree()); }

IntMatrix CellularMorphism::at(int degree) const {
  const int index = degree - first_degree;
  if (index >= 0 && index < static_cast<int>(maps.size())) return maps[static_cast<std::size_t>(index)];
  return IntMatrix(dst.rank_at(degree), src.rank_at(degree));
}

void CellularMorphism::validate() const {
  if (src.orientation != Orientation::cohomological || dst.orientation != Orientation::cohomological)
    throw Error(ErrorKind::InvalidMorphism, "cellular morphisms connect cohomological complexes");
  try {
    src.validate();
    dst.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidMorphism, e.what(), e.where());
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const int p = first_degree + static_cast<int>(i);
    if (maps[i].rows() != dst.rank_at(p) || maps[i].cols() != src.rank_at(p))
      throw Error(ErrorKind::InvalidMorphism, "map shape disagrees with the complexes", p);
  }
  for (int p = lowest_degree(); p < highest_degree(); ++p) {
    if (!(at(p + 1) * src.outgoing(p) == dst.outgoing(p) * at(p)))
      throw Error(ErrorKind::InvalidMorphism, "square does not commute", p);
  }
}

CochainComplex suspend(const CochainComplex& c) {
  CochainComplex s = c;
  if (c.ranks.empty()) return s;
  s.ranks.insert(s.ranks.begin(), 0);
  s.differentials.insert(s.differentials.begin(), IntMatrix(c.ranks.front(), 0));
  return s;
}

NCCWComplex suspend(const NCCWComplex& x) {
  std::vector<NCCWStage> stages;
  stages.push_back({0, FinDimAlgebra{}, std::nullopt});
  for (std::size_t p = 0; p < x.stages().size(); ++p) {
    const IntMatrix delta = p == 0 ? IntMatrix(x.cell_counts()[0], 0) : x.coboundaries()[p - 1];
    stages.push_back({static_cast<int>(p) + 1, x.stages()[p].cells, ProvidedCoboundary{delta}});
  }
  return NCCWComplex::build(std::move(stages));
}

TheoryGroups ConeResult::theories(Theory theory) const {
  const Ring ring = coefficient_ring(theory);
  return {assemble_pieces(Parity::even, ring, {}, {}), assemble_pieces(Parity::odd, ring, {}, {})};
}

ConeResult cone() { return {}; }

CylinderResult mapping_cylinder(const CellularMorphism& f) {
  f.validate();
  return {f.dst, f};
}

CochainComplex mapping_cone_complex(const CellularMorphism& f) {
  f.validate();
  CochainComplex out;
  out.ring = f.dst.ring;
  out.orientation = Orientation::cohomological;

  const int lo = std::min(f.dst.first_degree, f.src.first_degree - 1);
  const int hi = std::max(f.dst.last_degree(), f.src.last_degree() - 1);
  out.first_degree = lo;
  if (hi < lo) return out;

  for (int p = lo; p <= hi; ++p) out.ranks.push_back(f.dst.rank_at(p) + f.src.rank_at(p + 1));
  for (int p = lo; p < hi; ++p) {
    const std::size_t b_in = f.dst.rank_at(p), a_in = f.src.rank_at(p + 1);
    const std::size_t b_out = f.dst.rank_at(p + 1), a_out = f.src.rank_at(p + 2);
    const IntMatrix db = f.dst.outgoing(p);
    const IntMatrix fa = f.at(p + 1);
    const IntMatrix da = -f.src.outgoing(p + 1);
    IntMatrix d(b_out + a_out, b_in + a_in);
    for (std::size_t i = 0; i < b_out; ++i) {
      for (std::size_t j = 0; j < b_in; ++j) d(i, j) = db(i, j);
      for (std::size_t j = 0; j < a_in; ++j) d(i, b_in + j) = fa(i, j);
    }
    for (std::size_t i = 0; i < a_out; ++i)
      for (std::size_t j = 0; j < a_in; ++j) d(b_out + i, b_in + j) = da(i, j);
    out.differentials.push_back(std::move(d));
  }
  return out;
}

}  // namespace nccw
