#include "nccw/cellmodel.hpp"

#include <string>

#include "nccw/error.hpp"

namespace nccw {

IntMatrix boundary_from_endpoints(const MultMorphism& phi0, const MultMorphism& phi1) {
  if (!(phi0.src() == phi1.src()) || !(phi0.dst() == phi1.dst()))
    throw Error(ErrorKind::ShapeMismatch, "endpoint morphisms must share source and target");
  return k0_map(phi0) - k0_map(phi1);
}

NCCWComplex NCCWComplex::build(std::vector<NCCWStage> stages) {
  if (stages.empty()) throw Error(ErrorKind::ShapeMismatch, "a complex needs a stage 0");

  NCCWComplex x;
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const NCCWStage& stage = stages[k];
    const int where = static_cast<int>(k);
    if (stage.dim != where) throw Error(ErrorKind::ShapeMismatch, "stage dimensions must run 0, 1, 2, ...", where);
    x.cell_counts_.push_back(stage.cells.block_count());

    if (k == 0) {
      if (stage.attaching) throw Error(ErrorKind::ShapeMismatch, "stage 0 carries no attaching data", 0);
      continue;
    }
    if (!stage.attaching) throw Error(ErrorKind::ShapeMismatch, "missing attaching data", where);

    const std::size_t rows = stage.cells.block_count();
    const std::size_t cols = x.cell_counts_[k - 1];
    if (const auto* pair = std::get_if<EndpointPair>(&*stage.attaching)) {
      if (k != 1)
        throw Error(ErrorKind::EndpointPairAtHigherStage, "endpoint data is only defined for stage 1", where);
      if (!(pair->phi0.src() == stages[0].cells) || !(pair->phi1.src() == stages[0].cells) ||
          !(pair->phi0.dst() == stage.cells) || !(pair->phi1.dst() == stage.cells))
        throw Error(ErrorKind::ShapeMismatch, "endpoint morphisms must map A_0 into F_1", where);
      x.coboundaries_.push_back(boundary_from_endpoints(pair->phi0, pair->phi1));
    } else {
      const IntMatrix& delta = std::get<ProvidedCoboundary>(*stage.attaching).delta;
      if (delta.rows() != rows || delta.cols() != cols)
        throw Error(ErrorKind::ShapeMismatch,
                    "coboundary must be " + std::to_string(rows) + "x" + std::to_string(cols), where);
      x.coboundaries_.push_back(delta);
    }
  }

  for (std::size_t p = 0; p + 1 < x.coboundaries_.size(); ++p)
    if (!(x.coboundaries_[p + 1] * x.coboundaries_[p]).is_zero())
      throw Error(ErrorKind::ComplexViolation,
                  "coboundaries into stage " + std::to_string(p + 2) + " do not compose to zero",
                  static_cast<int>(p));

  x.stages_ = std::move(stages);
  return x;
}

CochainComplex cochain_complex(const NCCWComplex& x, Theory theory) {
  CochainComplex c;
  c.ring = coefficient_ring(theory);
  c.ranks = x.cell_counts();
  c.differentials = x.coboundaries();
  c.orientation = Orientation::cohomological;
  return c;
}

NCCWComplex from_classical_cw(const std::vector<std::size_t>& cell_counts, const std::vector<IntMatrix>& boundaries) {
  if (cell_counts.empty()) throw Error(ErrorKind::ShapeMismatch, "a CW complex needs at least one dimension");
  if (boundaries.size() + 1 != cell_counts.size())
    throw Error(ErrorKind::ShapeMismatch, "expected one boundary matrix per positive dimension");

  std::vector<NCCWStage> stages;
  stages.push_back({0, FinDimAlgebra::commutative(cell_counts[0]), std::nullopt});
  for (std::size_t p = 1; p < cell_counts.size(); ++p) {
    const IntMatrix& d = boundaries[p - 1];
    if (d.rows() != cell_counts[p - 1] || d.cols() != cell_counts[p])
      throw Error(ErrorKind::ShapeMismatch, "boundary shape disagrees with cell counts", static_cast<int>(p));
    stages.push_back(
        {static_cast<int>(p), FinDimAlgebra::commutative(cell_counts[p]), ProvidedCoboundary{d.transpose()}});
  }
  return NCCWComplex::build(std::move(stages));
}

NCCWComplex skeleton(const NCCWComplex& x, int p) {
  if (p < 0 || p > x.top_dimension()) throw Error(ErrorKind::OutOfRange, "skeleton dimension out of range", p);
  std::vector<NCCWStage> stages(x.stages().begin(), x.stages().begin() + p + 1);
  return NCCWComplex::build(std::move(stages));
}

long euler_characteristic(const NCCWComplex& x) {
  long chi = 0;
  for (std::size_t p = 0; p < x.cell_counts().size(); ++p)
    chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(x.cell_counts()[p]);
  return chi;
}

}  // namespace nccw
