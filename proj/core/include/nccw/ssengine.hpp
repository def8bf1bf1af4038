#pragma once

// Spectral sequence of the skeletal filtration of an NCCW complex, for K-theory
// and periodic cyclic homology.
//
// Internal indexing is cohomological: d^r maps E^r_{p,q} to E^r_{p+r,q-r+1}.
// The homological indexing d^r : E^r_{p,q} -> E^r_{p-r,q+r-1} of a tower of
// subalgebras is recovered by relabelling p -> k - p (see paper_degree).
//
// Both theories are 2-periodic, so q is only tracked through its parity.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "nccw/exacthom.hpp"
#include "nccw/findim.hpp"

namespace nccw {

struct Bidegree {
  int p = 0;
  Parity q = Parity::even;

  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

inline Parity shift(Parity q, int by) { return parity_of(static_cast<int>(q) + by); }

struct Page {
  int r = 1;
  std::map<Bidegree, FGAbelianGroup> entries;
  // d^r out of a bidegree, in canonical generators of source and target
  // (torsion summands first, then free). Absent means zero.
  std::map<Bidegree, IntMatrix> differentials;

  FGAbelianGroup at(int p, Parity q) const;
  // Where d^r sends (p, q).
  Bidegree target_of(Bidegree b) const { return {b.p + r, shift(b.q, 1 - r)}; }
  Bidegree source_into(Bidegree b) const { return {b.p - r, shift(b.q, r - 1)}; }

  friend bool operator==(const Page&, const Page&) = default;
};

// E-infinity pieces of one total parity, ordered by filtration degree p.
struct Assembly {
  Parity parity = Parity::even;
  Ring ring = Ring::integers;
  std::vector<int> degrees;
  std::vector<FGAbelianGroup> pieces;
  // Present only when the pieces determine the group: at most one nonzero
  // piece, or all nonzero pieces torsion-free.
  std::optional<FGAbelianGroup> resolved;
  // Direct sum of the pieces; equals `resolved` whenever that is present.
  FGAbelianGroup candidate;

  bool up_to_extension() const { return !resolved.has_value(); }

  friend bool operator==(const Assembly&, const Assembly&) = default;
};

Assembly assemble_pieces(Parity parity, Ring ring, std::vector<int> degrees, std::vector<FGAbelianGroup> pieces);

class SpectralSequence {
 public:
  // E^1_{p,q} = (free on the p-cells) for q even, 0 for q odd; d^1 = delta_p.
  static SpectralSequence from_cellular(const CochainComplex& c, Theory theory);

  // Starts at an arbitrary page (the Leray-Serre E^2). The support in p is
  // [first_degree, last_degree]; odd rows are tracked only if requested.
  static SpectralSequence from_page(Page start, Theory theory, int first_degree, int last_degree,
                                    bool with_odd_rows);

  Theory theory() const noexcept { return theory_; }
  Ring ring() const noexcept { return coefficient_ring(theory_); }
  int first_degree() const noexcept { return first_degree_; }
  int last_degree() const noexcept { return last_degree_; }
  int top_dimension() const noexcept { return last_degree_ - first_degree_; }
  bool has_odd_rows() const noexcept { return odd_rows_; }
  // Page index from which every differential leaves the support.
  int stable_page() const noexcept;
  int paper_degree(int p) const noexcept { return first_degree_ + last_degree_ - p; }

  const std::vector<Page>& pages() const noexcept { return pages_; }
  const Page& last_page() const { return pages_.back(); }
  const Page& page(int r);

  // Appends page r+1 = ker d^r / im d^r.
  void turn_page();

  // Records d^r out of (p, q). Pages beyond r are discarded and recomputed on
  // demand. Throws OutOfRange (r < 2 or before the first page), ShapeMismatch,
  // or NotACocycleMap (not a homomorphism, or d^r d^r != 0 with neighbours).
  void set_higher_differential(int r, int p, int q, IntMatrix m);

  const Page& e_infinity();
  Assembly assemble(Parity parity);

 private:
  SpectralSequence(Theory theory, int first, int last, bool odd_rows)
      : theory_(theory), first_degree_(first), last_degree_(last), odd_rows_(odd_rows) {}

  bool in_support(Bidegree b) const;
  std::vector<Bidegree> support() const;

  Theory theory_;
  int first_degree_;
  int last_degree_;
  bool odd_rows_;
  std::vector<Page> pages_;
};

struct TheoryGroups {
  Assembly even;
  Assembly odd;
};

// Runs the cellular spectral sequence with default (zero) higher differentials.
TheoryGroups compute_theories(const CochainComplex& c, Theory theory);

}  // namespace nccw
