#include "nccw/ssengine.hpp"

#include <algorithm>
#include <string>

#include "nccw/error.hpp"

namespace nccw {

FGAbelianGroup Page::at(int p, Parity q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? FGAbelianGroup{} : it->second;
}

Assembly assemble_pieces(Parity parity, Ring ring, std::vector<int> degrees, std::vector<FGAbelianGroup> pieces) {
  Assembly a;
  a.parity = parity;
  a.ring = ring;
  a.degrees = std::move(degrees);
  a.pieces = std::move(pieces);

  std::size_t nonzero = 0;
  bool torsion_free = true;
  for (auto& piece : a.pieces) {
    if (ring == Ring::rationals) piece = piece.rationalized();
    if (!piece.is_zero()) ++nonzero;
    if (!piece.is_torsion_free()) torsion_free = false;
    a.candidate = direct_sum(a.candidate, piece);
  }
  if (nonzero <= 1 || torsion_free) a.resolved = a.candidate;
  return a;
}

SpectralSequence SpectralSequence::from_cellular(const CochainComplex& c, Theory theory) {
  if (c.orientation != Orientation::cohomological)
    throw Error(ErrorKind::ShapeMismatch, "the cellular spectral sequence needs a cohomological complex");
  c.validate();
  SpectralSequence ss(theory, c.first_degree, c.last_degree(), false);
  Page e1;
  e1.r = 1;
  for (int p = c.first_degree; p <= c.last_degree(); ++p) {
    e1.entries[{p, Parity::even}] = FGAbelianGroup::free(c.rank_at(p));
    if (p < c.last_degree()) {
      IntMatrix d = c.outgoing(p);
      if (!d.is_zero()) e1.differentials[{p, Parity::even}] = std::move(d);
    }
  }
  ss.pages_.push_back(std::move(e1));
  return ss;
}

SpectralSequence SpectralSequence::from_page(Page start, Theory theory, int first_degree, int last_degree,
                                             bool with_odd_rows) {
  if (last_degree < first_degree) throw Error(ErrorKind::OutOfRange, "empty support", first_degree);
  SpectralSequence ss(theory, first_degree, last_degree, with_odd_rows);
  for (const auto& [b, g] : start.entries)
    if (!ss.in_support(b) && !g.is_zero())
      throw Error(ErrorKind::OutOfRange, "page entry outside the support", b.p);
  for (const Bidegree& b : ss.support()) start.entries.try_emplace(b);
  ss.pages_.push_back(std::move(start));
  return ss;
}

int SpectralSequence::stable_page() const noexcept {
  return std::max(pages_.front().r, top_dimension() + 1);
}

bool SpectralSequence::in_support(Bidegree b) const {
  return b.p >= first_degree_ && b.p <= last_degree_ && (odd_rows_ || b.q == Parity::even);
}

std::vector<Bidegree> SpectralSequence::support() const {
  std::vector<Bidegree> out;
  for (int p = first_degree_; p <= last_degree_; ++p) {
    out.push_back({p, Parity::even});
    if (odd_rows_) out.push_back({p, Parity::odd});
  }
  return out;
}

const Page& SpectralSequence::page(int r) {
  if (r < pages_.front().r) throw Error(ErrorKind::OutOfRange, "page precedes the first computed page", r);
  while (pages_.back().r < r) turn_page();
  return pages_[static_cast<std::size_t>(r - pages_.front().r)];
}

void SpectralSequence::turn_page() {
  const Page& current = pages_.back();
  const Ring ring = coefficient_ring(theory_);
  Page next;
  next.r = current.r + 1;
  for (const Bidegree& b : support()) {
    const FGAbelianGroup mid = current.at(b.p, b.q);
    const Bidegree to = current.target_of(b);
    const Bidegree from = current.source_into(b);
    const FGAbelianGroup target = current.at(to.p, to.q);
    const FGAbelianGroup source = current.at(from.p, from.q);

    auto out_it = current.differentials.find(b);
    IntMatrix outgoing = out_it != current.differentials.end()
                             ? out_it->second
                             : IntMatrix(target.generator_count(), mid.generator_count());
    auto in_it = current.differentials.find(from);
    IntMatrix incoming = in_it != current.differentials.end()
                             ? in_it->second
                             : IntMatrix(mid.generator_count(), source.generator_count());

    if (outgoing.is_zero() && incoming.is_zero()) {
      next.entries[b] = mid;
    } else {
      next.entries[b] = subquotient(Presentation::canonical(mid), incoming, outgoing,
                                    Presentation::canonical(target), ring);
    }
  }
  pages_.push_back(std::move(next));
}

void SpectralSequence::set_higher_differential(int r, int p, int q, IntMatrix m) {
  const Bidegree at{p, parity_of(q)};
  const std::string where = "at (" + std::to_string(p) + "," + std::to_string(q) + ")";
  if (r < 2) throw Error(ErrorKind::OutOfRange, "only d^r with r >= 2 can be supplied " + where, p);
  if (r < pages_.front().r) throw Error(ErrorKind::OutOfRange, "page precedes the first computed page " + where, p);

  page(r);
  pages_.resize(static_cast<std::size_t>(r - pages_.front().r + 1));
  Page& current = pages_.back();

  const FGAbelianGroup source = current.at(at.p, at.q);
  const Bidegree to = current.target_of(at);
  const FGAbelianGroup target = current.at(to.p, to.q);
  if (m.rows() != target.generator_count() || m.cols() != source.generator_count())
    throw Error(ErrorKind::ShapeMismatch,
                "d^" + std::to_string(r) + " " + where + " must be " + std::to_string(target.generator_count()) +
                    "x" + std::to_string(source.generator_count()),
                p);
  if (!is_well_defined(m, source, target))
    throw Error(ErrorKind::NotACocycleMap, "matrix does not define a homomorphism " + where, p);

  const Bidegree from = current.source_into(at);
  if (auto it = current.differentials.find(from); it != current.differentials.end())
    if (!vanishes_in(m * it->second, target))
      throw Error(ErrorKind::NotACocycleMap, "d^r after the incoming differential is nonzero " + where, p);
  if (auto it = current.differentials.find(to); it != current.differentials.end()) {
    const Bidegree beyond = current.target_of(to);
    if (!vanishes_in(it->second * m, current.at(beyond.p, beyond.q)))
      throw Error(ErrorKind::NotACocycleMap, "the outgoing differential after d^r is nonzero " + where, p);
  }

  if (m.is_zero())
    current.differentials.erase(at);
  else
    current.differentials[at] = std::move(m);
}

const Page& SpectralSequence::e_infinity() { return page(stable_page()); }

Assembly SpectralSequence::assemble(Parity parity) {
  const Page& stable = e_infinity();
  std::vector<int> degrees;
  std::vector<FGAbelianGroup> pieces;
  for (int p = first_degree_; p <= last_degree_; ++p) {
    const Bidegree b{p, shift(parity, -p)};
    if (!in_support(b)) continue;
    degrees.push_back(p);
    pieces.push_back(stable.at(b.p, b.q));
  }
  return assemble_pieces(parity, coefficient_ring(theory_), std::move(degrees), std::move(pieces));
}

TheoryGroups compute_theories(const CochainComplex& c, Theory theory) {
  if (c.ranks.empty()) {
    const Ring ring = coefficient_ring(theory);
    return {assemble_pieces(Parity::even, ring, {}, {}), assemble_pieces(Parity::odd, ring, {}, {})};
  }
  SpectralSequence ss = SpectralSequence::from_cellular(c, theory);
  Assembly even = ss.assemble(Parity::even);
  Assembly odd = ss.assemble(Parity::odd);
  return {std::move(even), std::move(odd)};
}

}  // namespace nccw
