#include "nccw/exacthom.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "nccw/error.hpp"

namespace nccw {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
    for (long x : row) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::ShapeMismatch, "row length differs from column count");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::scaled(const Integer& factor) const {
  IntMatrix out = *this;
  for (auto& x : out.data_) x *= factor;
  return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw Error(ErrorKind::ShapeMismatch, "hconcat row counts differ");
  IntMatrix out(rows_, cols_ + rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, cols_ + j) = rhs(i, j);
  }
  return out;
}

IntMatrix IntMatrix::block_rows(std::size_t first, std::size_t count) const {
  IntMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

IntMatrix IntMatrix::block_cols(std::size_t first, std::size_t count) const {
  IntMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product inner dimensions differ");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::ShapeMismatch, "matrix sum shapes differ");
  IntMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorKind::ShapeMismatch, "matrix difference shapes differ");
  IntMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

IntMatrix operator-(const IntMatrix& a) {
  IntMatrix out = a;
  for (auto& x : out.data_) x = -x;
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Row and column operations applied to the working matrix, mirrored into the
// transforms so that u * m * v == work holds after every step.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : work_(m),
        u_(IntMatrix::identity(m.rows())),
        u_inv_(IntMatrix::identity(m.rows())),
        v_(IntMatrix::identity(m.cols())),
        v_inv_(IntMatrix::identity(m.cols())) {}

  SmithForm run() {
    const std::size_t limit = std::min(work_.rows(), work_.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      if (!bring_min_pivot(t, t)) break;
      reduce_pivot(t);
      if (sgn(work_(t, t)) < 0) negate_row(t);
    }
    return {std::move(u_), std::move(work_), std::move(v_), std::move(u_inv_), std::move(v_inv_)};
  }

 private:
  // Moves the nonzero entry of least absolute value in the lower-right block
  // starting at (from, from) to (t, t). Returns false if that block is zero.
  bool bring_min_pivot(std::size_t t, std::size_t from) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = from; i < work_.rows(); ++i)
      for (std::size_t j = from; j < work_.cols(); ++j) {
        const Integer& x = work_(i, j);
        if (sgn(x) == 0) continue;
        if (!found || cmpabs(x, work_(bi, bj)) < 0) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < work_.rows(); ++i) {
        if (sgn(work_(i, t)) == 0) continue;
        Integer q = work_(i, t) / work_(t, t);
        if (sgn(q) != 0) add_row_multiple(i, t, -q);
        if (sgn(work_(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < work_.cols(); ++j) {
        if (sgn(work_(t, j)) == 0) continue;
        Integer q = work_(t, j) / work_(t, t);
        if (sgn(q) != 0) add_col_multiple(j, t, -q);
        if (sgn(work_(t, j)) != 0) clean = false;
      }
      if (!clean) {
        bring_min_in_cross(t);
        continue;
      }
      // Pivot row and column are clear; enforce divisibility of the rest.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < work_.rows() && divides_all; ++i)
        for (std::size_t j = t + 1; j < work_.cols(); ++j) {
          if (sgn(work_(i, j)) == 0) continue;
          if (!mpz_divisible_p(work_(i, j).get_mpz_t(), work_(t, t).get_mpz_t())) {
            add_row_multiple(t, i, Integer(1));
            divides_all = false;
            break;
          }
        }
      if (divides_all) return;
    }
  }

  // After a partial sweep, leftover remainders sit in row t or column t and
  // are strictly smaller than the pivot; promote the smallest of them.
  void bring_min_in_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    for (std::size_t i = t + 1; i < work_.rows(); ++i)
      if (sgn(work_(i, t)) != 0 && cmpabs(work_(i, t), work_(bi, bj)) < 0) {
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < work_.cols(); ++j)
      if (sgn(work_(t, j)) != 0 && cmpabs(work_(t, j), work_(bi, bj)) < 0) {
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    work_.swap_rows(a, b);
    u_.swap_rows(a, b);
    u_inv_.swap_cols(a, b);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    work_.swap_cols(a, b);
    v_.swap_cols(a, b);
    v_inv_.swap_rows(a, b);
  }

  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t j = 0; j < work_.cols(); ++j) work_(dst, j) += factor * work_(src, j);
    for (std::size_t j = 0; j < u_.cols(); ++j) u_(dst, j) += factor * u_(src, j);
    for (std::size_t i = 0; i < u_inv_.rows(); ++i) u_inv_(i, src) -= factor * u_inv_(i, dst);
  }

  // col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t i = 0; i < work_.rows(); ++i) work_(i, dst) += factor * work_(i, src);
    for (std::size_t i = 0; i < v_.rows(); ++i) v_(i, dst) += factor * v_(i, src);
    for (std::size_t j = 0; j < v_inv_.cols(); ++j) v_inv_(src, j) -= factor * v_inv_(dst, j);
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < work_.cols(); ++j) work_(t, j) = -work_(t, j);
    for (std::size_t j = 0; j < u_.cols(); ++j) u_(t, j) = -u_(t, j);
    for (std::size_t i = 0; i < u_inv_.rows(); ++i) u_inv_(i, t) = -u_inv_(i, t);
  }

  IntMatrix work_;
  IntMatrix u_;
  IntMatrix u_inv_;
  IntMatrix v_;
  IntMatrix v_inv_;
};

}  // namespace

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  const std::size_t limit = std::min(d.rows(), d.cols());
  while (r < limit && sgn(d(r, r)) != 0) ++r;
  return r;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  const std::size_t limit = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < limit; ++i) out.push_back(d(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) { return SmithReducer(m).run(); }

std::size_t rank(const IntMatrix& m) {
  if (m.empty()) return 0;
  return smith_normal_form(m).rank();
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

FGAbelianGroup FGAbelianGroup::free(std::size_t rank) {
  FGAbelianGroup g;
  g.free_rank_ = rank;
  return g;
}

FGAbelianGroup FGAbelianGroup::from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders) {
  IntMatrix diag(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) diag(i, i) = abs(orders[i]);
  FGAbelianGroup g = cokernel(diag);
  g.free_rank_ += free_rank;
  return g;
}

FGAbelianGroup FGAbelianGroup::cokernel(const IntMatrix& relations) {
  FGAbelianGroup g;
  if (relations.cols() == 0) {
    g.free_rank_ = relations.rows();
    return g;
  }
  SmithForm snf = smith_normal_form(relations);
  std::size_t r = snf.rank();
  g.free_rank_ = relations.rows() - r;
  for (std::size_t i = 0; i < r; ++i)
    if (snf.d(i, i) != 1) g.torsion_.push_back(snf.d(i, i));
  return g;
}

Integer FGAbelianGroup::torsion_order() const {
  Integer order = 1;
  for (const auto& d : torsion_) order *= d;
  return order;
}

FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b) {
  std::vector<Integer> orders = a.torsion_;
  orders.insert(orders.end(), b.torsion_.begin(), b.torsion_.end());
  return FGAbelianGroup::from_cyclic_orders(a.free_rank_ + b.free_rank_, orders);
}

std::string to_string(const FGAbelianGroup& g, Ring ring) {
  const std::size_t free = g.free_rank();
  const bool rational = ring == Ring::rationals;
  if (free == 0 && (rational || g.torsion().empty())) return "0";
  std::string out;
  if (free > 0) {
    out = rational ? "Q" : "Z";
    if (free > 1) out += "^" + std::to_string(free);
  }
  if (!rational)
    for (const auto& d : g.torsion()) {
      if (!out.empty()) out += " (+) ";
      out += "Z/" + d.get_str();
    }
  return out;
}

Presentation Presentation::canonical(const FGAbelianGroup& g) {
  Presentation p{g.generator_count(), IntMatrix(g.generator_count(), g.torsion().size())};
  for (std::size_t i = 0; i < g.torsion().size(); ++i) p.relations(i, i) = g.torsion()[i];
  return p;
}

bool vanishes_in(const IntMatrix& m, const FGAbelianGroup& target) {
  if (m.rows() != target.generator_count()) return false;
  const std::size_t t = target.torsion().size();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i < t) {
        if (!mpz_divisible_p(m(i, j).get_mpz_t(), target.torsion()[i].get_mpz_t())) return false;
      } else if (sgn(m(i, j)) != 0) {
        return false;
      }
    }
  return true;
}

bool is_well_defined(const IntMatrix& m, const FGAbelianGroup& source, const FGAbelianGroup& target) {
  if (m.rows() != target.generator_count() || m.cols() != source.generator_count()) return false;
  return vanishes_in(m * Presentation::canonical(source).relations, target);
}

// ---------------------------------------------------------------------------
// Lattices

IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return IntMatrix::identity(n);
  SmithForm snf = smith_normal_form(a);
  std::size_t r = snf.rank();
  return snf.v.block_cols(r, n - r);
}

IntMatrix lattice_basis(const IntMatrix& spanning) {
  if (spanning.cols() == 0) return IntMatrix(spanning.rows(), 0);
  SmithForm snf = smith_normal_form(spanning);
  std::size_t r = snf.rank();
  // im(S) = im(S v) = im(u_inv d): the first r columns of u_inv scaled by d_i.
  IntMatrix basis(spanning.rows(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < spanning.rows(); ++i) basis(i, j) = snf.u_inv(i, j) * snf.d(j, j);
  return basis;
}

namespace {

// Coordinates y with basis * y == targets, for a basis of full column rank
// whose lattice contains every target column.
IntMatrix coordinates_in(const IntMatrix& basis, const IntMatrix& targets) {
  const std::size_t t = basis.cols();
  SmithForm snf = smith_normal_form(basis);
  // basis = u_inv d v_inv, so d (v_inv y) = u targets.
  IntMatrix rhs = snf.u * targets;
  IntMatrix z(t, targets.cols());
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < targets.cols(); ++j) {
      if (!mpz_divisible_p(rhs(i, j).get_mpz_t(), snf.d(i, i).get_mpz_t()))
        throw Error(ErrorKind::NotACocycleMap, "image does not lie in the kernel");
      mpz_divexact(z(i, j).get_mpz_t(), rhs(i, j).get_mpz_t(), snf.d(i, i).get_mpz_t());
    }
  for (std::size_t i = t; i < rhs.rows(); ++i)
    for (std::size_t j = 0; j < targets.cols(); ++j)
      if (sgn(rhs(i, j)) != 0) throw Error(ErrorKind::NotACocycleMap, "image does not lie in the kernel");
  return snf.v * z;
}

}  // namespace

FGAbelianGroup subquotient(const Presentation& mid, const IntMatrix& incoming, const IntMatrix& outgoing,
                           const Presentation& target, Ring ring) {
  const std::size_t n = mid.generators;
  if (incoming.rows() != n || outgoing.cols() != n || outgoing.rows() != target.generators)
    throw Error(ErrorKind::ShapeMismatch, "subquotient maps do not match the presentations");

  // Kernel lattice {x : outgoing x in im(target relations)}.
  IntMatrix kernel_span;
  if (outgoing.rows() == 0) {
    kernel_span = IntMatrix::identity(n);
  } else {
    IntMatrix solutions = integer_kernel(outgoing.hconcat(target.relations));
    kernel_span = solutions.block_rows(0, n);
  }
  IntMatrix kernel = lattice_basis(kernel_span);
  if (kernel.cols() == 0) return {};

  IntMatrix denominators = mid.relations.hconcat(incoming);
  FGAbelianGroup g = FGAbelianGroup::cokernel(coordinates_in(kernel, denominators));
  return ring == Ring::rationals ? g.rationalized() : g;
}

// ---------------------------------------------------------------------------
// Complexes

std::size_t CochainComplex::rank_at(int degree) const {
  if (degree < first_degree || degree > last_degree()) return 0;
  return ranks[static_cast<std::size_t>(degree - first_degree)];
}

IntMatrix CochainComplex::outgoing(int degree) const {
  const int next = orientation == Orientation::cohomological ? degree + 1 : degree - 1;
  const int low = std::min(degree, next);
  const int index = low - first_degree;
  if (index >= 0 && index < static_cast<int>(differentials.size()))
    return differentials[static_cast<std::size_t>(index)];
  return IntMatrix(rank_at(next), rank_at(degree));
}

IntMatrix CochainComplex::incoming(int degree) const {
  const int prev = orientation == Orientation::cohomological ? degree - 1 : degree + 1;
  const int low = std::min(degree, prev);
  const int index = low - first_degree;
  if (index >= 0 && index < static_cast<int>(differentials.size()))
    return differentials[static_cast<std::size_t>(index)];
  return IntMatrix(rank_at(degree), rank_at(prev));
}

void CochainComplex::validate() const {
  const std::size_t expected = ranks.empty() ? 0 : ranks.size() - 1;
  if (differentials.size() != expected)
    throw Error(ErrorKind::ShapeMismatch, "differential count must be one less than the number of degrees");
  for (std::size_t i = 0; i < differentials.size(); ++i) {
    const IntMatrix& d = differentials[i];
    const bool cohom = orientation == Orientation::cohomological;
    const std::size_t want_rows = cohom ? ranks[i + 1] : ranks[i];
    const std::size_t want_cols = cohom ? ranks[i] : ranks[i + 1];
    if (d.rows() != want_rows || d.cols() != want_cols)
      throw Error(ErrorKind::ShapeMismatch, "differential shape disagrees with ranks",
                  first_degree + static_cast<int>(i));
  }
  for (std::size_t i = 0; i + 1 < differentials.size(); ++i) {
    const bool cohom = orientation == Orientation::cohomological;
    IntMatrix composite = cohom ? differentials[i + 1] * differentials[i] : differentials[i] * differentials[i + 1];
    if (!composite.is_zero())
      throw Error(ErrorKind::ComplexViolation, "consecutive differentials do not compose to zero",
                  first_degree + static_cast<int>(i));
  }
}

FGAbelianGroup cohomology_at(const CochainComplex& c, int degree) {
  if (degree < c.first_degree || degree > c.last_degree())
    throw Error(ErrorKind::OutOfRange, "degree outside the complex", degree);
  const std::size_t n = c.rank_at(degree);
  const IntMatrix out = c.outgoing(degree);
  const IntMatrix in = c.incoming(degree);
  const std::size_t rank_out = rank(out);
  if (in.empty()) return FGAbelianGroup::free(n - rank_out);
  // im(in) sits inside the saturated lattice ker(out), so the torsion of the
  // quotient is the torsion of coker(in).
  SmithForm snf = smith_normal_form(in);
  const std::size_t rank_in = snf.rank();
  std::vector<Integer> orders;
  if (c.ring == Ring::integers)
    for (std::size_t i = 0; i < rank_in; ++i)
      if (snf.d(i, i) != 1) orders.push_back(snf.d(i, i));
  return FGAbelianGroup::from_cyclic_orders(n - rank_out - rank_in, orders);
}

std::vector<FGAbelianGroup> cohomology(const CochainComplex& c) {
  std::vector<FGAbelianGroup> out;
  for (int p = c.first_degree; p <= c.last_degree(); ++p) out.push_back(cohomology_at(c, p));
  return out;
}

namespace {

IntMatrix block_diagonal(const IntMatrix& block, std::size_t copies) {
  IntMatrix out(block.rows() * copies, block.cols() * copies);
  for (std::size_t k = 0; k < copies; ++k)
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        out(k * block.rows() + i, k * block.cols() + j) = block(i, j);
  return out;
}

// Degree-p group of C (x) G: c_p copies of each cyclic summand of G, with
// generators grouped by summand.
Presentation expanded_presentation(std::size_t rank, const FGAbelianGroup& g) {
  const std::size_t copies = g.generator_count();
  Presentation p{rank * copies, IntMatrix(rank * copies, rank * g.torsion().size())};
  for (std::size_t k = 0; k < g.torsion().size(); ++k)
    for (std::size_t i = 0; i < rank; ++i) p.relations(k * rank + i, k * rank + i) = g.torsion()[k];
  return p;
}

}  // namespace

std::vector<FGAbelianGroup> homology_with_coefficients(const CochainComplex& c, const FGAbelianGroup& g) {
  std::vector<FGAbelianGroup> out;
  const std::size_t copies = g.generator_count();
  for (int p = c.first_degree; p <= c.last_degree(); ++p) {
    const int next = c.orientation == Orientation::cohomological ? p + 1 : p - 1;
    Presentation mid = expanded_presentation(c.rank_at(p), g);
    Presentation target = expanded_presentation(c.rank_at(next), g);
    out.push_back(subquotient(mid, block_diagonal(c.incoming(p), copies), block_diagonal(c.outgoing(p), copies),
                              target, c.ring));
  }
  return out;
}

CochainComplex dual_transpose(const CochainComplex& c) {
  CochainComplex out = c;
  for (auto& d : out.differentials) d = d.transpose();
  out.orientation =
      c.orientation == Orientation::cohomological ? Orientation::homological : Orientation::cohomological;
  return out;
}

}  // namespace nccw
