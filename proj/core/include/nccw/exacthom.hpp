#pragma once

// Exact linear algebra over the integers: dense matrices of arbitrary-precision
// entries, Smith normal form, finitely generated abelian groups in invariant
// factor form, and (co)homology of integer and rational complexes.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace nccw {

using Integer = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  IntMatrix transpose() const;
  IntMatrix scaled(const Integer& factor) const;

  // Horizontal concatenation [this | rhs]; row counts must agree.
  IntMatrix hconcat(const IntMatrix& rhs) const;
  IntMatrix block_rows(std::size_t first, std::size_t count) const;
  IntMatrix block_cols(std::size_t first, std::size_t count) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// u * m * v == d, with u and v unimodular and d diagonal with d_1 | d_2 | ...
// and nonnegative diagonal. u_inv and v_inv are carried along for lattice work.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;

  std::size_t rank() const;
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

enum class Ring { integers, rationals };

// Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_t, with 2 <= d_1 | d_2 | ... | d_t.
class FGAbelianGroup {
 public:
  FGAbelianGroup() = default;

  static FGAbelianGroup free(std::size_t rank);
  // Canonicalises an arbitrary list of cyclic orders; entries equal to 1 are
  // dropped and entries equal to 0 contribute free summands.
  static FGAbelianGroup from_cyclic_orders(std::size_t free_rank, const std::vector<Integer>& orders);
  // The cokernel Z^rows / im(relations).
  static FGAbelianGroup cokernel(const IntMatrix& relations);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }
  std::size_t generator_count() const noexcept { return free_rank_ + torsion_.size(); }

  bool is_zero() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_torsion_free() const noexcept { return torsion_.empty(); }
  Integer torsion_order() const;

  FGAbelianGroup rationalized() const { return free(free_rank_); }

  friend FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b);
  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

// Canonical string: "0", or summands joined by " (+) ". Free part first
// ("Z", "Z^2"; "Q", "Q^2" over the rationals), then torsion in divisor order.
std::string to_string(const FGAbelianGroup& g, Ring ring = Ring::integers);

// A group Z^generators / im(relations). Relations has `generators` rows.
struct Presentation {
  std::size_t generators = 0;
  IntMatrix relations;

  static Presentation free(std::size_t n) { return {n, IntMatrix(n, 0)}; }
  // Generators ordered torsion first (Z/d_1, ..., Z/d_t), then free.
  static Presentation canonical(const FGAbelianGroup& g);
};

// ker(outgoing) / im(incoming) for homomorphisms
//   Z^l --incoming--> mid --outgoing--> target
// between presented groups. The maps must be well defined and compose to zero.
// Over the rationals the result is tensored with Q (torsion dropped).
FGAbelianGroup subquotient(const Presentation& mid, const IntMatrix& incoming, const IntMatrix& outgoing,
                           const Presentation& target, Ring ring);

// True when every column of m lies in the image of `relations` for a group
// presented canonically (diagonal relations on the torsion generators).
bool vanishes_in(const IntMatrix& m, const FGAbelianGroup& target);
// Well-definedness of a matrix between canonical presentations: relations of
// the source are sent to relations of the target.
bool is_well_defined(const IntMatrix& m, const FGAbelianGroup& source, const FGAbelianGroup& target);

// Columns forming a Z-basis of {x : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);
// Columns forming a Z-basis of the lattice spanned by the columns of `spanning`.
IntMatrix lattice_basis(const IntMatrix& spanning);

enum class Orientation { cohomological, homological };

// differentials[i] connects degree first_degree + i and first_degree + i + 1:
// cohomological complexes store the map raising degree (shape c_{i+1} x c_i),
// homological complexes the map lowering it (shape c_i x c_{i+1}).
struct CochainComplex {
  Ring ring = Ring::integers;
  int first_degree = 0;
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> differentials;
  Orientation orientation = Orientation::cohomological;

  int last_degree() const { return first_degree + static_cast<int>(ranks.size()) - 1; }
  std::size_t rank_at(int degree) const;
  // Zero matrix of the right shape when the degree lies outside the complex.
  IntMatrix outgoing(int degree) const;
  IntMatrix incoming(int degree) const;

  // Throws ShapeMismatch or ComplexViolation(degree index).
  void validate() const;

  friend bool operator==(const CochainComplex&, const CochainComplex&) = default;
};

FGAbelianGroup cohomology_at(const CochainComplex& c, int degree);
std::vector<FGAbelianGroup> cohomology(const CochainComplex& c);

// Cohomology of C (x) G, one group per degree of C.
std::vector<FGAbelianGroup> homology_with_coefficients(const CochainComplex& c, const FGAbelianGroup& g);

CochainComplex dual_transpose(const CochainComplex& c);

}  // namespace nccw
