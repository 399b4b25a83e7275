#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fnoise/filter.hpp"
#include "fnoise/partitions.hpp"
#include "fnoise/rational.hpp"

namespace fnoise {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Scalar>;
/// Coefficients over the d grid cells of the one-particle time space.
using ModeVector = std::vector<Scalar>;

struct Truncation {
  int d = 2;           // grid cells
  Rational delta = 1;  // cell width
  int M = 2;           // colors
  int n_max = 4;       // particle cap
  std::size_t basis_cap = 200'000;
};

/// Number of occupation states for a truncation, without building them.
Integer basis_size(const Truncation& trunc);

/// Orthonormal occupation basis of the truncated multiple symmetric Fock
/// space. Mode mu = (k-1)*d + (j-1) carries grid cell j and color k. States are
/// graded by particle number and lexicographic (as sorted mode tuples) within
/// a grade, so index 0 is the vacuum.
class FockSpace {
 public:
  explicit FockSpace(Truncation trunc);

  const Truncation& truncation() const { return trunc_; }
  std::size_t size() const { return occupations_.size(); }
  int modes() const { return trunc_.d * trunc_.M; }
  int mode(int cell, int color) const { return (color - 1) * trunc_.d + (cell - 1); }
  int cell_of(int mode) const { return mode % trunc_.d + 1; }
  int color_of(int mode) const { return mode / trunc_.d + 1; }

  const std::vector<std::uint8_t>& occupation(std::size_t i) const { return occupations_[i]; }
  int grade(std::size_t i) const { return grades_[i]; }
  /// Highest occupied color, 0 for the vacuum.
  int max_color(std::size_t i) const { return max_colors_[i]; }
  /// Colors of the particles in ascending order, with multiplicity.
  std::vector<int> colors(std::size_t i) const;
  /// Particles of color k.
  int count_color(std::size_t i, int k) const;
  std::optional<std::size_t> index_of(const std::vector<std::uint8_t>& occupation) const;

  Vector basis_vector(std::size_t i) const;
  Vector vacuum() const { return basis_vector(0); }

  /// sqrt(delta) on the cells covering [0, t]; t must be a grid point in [0, d*delta].
  ModeVector indicator(const Rational& t) const;
  /// Diagonal 0/1 multiplication operator by the indicator of [0, t].
  DenseMatrix interval_matrix(const Rational& t) const;

  void check_color(int k) const;
  void check_mode_vector(const ModeVector& f) const;

 private:
  int grid_cells(const Rational& t) const;

  Truncation trunc_;
  std::vector<std::vector<std::uint8_t>> occupations_;
  std::vector<int> grades_;
  std::vector<int> max_colors_;
  std::map<std::vector<std::uint8_t>, std::size_t> index_;
};

/// Sparse operator plus the range of grade shifts it can cause, used to
/// refuse applications that would leave the truncation.
struct FockOperator {
  SparseMatrix matrix;
  int raise_lo = 0;
  int raise_hi = 0;
  std::string description;

  FockOperator adjoint() const;
};

FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator+(const FockOperator& a, const FockOperator& b);
FockOperator operator-(const FockOperator& a, const FockOperator& b);
FockOperator operator*(Scalar c, const FockOperator& a);

/// Strict application: throws TruncationError if a nonzero component could be
/// raised past n_max.
Vector apply(const FockSpace& space, const FockOperator& op, const Vector& v);

/// Column builder: appends the nonzero (row, value) entries of one column.
using ColumnFn = std::function<void(std::size_t, std::vector<std::pair<std::size_t, Scalar>>&)>;
/// Column-parallel assembly; deterministic regardless of thread count.
SparseMatrix assemble(const FockSpace& space, const ColumnFn& column);
SparseMatrix assemble_serial(const FockSpace& space, const ColumnFn& column);

FockOperator identity(const FockSpace& space);
/// Keeps a state iff every occupied color lies in sigma.
FockOperator projection(const FockSpace& space, const Filter& sigma);
/// a*(f (x) e_k).
FockOperator creation(const FockSpace& space, const ModeVector& f, int k);
/// a(f (x) e_k), antilinear in f.
FockOperator annihilation(const FockSpace& space, const ModeVector& f, int k);
/// Second quantization sum_{i,j} T_ij a*_{(i,k)} a_{(j,k)}; diagonal T takes a fast path.
FockOperator dgamma(const FockSpace& space, const DenseMatrix& T, int k);

FockOperator filtered_creation(const FockSpace& space, const ModeVector& f, int k,
                               const Filter& sigma);
FockOperator filtered_annihilation(const FockSpace& space, const ModeVector& f, int k,
                                   const Filter& sigma);
FockOperator filtered_number(const FockSpace& space, int k, const Filter& sigma,
                             const DenseMatrix& T);

/// One factor of an operator word.
struct OpSpec {
  enum class Kind { Create, Annihilate, Number, Time, Lambda, Projection };
  Kind kind = Kind::Projection;
  int color = 1;
  Filter filter = Filter::all();
  ModeVector f;    // Create/Annihilate; empty means the indicator of [0, t]
  DenseMatrix T;   // Number; empty means the interval matrix of [0, t]
  Rational t = 0;

  static OpSpec create(ModeVector f, int k, Filter sigma);
  static OpSpec annihilate(ModeVector f, int k, Filter sigma);
  static OpSpec number(int k, Filter sigma, DenseMatrix T);
  static OpSpec create_process(Rational t, int k, Filter sigma);
  static OpSpec annihilate_process(Rational t, int k, Filter sigma);
  static OpSpec number_process(Rational t, int k, Filter sigma);
  static OpSpec time(Rational t, Filter sigma);
  static OpSpec lambda(Rational t, int k, Filter sigma);
  static OpSpec projection(Filter sigma);
};

FockOperator process(const FockSpace& space, const OpSpec& spec);

/// <Omega, X_1 ... X_n Omega>, applying the rightmost factor first.
Scalar vacuum_expectation(const FockSpace& space, const std::vector<OpSpec>& word);
Scalar vacuum_expectation(const FockSpace& space, const std::vector<FockOperator>& word);

/// <f, g> with the first slot conjugated.
Scalar inner(const ModeVector& f, const ModeVector& g);

/// Largest entry of (commutator-side minus right-hand side) over columns of
/// grade <= n_max - 1.
double verify_commutation(const FockSpace& space, const Filter& sigma, const Filter& tau, int k,
                        int l, const ModeVector& f, const ModeVector& g);

struct PoissonNoiseCheck {
  Scalar fock;
  Rational combinatorial;
  double diff = 0;
};

/// Lambda-word vacuum expectation against the adapted-partition sum of t^{b(R)}.
PoissonNoiseCheck verify_poisson_noise(const FockSpace& space, const ColorFilterTuple& cf,
                                     const Rational& t);

/// Largest |entry| of a sparse matrix restricted to columns with grade <= max_grade.
double max_entry(const FockSpace& space, const SparseMatrix& m, int max_grade);

}  // namespace fnoise
