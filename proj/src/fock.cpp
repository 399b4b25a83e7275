#include "fnoise/fock.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fnoise/errors.hpp"
#include "fnoise/moments.hpp"

namespace fnoise {

namespace {

using Column = std::vector<std::pair<std::size_t, Scalar>>;

void collect_grade(int modes, int remaining, int min_mode, std::vector<std::uint8_t>& occ,
                   std::vector<std::vector<std::uint8_t>>& out) {
  if (remaining == 0) {
    out.push_back(occ);
    return;
  }
  for (int mu = min_mode; mu < modes; ++mu) {
    ++occ[mu];
    collect_grade(modes, remaining - 1, mu, occ, out);
    --occ[mu];
  }
}

}  // namespace

Integer basis_size(const Truncation& trunc) {
  const unsigned long modes = static_cast<unsigned long>(trunc.d) * trunc.M;
  Integer total = 0;
  for (int n = 0; n <= trunc.n_max; ++n) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), modes + n - 1, static_cast<unsigned long>(n));
    total += c;
  }
  return total;
}

FockSpace::FockSpace(Truncation trunc) : trunc_(std::move(trunc)) {
  if (trunc_.d < 1 || trunc_.M < 1 || trunc_.n_max < 0 || trunc_.delta <= 0)
    throw std::invalid_argument("truncation needs d, M >= 1, delta > 0, n_max >= 0");
  if (trunc_.n_max > 255) throw std::invalid_argument("n_max above 255 is not supported");
  const Integer size = basis_size(trunc_);
  if (size > Integer(static_cast<unsigned long>(trunc_.basis_cap)))
    throw GuardError("Fock basis of " + size.get_str() + " states exceeds cap " +
                     std::to_string(trunc_.basis_cap));

  std::vector<std::uint8_t> occ(modes(), 0);
  for (int n = 0; n <= trunc_.n_max; ++n) collect_grade(modes(), n, 0, occ, occupations_);

  grades_.reserve(occupations_.size());
  max_colors_.reserve(occupations_.size());
  for (std::size_t i = 0; i < occupations_.size(); ++i) {
    int grade = 0;
    int top = 0;
    for (int mu = 0; mu < modes(); ++mu) {
      grade += occupations_[i][mu];
      if (occupations_[i][mu]) top = std::max(top, color_of(mu));
    }
    grades_.push_back(grade);
    max_colors_.push_back(top);
    index_.emplace(occupations_[i], i);
  }
}

std::vector<int> FockSpace::colors(std::size_t i) const {
  std::vector<int> out;
  for (int mu = 0; mu < modes(); ++mu) out.insert(out.end(), occupations_[i][mu], color_of(mu));
  std::sort(out.begin(), out.end());
  return out;
}

int FockSpace::count_color(std::size_t i, int k) const {
  int count = 0;
  for (int j = 1; j <= trunc_.d; ++j) count += occupations_[i][mode(j, k)];
  return count;
}

std::optional<std::size_t> FockSpace::index_of(const std::vector<std::uint8_t>& occupation) const {
  auto it = index_.find(occupation);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vector FockSpace::basis_vector(std::size_t i) const {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(size()));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

int FockSpace::grid_cells(const Rational& t) const {
  Rational cells = t / trunc_.delta;
  cells.canonicalize();
  if (cells.get_den() != 1 || cells < 0 || cells > trunc_.d)
    throw std::invalid_argument("interval endpoint " + to_string(t) +
                                " is not a grid point in [0, d*delta]");
  return static_cast<int>(cells.get_num().get_si());
}

ModeVector FockSpace::indicator(const Rational& t) const {
  const int cells = grid_cells(t);
  const double amp = std::sqrt(trunc_.delta.get_d());
  ModeVector f(trunc_.d, 0.0);
  for (int j = 0; j < cells; ++j) f[j] = amp;
  return f;
}

DenseMatrix FockSpace::interval_matrix(const Rational& t) const {
  const int cells = grid_cells(t);
  DenseMatrix T = DenseMatrix::Zero(trunc_.d, trunc_.d);
  for (int j = 0; j < cells; ++j) T(j, j) = 1.0;
  return T;
}

void FockSpace::check_color(int k) const {
  if (k < 1 || k > trunc_.M)
    throw std::invalid_argument("color " + std::to_string(k) + " outside 1.." +
                                std::to_string(trunc_.M));
}

void FockSpace::check_mode_vector(const ModeVector& f) const {
  if (static_cast<int>(f.size()) != trunc_.d)
    throw std::invalid_argument("mode vector has " + std::to_string(f.size()) +
                                " entries, expected d=" + std::to_string(trunc_.d));
}

FockOperator FockOperator::adjoint() const {
  return {matrix.adjoint(), -raise_hi, -raise_lo, "(" + description + ")^*"};
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  SparseMatrix product = (a.matrix * b.matrix).pruned();
  return {std::move(product), a.raise_lo + b.raise_lo, a.raise_hi + b.raise_hi,
          a.description + " " + b.description};
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  return {a.matrix + b.matrix, std::min(a.raise_lo, b.raise_lo),
          std::max(a.raise_hi, b.raise_hi), "(" + a.description + " + " + b.description + ")"};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  return {a.matrix - b.matrix, std::min(a.raise_lo, b.raise_lo),
          std::max(a.raise_hi, b.raise_hi), "(" + a.description + " - " + b.description + ")"};
}

FockOperator operator*(Scalar c, const FockOperator& a) {
  return {c * a.matrix, a.raise_lo, a.raise_hi, a.description};
}

Vector apply(const FockSpace& space, const FockOperator& op, const Vector& v) {
  int top = -1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != Scalar(0)) top = std::max(top, space.grade(static_cast<std::size_t>(i)));
  if (top >= 0 && top + op.raise_hi > space.truncation().n_max)
    throw TruncationError("applying " + op.description + " to a grade-" + std::to_string(top) +
                          " component would exceed n_max=" +
                          std::to_string(space.truncation().n_max));
  return op.matrix * v;
}

namespace {

SparseMatrix from_columns(const FockSpace& space, const std::vector<Column>& columns) {
  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [row, value] : columns[c])
      triplets.emplace_back(static_cast<int>(row), static_cast<int>(c), value);
  const auto n = static_cast<Eigen::Index>(space.size());
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace

SparseMatrix assemble_serial(const FockSpace& space, const ColumnFn& column) {
  std::vector<Column> columns(space.size());
  for (std::size_t c = 0; c < space.size(); ++c) column(c, columns[c]);
  return from_columns(space, columns);
}

SparseMatrix assemble(const FockSpace& space, const ColumnFn& column) {
  std::vector<Column> columns(space.size());
  const auto n = static_cast<std::int64_t>(space.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t c = 0; c < n; ++c) column(static_cast<std::size_t>(c), columns[c]);
  return from_columns(space, columns);
}

FockOperator identity(const FockSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.size());
  SparseMatrix m(n, n);
  m.setIdentity();
  return {std::move(m), 0, 0, "I"};
}

FockOperator projection(const FockSpace& space, const Filter& sigma) {
  auto m = assemble(space, [&](std::size_t c, Column& out) {
    for (int k : space.colors(c))
      if (!sigma.contains(k)) return;
    out.emplace_back(c, 1.0);
  });
  return {std::move(m), 0, 0, "P(" + sigma.to_string() + ")"};
}

FockOperator creation(const FockSpace& space, const ModeVector& f, int k) {
  space.check_color(k);
  space.check_mode_vector(f);
  const int n_max = space.truncation().n_max;
  auto m = assemble(space, [&](std::size_t c, Column& out) {
    if (space.grade(c) >= n_max) return;
    auto occ = space.occupation(c);
    for (int j = 1; j <= space.truncation().d; ++j) {
      if (f[j - 1] == Scalar(0)) continue;
      const int mu = space.mode(j, k);
      const double amp = std::sqrt(static_cast<double>(occ[mu]) + 1.0);
      ++occ[mu];
      out.emplace_back(*space.index_of(occ), f[j - 1] * amp);
      --occ[mu];
    }
  });
  return {std::move(m), 1, 1, "a*(f,k=" + std::to_string(k) + ")"};
}

FockOperator annihilation(const FockSpace& space, const ModeVector& f, int k) {
  space.check_color(k);
  space.check_mode_vector(f);
  auto m = assemble(space, [&](std::size_t c, Column& out) {
    auto occ = space.occupation(c);
    for (int j = 1; j <= space.truncation().d; ++j) {
      const int mu = space.mode(j, k);
      if (f[j - 1] == Scalar(0) || occ[mu] == 0) continue;
      const double amp = std::sqrt(static_cast<double>(occ[mu]));
      --occ[mu];
      out.emplace_back(*space.index_of(occ), std::conj(f[j - 1]) * amp);
      ++occ[mu];
    }
  });
  return {std::move(m), -1, -1, "a(f,k=" + std::to_string(k) + ")"};
}

FockOperator dgamma(const FockSpace& space, const DenseMatrix& T, int k) {
  space.check_color(k);
  const int d = space.truncation().d;
  if (T.rows() != d || T.cols() != d)
    throw std::invalid_argument("one-particle matrix must be d x d");
  const std::string name = "dGamma(T,k=" + std::to_string(k) + ")";

  if (T.isDiagonal(0.0)) {
    auto m = assemble(space, [&](std::size_t c, Column& out) {
      Scalar value = 0.0;
      for (int j = 1; j <= d; ++j)
        value += T(j - 1, j - 1) * static_cast<double>(space.occupation(c)[space.mode(j, k)]);
      if (value != Scalar(0)) out.emplace_back(c, value);
    });
    return {std::move(m), 0, 0, name};
  }

  auto m = assemble(space, [&](std::size_t c, Column& out) {
    auto occ = space.occupation(c);
    for (int j = 1; j <= d; ++j) {
      const int from = space.mode(j, k);
      if (occ[from] == 0) continue;
      const double lower = std::sqrt(static_cast<double>(occ[from]));
      --occ[from];
      for (int i = 1; i <= d; ++i) {
        if (T(i - 1, j - 1) == Scalar(0)) continue;
        const int to = space.mode(i, k);
        const double raise = std::sqrt(static_cast<double>(occ[to]) + 1.0);
        ++occ[to];
        out.emplace_back(*space.index_of(occ), T(i - 1, j - 1) * lower * raise);
        --occ[to];
      }
      ++occ[from];
    }
  });
  return {std::move(m), 0, 0, name};
}

FockOperator filtered_creation(const FockSpace& space, const ModeVector& f, int k,
                               const Filter& sigma) {
  auto op = creation(space, f, k) * projection(space, sigma);
  op.description = "a*(f,k=" + std::to_string(k) + ",s=" + sigma.to_string() + ")";
  return op;
}

FockOperator filtered_annihilation(const FockSpace& space, const ModeVector& f, int k,
                                   const Filter& sigma) {
  auto op = projection(space, sigma) * annihilation(space, f, k);
  op.description = "a(f,k=" + std::to_string(k) + ",s=" + sigma.to_string() + ")";
  return op;
}

FockOperator filtered_number(const FockSpace& space, int k, const Filter& sigma,
                             const DenseMatrix& T) {
  auto op = dgamma(space, T, k) * projection(space, sigma.with(k));
  op.description = "N(T,k=" + std::to_string(k) + ",s=" + sigma.to_string() + ")";
  return op;
}

OpSpec OpSpec::create(ModeVector f, int k, Filter sigma) {
  OpSpec s;
  s.kind = Kind::Create;
  s.f = std::move(f);
  s.color = k;
  s.filter = std::move(sigma);
  return s;
}

OpSpec OpSpec::annihilate(ModeVector f, int k, Filter sigma) {
  OpSpec s = create(std::move(f), k, std::move(sigma));
  s.kind = Kind::Annihilate;
  return s;
}

OpSpec OpSpec::number(int k, Filter sigma, DenseMatrix T) {
  OpSpec s;
  s.kind = Kind::Number;
  s.color = k;
  s.filter = std::move(sigma);
  s.T = std::move(T);
  return s;
}

OpSpec OpSpec::create_process(Rational t, int k, Filter sigma) {
  OpSpec s = create({}, k, std::move(sigma));
  s.t = std::move(t);
  return s;
}

OpSpec OpSpec::annihilate_process(Rational t, int k, Filter sigma) {
  OpSpec s = annihilate({}, k, std::move(sigma));
  s.t = std::move(t);
  return s;
}

OpSpec OpSpec::number_process(Rational t, int k, Filter sigma) {
  OpSpec s = number(k, std::move(sigma), {});
  s.t = std::move(t);
  return s;
}

OpSpec OpSpec::time(Rational t, Filter sigma) {
  OpSpec s;
  s.kind = Kind::Time;
  s.filter = std::move(sigma);
  s.t = std::move(t);
  return s;
}

OpSpec OpSpec::lambda(Rational t, int k, Filter sigma) {
  OpSpec s = time(std::move(t), std::move(sigma));
  s.kind = Kind::Lambda;
  s.color = k;
  return s;
}

OpSpec OpSpec::projection(Filter sigma) {
  OpSpec s;
  s.kind = Kind::Projection;
  s.filter = std::move(sigma);
  return s;
}

FockOperator process(const FockSpace& space, const OpSpec& spec) {
  auto vector_of = [&] { return spec.f.empty() ? space.indicator(spec.t) : spec.f; };
  auto matrix_of = [&] { return spec.T.size() == 0 ? space.interval_matrix(spec.t) : spec.T; };
  switch (spec.kind) {
    case OpSpec::Kind::Create:
      return filtered_creation(space, vector_of(), spec.color, spec.filter);
    case OpSpec::Kind::Annihilate:
      return filtered_annihilation(space, vector_of(), spec.color, spec.filter);
    case OpSpec::Kind::Number:
      return filtered_number(space, spec.color, spec.filter, matrix_of());
    case OpSpec::Kind::Time: {
      space.interval_matrix(spec.t);  // grid check
      auto op = Scalar(spec.t.get_d()) * projection(space, spec.filter);
      op.description = "tP(" + spec.filter.to_string() + ")";
      return op;
    }
    case OpSpec::Kind::Lambda: {
      const auto chi = space.indicator(spec.t);
      auto op = filtered_annihilation(space, chi, spec.color, spec.filter) +
                filtered_creation(space, chi, spec.color, spec.filter) +
                filtered_number(space, spec.color, spec.filter, space.interval_matrix(spec.t)) +
                Scalar(spec.t.get_d()) * projection(space, spec.filter);
      op.description = "Lambda(t=" + to_string(spec.t) + ",k=" + std::to_string(spec.color) +
                       ",s=" + spec.filter.to_string() + ")";
      return op;
    }
    case OpSpec::Kind::Projection:
      return projection(space, spec.filter);
  }
  throw std::invalid_argument("unknown operator kind");
}

Scalar vacuum_expectation(const FockSpace& space, const std::vector<FockOperator>& word) {
  // After factor i only grades that the factors to its left can still bring
  // back to zero matter; dropping the rest is exact.
  std::vector<int> reach(word.size() + 1, 0);
  for (std::size_t i = 0; i < word.size(); ++i)
    reach[i + 1] = reach[i] + std::max(0, -word[i].raise_lo);
  const int n_max = space.truncation().n_max;
  Vector v = space.vacuum();
  for (std::size_t i = word.size(); i-- > 0;) {
    // Raised components lost to the cap only matter if they could be kept.
    v = reach[i] > n_max ? apply(space, word[i], v) : Vector(word[i].matrix * v);
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (space.grade(static_cast<std::size_t>(j)) > reach[i]) v(j) = 0.0;
  }
  return v(0);
}

Scalar vacuum_expectation(const FockSpace& space, const std::vector<OpSpec>& word) {
  std::vector<FockOperator> ops;
  ops.reserve(word.size());
  for (const auto& spec : word) ops.push_back(process(space, spec));
  return vacuum_expectation(space, ops);
}

Scalar inner(const ModeVector& f, const ModeVector& g) {
  if (f.size() != g.size()) throw std::invalid_argument("mode vectors differ in length");
  Scalar out = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) out += std::conj(f[j]) * g[j];
  return out;
}

double max_entry(const FockSpace& space, const SparseMatrix& m, int max_grade) {
  double out = 0.0;
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    if (space.grade(static_cast<std::size_t>(c)) > max_grade) continue;
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

double verify_commutation(const FockSpace& space, const Filter& sigma, const Filter& tau, int k,
                        int l, const ModeVector& f, const ModeVector& g) {
  const auto a = filtered_annihilation(space, f, k, sigma);
  const auto a_star = filtered_creation(space, g, l, tau);
  SparseMatrix lhs = a.matrix * a_star.matrix;
  if (sigma.contains(l)) lhs -= a_star.matrix * a.matrix * projection(space, tau).matrix;
  SparseMatrix rhs(lhs.rows(), lhs.cols());
  if (k == l) rhs = inner(f, g) * projection(space, sigma.intersect(tau)).matrix;
  return max_entry(space, lhs - rhs, space.truncation().n_max - 1);
}

PoissonNoiseCheck verify_poisson_noise(const FockSpace& space, const ColorFilterTuple& cf,
                                     const Rational& t) {
  if (static_cast<int>(cf.size()) > space.truncation().n_max)
    throw TruncationError("word of length " + std::to_string(cf.size()) +
                          " needs n_max >= its length");
  std::vector<OpSpec> word;
  std::map<int, Rational> rates;
  for (std::size_t i = 0; i < cf.size(); ++i) {
    word.push_back(OpSpec::lambda(t, cf.colors[i], cf.filters[i]));
    rates[cf.colors[i]] = t;
  }
  PoissonNoiseCheck out;
  out.fock = vacuum_expectation(space, word);
  out.combinatorial = poisson_limit(cf, rates);
  out.diff = std::abs(out.fock - Scalar(out.combinatorial.get_d()));
  return out;
}

}  // namespace fnoise
