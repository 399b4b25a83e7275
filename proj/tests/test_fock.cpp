#include <doctest.h>

#include <random>

#include "fnoise/errors.hpp"
#include "fnoise/fock.hpp"
#include "fnoise/oracles.hpp"

using namespace fnoise;

namespace {

Truncation small() { return Truncation{2, Rational(1, 2), 2, 4}; }

Vector random_state(const FockSpace& space, std::mt19937_64& rng, int max_grade) {
  std::normal_distribution<double> g;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space.grade(i) <= max_grade) v(static_cast<Eigen::Index>(i)) = Scalar(g(rng), g(rng));
  return v;
}

ModeVector random_modes(const FockSpace& space, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ModeVector f(space.truncation().d);
  for (auto& x : f) x = Scalar(g(rng), g(rng));
  return f;
}

}  // namespace

TEST_CASE("basis layout") {
  const FockSpace space(small());
  CHECK(Integer(static_cast<unsigned long>(space.size())) == basis_size(small()));
  CHECK(space.size() == 70);
  CHECK(space.grade(0) == 0);
  for (std::size_t i = 1; i < space.size(); ++i) {
    CHECK(space.grade(i - 1) <= space.grade(i));
    CHECK(space.index_of(space.occupation(i)) == i);
  }
  CHECK(space.mode(2, 2) == 3);
  CHECK(space.color_of(3) == 2);
  CHECK(space.cell_of(3) == 2);
}

TEST_CASE("guards and domain checks") {
  Truncation big = small();
  big.n_max = 40;
  big.basis_cap = 1000;
  CHECK_THROWS_AS(FockSpace{big}, GuardError);
  const FockSpace space(small());
  CHECK_THROWS_AS(space.indicator(Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(space.indicator(Rational(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(creation(space, ModeVector(3, 1.0), 1), std::invalid_argument);
  CHECK_THROWS_AS(creation(space, ModeVector(2, 1.0), 3), std::invalid_argument);
  const auto up = creation(space, space.indicator(1), 1);
  Vector top = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  top(static_cast<Eigen::Index>(space.size() - 1)) = 1.0;
  CHECK_THROWS_AS(apply(space, up, top), TruncationError);
}

TEST_CASE("operators agree with the symmetric tensor oracle") {
  const FockSpace space(small());
  std::mt19937_64 rng(5);
  const int n_max = space.truncation().n_max;
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_modes(space, rng);
    const int k = 1 + trial % 2;
    const Vector low = random_state(space, rng, n_max - 1);
    const Vector full = random_state(space, rng, n_max);
    const auto psi_low = oracle::to_tensor(space, low);
    const auto psi_full = oracle::to_tensor(space, full);

    const Vector c = creation(space, f, k).matrix * low;
    CHECK((c - oracle::from_tensor(space, oracle::tensor_creation(space, psi_low, f, k))).norm() < 1e-10);
    const Vector a = annihilation(space, f, k).matrix * full;
    CHECK((a - oracle::from_tensor(space, oracle::tensor_annihilation(space, psi_full, f, k))).norm() < 1e-10);

    DenseMatrix T = DenseMatrix::Random(2, 2);
    const Vector n = dgamma(space, T, k).matrix * full;
    CHECK((n - oracle::from_tensor(space, oracle::tensor_number(space, psi_full, T, k))).norm() < 1e-10);

    const Filter sigma = trial % 3 == 0 ? Filter::of({1}) : Filter::of({2});
    const Vector p = projection(space, sigma).matrix * full;
    CHECK((p - oracle::from_tensor(space, oracle::tensor_filter(space, psi_full, sigma))).norm() < 1e-10);
  }
}

TEST_CASE("annihilation is the adjoint of creation") {
  const FockSpace space(small());
  std::mt19937_64 rng(9);
  const auto f = random_modes(space, rng);
  const SparseMatrix diff = annihilation(space, f, 2).matrix - SparseMatrix(creation(space, f, 2).matrix.adjoint());
  CHECK(max_entry(space, diff, space.truncation().n_max) < 1e-12);
}

TEST_CASE("filtered commutation relation") {
  const FockSpace space(small());
  std::mt19937_64 rng(13);
  const std::vector<Filter> filters{Filter::all(), Filter::empty(), Filter::of({1}), Filter::of({2})};
  for (const auto& sigma : filters)
    for (const auto& tau : filters)
      for (int k = 1; k <= 2; ++k)
        for (int l = 1; l <= 2; ++l)
          CHECK(verify_commutation(space, sigma, tau, k, l, random_modes(space, rng), random_modes(space, rng)) <
                1e-10);
}

TEST_CASE("serial and parallel assembly agree") {
  const FockSpace space(small());
  const ColumnFn column = [&](std::size_t c, std::vector<std::pair<std::size_t, Scalar>>& out) {
    out.emplace_back(c, Scalar(space.grade(c)));
    auto occ = space.occupation(c);
    occ[1] += 1;
    if (auto row = space.index_of(occ)) out.emplace_back(*row, 0.5);
  };
  const SparseMatrix a = assemble(space, column), b = assemble_serial(space, column);
  CHECK(max_entry(space, a - b, space.truncation().n_max) == 0.0);
  CHECK(a.nonZeros() == b.nonZeros());
}

TEST_CASE("Lambda words match adapted partitions up to length four") {
  const FockSpace space(Truncation{2, Rational(1, 2), 2, 5});
  const std::vector<Filter> filters{Filter::all(), Filter::empty(), Filter::of({1})};
  for (int mask = 0; mask < 81; ++mask) {
    std::vector<int> ks;
    std::vector<Filter> sigmas;
    for (int i = 0, m = mask; i < 4; ++i, m /= 3) {
      ks.push_back(1 + (m + i) % 2);
      sigmas.push_back(filters[m % 3]);
    }
    const auto check = verify_poisson_noise(space, ColorFilterTuple(ks, sigmas), 1);
    CHECK(check.diff < 1e-9);
  }
}

TEST_CASE("length five Lambda word follows the role-aware partition sum") {
  // A middle element of its own block acts as a number operator, which
  // spares particles of its own color even under an empty filter.
  const FockSpace space(Truncation{2, Rational(1, 2), 2, 5});
  const Filter all = Filter::all();
  const ColorFilterTuple cf({1, 1, 1, 1, 1}, {all, all, Filter::empty(), all, all});
  const auto check = verify_poisson_noise(space, cf, 1);
  CHECK(check.combinatorial == 25);
  CHECK(std::abs(check.fock - 29.0) < 1e-9);
  CHECK(oracle::poisson_noise_role_aware(cf, 1) == 29);
}

TEST_CASE("vacuum expectation pruning is exact") {
  // Six field factors need grade three at most; a cap of three suffices.
  const FockSpace space(Truncation{1, 1, 1, 3});
  const ModeVector f{1.0};
  const auto field = creation(space, f, 1) + annihilation(space, f, 1);
  CHECK(std::abs(vacuum_expectation(space, std::vector<FockOperator>(6, field)) - 15.0) < 1e-10);
  const FockSpace tight(Truncation{1, 1, 1, 2});
  CHECK_THROWS_AS(vacuum_expectation(tight, std::vector<FockOperator>(6, field)), TruncationError);
}
