#include <doctest.h>

#include <random>

#include "fnoise/mfree.hpp"
#include "fnoise/moments.hpp"
#include "fnoise/oracles.hpp"
#include "fnoise/verify.hpp"

using namespace fnoise;

namespace {

Truncation colors(int M, int n_max) { return Truncation{2, Rational(1, 2), M, n_max}; }

}  // namespace

TEST_CASE("m parameter") {
  CHECK(MParameter::parse("3").value == 3);
  CHECK(MParameter::parse("inf").infinite);
  CHECK(MParameter::infinity().to_string() == "inf");
  CHECK_THROWS_AS(MParameter::parse("0"), std::invalid_argument);
  CHECK_THROWS_AS(MParameter::parse("two"), std::invalid_argument);
  const FockSpace space(colors(3, 3));
  CHECK(MParameter::infinity().realize(space) == 3);
  CHECK_THROWS_AS(MParameter::finite(4).realize(space), std::invalid_argument);
}

TEST_CASE("D set membership") {
  CHECK(in_d_set({}));
  CHECK_FALSE(in_d_set({1}));
  CHECK(in_d_set({2}));
  CHECK_FALSE(in_d_set({1, 2}));
  CHECK(in_d_set({1, 3}));
  CHECK(in_d_set({1, 1}));
}

TEST_CASE("m-free annihilation is the adjoint of creation") {
  const FockSpace space(colors(3, 3));
  const ModeVector f{Scalar(0.3, 1.0), Scalar(-0.7, 0.2)};
  for (auto m : {MParameter::finite(1), MParameter::finite(2), MParameter::infinity()}) {
    const SparseMatrix diff = mfree_annihilation(space, m, f).matrix -
                              SparseMatrix(mfree_creation(space, m, f).matrix.adjoint());
    CHECK(max_entry(space, diff, 3) < 1e-12);
  }
}

TEST_CASE("m-free number operator is diagonal with the expected eigenvalues") {
  const FockSpace space(colors(3, 3));
  for (int m = 1; m <= 3; ++m) {
    const auto number = mfree_number(space, MParameter::finite(m));
    for (Eigen::Index c = 0; c < number.matrix.outerSize(); ++c)
      for (SparseMatrix::InnerIterator it(number.matrix, c); it; ++it)
        if (it.row() != it.col()) CHECK(std::abs(it.value()) < 1e-12);
    for (std::size_t i = 0; i < space.size(); ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      CHECK(std::abs(number.matrix.coeff(idx, idx) - oracle::mfree_number_direct(space, m, i)) < 1e-12);
    }
  }
}

TEST_CASE("Cuntz relation and resolution of the identity") {
  const FockSpace space(colors(4, 4));
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (auto m : {MParameter::finite(1), MParameter::finite(2), MParameter::finite(3), MParameter::infinity()}) {
    const ModeVector f{Scalar(g(rng), g(rng)), Scalar(g(rng), g(rng))};
    const ModeVector h{Scalar(g(rng), g(rng)), Scalar(g(rng), g(rng))};
    CHECK(verify_cuntz(space, m, f, h) < 1e-10);
    CHECK(verify_resolution(space, m).residual < 1e-10);
  }
}

TEST_CASE("semicircle moments on the m-free Fock space") {
  const FockSpace space(Truncation{1, 1, 3, 3});
  for (int m = 1; m <= 3; ++m)
    for (int p = 1; p <= 3; ++p)
      CHECK(std::abs(semicircle_moment(space, MParameter::finite(m), p) -
                     to_double(mfree_sample_moment(m, 2 * p, SampleKind::clt()))) < 1e-10);
}

TEST_CASE("free Fock oracle on short words") {
  const ModeVector f{1.0, 0.0}, h{0.0, 2.0};
  // <Omega, l(f) l*(f) Omega> = |f|^2
  CHECK(std::abs(free_fock_oracle({{false, f}, {true, f}}, 2) - 1.0) < 1e-12);
  CHECK(std::abs(free_fock_oracle({{false, f}, {true, h}}, 2)) < 1e-12);
  // l(f) l(h) l*(h) l*(f): the inner pair first, then the outer
  CHECK(std::abs(free_fock_oracle({{false, f}, {false, h}, {true, h}, {true, f}}, 2) - 4.0) < 1e-12);
}

TEST_CASE("decomposition into D sectors") {
  const FockSpace space(colors(3, 4));
  const auto sectors = sample_sectors(space, 3);
  CHECK(sectors.size() == 3);
  const auto report = verify_decomposition(space, sectors, 20, 4, 99);
  CHECK(report.orthogonality < 1e-10);
  CHECK(report.oracle < 1e-10);
  CHECK(report.norm_factor < 1e-10);
}
