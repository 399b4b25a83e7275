#include <doctest.h>

#include <random>

#include "fnoise/errors.hpp"
#include "fnoise/moments.hpp"

using namespace fnoise;
using closed_form::Kind;

namespace {

MomentModel two_label_model() {
  MomentModel model;
  model.set(1, MomentSequence({1, Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5),
                               Rational(1, 6), Rational(1, 7)}));
  model.set(2, MomentSequence({1, 2, 5, 3, 7, 11, 13}));
  return model;
}

Word random_word(std::mt19937_64& rng, int n) {
  const std::vector<Filter> pool{Filter::all(), Filter::empty(), Filter::prefix(2), Filter::of({2}),
                                 Filter::of({1, 3})};
  std::uniform_int_distribution<int> label(1, 2), color(1, 3), pick(0, 4);
  Word w;
  for (int i = 0; i < n; ++i) w.push_back({label(rng), color(rng), pool[pick(rng)]});
  return w;
}

}  // namespace

TEST_CASE("moment sequences") {
  const auto r = MomentSequence::rademacher(6);
  CHECK(r.at(0) == 1);
  CHECK(r.at(3) == 0);
  CHECK(r.at(6) == 1);
  CHECK(MomentSequence::gaussian(6).at(6) == 15);
  CHECK_THROWS_AS(r.at(7), std::out_of_range);
  CHECK_THROWS_AS(MomentSequence({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(two_label_model().at(9), std::invalid_argument);
}

TEST_CASE("filtered word moment on small words") {
  const auto model = two_label_model();
  const Filter all = Filter::all(), none = Filter::empty();
  // Classical: the label partition {1,3}|{2} survives.
  CHECK(filtered_word_moment({{1, 1, all}, {2, 1, all}, {1, 1, all}}, model) == Rational(2, 3));
  // An empty filter in the middle splits the outer block.
  CHECK(filtered_word_moment({{1, 1, all}, {2, 1, none}, {1, 1, all}}, model) == Rational(1, 2));
  // Different colors never share a block.
  CHECK(filtered_word_moment({{1, 1, all}, {1, 2, all}}, model) == Rational(1, 4));
}

TEST_CASE("recursion agrees with the product formula") {
  std::mt19937_64 rng(11);
  const auto model = two_label_model();
  for (int n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 60; ++trial) {
      const auto w = random_word(rng, n);
      CHECK(filtered_word_moment(w, model) == filtered_word_moment_recursive(w, model));
    }
}

TEST_CASE("convolution power matches brute force") {
  std::mt19937_64 rng(3);
  const auto seq = MomentSequence({1, Rational(1, 3), 2, Rational(-1, 2), 5});
  const std::vector<Filter> pool{Filter::all(), Filter::empty(), Filter::prefix(2), Filter::of({2})};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4;
    std::vector<int> ks;
    std::vector<Filter> sigmas;
    for (int i = 0; i < n; ++i) {
      ks.push_back(1 + static_cast<int>(rng() % 2));
      sigmas.push_back(pool[rng() % pool.size()]);
    }
    const ColorFilterTuple cf(ks, sigmas);
    for (std::uint64_t N : {1, 2, 3})
      CHECK(convolution_power(N, cf, seq) == convolution_power_bruteforce(N, cf, seq));
    CHECK(convolution_coefficients(cf, seq) == convolution_coefficients_serial(cf, seq));
  }
}

TEST_CASE("brute force respects the work guard") {
  const auto cf = ColorFilterTuple::uniform({1, 1, 1, 1, 1, 1}, Filter::all());
  WorkGuard tight;
  tight.max_terms = 100;
  CHECK_THROWS_AS(convolution_power_bruteforce(10, cf, MomentSequence::rademacher(6), tight), GuardError);
}

TEST_CASE("central and Poisson limits hit the classical and boolean laws") {
  const Rational lambda(3, 2);
  for (int n = 1; n <= 8; ++n) {
    const std::vector<int> ones(n, 1);
    const auto classical = ColorFilterTuple::uniform(ones, Filter::all());
    const auto boolean = ColorFilterTuple::uniform(ones, Filter::empty());
    CHECK(Rational(Integer(std::to_string(clt_limit(classical)))) ==
          closed_form::evaluate(Kind::ClassicalGaussian, n));
    CHECK(Rational(Integer(std::to_string(clt_limit(boolean)))) ==
          closed_form::evaluate(Kind::BooleanGaussian, n));
    CHECK(poisson_limit(classical, {{1, lambda}}) == closed_form::evaluate(Kind::ClassicalPoisson, n, lambda));
    CHECK(poisson_limit(boolean, {{1, lambda}}) == closed_form::evaluate(Kind::BooleanPoisson, n, lambda));
  }
  CHECK(closed_form::evaluate(Kind::Bell, 5) == 52);
  CHECK(closed_form::evaluate(Kind::Catalan, 6) == 5);
}

TEST_CASE("normalized convolution approaches the central limit") {
  const auto cf = ColorFilterTuple::uniform({1, 1, 1, 1}, Filter::all());
  const auto seq = MomentSequence::rademacher(4);
  double previous = 1e9;
  for (std::uint64_t N : {10, 100, 1000}) {
    // Exactly 3 - 2/N for Rademacher steps.
    Rational expected = 3 - Rational(2, static_cast<unsigned long>(N));
    expected.canonicalize();
    CHECK(clt_normalized(N, cf, seq) == expected);
    const double gap = std::abs(to_double(clt_normalized(N, cf, seq)) - 3.0);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK_THROWS_AS(clt_normalized(10, ColorFilterTuple::uniform({1, 1, 1}, Filter::all()),
                                 MomentSequence({1, 0, 1, 1})),
                  std::domain_error);
}

TEST_CASE("m-free sample moments interpolate boolean and free") {
  for (int p = 1; p <= 4; ++p) {
    CHECK(mfree_sample_moment(1, 2 * p, SampleKind::clt()) == 1);
    CHECK(mfree_sample_moment(p, 2 * p, SampleKind::clt()) == closed_form::evaluate(Kind::Catalan, 2 * p));
  }
  CHECK(mfree_sample_moment(2, 5, SampleKind::clt()) == 0);
  const auto kind = SampleKind::poisson(Rational(2, 3));
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 6; ++n) CHECK(mfree_sample_moment(m, n, kind) == mfree_sample_moment_serial(m, n, kind));
  CHECK(mfree_sample_moment(1, 4, SampleKind::poisson(2)) == closed_form::evaluate(Kind::BooleanPoisson, 4, 2));
}

TEST_CASE("pairing expectation") {
  const Filter all = Filter::all();
  const GramMap gram{{{1, 1}, 2.0}, {{1, 2}, {0.0, 1.0}}, {{2, 2}, 1.0}};
  const std::vector<GaugedLeg> legs{{false, 1, 1, all}, {true, 2, 1, all}};
  CHECK(std::abs(pairing_expectation(legs, gram) - std::complex<double>(0, 1)) < 1e-12);
  // Creation to the left of its partner annihilation pairs to nothing.
  const std::vector<GaugedLeg> wrong{{true, 1, 1, all}, {false, 1, 1, all}};
  CHECK(std::abs(pairing_expectation(wrong, gram)) < 1e-12);
}
