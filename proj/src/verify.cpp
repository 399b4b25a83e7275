#include "fnoise/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "fnoise/errors.hpp"
#include "fnoise/moments.hpp"
#include "fnoise/oracles.hpp"

namespace fnoise {

void SweepResult::record(double residual, const std::string& label) {
  ++cases;
  max_residual = std::max(max_residual, residual);
  if (!(residual <= tolerance)) {
    ++failures;
    if (examples.size() < 8) {
      std::ostringstream os;
      os << label << " residual=" << residual;
      examples.push_back(os.str());
    }
  }
}

namespace {

ModeVector random_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss;
  ModeVector f(d);
  for (auto& x : f) x = {gauss(rng), gauss(rng)};
  return f;
}

std::vector<Filter> commutation_filters() {
  return {Filter::all(), Filter::empty(), Filter::prefix(2), Filter::prefix(3), Filter::of({2}),
          Filter::of({1, 3})};
}

std::string describe(const ColorFilterTuple& cf) {
  std::string out = "k=(";
  for (std::size_t i = 0; i < cf.size(); ++i) out += (i ? "," : "") + std::to_string(cf.colors[i]);
  out += ") s=(";
  for (std::size_t i = 0; i < cf.size(); ++i) out += (i ? "," : "") + cf.filters[i].to_string();
  return out + ")";
}

}  // namespace

SweepResult sweep_commutation(const FockSpace& space, int cases, std::uint64_t seed,
                            double tolerance) {
  SweepResult out;
  out.name = "filtered commutation relation";
  out.tolerance = tolerance;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  const auto filters = commutation_filters();
  const int d = space.truncation().d;
  const int colors = std::min(space.truncation().M, 3);
  std::uniform_int_distribution<int> pick_filter(0, static_cast<int>(filters.size()) - 1);
  std::uniform_int_distribution<int> pick_color(1, colors);
  for (int c = 0; c < cases; ++c) {
    const Filter& sigma = filters[pick_filter(rng)];
    const Filter& tau = filters[pick_filter(rng)];
    const int k = pick_color(rng);
    const int l = (c % 3 == 0) ? k : pick_color(rng);
    const auto f = random_vector(rng, d);
    const auto g = random_vector(rng, d);
    const double r = verify_commutation(space, sigma, tau, k, l, f, g);
    out.record(r, "s=" + sigma.to_string() + " t=" + tau.to_string() + " k=" + std::to_string(k) +
                      " l=" + std::to_string(l));
  }
  return out;
}

SweepResult sweep_pairing(const FockSpace& space, int cases, int max_length,
                              std::uint64_t seed, double tolerance) {
  SweepResult out;
  out.name = "vacuum pairing sums";
  out.tolerance = tolerance;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  const std::vector<Filter> filters{Filter::all(), Filter::empty(), Filter::prefix(2),
                                    Filter::prefix(3)};
  const int d = space.truncation().d;
  const int colors = std::min(space.truncation().M, 2);
  std::uniform_int_distribution<int> pick_filter(0, static_cast<int>(filters.size()) - 1);
  std::uniform_int_distribution<int> pick_color(1, colors);
  std::uniform_int_distribution<int> pick_length(1, max_length);
  std::bernoulli_distribution coin(0.5);
  int nonzero = 0;

  for (int c = 0; c < cases; ++c) {
    int n = pick_length(rng);
    const bool planted = c % 4 != 3;
    if (planted && n % 2 == 1) n = n + 1 <= max_length ? n + 1 : n - 1;
    std::vector<GaugedLeg> legs(n);
    if (planted && n > 0) {
      // Plant an oriented pairing so the sum has a chance to be nonzero.
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (int p = 0; p < n; p += 2) {
        const int a = std::min(order[p], order[p + 1]);
        const int b = std::max(order[p], order[p + 1]);
        const int k = pick_color(rng);
        legs[a].star = false;
        legs[b].star = true;
        legs[a].color = legs[b].color = k;
      }
    } else {
      for (auto& leg : legs) {
        leg.star = coin(rng);
        leg.color = pick_color(rng);
      }
    }
    std::vector<ModeVector> vectors(n);
    std::vector<OpSpec> word;
    for (int i = 0; i < n; ++i) {
      legs[i].vector_label = i;
      legs[i].filter = filters[pick_filter(rng)];
      vectors[i] = random_vector(rng, d);
      word.push_back(legs[i].star ? OpSpec::create(vectors[i], legs[i].color, legs[i].filter)
                                  : OpSpec::annihilate(vectors[i], legs[i].color, legs[i].filter));
    }
    GramMap gram;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) gram[{a, b}] = inner(vectors[a], vectors[b]);

    const Scalar combinatorial = pairing_expectation(legs, gram);
    const Scalar fock = vacuum_expectation(space, word);
    if (std::abs(combinatorial) > 1e-12) ++nonzero;
    std::string label = "word=";
    for (const auto& leg : legs)
      label += std::string(leg.star ? "a*" : "a") + "(" + std::to_string(leg.color) + "," +
               leg.filter.to_string() + ")";
    out.record(std::abs(fock - combinatorial), label);
  }
  out.notes.push_back("nonzero expectations: " + std::to_string(nonzero));
  return out;
}

SweepResult sweep_poisson_noise(const FockSpace& space, int max_n, const std::vector<Rational>& times,
                              const std::vector<Filter>& filters, double tolerance) {
  SweepResult out;
  out.name = "poisson noise moments";
  out.tolerance = tolerance;
  // Checked here because nothing may throw inside the parallel loop.
  if (max_n > space.truncation().n_max)
    throw TruncationError("Lambda words of length " + std::to_string(max_n) + " need n_max >= " +
                          std::to_string(max_n));
  if (max_n > EnumerationGuard{}.max_n)
    throw GuardError("word length " + std::to_string(max_n) + " exceeds the enumeration guard");
  const int colors = space.truncation().M;
  const int letters = colors * static_cast<int>(filters.size());

  for (const auto& t : times) {
    std::vector<FockOperator> lambdas;
    for (int k = 1; k <= colors; ++k)
      for (const auto& sigma : filters) lambdas.push_back(process(space, OpSpec::lambda(t, k, sigma)));

    for (int n = 1; n <= max_n; ++n) {
      std::int64_t words = 1;
      for (int i = 0; i < n; ++i) words *= letters;
      std::vector<double> residual(words);
      std::vector<std::string> labels(words);
      std::vector<char> explained(words, 0);

#pragma omp parallel for schedule(dynamic, 64)
      for (std::int64_t w = 0; w < words; ++w) {
        std::vector<int> code(n);
        std::int64_t rest = w;
        for (int i = n - 1; i >= 0; --i) {
          code[i] = static_cast<int>(rest % letters);
          rest /= letters;
        }
        std::vector<int> ks(n);
        std::vector<Filter> sigmas(n);
        std::map<int, Rational> rates;
        for (int i = 0; i < n; ++i) {
          ks[i] = code[i] / static_cast<int>(filters.size()) + 1;
          sigmas[i] = filters[code[i] % filters.size()];
          rates[ks[i]] = t;
        }
        const ColorFilterTuple cf(ks, sigmas);
        Vector v = space.vacuum();
        for (int i = n - 1; i >= 0; --i) v = apply(space, lambdas[code[i]], v);
        const double combinatorial = poisson_limit(cf, rates).get_d();
        residual[w] = std::abs(v(0) - Scalar(combinatorial));
        if (!(residual[w] <= tolerance)) {
          const double predicted = oracle::poisson_noise_role_aware(cf, t).get_d();
          explained[w] = std::abs(v(0) - Scalar(predicted)) <= tolerance;
          std::ostringstream os;
          os << "t=" << to_string(t) << " " << describe(cf) << " fock=" << v(0).real()
             << " partitions=" << combinatorial;
          labels[w] = os.str();
        }
      }
      int mismatches = 0, matched = 0;
      for (std::int64_t w = 0; w < words; ++w) {
        out.record(residual[w], labels[w]);
        if (!(residual[w] <= tolerance)) {
          ++mismatches;
          matched += explained[w];
        }
      }
      std::ostringstream os;
      os << "t=" << to_string(t) << " n=" << n << ": " << words << " words, " << mismatches
         << " mismatches, " << matched << " of them equal the role-aware partition sum";
      out.notes.push_back(os.str());
    }
  }
  return out;
}

SweepResult sweep_cuntz(const FockSpace& space, const std::vector<MParameter>& ms, int per_m,
                        std::uint64_t seed, double tolerance) {
  SweepResult out;
  out.name = "cuntz relation";
  out.tolerance = tolerance;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  const int d = space.truncation().d;
  for (const auto& m : ms)
    for (int c = 0; c < per_m; ++c) {
      const auto f = random_vector(rng, d);
      const auto g = c == 0 ? f : random_vector(rng, d);
      out.record(verify_cuntz(space, m, f, g), "m=" + m.to_string() + " case " + std::to_string(c));
    }
  return out;
}

SweepResult sweep_resolution(const FockSpace& space, const std::vector<MParameter>& ms,
                             double tolerance) {
  SweepResult out;
  out.name = "resolution of identity";
  out.tolerance = tolerance;
  for (const auto& m : ms) {
    const auto report = verify_resolution(space, m);
    out.record(report.residual, "m=" + m.to_string());
    std::ostringstream os;
    os << "m=" << m.to_string() << " (realized " << report.m_realized
       << "): literal reading residual=" << report.literal_residual;
    out.notes.push_back(os.str());
  }
  return out;
}

SweepResult sweep_semicircle(const FockSpace& space, const std::vector<int>& ms, int max_p,
                             double tolerance) {
  SweepResult out;
  out.name = "m-free semicircle moments";
  out.tolerance = tolerance;
  for (int m : ms)
    for (int p = 1; p <= max_p; ++p) {
      const double fock = semicircle_moment(space, MParameter::finite(m), p);
      const Rational exact = mfree_sample_moment(m, 2 * p, SampleKind::clt());
      std::ostringstream os;
      os << "m=" << m << " p=" << p << " fock=" << fock << " partitions=" << to_string(exact);
      out.record(std::abs(fock - exact.get_d()), os.str());
      out.notes.push_back(os.str());
    }
  return out;
}

std::vector<std::size_t> sample_sectors(const FockSpace& space, int count) {
  const auto& trunc = space.truncation();
  const auto d_states = d_basis(space, MParameter::infinity());
  auto room = [&](std::size_t x) {
    return std::min(trunc.M - space.max_color(x), trunc.n_max - space.grade(x));
  };
  std::vector<std::size_t> out;
  for (int g = 0; g <= trunc.n_max && static_cast<int>(out.size()) < count; ++g)
    for (auto x : d_states)
      if (space.grade(x) == g && room(x) >= 1) {
        out.push_back(x);
        break;
      }
  for (auto x : d_states) {
    if (static_cast<int>(out.size()) >= count) break;
    if (room(x) >= 1 && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace fnoise
