#include "fnoise/suite.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "fnoise/moments.hpp"
#include "fnoise/oracles.hpp"

namespace fnoise {

using json = nlohmann::ordered_json;

json sweep_json(const SweepResult& sweep) {
  json out;
  out["name"] = sweep.name;
  out["cases"] = sweep.cases;
  out["failures"] = sweep.failures;
  out["max_residual"] = sweep.max_residual;
  out["tolerance"] = sweep.tolerance;
  out["seed"] = sweep.seed;
  out["passed"] = sweep.passed();
  if (!sweep.examples.empty()) out["failing_examples"] = sweep.examples;
  if (!sweep.notes.empty()) out["notes"] = sweep.notes;
  return out;
}

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<Filter> filter_pool() {
  return {Filter::all(),    Filter::empty(),  Filter::prefix(2), Filter::prefix(3),
          Filter::prefix(4), Filter::of({1}), Filter::of({2}),   Filter::of({3}),
          Filter::of({1, 3}), Filter::of({2, 3})};
}

ColorFilterTuple random_cf(std::mt19937_64& rng, int n, int colors) {
  static const auto pool = filter_pool();
  std::uniform_int_distribution<int> pick_color(1, colors);
  std::uniform_int_distribution<std::size_t> pick_filter(0, pool.size() - 1);
  std::vector<int> ks(n);
  std::vector<Filter> sigmas(n);
  for (int i = 0; i < n; ++i) {
    ks[i] = pick_color(rng);
    sigmas[i] = pool[pick_filter(rng)];
  }
  return ColorFilterTuple(std::move(ks), std::move(sigmas));
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

MomentSequence random_sequence(std::mt19937_64& rng, int max_order) {
  std::vector<Rational> v{Rational(1)};
  for (int n = 1; n <= max_order; ++n) v.push_back(random_rational(rng));
  return MomentSequence(std::move(v));
}

ColorFilterTuple prefixes(std::vector<int> colors, const std::vector<int>& r) {
  std::vector<Filter> filters;
  for (int x : r) filters.push_back(Filter::prefix(x));
  return ColorFilterTuple(std::move(colors), std::move(filters));
}

Word word_of(const std::vector<int>& labels, const ColorFilterTuple& cf) {
  Word w;
  for (std::size_t i = 0; i < labels.size(); ++i) w.push_back({labels[i], cf.colors[i], cf.filters[i]});
  return w;
}

// Coarsest-adapted refinement: two worked cases plus a brute-force sweep.
CriterionResult criterion_1(std::mt19937_64& rng) {
  CriterionResult out{1, "coarsest adapted refinement"};
  const auto r = SetPartition::parse(5, "1,3,5|2,4");
  const std::vector<int> colors{1, 1, 2, 1, 1};
  const auto a = coarsest_adapted(r, prefixes(colors, {1, 2, 1, 2, 1}));
  const auto b = coarsest_adapted(r, prefixes(colors, {1, 2, 2, 2, 1}));
  const bool worked = a == SetPartition::singletons(5) && b.to_string() == "{1,5}|{2,4}|{3}";
  out.details["sigma_case"] = a.to_string();
  out.details["tau_case"] = b.to_string();

  std::vector<std::vector<SetPartition>> all(8);
  for (int n = 1; n <= 7; ++n) all[n] = enumerate_partitions(n);
  std::uniform_int_distribution<int> pick_n(1, 7);
  int cases = 0, mismatches = 0;
  std::string first_failure;
  for (; cases < 10'000; ++cases) {
    const int n = pick_n(rng);
    std::uniform_int_distribution<std::size_t> pick_r(0, all[n].size() - 1);
    const auto& partition = all[n][pick_r(rng)];
    const auto cf = random_cf(rng, n, 3);
    const auto fast = coarsest_adapted(partition, cf);
    const auto slow = oracle::coarsest_adapted_bruteforce(partition, cf, all[n]);
    if (!(fast == slow) || !is_adapted(fast, cf) || !fast.refines(partition)) {
      if (mismatches++ == 0) first_failure = partition.to_string();
    }
  }
  out.details["random_cases"] = cases;
  out.details["mismatches"] = mismatches;
  if (mismatches) out.details["first_failure"] = first_failure;
  out.passed = worked && mismatches == 0;
  return out;
}

// Product formula against the recursion on the two worked words and random words.
CriterionResult criterion_2(std::mt19937_64& rng) {
  CriterionResult out{2, "filtered word moments, product formula and recursion"};
  const std::vector<int> labels{1, 2, 1, 2};
  const auto cf_i = prefixes({1, 1, 1, 1}, {1, 2, 2, 1});
  const auto cf_ii = prefixes({1, 1, 1, 1}, {1, 2, 1, 1});
  int worked_failures = 0;
  for (int draw = 0; draw < 50; ++draw) {
    MomentModel model;
    model.set(1, random_sequence(rng, 4));
    model.set(2, random_sequence(rng, 4));
    const Rational want_i = model.at(1).at(2) * model.at(2).at(2);
    const Rational want_ii = model.at(1).at(2) * model.at(2).at(1) * model.at(2).at(1);
    for (const auto& [cf, want] : {std::pair{cf_i, want_i}, std::pair{cf_ii, want_ii}}) {
      const auto w = word_of(labels, cf);
      if (filtered_word_moment(w, model) != want || filtered_word_moment_recursive(w, model) != want)
        ++worked_failures;
    }
  }

  std::uniform_int_distribution<int> pick_n(1, 8), pick_label(1, 3);
  int random_failures = 0;
  const int random_cases = 2000;
  for (int c = 0; c < random_cases; ++c) {
    const int n = pick_n(rng);
    MomentModel model;
    for (int l = 1; l <= 3; ++l) model.set(l, random_sequence(rng, n));
    std::vector<int> ls(n);
    for (auto& l : ls) l = pick_label(rng);
    const auto w = word_of(ls, random_cf(rng, n, 2));
    if (filtered_word_moment(w, model) != filtered_word_moment_recursive(w, model))
      ++random_failures;
  }
  out.details["worked_example_draws"] = 50;
  out.details["worked_example_failures"] = worked_failures;
  out.details["random_words"] = random_cases;
  out.details["random_word_failures"] = random_failures;
  out.passed = worked_failures == 0 && random_failures == 0;
  return out;
}

// Convolution powers against the site-tuple brute force.
CriterionResult criterion_3(std::mt19937_64& rng) {
  CriterionResult out{3, "convolution power against brute force"};
  int cases = 0, failures = 0;
  for (int n_copies = 1; n_copies <= 4; ++n_copies)
    for (int n = 1; n <= 5; ++n)
      for (int draw = 0; draw < 10; ++draw, ++cases) {
        const auto cf = random_cf(rng, n, 2);
        const auto seq = random_sequence(rng, n);
        if (convolution_power(n_copies, cf, seq) != convolution_power_bruteforce(n_copies, cf, seq))
          ++failures;
      }
  out.details["cases"] = cases;
  out.details["failures"] = failures;
  out.passed = cases >= 200 && failures == 0;
  return out;
}

// Exact limit-law values.
CriterionResult criterion_4() {
  CriterionResult out{4, "limit laws"};
  using closed_form::Kind;
  bool ok = true;
  json values;
  auto uniform = [](int n, Filter f) { return ColorFilterTuple::uniform(std::vector<int>(n, 1), f); };
  for (int n : {2, 4, 6}) {
    const auto classical = clt_limit(uniform(n, Filter::all()));
    const auto boolean = clt_limit(uniform(n, Filter::empty()));
    ok = ok && Rational(static_cast<unsigned long>(classical)) == closed_form::evaluate(Kind::ClassicalGaussian, n);
    ok = ok && boolean == 1;
    values["clt_all_" + std::to_string(n)] = classical;
    values["clt_empty_" + std::to_string(n)] = boolean;
  }
  for (int n = 1; n <= 4; ++n) {
    const auto v = poisson_limit(uniform(n, Filter::all()), {{1, Rational(1)}});
    ok = ok && v == closed_form::evaluate(Kind::Bell, n);
    values["poisson_all_" + std::to_string(n)] = to_string(v);
  }
  for (int lambda = 1; lambda <= 2; ++lambda)
    for (int n = 1; n <= 6; ++n) {
      const auto v = poisson_limit(uniform(n, Filter::empty()), {{1, Rational(lambda)}});
      ok = ok && v == closed_form::evaluate(Kind::BooleanPoisson, n, lambda);
    }
  out.details["values"] = values;
  out.details["boolean_poisson_checked"] = 12;
  out.passed = ok;
  return out;
}

// Normalized convolution powers approach the pair-partition counts.
CriterionResult criterion_5() {
  CriterionResult out{5, "central limit convergence"};
  struct Case {
    ColorFilterTuple cf;
    MomentSequence seq;
    std::string label;
  };
  const auto all = Filter::all(), none = Filter::empty();
  std::vector<Case> cases{
      {ColorFilterTuple::uniform({1, 1}, all), MomentSequence::rademacher(6), "k=11 all"},
      {ColorFilterTuple::uniform({1, 1, 1, 1}, all), MomentSequence::rademacher(6), "k=1111 all"},
      {ColorFilterTuple::uniform({1, 1, 1, 1}, none), MomentSequence::rademacher(6), "k=1111 empty"},
      {ColorFilterTuple::uniform({1, 2, 1, 2}, all), MomentSequence::rademacher(6), "k=1212 all"},
      {prefixes({1, 2, 2, 1}, {2, 1, 3, 2}), MomentSequence::rademacher(6), "k=1221 mixed"},
      {ColorFilterTuple::uniform(std::vector<int>(6, 1), all), MomentSequence::rademacher(6), "k=1^6 all"},
      {prefixes({1, 1, 2, 2, 1, 1}, {2, 1, 3, 1, 2, 1}), MomentSequence::rademacher(6), "k=112211 mixed"},
      {ColorFilterTuple::uniform({1, 1, 1, 1}, all), MomentSequence::gaussian(6), "gaussian k=1111 all"},
      {prefixes({1, 1, 1, 1, 1, 1}, {1, 2, 1, 2, 1, 2}), MomentSequence::gaussian(6), "gaussian k=1^6 mixed"},
  };
  bool ok = true;
  json rows = json::array();
  for (const auto& c : cases) {
    const Rational limit(static_cast<unsigned long>(clt_limit(c.cf)));
    std::vector<Rational> errors;
    for (std::uint64_t n_copies : {10u, 100u, 1000u}) {
      Rational e = clt_normalized(n_copies, c.cf, c.seq) - limit;
      errors.push_back(abs(e));
    }
    const bool shrinking = errors[1] <= errors[0] && errors[2] <= errors[1] &&
                           (errors[0] == 0 || errors[2] < errors[0]);
    const bool bounded = errors[2] <= Rational(5, 1000) * (limit + 1);
    ok = ok && shrinking && bounded;
    json row;
    row["case"] = c.label;
    row["limit"] = to_string(limit);
    row["error_10"] = errors[0].get_d();
    row["error_100"] = errors[1].get_d();
    row["error_1000"] = errors[2].get_d();
    row["ok"] = shrinking && bounded;
    rows.push_back(row);
  }
  out.details["cases"] = rows;
  out.passed = ok;
  return out;
}

// m-free hierarchy, combinatorial and operator sides.
CriterionResult criterion_6() {
  CriterionResult out{6, "m-free central limit hierarchy"};
  bool ok = true;
  json values;
  for (int m = 1; m <= 3; ++m)
    for (int p = 1; p <= 3; ++p) {
      const auto v = mfree_sample_moment(m, 2 * p, SampleKind::clt());
      values["m" + std::to_string(m) + "_p" + std::to_string(p)] = to_string(v);
      if (m == 1) ok = ok && v == 1;
      if (m >= p) ok = ok && v == closed_form::evaluate(closed_form::Kind::Catalan, 2 * p);
    }
  Truncation trunc;
  trunc.d = 1;
  trunc.M = 3;
  trunc.n_max = 3;
  const FockSpace space(trunc);
  const auto sweep = sweep_semicircle(space, {1, 2, 3}, 3, 1e-9);
  out.details["sample_moments"] = values;
  out.details["semicircle"] = sweep_json(sweep);
  out.passed = ok && sweep.passed();
  return out;
}

// Operator identities on a truncation of about a thousand states.
CriterionResult criterion_7(std::uint64_t seed) {
  CriterionResult out{7, "commutation, Cuntz and resolution identities"};
  Truncation trunc;
  trunc.d = 2;
  trunc.M = 5;
  trunc.n_max = 4;
  const FockSpace space(trunc);
  std::vector<MParameter> ms;
  for (int m = 1; m <= 4; ++m) ms.push_back(MParameter::finite(m));
  ms.push_back(MParameter::infinity());
  const auto commutation = sweep_commutation(space, 60, seed, 1e-10);
  const auto cuntz = sweep_cuntz(space, ms, 3, seed + 1, 1e-10);
  const auto resolution = sweep_resolution(space, ms, 1e-10);
  out.details["basis_size"] = space.size();
  out.details["commutation"] = sweep_json(commutation);
  out.details["cuntz"] = sweep_json(cuntz);
  out.details["resolution"] = sweep_json(resolution);
  out.passed = commutation.passed() && commutation.cases >= 50 && cuntz.passed() && resolution.passed();
  return out;
}

CriterionResult criterion_8(std::uint64_t seed) {
  CriterionResult out{8, "vacuum expectations against pairing sums"};
  Truncation trunc;
  trunc.d = 2;
  trunc.M = 2;
  trunc.n_max = 6;
  const FockSpace space(trunc);
  const auto sweep = sweep_pairing(space, 120, 6, seed, 1e-9);
  out.details["sweep"] = sweep_json(sweep);
  out.passed = sweep.passed() && sweep.cases >= 100;
  return out;
}

CriterionResult criterion_9() {
  CriterionResult out{9, "Poisson noise moments"};
  Truncation trunc;
  trunc.d = 2;
  trunc.delta = Rational(1, 2);
  trunc.M = 2;
  trunc.n_max = 5;
  const FockSpace space(trunc);
  const std::vector<Filter> filters{Filter::all(), Filter::empty(), Filter::prefix(2),
                                    Filter::prefix(3)};
  const auto sweep = sweep_poisson_noise(space, 5, {Rational(1, 2), Rational(1)}, filters, 1e-8);
  out.details["sweep"] = sweep_json(sweep);
  out.passed = sweep.passed();
  return out;
}

CriterionResult criterion_10(std::uint64_t seed) {
  CriterionResult out{10, "free Fock decomposition"};
  Truncation trunc;
  trunc.d = 2;
  trunc.M = 5;
  trunc.n_max = 4;
  const FockSpace space(trunc);
  const auto sectors = sample_sectors(space, 5);
  const auto report = verify_decomposition(space, sectors, 50, 6, seed);
  json names = json::array();
  for (auto x : sectors) {
    std::string colors;
    for (int k : space.colors(x)) colors += std::to_string(k);
    names.push_back(colors.empty() ? "vacuum" : "colors " + colors);
  }
  out.details["sectors"] = names;
  out.details["seed"] = report.seed;
  out.details["words_per_sector"] = report.words_per_sector;
  out.details["orthogonality"] = report.orthogonality;
  out.details["oracle_deviation"] = report.oracle;
  out.details["norm_factor_deviation"] = report.norm_factor;
  out.details["norm_factor_cases"] = report.norm_cases;
  out.passed = report.sectors == 5 && report.words_per_sector >= 50 &&
               report.orthogonality <= 1e-12 && report.oracle <= 1e-9 &&
               report.norm_factor <= 1e-12 && report.norm_cases > 0;
  return out;
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  const Stopwatch total;
  std::mt19937_64 rng(options.seed);
  std::vector<CriterionResult> results;
  auto wanted = [&](int id) {
    return options.only.empty() ||
           std::find(options.only.begin(), options.only.end(), id) != options.only.end();
  };
  auto run = [&](int id, double budget, auto&& body) {
    if (!wanted(id)) return;
    const Stopwatch watch;
    CriterionResult result;
    try {
      result = body();
    } catch (const std::exception& e) {
      result.id = id;
      result.passed = false;
      result.details["error"] = e.what();
    }
    result.seconds = watch.seconds();
    if (budget > 0 && result.seconds > budget) {
      result.passed = false;
      result.details["over_budget_seconds"] = budget;
    }
    results.push_back(result);
    if (on_result) on_result(results.back());
  };

  run(1, 30, [&] { return criterion_1(rng); });
  run(2, 0, [&] { return criterion_2(rng); });
  run(3, 60, [&] { return criterion_3(rng); });
  run(4, 0, [&] { return criterion_4(); });
  run(5, 0, [&] { return criterion_5(); });
  run(6, 0, [&] { return criterion_6(); });
  run(7, 120, [&] { return criterion_7(options.seed); });
  run(8, 0, [&] { return criterion_8(options.seed); });
  run(9, 0, [&] { return criterion_9(); });
  run(10, 0, [&] { return criterion_10(options.seed); });
  run(11, 0, [&] {
    CriterionResult out{11, "whole battery passes within five minutes"};
    const double elapsed = total.seconds();
    const auto failed = std::count_if(results.begin(), results.end(),
                                      [](const CriterionResult& r) { return !r.passed; });
    out.details["elapsed_seconds"] = elapsed;
    out.details["failed_criteria"] = failed;
    out.passed = failed == 0 && elapsed < 300;
    return out;
  });
  return results;
}

}  // namespace fnoise
