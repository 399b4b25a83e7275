#include "fnoise/moments.hpp"

#include <omp.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "fnoise/errors.hpp"

namespace fnoise {

MomentSequence::MomentSequence(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty() || values_.front() != 1)
    throw std::invalid_argument("moment sequence must start with m_0 = 1");
}

MomentSequence MomentSequence::rademacher(int max_order) {
  std::vector<Rational> v(max_order + 1);
  for (int n = 0; n <= max_order; ++n) v[n] = (n % 2 == 0) ? 1 : 0;
  return MomentSequence(std::move(v));
}

MomentSequence MomentSequence::gaussian(int max_order) {
  std::vector<Rational> v(max_order + 1);
  for (int n = 0; n <= max_order; ++n)
    v[n] = closed_form::evaluate(closed_form::Kind::ClassicalGaussian, n);
  v[0] = 1;
  return MomentSequence(std::move(v));
}

const Rational& MomentSequence::at(int n) const {
  if (n < 0 || n > max_order())
    throw std::out_of_range("moment of order " + std::to_string(n) +
                            " requested beyond max_order " + std::to_string(max_order()));
  return values_[n];
}

const MomentSequence& MomentModel::at(int label) const {
  auto it = sequences_.find(label);
  if (it == sequences_.end())
    throw std::invalid_argument("no moment sequence for label " + std::to_string(label));
  return it->second;
}

ColorFilterTuple color_filter_tuple(const Word& word) {
  std::vector<int> colors;
  std::vector<Filter> filters;
  for (const auto& leg : word) {
    colors.push_back(leg.color);
    filters.push_back(leg.filter);
  }
  return ColorFilterTuple(std::move(colors), std::move(filters));
}

Rational filtered_word_moment(const Word& word, const MomentModel& model) {
  if (word.empty()) throw std::invalid_argument("word must be nonempty");
  std::vector<int> labels;
  for (const auto& leg : word) labels.push_back(leg.label);
  const auto labels_partition = SetPartition::from_labels(std::span<const int>(labels));
  const auto refined = coarsest_adapted(labels_partition, color_filter_tuple(word));
  Rational out = 1;
  for (const auto& block : refined.blocks()) {
    const int label = word[block.front() - 1].label;
    out *= model.at(label).at(static_cast<int>(block.size()));
  }
  return out;
}

Rational filtered_word_moment_recursive(const Word& word, const MomentModel& model) {
  if (word.empty()) throw std::invalid_argument("word must be nonempty");
  struct Piece {
    int label;
    int color;
    Filter filter;
    int power;
  };
  // Adjacent legs with identical (label, color, filter) become one power.
  std::vector<Piece> pieces;
  for (const auto& leg : word) {
    if (!pieces.empty() && pieces.back().label == leg.label &&
        pieces.back().color == leg.color && pieces.back().filter == leg.filter) {
      ++pieces.back().power;
    } else {
      pieces.push_back({leg.label, leg.color, leg.filter, 1});
    }
  }

  Rational out = 1;
  for (std::size_t lead = 0; lead < pieces.size(); ++lead) {
    const Piece& x = pieces[lead];
    std::size_t next = lead + 1;
    while (next < pieces.size() &&
           !(pieces[next].label == x.label && pieces[next].color == x.color))
      ++next;
    if (next == pieces.size()) {
      out *= model.at(x.label).at(x.power);
      continue;
    }
    bool separated = false;
    for (std::size_t m = lead + 1; m < next && !separated; ++m)
      separated = !pieces[m].filter.contains(x.color);
    if (separated)
      out *= model.at(x.label).at(x.power);
    else
      pieces[next].power += x.power;
  }
  return out;
}

namespace {

Rational block_product(const SetPartition& refined, const MomentSequence& seq) {
  Rational out = 1;
  for (const auto& block : refined.blocks()) {
    out *= seq.at(static_cast<int>(block.size()));
    if (out == 0) break;
  }
  return out;
}

std::uint64_t checked_power(std::uint64_t base, int exponent, std::uint64_t cap,
                            const char* what) {
  std::uint64_t total = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && total > cap / base)
      throw GuardError(std::string(what) + ": term count exceeds work guard " +
                       std::to_string(cap));
    total *= base;
  }
  if (total > cap)
    throw GuardError(std::string(what) + ": term count exceeds work guard " +
                     std::to_string(cap));
  return total;
}

Rational combine(const std::vector<Rational>& coeffs, std::uint64_t n_copies) {
  Rational out = 0;
  for (std::size_t p = 1; p < coeffs.size(); ++p)
    if (coeffs[p] != 0)
      out += Rational(falling_factorial(n_copies, static_cast<unsigned>(p))) * coeffs[p];
  return out;
}

void require_orders(const ColorFilterTuple& cf, const MomentSequence& seq) {
  if (static_cast<int>(cf.size()) > seq.max_order())
    throw std::out_of_range("word of length " + std::to_string(cf.size()) +
                            " needs moments up to that order; sequence stops at " +
                            std::to_string(seq.max_order()));
}

}  // namespace

std::vector<Rational> convolution_coefficients_serial(const ColorFilterTuple& cf,
                                                      const MomentSequence& seq,
                                                      const WorkGuard& guard) {
  require_orders(cf, seq);
  const int n = static_cast<int>(cf.size());
  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (const auto& r : enumerate_partitions(n, guard.enumeration))
    coeffs[r.num_blocks()] += block_product(coarsest_adapted(r, cf), seq);
  return coeffs;
}

std::vector<Rational> convolution_coefficients(const ColorFilterTuple& cf,
                                               const MomentSequence& seq,
                                               const WorkGuard& guard) {
  require_orders(cf, seq);
  const int n = static_cast<int>(cf.size());
  const auto partitions = enumerate_partitions(n, guard.enumeration);
  const auto count = static_cast<std::int64_t>(partitions.size());
  const int threads = omp_get_max_threads();
  std::vector<std::vector<Rational>> partial(threads, std::vector<Rational>(n + 1, Rational(0)));

#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto& r = partitions[i];
    partial[omp_get_thread_num()][r.num_blocks()] += block_product(coarsest_adapted(r, cf), seq);
  }

  std::vector<Rational> coeffs(n + 1, Rational(0));
  for (const auto& part : partial)
    for (int p = 0; p <= n; ++p) coeffs[p] += part[p];
  return coeffs;
}

Rational convolution_power(std::uint64_t n_copies, const ColorFilterTuple& cf,
                           const MomentSequence& seq, const WorkGuard& guard) {
  if (n_copies == 0) throw std::invalid_argument("convolution power needs N >= 1");
  return combine(convolution_coefficients(cf, seq, guard), n_copies);
}

Rational convolution_power_bruteforce(std::uint64_t n_copies, const ColorFilterTuple& cf,
                                      const MomentSequence& seq, const WorkGuard& guard) {
  if (n_copies == 0) throw std::invalid_argument("convolution power needs N >= 1");
  require_orders(cf, seq);
  const int n = static_cast<int>(cf.size());
  checked_power(n_copies, n, guard.max_terms, "convolution_power_bruteforce");
  std::vector<std::uint64_t> sites(n, 0);
  Rational out = 0;
  while (true) {
    const auto r = SetPartition::from_labels(std::span<const std::uint64_t>(sites));
    out += block_product(coarsest_adapted(r, cf), seq);
    int i = n - 1;
    while (i >= 0 && sites[i] + 1 == n_copies) sites[i--] = 0;
    if (i < 0) break;
    ++sites[i];
  }
  return out;
}

std::uint64_t clt_limit(const ColorFilterTuple& cf, const EnumerationGuard& guard) {
  return enumerate_adapted(cf, /*pair_only=*/true, guard).size();
}

namespace {

void require_clt_normalization(const MomentSequence& seq) {
  if (seq.max_order() < 2 || seq.at(1) != 0 || seq.at(2) != 1)
    throw std::invalid_argument("central limit normalization needs m_1 = 0 and m_2 = 1");
}

}  // namespace

Rational clt_normalized(std::uint64_t n_copies, const ColorFilterTuple& cf,
                        const MomentSequence& seq, const WorkGuard& guard) {
  require_clt_normalization(seq);
  const Rational value = convolution_power(n_copies, cf, seq, guard);
  const auto n = static_cast<unsigned>(cf.size());
  if (n % 2 == 1) {
    if (value == 0) return 0;
    throw std::domain_error("odd-order normalized moment is irrational; use clt_normalized_value");
  }
  return value / pow(Rational(Integer(static_cast<unsigned long>(n_copies))), n / 2);
}

double clt_normalized_value(std::uint64_t n_copies, const ColorFilterTuple& cf,
                            const MomentSequence& seq, const WorkGuard& guard) {
  require_clt_normalization(seq);
  const Rational value = convolution_power(n_copies, cf, seq, guard);
  return value.get_d() / std::pow(static_cast<double>(n_copies), cf.size() / 2.0);
}

Rational poisson_limit(const ColorFilterTuple& cf, const std::map<int, Rational>& lambdas,
                       const EnumerationGuard& guard) {
  for (int k : cf.colors)
    if (!lambdas.count(k))
      throw std::invalid_argument("no Poisson rate given for color " + std::to_string(k));
  Rational out = 0;
  for (const auto& r : enumerate_adapted(cf, /*pair_only=*/false, guard)) {
    Rational term = 1;
    for (const auto& block : r.blocks()) term *= lambdas.at(cf.colors[block.front() - 1]);
    out += term;
  }
  return out;
}

namespace {

// Word choice c at one position: c = 0 is (k=1, +, p1); for k >= 2,
// c = 2k-3 is (k, +, p_k) and c = 2k-2 is (k, -, p_{k-1}).
struct SignedLeg {
  int color;
  Filter filter;
  int sign;
};

std::vector<SignedLeg> mfree_alphabet(int m) {
  std::vector<SignedLeg> out{{1, Filter::prefix(1), +1}};
  for (int k = 2; k <= m; ++k) {
    out.push_back({k, Filter::prefix(k), +1});
    out.push_back({k, Filter::prefix(k - 1), -1});
  }
  return out;
}

struct MfreeProblem {
  std::vector<SignedLeg> alphabet;
  std::vector<SetPartition> partitions;
  std::uint64_t words = 0;
};

MfreeProblem prepare_mfree(int m, int n, const SampleKind& kind, const WorkGuard& guard) {
  if (m < 1) throw std::invalid_argument("m must be a positive integer");
  if (n < 1) throw std::invalid_argument("moment order must be positive");
  if (kind.law == SampleKind::Law::Poisson && kind.lambda <= 0)
    throw std::invalid_argument("Poisson rate must be positive");
  MfreeProblem p;
  p.alphabet = mfree_alphabet(m);
  p.words = checked_power(p.alphabet.size(), n, guard.max_terms, "mfree_sample_moment");
  p.partitions = kind.law == SampleKind::Law::CentralLimit
                     ? enumerate_pair_partitions(n, guard.enumeration)
                     : enumerate_partitions(n, guard.enumeration);
  return p;
}

Rational mfree_word_term(const MfreeProblem& p, int n, const SampleKind& kind,
                         std::uint64_t index, ColorFilterTuple& cf) {
  int sign = 1;
  const auto base = p.alphabet.size();
  for (int i = 0; i < n; ++i) {
    const auto& leg = p.alphabet[index % base];
    index /= base;
    cf.colors[i] = leg.color;
    cf.filters[i] = leg.filter;
    sign *= leg.sign;
  }
  Rational value = 0;
  for (const auto& r : p.partitions) {
    if (!is_adapted(r, cf)) continue;
    if (kind.law == SampleKind::Law::CentralLimit)
      value += 1;
    else
      value += pow(kind.lambda, static_cast<unsigned>(r.num_blocks()));
  }
  return sign > 0 ? value : Rational(-value);
}

}  // namespace

Rational mfree_sample_moment_serial(int m, int n, const SampleKind& kind,
                                    const WorkGuard& guard) {
  const auto p = prepare_mfree(m, n, kind, guard);
  ColorFilterTuple cf = ColorFilterTuple::uniform(std::vector<int>(n, 1), Filter::all());
  Rational out = 0;
  for (std::uint64_t w = 0; w < p.words; ++w) out += mfree_word_term(p, n, kind, w, cf);
  return out;
}

Rational mfree_sample_moment(int m, int n, const SampleKind& kind, const WorkGuard& guard) {
  const auto p = prepare_mfree(m, n, kind, guard);
  const int threads = omp_get_max_threads();
  std::vector<Rational> partial(threads, Rational(0));
  const auto words = static_cast<std::int64_t>(p.words);

#pragma omp parallel
  {
    ColorFilterTuple cf = ColorFilterTuple::uniform(std::vector<int>(n, 1), Filter::all());
    Rational local = 0;
#pragma omp for schedule(static)
    for (std::int64_t w = 0; w < words; ++w)
      local += mfree_word_term(p, n, kind, static_cast<std::uint64_t>(w), cf);
    partial[omp_get_thread_num()] = local;
  }

  Rational out = 0;
  for (const auto& part : partial) out += part;
  return out;
}

namespace {

std::complex<double> gram_lookup(const GramMap& gram, int a, int b) {
  auto direct = gram.find({a, b});
  auto reverse = gram.find({b, a});
  if (direct != gram.end() && reverse != gram.end()) {
    if (std::abs(direct->second - std::conj(reverse->second)) > 1e-12)
      throw std::invalid_argument("inconsistent gram entries for (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
    return direct->second;
  }
  if (direct != gram.end()) return direct->second;
  if (reverse != gram.end()) return std::conj(reverse->second);
  throw std::invalid_argument("gram has no entry for (" + std::to_string(a) + "," +
                              std::to_string(b) + ")");
}

}  // namespace

std::complex<double> pairing_expectation(const std::vector<GaugedLeg>& legs,
                                         const GramMap& gram, const EnumerationGuard& guard) {
  const int n = static_cast<int>(legs.size());
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  std::vector<int> colors;
  std::vector<Filter> filters;
  for (const auto& leg : legs) {
    colors.push_back(leg.color);
    filters.push_back(leg.filter);
  }
  const ColorFilterTuple cf(std::move(colors), std::move(filters));
  std::complex<double> out = 0.0;
  for (const auto& r : enumerate_pair_partitions(n, guard)) {
    bool oriented = true;
    for (const auto& block : r.blocks())
      oriented = oriented && !legs[block[0] - 1].star && legs[block[1] - 1].star;
    if (!oriented || !is_adapted(r, cf)) continue;
    std::complex<double> term = 1.0;
    for (const auto& block : r.blocks())
      term *= gram_lookup(gram, legs[block[0] - 1].vector_label, legs[block[1] - 1].vector_label);
    out += term;
  }
  return out;
}

Rational white_noise_moment(const NoiseGenerator& generator, const ColorFilterTuple& cf,
                            const Rational& t, std::span<const int> tags,
                            const EnumerationGuard& guard) {
  if (!tags.empty() && tags.size() != cf.size())
    throw std::invalid_argument("tag tuple length differs from color/filter length");
  Rational out = 0;
  for (const auto& r : enumerate_adapted(cf, /*pair_only=*/false, guard)) {
    Rational term = 1;
    for (const auto& block : r.blocks()) {
      NoiseBlock view{std::span<const int>(block), cf.colors[block.front() - 1], &cf, tags};
      term *= generator(view, t);
      if (term == 0) break;
    }
    out += term;
  }
  return out;
}

namespace closed_form {

namespace {

std::vector<std::vector<Integer>> stirling2(int n) {
  std::vector<std::vector<Integer>> s(n + 1, std::vector<Integer>(n + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= i; ++k) s[i][k] = Integer(k) * s[i - 1][k] + s[i - 1][k - 1];
  return s;
}

Integer binomial(int n, int k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

Rational evaluate(Kind kind, int n, const Rational& lambda) {
  if (n < 0) throw std::invalid_argument("closed forms need n >= 0");
  switch (kind) {
    case Kind::ClassicalGaussian: {
      if (n % 2) return 0;
      Integer out = 1;
      for (int j = n - 1; j > 1; j -= 2) out *= j;
      return Rational(out);
    }
    case Kind::BooleanGaussian:
      return n % 2 ? 0 : 1;
    case Kind::ClassicalPoisson: {
      const auto s = stirling2(n);
      Rational out = 0;
      for (int k = 0; k <= n; ++k) out += Rational(s[n][k]) * pow(lambda, k);
      return out;
    }
    case Kind::BooleanPoisson:
      if (n == 0) return 1;
      return lambda * pow(1 + lambda, static_cast<unsigned>(n - 1));
    case Kind::Catalan:
      if (n % 2) return 0;
      return Rational(binomial(n, n / 2)) / (n / 2 + 1);
    case Kind::Bell: {
      const auto s = stirling2(n);
      Integer out = 0;
      for (int k = 0; k <= n; ++k) out += s[n][k];
      return Rational(out);
    }
  }
  throw std::invalid_argument("unsupported closed form");
}

}  // namespace closed_form

}  // namespace fnoise
