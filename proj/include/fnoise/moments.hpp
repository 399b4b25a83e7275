#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "fnoise/filter.hpp"
#include "fnoise/partitions.hpp"
#include "fnoise/rational.hpp"

namespace fnoise {

/// Moments m_n = phi(Y^n) for n = 0..max_order with m_0 = 1.
class MomentSequence {
 public:
  MomentSequence() : values_{Rational(1)} {}
  /// values[0] must equal 1.
  explicit MomentSequence(std::vector<Rational> values);

  /// m_1 = 0, m_2 = 1, odd moments 0, even moments 1 (symmetric Bernoulli).
  static MomentSequence rademacher(int max_order);
  /// Standard Gaussian moments (n-1)!! for even n.
  static MomentSequence gaussian(int max_order);

  int max_order() const { return static_cast<int>(values_.size()) - 1; }
  /// Throws std::out_of_range past max_order; never returns a silent zero.
  const Rational& at(int n) const;
  const std::vector<Rational>& values() const { return values_; }

 private:
  std::vector<Rational> values_;
};

/// Moment sequences indexed by algebra label.
class MomentModel {
 public:
  void set(int label, MomentSequence seq) { sequences_[label] = std::move(seq); }
  bool has(int label) const { return sequences_.count(label) != 0; }
  /// Throws std::invalid_argument for an unknown label.
  const MomentSequence& at(int label) const;
  const std::map<int, MomentSequence>& sequences() const { return sequences_; }

 private:
  std::map<int, MomentSequence> sequences_;
};

/// One factor X(l,k) P(l,sigma) of a filtered word.
struct Leg {
  int label = 1;
  int color = 1;
  Filter filter;
  bool star = false;
};

using Word = std::vector<Leg>;

ColorFilterTuple color_filter_tuple(const Word& word);

/// Product over blocks B of the coarsest adapted refinement of the label
/// partition of m^{(l(B))}_{#B}.
Rational filtered_word_moment(const Word& word, const MomentModel& model);

/// Left-to-right recurrence: a leading factor that is a singleton or is
/// separated from its next occurrence factors out, otherwise it is merged
/// into that next occurrence.
Rational filtered_word_moment_recursive(const Word& word, const MomentModel& model);

struct WorkGuard {
  EnumerationGuard enumeration;
  /// Cap on brute-force terms (site tuples or signed words).
  std::uint64_t max_terms = 10'000'000;
};

/// coeffs[p] = sum over partitions R with p blocks of the product over the
/// blocks of R(k, sigma) of m_{#B}; the convolution power is
/// sum_p (N)_p coeffs[p].
std::vector<Rational> convolution_coefficients(const ColorFilterTuple& cf,
                                               const MomentSequence& seq,
                                               const WorkGuard& guard = {});
std::vector<Rational> convolution_coefficients_serial(const ColorFilterTuple& cf,
                                                      const MomentSequence& seq,
                                                      const WorkGuard& guard = {});

Rational convolution_power(std::uint64_t n_copies, const ColorFilterTuple& cf,
                           const MomentSequence& seq, const WorkGuard& guard = {});

/// Sums over every site tuple in {1..N}^n directly.
Rational convolution_power_bruteforce(std::uint64_t n_copies, const ColorFilterTuple& cf,
                                      const MomentSequence& seq,
                                      const WorkGuard& guard = {});

/// Number of adapted pair partitions; 0 for odd length.
std::uint64_t clt_limit(const ColorFilterTuple& cf, const EnumerationGuard& guard = {});

/// convolution_power / N^{n/2}. Requires m_1 = 0 and m_2 = 1. For odd n
/// the normalization is irrational, so a nonzero numerator is rejected with
/// std::domain_error; use clt_normalized_value for a floating result.
Rational clt_normalized(std::uint64_t n_copies, const ColorFilterTuple& cf,
                        const MomentSequence& seq, const WorkGuard& guard = {});
double clt_normalized_value(std::uint64_t n_copies, const ColorFilterTuple& cf,
                            const MomentSequence& seq, const WorkGuard& guard = {});

/// Sum over adapted partitions of the product of per-block rates lambda_{color(B)}.
Rational poisson_limit(const ColorFilterTuple& cf, const std::map<int, Rational>& lambdas,
                       const EnumerationGuard& guard = {});

struct SampleKind {
  enum class Law { CentralLimit, Poisson } law = Law::CentralLimit;
  Rational lambda = 1;

  static SampleKind clt() { return {}; }
  static SampleKind poisson(Rational rate) { return {Law::Poisson, std::move(rate)}; }
};

/// n-th moment of sum_{k=1}^m (X_k({1..k-1}) - X_k({1..k-2})) in the limit,
/// expanded into signed words (the k = 1 subtrahend is zero).
Rational mfree_sample_moment(int m, int n, const SampleKind& kind, const WorkGuard& guard = {});
Rational mfree_sample_moment_serial(int m, int n, const SampleKind& kind,
                                    const WorkGuard& guard = {});

/// A leg of a creation/annihilation word; `star` marks creation.
struct GaugedLeg {
  bool star = false;
  int vector_label = 0;
  int color = 1;
  Filter filter;
};

/// Inner products <v_a, v_b> keyed by (a, b). Lookups of (b, a) fall back to
/// the conjugate of (a, b).
using GramMap = std::map<std::pair<int, int>, std::complex<double>>;

/// Sum over adapted pair partitions in which every pair (alpha < beta) has an
/// annihilation at alpha and a creation at beta, weighted by <v_alpha, v_beta>.
std::complex<double> pairing_expectation(const std::vector<GaugedLeg>& legs,
                                         const GramMap& gram,
                                         const EnumerationGuard& guard = {});

/// Block handed to a white-noise generator.
struct NoiseBlock {
  std::span<const int> positions;  // 1-based, ascending
  int color = 1;
  const ColorFilterTuple* cf = nullptr;
  std::span<const int> tags;  // component tags q_i for the whole word (may be empty)
};

using NoiseGenerator = std::function<Rational(const NoiseBlock&, const Rational& t)>;

/// Sum over adapted partitions of prod_B Q_t(B).
Rational white_noise_moment(const NoiseGenerator& generator, const ColorFilterTuple& cf,
                            const Rational& t, std::span<const int> tags = {},
                            const EnumerationGuard& guard = {});

/// Standard closed forms used as test oracles.
namespace closed_form {

enum class Kind {
  ClassicalGaussian,  // (n-1)!! for even n, else 0
  BooleanGaussian,    // 1 for even n, else 0
  ClassicalPoisson,   // Touchard: sum_k S(n,k) lambda^k
  BooleanPoisson,     // lambda (1+lambda)^{n-1}
  Catalan,            // Catalan(n/2) for even n, else 0
  Bell,               // Bell(n)
};

Rational evaluate(Kind kind, int n, const Rational& lambda = 1);

}  // namespace closed_form

}  // namespace fnoise
