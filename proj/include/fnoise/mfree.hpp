#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnoise/fock.hpp"

namespace fnoise {

/// m in {1, 2, ...} or infinity.
///
/// Infinity is realized on a truncation as m = M, the number of colors. Every
/// creation raises the top color by one, so this is exact for all states whose
/// top color stays below M.
struct MParameter {
  int value = 1;
  bool infinite = false;

  static MParameter finite(int m);
  static MParameter infinity() { return {0, true}; }
  /// Parses a positive integer or `inf`.
  static MParameter parse(const std::string& text);

  /// Throws std::invalid_argument when m exceeds the available colors.
  int realize(const FockSpace& space) const;
  std::string to_string() const;
};

/// P^{[j]}: projection onto states whose top color is exactly j (the vacuum has top color 0).
FockOperator top_color_projection(const FockSpace& space, int j);

/// l*(f) = sum_{k=1}^m a*(f (x) e_k) P^{[k-1]}.
FockOperator mfree_creation(const FockSpace& space, const MParameter& m, const ModeVector& f);
/// Adjoint of mfree_creation.
FockOperator mfree_annihilation(const FockSpace& space, const MParameter& m, const ModeVector& f);
/// sum_k a^{(k,k)o} - a^{(k,k-1)o} with the k = 1 subtrahend taken as zero.
FockOperator mfree_number(const FockSpace& space, const MParameter& m);

/// Largest entry of l(g) l*(f) - <g,f> P(p_m) on grades <= n_max - 1.
double verify_cuntz(const FockSpace& space, const MParameter& m, const ModeVector& f,
                    const ModeVector& g);

/// Ascending colors k_1..k_n satisfy k_n != k_{n-1} + 1 with k_0 = 0; the empty
/// tuple (vacuum) qualifies.
bool in_d_set(const std::vector<int>& sorted_colors);

/// Basis indices of the D set; for finite m only colors <= m are kept.
std::vector<std::size_t> d_basis(const FockSpace& space, const MParameter& m);

struct ResolutionReport {
  int m_realized = 0;
  /// Against I - P with P onto span(D^(m)) joined with states whose top color exceeds m.
  double residual = 0;
  /// Against I - P with P onto states whose colors all exceed m, plus the vacuum.
  double literal_residual = 0;
};

/// sum_s l*(e_s) l(e_s) over the d grid cells against I - P.
ResolutionReport verify_resolution(const FockSpace& space, const MParameter& m);

/// One letter of a free Fock word: creation a*(f) or annihilation a(f).
struct FreeLetter {
  bool star = false;
  ModeVector f;
};

/// <omega, w omega> on the full tensor Fock space over C^d, where
/// a(f) f_1 (x) ... (x) f_n = <f, f_1> f_2 (x) ... (x) f_n. Throws
/// TruncationError if an intermediate vector would exceed max_depth factors.
Scalar free_fock_oracle(const std::vector<FreeLetter>& word, int d, int max_depth = 8);

struct DecompositionReport {
  std::uint64_t seed = 0;
  int sectors = 0;
  int words_per_sector = 0;
  double orthogonality = 0;  // largest |<p x, q x'>| over x != x'
  double oracle = 0;         // largest |<x, p x> - <omega, p omega>|
  double norm_factor = 0;    // largest symmetric-product factor deviation
  int norm_cases = 0;
};

/// Samples words in l*, l for each listed D-basis state (by basis index) and
/// checks sector orthogonality, agreement with the free Fock oracle, and the
/// r!n!/(r+n)! symmetric-product factor.
DecompositionReport verify_decomposition(const FockSpace& space,
                                         const std::vector<std::size_t>& sectors,
                                         int words_per_sector, int max_word_length,
                                         std::uint64_t seed);

/// <Omega, (l(f) + l*(f))^{2p} Omega> for unit f = e_1.
double semicircle_moment(const FockSpace& space, const MParameter& m, int p);

}  // namespace fnoise
