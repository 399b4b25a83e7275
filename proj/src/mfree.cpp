#include "fnoise/mfree.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fnoise/errors.hpp"
#include "fnoise/oracles.hpp"

namespace fnoise {

MParameter MParameter::finite(int m) {
  if (m < 1) throw std::invalid_argument("m must be a positive integer");
  return {m, false};
}

MParameter MParameter::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinity();
  try {
    std::size_t used = 0;
    const int m = std::stoi(text, &used);
    if (used == text.size()) return finite(m);
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw std::invalid_argument("m must be a positive integer or 'inf', got '" + text + "'");
}

int MParameter::realize(const FockSpace& space) const {
  const int colors = space.truncation().M;
  if (infinite) return colors;
  if (value > colors)
    throw std::invalid_argument("m=" + std::to_string(value) + " needs at least " +
                                std::to_string(value) + " colors, truncation has " +
                                std::to_string(colors));
  return value;
}

std::string MParameter::to_string() const { return infinite ? "inf" : std::to_string(value); }

FockOperator top_color_projection(const FockSpace& space, int j) {
  auto m = assemble(space, [&](std::size_t c, std::vector<std::pair<std::size_t, Scalar>>& out) {
    if (space.max_color(c) == j) out.emplace_back(c, 1.0);
  });
  return {std::move(m), 0, 0, "P[" + std::to_string(j) + "]"};
}

FockOperator mfree_creation(const FockSpace& space, const MParameter& m, const ModeVector& f) {
  const int top = m.realize(space);
  FockOperator out = creation(space, f, 1) * top_color_projection(space, 0);
  for (int k = 2; k <= top; ++k)
    out = out + creation(space, f, k) * top_color_projection(space, k - 1);
  out.description = "l*(m=" + m.to_string() + ")";
  return out;
}

FockOperator mfree_annihilation(const FockSpace& space, const MParameter& m, const ModeVector& f) {
  auto out = mfree_creation(space, m, f).adjoint();
  out.description = "l(m=" + m.to_string() + ")";
  return out;
}

FockOperator mfree_number(const FockSpace& space, const MParameter& m) {
  const int top = m.realize(space);
  const int d = space.truncation().d;
  const DenseMatrix id = DenseMatrix::Identity(d, d);
  FockOperator out = 0.0 * identity(space);
  for (int k = 1; k <= top; ++k) {
    auto window = projection(space, Filter::prefix(k + 1));
    if (k >= 2) window = window - projection(space, Filter::prefix(k - 1).with(k));
    out = out + dgamma(space, id, k) * window;
  }
  out.matrix.prune(Scalar(0));
  out.description = "lo(m=" + m.to_string() + ")";
  return out;
}

double verify_cuntz(const FockSpace& space, const MParameter& m, const ModeVector& f,
                    const ModeVector& g) {
  const int top = m.realize(space);
  SparseMatrix diff = (mfree_annihilation(space, m, g) * mfree_creation(space, m, f)).matrix;
  const Scalar overlap = inner(g, f);
  if (m.infinite) {
    // Compare with the identity where the realization is faithful.
    diff -= overlap * identity(space).matrix;
    double out = 0.0;
    for (Eigen::Index c = 0; c < diff.outerSize(); ++c) {
      const auto col = static_cast<std::size_t>(c);
      if (space.grade(col) > space.truncation().n_max - 1 || space.max_color(col) > top - 1)
        continue;
      for (SparseMatrix::InnerIterator it(diff, c); it; ++it)
        out = std::max(out, std::abs(it.value()));
    }
    return out;
  }
  diff -= overlap * projection(space, Filter::prefix(top)).matrix;
  return max_entry(space, diff, space.truncation().n_max - 1);
}

bool in_d_set(const std::vector<int>& sorted_colors) {
  const std::size_t n = sorted_colors.size();
  if (n == 0) return true;
  const int previous = n == 1 ? 0 : sorted_colors[n - 2];
  return sorted_colors[n - 1] != previous + 1;
}

std::vector<std::size_t> d_basis(const FockSpace& space, const MParameter& m) {
  const int top = m.infinite ? space.truncation().M : m.value;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space.max_color(i) <= top && in_d_set(space.colors(i))) out.push_back(i);
  return out;
}

ResolutionReport verify_resolution(const FockSpace& space, const MParameter& m) {
  ResolutionReport report;
  report.m_realized = m.realize(space);
  const int top = report.m_realized;
  const int d = space.truncation().d;

  SparseMatrix lhs(static_cast<Eigen::Index>(space.size()), static_cast<Eigen::Index>(space.size()));
  for (int s = 1; s <= d; ++s) {
    ModeVector e(d, 0.0);
    e[s - 1] = 1.0;
    lhs += (mfree_creation(space, m, e) * mfree_annihilation(space, m, e)).matrix;
  }

  auto complement = [&](auto keep) {
    return assemble(space, [&](std::size_t c, std::vector<std::pair<std::size_t, Scalar>>& out) {
      if (!keep(c)) out.emplace_back(c, 1.0);
    });
  };
  const SparseMatrix expected = complement([&](std::size_t c) {
    return space.max_color(c) > top || in_d_set(space.colors(c));
  });
  const SparseMatrix literal = complement([&](std::size_t c) {
    const auto colors = space.colors(c);
    return colors.empty() || colors.front() > top;
  });
  report.residual = max_entry(space, lhs - expected, space.truncation().n_max);
  report.literal_residual = max_entry(space, lhs - literal, space.truncation().n_max);
  return report;
}

Scalar free_fock_oracle(const std::vector<FreeLetter>& word, int d, int max_depth) {
  std::map<std::vector<int>, Scalar> v{{{}, 1.0}};
  for (auto letter = word.rbegin(); letter != word.rend(); ++letter) {
    if (static_cast<int>(letter->f.size()) != d)
      throw std::invalid_argument("free Fock letter has the wrong dimension");
    std::map<std::vector<int>, Scalar> next;
    for (const auto& [tuple, c] : v) {
      if (letter->star) {
        if (static_cast<int>(tuple.size()) + 1 > max_depth)
          throw TruncationError("free Fock word exceeds depth " + std::to_string(max_depth));
        for (int j = 0; j < d; ++j) {
          if (letter->f[j] == Scalar(0)) continue;
          std::vector<int> longer{j};
          longer.insert(longer.end(), tuple.begin(), tuple.end());
          next[longer] += letter->f[j] * c;
        }
      } else if (!tuple.empty()) {
        next[std::vector<int>(tuple.begin() + 1, tuple.end())] +=
            std::conj(letter->f[tuple.front()]) * c;
      }
    }
    v = std::move(next);
  }
  auto it = v.find({});
  return it == v.end() ? Scalar(0) : it->second;
}

namespace {

ModeVector random_unit(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss;
  ModeVector f(d);
  double norm = 0;
  for (auto& x : f) {
    x = {gauss(rng), gauss(rng)};
    norm += std::norm(x);
  }
  for (auto& x : f) x /= std::sqrt(norm);
  return f;
}

// Largest creation surplus reached while applying the word right to left.
int word_height(const std::vector<bool>& stars) {
  int running = 0;
  int top = 0;
  for (auto it = stars.rbegin(); it != stars.rend(); ++it) {
    running += *it ? 1 : -1;
    top = std::max(top, running);
  }
  return top;
}

Vector random_sector_vector(const FockSpace& space, std::mt19937_64& rng, int grade, int lo,
                            int hi) {
  std::normal_distribution<double> gauss;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.grade(i) != grade) continue;
    const auto colors = space.colors(i);
    if (colors.front() < lo || colors.back() > hi) continue;
    v(static_cast<Eigen::Index>(i)) = {gauss(rng), gauss(rng)};
  }
  const double norm = v.norm();
  if (norm > 0) v /= norm;
  return v;
}

double factorial(int n) {
  double out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

DecompositionReport verify_decomposition(const FockSpace& space,
                                         const std::vector<std::size_t>& sectors,
                                         int words_per_sector, int max_word_length,
                                         std::uint64_t seed) {
  const auto& trunc = space.truncation();
  const auto m = MParameter::infinity();
  for (auto x : sectors)
    if (x >= space.size() || !in_d_set(space.colors(x)))
      throw std::invalid_argument("sector " + std::to_string(x) + " is not a D-basis state");

  DecompositionReport report;
  report.seed = seed;
  report.sectors = static_cast<int>(sectors.size());
  report.words_per_sector = words_per_sector;

  std::mt19937_64 rng(seed);
  std::vector<ModeVector> alphabet;
  for (int i = 0; i < 3; ++i) alphabet.push_back(random_unit(rng, trunc.d));
  std::vector<FockOperator> create, annihilate;
  for (const auto& f : alphabet) {
    create.push_back(mfree_creation(space, m, f));
    annihilate.push_back(mfree_annihilation(space, m, f));
  }

  std::uniform_int_distribution<int> pick_letter(0, static_cast<int>(alphabet.size()) - 1);
  std::uniform_int_distribution<int> pick_length(1, std::max(1, max_word_length));
  std::bernoulli_distribution coin(0.5);

  std::vector<std::vector<Vector>> images(sectors.size());
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const std::size_t x = sectors[s];
    const int room = std::min(trunc.M - space.max_color(x), trunc.n_max - space.grade(x));
    const Vector base = space.basis_vector(x);
    for (int w = 0; w < words_per_sector; ++w) {
      std::vector<bool> stars;
      std::vector<int> letters;
      do {
        const int length = pick_length(rng);
        stars.assign(length, false);
        letters.assign(length, 0);
        for (int i = 0; i < length; ++i) {
          stars[i] = coin(rng);
          letters[i] = pick_letter(rng);
        }
      } while (word_height(stars) > room);

      Vector v = base;
      std::vector<FreeLetter> free_word;
      for (int i = static_cast<int>(stars.size()) - 1; i >= 0; --i)
        v = apply(space, stars[i] ? create[letters[i]] : annihilate[letters[i]], v);
      for (std::size_t i = 0; i < stars.size(); ++i)
        free_word.push_back({stars[i], alphabet[letters[i]]});

      const Scalar sector_value = base.dot(v);
      const Scalar oracle_value = free_fock_oracle(free_word, trunc.d, trunc.n_max + 1);
      report.oracle = std::max(report.oracle, std::abs(sector_value - oracle_value));
      images[s].push_back(std::move(v));
    }
  }

  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a + 1; b < images.size(); ++b)
      for (const auto& u : images[a])
        for (const auto& v : images[b])
          report.orthogonality = std::max(report.orthogonality, std::abs(u.dot(v)));

  // Symmetric products of sectors with disjoint color ranges.
  auto check_factor = [&](const Vector& x, const Vector& z, const Vector& u, const Vector& v,
                          int r, int n) {
    using namespace oracle;
    const Tensor tx = to_tensor(space, x), tz = to_tensor(space, z);
    const Tensor tu = to_tensor(space, u), tv = to_tensor(space, v);
    const Scalar lhs = oracle::inner(sym_product(tx, tu), sym_product(tz, tv));
    const double factor = factorial(r) * factorial(n) / factorial(r + n);
    const Scalar rhs = factor * oracle::inner(tx, tz) * oracle::inner(tu, tv);
    report.norm_factor = std::max(report.norm_factor, std::abs(lhs - rhs));
    ++report.norm_cases;
  };
  if (trunc.M >= 2 && trunc.n_max >= 2) {
    for (int split = 1; split < trunc.M; ++split)
      for (int r = 1; r < trunc.n_max; ++r)
        for (int n = 1; r + n <= std::min(trunc.n_max, 4); ++n) {
          const Vector x = random_sector_vector(space, rng, r, 1, split);
          const Vector z = random_sector_vector(space, rng, r, 1, split);
          const Vector u = random_sector_vector(space, rng, n, split + 1, trunc.M);
          const Vector v = random_sector_vector(space, rng, n, split + 1, trunc.M);
          check_factor(x, z, u, v, r, n);
        }
  }
  return report;
}

double semicircle_moment(const FockSpace& space, const MParameter& m, int p) {
  if (p < 0) throw std::invalid_argument("p must be nonnegative");
  ModeVector f(space.truncation().d, 0.0);
  f[0] = 1.0;
  const auto field = mfree_annihilation(space, m, f) + mfree_creation(space, m, f);
  const std::vector<FockOperator> word(2 * p, field);
  return vacuum_expectation(space, word).real();
}

}  // namespace fnoise
