#include "fnoise/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fnoise/errors.hpp"

namespace fnoise::oracle {

SetPartition coarsest_adapted_bruteforce(const SetPartition& r, const ColorFilterTuple& cf,
                                         const std::vector<SetPartition>& all_partitions) {
  std::vector<const SetPartition*> candidates;
  for (const auto& q : all_partitions)
    if (q.n() == r.n() && q.refines(r) && is_adapted(q, cf)) candidates.push_back(&q);
  if (candidates.empty()) throw std::logic_error("no adapted refinement found");

  const SetPartition* best = candidates.front();
  for (const auto* q : candidates)
    if (q->num_blocks() < best->num_blocks()) best = q;
  for (const auto* q : candidates)
    if (!q->refines(*best)) throw std::logic_error("adapted refinements have no coarsest element");
  return *best;
}

namespace {

// sqrt(prod n_mu! / n!) for the multiset spelled by a mode tuple.
double arrangement_weight(std::vector<int> tuple) {
  std::sort(tuple.begin(), tuple.end());
  double log_w = -std::lgamma(static_cast<double>(tuple.size()) + 1.0);
  for (std::size_t i = 0; i < tuple.size();) {
    std::size_t j = i;
    while (j < tuple.size() && tuple[j] == tuple[i]) ++j;
    log_w += std::lgamma(static_cast<double>(j - i) + 1.0);
    i = j;
  }
  return std::exp(0.5 * log_w);
}

std::vector<int> sorted_modes(const FockSpace& space, std::size_t i) {
  std::vector<int> out;
  const auto& occ = space.occupation(i);
  for (int mu = 0; mu < space.modes(); ++mu) out.insert(out.end(), occ[mu], mu);
  return out;
}

void add(Tensor& t, const std::vector<int>& key, Scalar value) {
  if (value == Scalar(0)) return;
  t[key] += value;
}

}  // namespace

Tensor to_tensor(const FockSpace& space, const Vector& v) {
  Tensor out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Scalar c = v(static_cast<Eigen::Index>(i));
    if (c == Scalar(0)) continue;
    auto tuple = sorted_modes(space, i);
    const double w = arrangement_weight(tuple);
    do add(out, tuple, w * c);
    while (std::next_permutation(tuple.begin(), tuple.end()));
  }
  return out;
}

Vector from_tensor(const FockSpace& space, const Tensor& t) {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  for (const auto& [key, value] : t) {
    std::vector<std::uint8_t> occ(space.modes(), 0);
    for (int mu : key) ++occ[mu];
    auto index = space.index_of(occ);
    if (!index) throw TruncationError("tensor component outside the truncated basis");
    out(static_cast<Eigen::Index>(*index)) += arrangement_weight(key) * value;
  }
  return out;
}

Tensor symmetrize(const Tensor& t) {
  Tensor out;
  for (const auto& [key, value] : t) {
    std::vector<std::size_t> perm(key.size());
    std::iota(perm.begin(), perm.end(), 0);
    const double scale = 1.0 / std::tgamma(static_cast<double>(key.size()) + 1.0);
    std::vector<int> moved(key.size());
    do {
      for (std::size_t i = 0; i < perm.size(); ++i) moved[i] = key[perm[i]];
      add(out, moved, scale * value);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

Tensor sym_product(const Tensor& a, const Tensor& b) {
  Tensor joined;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      std::vector<int> key(ka);
      key.insert(key.end(), kb.begin(), kb.end());
      add(joined, key, va * vb);
    }
  return symmetrize(joined);
}

Scalar inner(const Tensor& a, const Tensor& b) {
  Scalar out = 0.0;
  for (const auto& [key, value] : a) {
    auto it = b.find(key);
    if (it != b.end()) out += std::conj(value) * it->second;
  }
  return out;
}

Tensor tensor_creation(const FockSpace& space, const Tensor& psi, const ModeVector& f, int k) {
  Tensor raw;
  for (const auto& [key, value] : psi) {
    const double amp = std::sqrt(static_cast<double>(key.size()) + 1.0);
    for (int j = 1; j <= space.truncation().d; ++j) {
      std::vector<int> longer{space.mode(j, k)};
      longer.insert(longer.end(), key.begin(), key.end());
      add(raw, longer, amp * f[j - 1] * value);
    }
  }
  return symmetrize(raw);
}

Tensor tensor_annihilation(const FockSpace& space, const Tensor& psi, const ModeVector& f,
                           int k) {
  Tensor out;
  for (const auto& [key, value] : psi) {
    if (key.empty() || space.color_of(key.front()) != k) continue;
    const double amp = std::sqrt(static_cast<double>(key.size()));
    add(out, std::vector<int>(key.begin() + 1, key.end()),
        amp * std::conj(f[space.cell_of(key.front()) - 1]) * value);
  }
  return out;
}

Tensor tensor_number(const FockSpace& space, const Tensor& psi, const DenseMatrix& T, int k) {
  Tensor out;
  for (const auto& [key, value] : psi)
    for (std::size_t slot = 0; slot < key.size(); ++slot) {
      if (space.color_of(key[slot]) != k) continue;
      const int from = space.cell_of(key[slot]);
      std::vector<int> moved(key);
      for (int to = 1; to <= space.truncation().d; ++to) {
        moved[slot] = space.mode(to, k);
        add(out, moved, T(to - 1, from - 1) * value);
      }
    }
  return out;
}

Tensor tensor_filter(const FockSpace& space, const Tensor& psi, const Filter& sigma) {
  Tensor out;
  for (const auto& [key, value] : psi)
    if (std::all_of(key.begin(), key.end(),
                    [&](int mu) { return sigma.contains(space.color_of(mu)); }))
      out.emplace(key, value);
  return out;
}

Rational poisson_noise_role_aware(const ColorFilterTuple& cf, const Rational& t,
                                  const EnumerationGuard& guard) {
  const int n = static_cast<int>(cf.size());
  Rational out = 0;
  for (const auto& r : enumerate_partitions(n, guard)) {
    bool ok = true;
    for (const auto& block : r.blocks()) {
      const int color = cf.colors[block.front() - 1];
      for (int i : block) ok = ok && cf.colors[i - 1] == color;
      for (int m = block.front() + 1; ok && m < block.back(); ++m) {
        const auto& own = r.blocks()[r.block_of(m)];
        if (&own == &block) continue;
        const bool middle = own.front() < m && m < own.back();
        ok = cf.filters[m - 1].contains(color) || (middle && cf.colors[m - 1] == color);
      }
      if (!ok) break;
    }
    if (ok) out += pow(t, static_cast<unsigned>(r.num_blocks()));
  }
  return out;
}

double mfree_number_direct(const FockSpace& space, int m, std::size_t state) {
  const auto colors = space.colors(state);
  if (colors.empty()) return 0.0;
  const int top = colors.back();
  if (top > m) return 0.0;
  const bool below_present =
      top == 1 || std::find(colors.begin(), colors.end(), top - 1) != colors.end();
  return below_present ? space.count_color(state, top) : 0.0;
}

}  // namespace fnoise::oracle
