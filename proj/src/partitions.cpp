#include "fnoise/partitions.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fnoise/errors.hpp"

namespace fnoise {

namespace {

void check_guard(int n, const EnumerationGuard& guard, const char* what) {
  if (n < 0 || n > guard.max_n)
    throw GuardError(std::string(what) + ": n=" + std::to_string(n) +
                     " outside enumeration guard [0, " + std::to_string(guard.max_n) + "]");
}

void check_lengths(const SetPartition& partition, const ColorFilterTuple& cf) {
  if (static_cast<std::size_t>(partition.n()) != cf.size())
    throw std::invalid_argument("partition size " + std::to_string(partition.n()) +
                                " does not match color/filter length " +
                                std::to_string(cf.size()));
}

// Every position strictly between a and b (1-based) lets `color` through.
bool gap_open(const ColorFilterTuple& cf, int a, int b, int color) {
  for (int m = a + 1; m < b; ++m)
    if (!cf.filters[m - 1].contains(color)) return false;
  return true;
}

void collect_pairings(std::vector<std::uint8_t>& rgs, std::uint8_t next_id,
                      std::vector<SetPartition>& out) {
  const std::size_t n = rgs.size();
  std::size_t first = 0;
  while (first < n && rgs[first] != 0xff) ++first;
  if (first == n) {
    out.push_back(SetPartition::from_rgs(rgs));
    return;
  }
  rgs[first] = next_id;
  for (std::size_t j = first + 1; j < n; ++j) {
    if (rgs[j] != 0xff) continue;
    rgs[j] = next_id;
    collect_pairings(rgs, static_cast<std::uint8_t>(next_id + 1), out);
    rgs[j] = 0xff;
  }
  rgs[first] = 0xff;
}

}  // namespace

ColorFilterTuple::ColorFilterTuple(std::vector<int> c, std::vector<Filter> f)
    : colors(std::move(c)), filters(std::move(f)) {
  if (colors.size() != filters.size())
    throw std::invalid_argument("color and filter tuples differ in length");
  for (int k : colors)
    if (k < 1) throw std::invalid_argument("colors must be positive integers");
}

ColorFilterTuple ColorFilterTuple::uniform(std::vector<int> colors, const Filter& filter) {
  std::vector<Filter> filters(colors.size(), filter);
  return ColorFilterTuple(std::move(colors), std::move(filters));
}

SetPartition::SetPartition(std::vector<std::uint8_t> rgs) : rgs_(std::move(rgs)) {
  int count = 0;
  for (auto id : rgs_) count = std::max(count, id + 1);
  blocks_.assign(count, {});
  for (std::size_t i = 0; i < rgs_.size(); ++i)
    blocks_[rgs_[i]].push_back(static_cast<int>(i) + 1);
}

SetPartition SetPartition::from_rgs(std::vector<std::uint8_t> rgs) {
  int next = 0;
  for (auto id : rgs) {
    if (id > next) throw std::invalid_argument("not a restricted-growth string");
    if (id == next) ++next;
  }
  return SetPartition(std::move(rgs));
}

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
  if (n < 0) throw std::invalid_argument("partition size must be nonnegative");
  std::vector<int> owner(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("partition blocks must be nonempty");
    for (int i : blocks[b]) {
      if (i < 1 || i > n)
        throw std::invalid_argument("element " + std::to_string(i) + " outside {1.." +
                                    std::to_string(n) + "}");
      if (owner[i - 1] != -1)
        throw std::invalid_argument("element " + std::to_string(i) + " appears twice");
      owner[i - 1] = static_cast<int>(b);
    }
  }
  for (int i = 0; i < n; ++i)
    if (owner[i] == -1)
      throw std::invalid_argument("element " + std::to_string(i + 1) + " not covered");
  return from_labels(std::span<const int>(owner));
}

SetPartition SetPartition::parse(int n, const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(text);
  std::string block;
  while (std::getline(ss, block, '|')) {
    std::vector<int> items;
    std::string cleaned;
    for (char c : block)
      if (c != '{' && c != '}' && c != ' ') cleaned += c;
    std::stringstream bs(cleaned);
    std::string item;
    while (std::getline(bs, item, ',')) {
      if (item.empty()) continue;
      try {
        items.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad partition element '" + item + "'");
      }
    }
    blocks.push_back(std::move(items));
  }
  return from_blocks(n, blocks);
}

SetPartition SetPartition::singletons(int n) {
  std::vector<std::uint8_t> rgs(n);
  for (int i = 0; i < n; ++i) rgs[i] = static_cast<std::uint8_t>(i);
  return SetPartition(std::move(rgs));
}

bool SetPartition::refines(const SetPartition& coarser) const {
  if (coarser.n() != n()) return false;
  for (const auto& block : blocks_)
    for (int i : block)
      if (coarser.block_of(i) != coarser.block_of(block.front())) return false;
  return true;
}

bool SetPartition::is_pair_partition() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const auto& b) { return b.size() == 2; });
}

std::string SetPartition::to_string() const {
  std::string out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += '|';
    out += '{';
    for (std::size_t j = 0; j < blocks_[b].size(); ++j) {
      if (j) out += ',';
      out += std::to_string(blocks_[b][j]);
    }
    out += '}';
  }
  return out;
}

std::vector<SetPartition> enumerate_partitions(int n, const EnumerationGuard& guard) {
  check_guard(n, guard, "enumerate_partitions");
  std::vector<SetPartition> out;
  if (n == 0) {
    out.push_back(SetPartition::from_rgs({}));
    return out;
  }
  // Lexicographic successor on restricted-growth strings, with prefix maxima.
  std::vector<std::uint8_t> rgs(n, 0);
  std::vector<std::uint8_t> maxima(n, 0);
  while (true) {
    out.push_back(SetPartition::from_rgs(rgs));
    int i = n - 1;
    while (i > 0 && rgs[i] > maxima[i - 1]) --i;
    if (i == 0) break;
    ++rgs[i];
    maxima[i] = std::max(maxima[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      maxima[j] = maxima[i];
    }
  }
  return out;
}

std::vector<SetPartition> enumerate_pair_partitions(int n, const EnumerationGuard& guard) {
  check_guard(n, guard, "enumerate_pair_partitions");
  std::vector<SetPartition> out;
  if (n % 2 != 0) return out;
  std::vector<std::uint8_t> rgs(n, 0xff);
  collect_pairings(rgs, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_adapted(const SetPartition& partition, const ColorFilterTuple& cf) {
  check_lengths(partition, cf);
  for (const auto& block : partition.blocks()) {
    const int color = cf.colors[block.front() - 1];
    for (std::size_t p = 0; p < block.size(); ++p) {
      if (cf.colors[block[p] - 1] != color) return false;
      if (p + 1 < block.size() && !gap_open(cf, block[p], block[p + 1], color)) return false;
    }
  }
  return true;
}

SetPartition coarsest_adapted(const SetPartition& partition, const ColorFilterTuple& cf) {
  check_lengths(partition, cf);
  std::vector<std::vector<int>> refined;
  for (const auto& block : partition.blocks()) {
    std::map<int, std::vector<int>> by_color;
    for (int i : block) by_color[cf.colors[i - 1]].push_back(i);
    for (const auto& [color, members] : by_color) {
      std::vector<int> run{members.front()};
      for (std::size_t p = 1; p < members.size(); ++p) {
        if (!gap_open(cf, members[p - 1], members[p], color)) {
          refined.push_back(std::move(run));
          run.clear();
        }
        run.push_back(members[p]);
      }
      refined.push_back(std::move(run));
    }
  }
  return SetPartition::from_blocks(partition.n(), refined);
}

std::vector<SetPartition> enumerate_adapted(const ColorFilterTuple& cf, bool pair_only,
                                            const EnumerationGuard& guard) {
  const int n = static_cast<int>(cf.size());
  auto all = pair_only ? enumerate_pair_partitions(n, guard) : enumerate_partitions(n, guard);
  std::vector<SetPartition> out;
  for (auto& r : all)
    if (is_adapted(r, cf)) out.push_back(std::move(r));
  return out;
}

bool is_noncrossing(const SetPartition& partition) {
  const auto& blocks = partition.blocks();
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (a == b) continue;
      // a1 < b1 < a2 < b2 is a crossing.
      for (int a1 : blocks[a])
        for (int a2 : blocks[a])
          for (int b1 : blocks[b])
            for (int b2 : blocks[b])
              if (a1 < b1 && b1 < a2 && a2 < b2) return false;
    }
  return true;
}

std::uint64_t count_noncrossing_pairings(int n, const EnumerationGuard& guard) {
  check_guard(n, guard, "count_noncrossing_pairings");
  std::uint64_t count = 0;
  for (const auto& r : enumerate_pair_partitions(n, guard))
    if (is_noncrossing(r)) ++count;
  return count;
}

}  // namespace fnoise
