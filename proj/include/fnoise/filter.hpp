#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fnoise {

/// A set of colors attached to a variable or operator.
///
/// `All` stands for the full set of positive integers and is never
/// materialized; finite filters keep their colors sorted and unique.
class Filter {
 public:
  /// Default-constructed filter is the empty set.
  Filter() = default;

  static Filter all();
  static Filter empty();
  /// {1, ..., r-1}; prefix(1) and prefix(0) are empty.
  static Filter prefix(int r);
  static Filter of(std::vector<int> colors);

  /// Grammar: `all` | `empty` | `p<r>` | `{c1,c2,...}`.
  static Filter parse(std::string_view text);

  bool is_all() const { return all_; }
  bool is_empty() const { return !all_ && colors_.empty(); }
  bool contains(int color) const;

  /// Only meaningful for finite filters.
  const std::vector<int>& colors() const { return colors_; }

  Filter intersect(const Filter& other) const;
  Filter unite(const Filter& other) const;
  Filter with(int color) const;

  /// `all`, `empty`, or `{1,3}`.
  std::string to_string() const;

  friend bool operator==(const Filter& a, const Filter& b) {
    return a.all_ == b.all_ && a.colors_ == b.colors_;
  }

 private:
  bool all_ = false;
  std::vector<int> colors_;
};

}  // namespace fnoise
