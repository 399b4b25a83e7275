#include "fnoise/filter.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace fnoise {

namespace {

int parse_color(std::string_view text, std::string_view context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 1)
    throw std::invalid_argument("bad color '" + std::string(text) + "' in filter '" +
                                std::string(context) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Filter Filter::all() {
  Filter f;
  f.all_ = true;
  return f;
}

Filter Filter::empty() { return Filter(); }

Filter Filter::prefix(int r) {
  Filter f;
  for (int c = 1; c < r; ++c) f.colors_.push_back(c);
  return f;
}

Filter Filter::of(std::vector<int> colors) {
  for (int c : colors)
    if (c < 1) throw std::invalid_argument("filter colors must be positive");
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  Filter f;
  f.colors_ = std::move(colors);
  return f;
}

Filter Filter::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "all") return all();
  if (s == "empty" || s == "{}") return empty();
  if (s.size() >= 2 && s.front() == 'p') {
    int r = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), r);
    if (ec != std::errc() || ptr != s.data() + s.size() || r < 0)
      throw std::invalid_argument("bad prefix filter '" + std::string(text) + "'");
    return prefix(r);
  }
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') {
    std::string_view body = s.substr(1, s.size() - 2);
    std::vector<int> colors;
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view item = trim(body.substr(0, comma));
      colors.push_back(parse_color(item, text));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return of(std::move(colors));
  }
  throw std::invalid_argument("unrecognized filter '" + std::string(text) +
                              "' (expected all|empty|p<r>|{c1,...})");
}

bool Filter::contains(int color) const {
  if (all_) return true;
  return std::binary_search(colors_.begin(), colors_.end(), color);
}

Filter Filter::intersect(const Filter& other) const {
  if (all_) return other;
  if (other.all_) return *this;
  Filter f;
  std::set_intersection(colors_.begin(), colors_.end(), other.colors_.begin(),
                        other.colors_.end(), std::back_inserter(f.colors_));
  return f;
}

Filter Filter::unite(const Filter& other) const {
  if (all_ || other.all_) return all();
  Filter f;
  std::set_union(colors_.begin(), colors_.end(), other.colors_.begin(), other.colors_.end(),
                 std::back_inserter(f.colors_));
  return f;
}

Filter Filter::with(int color) const { return unite(of({color})); }

std::string Filter::to_string() const {
  if (all_) return "all";
  if (colors_.empty()) return "empty";
  std::string out = "{";
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(colors_[i]);
  }
  return out + "}";
}

}  // namespace fnoise
