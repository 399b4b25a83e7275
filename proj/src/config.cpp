#include "fnoise/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fnoise {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(trim(current));
  return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T out{};
  if (!(is >> out) || !is.eof()) throw UsageError("bad value '" + value + "' for " + key);
  return out;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw UsageError("empty rational");
  try {
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      const bool negative = text[0] == '-';
      std::string digits = text.substr(negative ? 1 : 0);
      const auto d = digits.find('.');
      const std::string whole = digits.substr(0, d), frac = digits.substr(d + 1);
      for (char c : whole + frac)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw UsageError("bad decimal");
      Integer num(whole.empty() && frac.empty() ? "0" : whole + frac, 10);
      Integer den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      Rational q(negative ? Integer(-num) : num, den);
      q.canonicalize();
      return q;
    }
    Rational q(text, 10);
    if (q.get_den() == 0) throw UsageError("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw UsageError("bad rational '" + text + "'");
  } catch (const UsageError&) {
    throw UsageError("bad rational '" + text + "'");
  }
}

void RunConfig::validate() const {
  if (truncation.d < 1 || truncation.M < 1 || truncation.n_max < 0 || truncation.delta <= 0 ||
      truncation.basis_cap < 1)
    throw UsageError("truncation needs d, M >= 1, n_max >= 0, delta > 0, basis_cap >= 1");
  if (!(tolerance > 0 && tolerance < 1e-3)) throw UsageError("tolerance must lie in (0, 1e-3)");
  if (enumeration.max_n < 1 || max_terms < 1) throw UsageError("guards must be positive");
}

std::map<std::string, std::string> read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "d")
    config.truncation.d = parse_number<int>(key, value);
  else if (key == "delta")
    config.truncation.delta = parse_rational(value);
  else if (key == "M")
    config.truncation.M = parse_number<int>(key, value);
  else if (key == "n_max")
    config.truncation.n_max = parse_number<int>(key, value);
  else if (key == "basis_cap")
    config.truncation.basis_cap = parse_number<std::size_t>(key, value);
  else if (key == "tolerance")
    config.tolerance = parse_number<double>(key, value);
  else if (key == "max_n")
    config.enumeration.max_n = parse_number<int>(key, value);
  else if (key == "max_terms")
    config.max_terms = parse_number<std::uint64_t>(key, value);
  else if (key == "seed")
    config.seed = parse_number<std::uint64_t>(key, value);
  else
    throw UsageError("unknown config key '" + key + "'");
}

RunConfig load_config(const std::optional<std::string>& path) {
  RunConfig config;
  std::optional<std::string> source = path;
  if (!source) {
    if (const char* env = std::getenv(kConfigEnv); env && *env) source = env;
  }
  if (source)
    for (const auto& [key, value] : read_key_values(*source)) apply_setting(config, key, value);
  return config;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_top_level(text, ',')) {
    if (item.empty()) throw UsageError("empty entry in list '" + text + "'");
    out.push_back(parse_number<int>("list entry", item));
  }
  return out;
}

std::vector<Filter> parse_filter_list(const std::string& text) {
  std::vector<Filter> out;
  for (const auto& item : split_top_level(text, ',')) {
    try {
      out.push_back(Filter::parse(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

ColorFilterTuple parse_cf(const std::string& colors, const std::string& filters) {
  auto ks = parse_int_list(colors);
  auto sigmas = parse_filter_list(filters);
  if (ks.size() != sigmas.size())
    throw UsageError("got " + std::to_string(ks.size()) + " colors but " +
                     std::to_string(sigmas.size()) + " filters");
  try {
    return ColorFilterTuple(std::move(ks), std::move(sigmas));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::map<int, Rational> parse_rates(const std::vector<std::string>& items) {
  std::map<int, Rational> out;
  for (const auto& group : items)
    for (const auto& item : split_top_level(group, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("rate '" + item + "' must look like color=value");
      out[parse_number<int>("color", trim(item.substr(0, eq)))] = parse_rational(item.substr(eq + 1));
    }
  return out;
}

MomentSequence parse_sequence(const std::string& text, int max_order) {
  if (text == "rademacher") return MomentSequence::rademacher(max_order);
  if (text == "gaussian") return MomentSequence::gaussian(max_order);
  std::vector<Rational> values;
  for (const auto& item : split_top_level(text, ',')) values.push_back(parse_rational(item));
  try {
    return MomentSequence(std::move(values));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

MomentModel parse_model(const std::string& text) {
  MomentModel model;
  std::string normalized = text;
  for (char& c : normalized)
    if (c == '\n') c = ';';
  for (const auto& entry : split_top_level(normalized, ';')) {
    const std::string item = trim(entry);
    if (item.empty() || item[0] == '#') continue;
    const auto eq = item.find_first_of("=:");
    if (eq == std::string::npos) throw UsageError("model entry '" + item + "' needs label=moments");
    model.set(parse_number<int>("label", trim(item.substr(0, eq))),
              parse_sequence(trim(item.substr(eq + 1)), EnumerationGuard{}.max_n));
  }
  if (model.sequences().empty()) throw UsageError("moment model is empty");
  return model;
}

MomentModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace fnoise
