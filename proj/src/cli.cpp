#include "fnoise/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ostream>

#include "fnoise/config.hpp"
#include "fnoise/errors.hpp"
#include "fnoise/mfree.hpp"
#include "fnoise/moments.hpp"
#include "fnoise/suite.hpp"
#include "fnoise/verify.hpp"

namespace fnoise::cli {

namespace {

using json = nlohmann::ordered_json;

struct Globals {
  std::string config_path;
  std::string delta;
  int d = 0, M = 0, n_max = 0, max_n = 0;
  std::size_t basis_cap = 0;
  double tolerance = 0;
  std::uint64_t max_terms = 0, seed = 0;
};

struct Options {
  std::string action = "list";
  std::string colors, filters, labels, blocks, model, moments, seq = "rademacher", kind = "clt",
              m = "1", check = "all", only;
  std::vector<std::string> lambda;
  std::string rate = "1";
  std::uint64_t n_copies = 0;
  int n = 0, cases = 0, max_length = 6, poisson_n = 5, sectors = 5, words = 50;
  bool pairs = false, bruteforce = false;
};

json cf_json(const ColorFilterTuple& cf) {
  json out;
  out["colors"] = cf.colors;
  json filters = json::array();
  for (const auto& f : cf.filters) filters.push_back(f.to_string());
  out["filters"] = filters;
  return out;
}

json partitions_json(const std::vector<SetPartition>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::vector<MParameter> m_values(const FockSpace& space) {
  std::vector<MParameter> ms;
  for (int m = 1; m <= std::min(space.truncation().M, 4); ++m) ms.push_back(MParameter::finite(m));
  ms.push_back(MParameter::infinity());
  return ms;
}

class Runner {
 public:
  Runner(const RunConfig& config, const Options& o, json& report)
      : config_(config), o_(o), report_(report) {}

  int partitions() {
    const auto cf = parse_cf(o_.colors, o_.filters);
    report_["inputs"] = cf_json(cf);
    report_["inputs"]["action"] = o_.action;
    json& result = report_["result"];
    if (o_.action == "coarsest") {
      if (o_.blocks.empty()) throw UsageError("coarsest needs --blocks");
      SetPartition r;
      try {
        r = SetPartition::parse(static_cast<int>(cf.size()), o_.blocks);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto refined = coarsest_adapted(r, cf);
      report_["inputs"]["blocks"] = r.to_string();
      result["partition"] = refined.to_string();
      result["input_adapted"] = is_adapted(r, cf);
      return kPass;
    }
    const auto adapted = enumerate_adapted(cf, o_.pairs, config_.enumeration);
    report_["inputs"]["pairs_only"] = o_.pairs;
    result["count"] = adapted.size();
    if (o_.action == "list") result["partitions"] = partitions_json(adapted);
    else if (o_.action != "count") throw UsageError("partitions action must be list, count or coarsest");
    return kPass;
  }

  int moment() {
    const auto cf = parse_cf(o_.colors, o_.filters);
    const auto labels = parse_int_list(o_.labels);
    if (labels.size() != cf.size()) throw UsageError("--labels must match --colors in length");
    MomentModel model;
    if (!o_.model.empty()) model = read_model_file(o_.model);
    else if (!o_.moments.empty()) model = parse_model(o_.moments);
    else throw UsageError("moment needs --model FILE or --moments TEXT");
    Word word;
    for (std::size_t i = 0; i < labels.size(); ++i) word.push_back({labels[i], cf.colors[i], cf.filters[i]});
    const Rational direct = filtered_word_moment(word, model);
    const Rational recursive = filtered_word_moment_recursive(word, model);
    report_["inputs"] = cf_json(cf);
    report_["inputs"]["labels"] = labels;
    report_["result"]["value"] = to_string(direct);
    report_["result"]["recursive"] = to_string(recursive);
    report_["result"]["agree"] = direct == recursive;
    report_["passed"] = direct == recursive;
    return direct == recursive ? kPass : kVerificationFailure;
  }

  int convolve() {
    if (o_.n_copies < 1) throw UsageError("convolve needs --N >= 1");
    const auto cf = parse_cf(o_.colors, o_.filters);
    const auto seq = parse_sequence(o_.seq, static_cast<int>(cf.size()));
    report_["inputs"] = cf_json(cf);
    report_["inputs"]["N"] = o_.n_copies;
    report_["inputs"]["sequence"] = o_.seq;
    const auto coeffs = convolution_coefficients(cf, seq, config_.work());
    const Rational value = convolution_power(o_.n_copies, cf, seq, config_.work());
    json c = json::array();
    for (const auto& q : coeffs) c.push_back(to_string(q));
    report_["result"]["value"] = to_string(value);
    report_["result"]["coefficients"] = c;
    if (!o_.bruteforce) return kPass;
    const Rational brute = convolution_power_bruteforce(o_.n_copies, cf, seq, config_.work());
    report_["result"]["bruteforce"] = to_string(brute);
    report_["result"]["agree"] = brute == value;
    report_["passed"] = brute == value;
    return brute == value ? kPass : kVerificationFailure;
  }

  int clt() {
    const auto cf = parse_cf(o_.colors, o_.filters);
    report_["inputs"] = cf_json(cf);
    report_["result"]["value"] = std::to_string(clt_limit(cf, config_.enumeration));
    if (o_.n_copies > 0) {
      const auto seq = parse_sequence(o_.seq, static_cast<int>(cf.size()));
      report_["inputs"]["N"] = o_.n_copies;
      report_["inputs"]["sequence"] = o_.seq;
      try {
        report_["result"]["normalized"] = to_string(clt_normalized(o_.n_copies, cf, seq, config_.work()));
      } catch (const std::domain_error&) {
        report_["result"]["normalized_value"] = clt_normalized_value(o_.n_copies, cf, seq, config_.work());
      }
    }
    return kPass;
  }

  int poisson() {
    const auto cf = parse_cf(o_.colors, o_.filters);
    const auto rates = parse_rates(o_.lambda);
    report_["inputs"] = cf_json(cf);
    json r;
    for (const auto& [k, v] : rates) r[std::to_string(k)] = to_string(v);
    report_["inputs"]["lambda"] = r;
    report_["result"]["value"] = to_string(poisson_limit(cf, rates, config_.enumeration));
    return kPass;
  }

  int mfree() {
    if (o_.n < 1) throw UsageError("mfree needs --n >= 1");
    const auto m = MParameter::parse(o_.m);
    if (m.infinite) throw UsageError("the sample moment needs a finite m");
    SampleKind kind;
    if (o_.kind == "poisson") kind = SampleKind::poisson(parse_rational(o_.rate));
    else if (o_.kind != "clt") throw UsageError("--kind must be clt or poisson");
    report_["inputs"]["m"] = m.value;
    report_["inputs"]["n"] = o_.n;
    report_["inputs"]["kind"] = o_.kind;
    if (o_.kind == "poisson") report_["inputs"]["lambda"] = to_string(kind.lambda);
    report_["result"]["value"] = to_string(mfree_sample_moment(m.value, o_.n, kind, config_.work()));
    return kPass;
  }

  int fock_verify() {
    const FockSpace space(config_.truncation);
    describe_space(space);
    std::vector<SweepResult> sweeps;
    const bool all = o_.check == "all";
    bool known = all;
    if (all || o_.check == "commutation") {
      known = true;
      sweeps.push_back(sweep_commutation(space, o_.cases > 0 ? o_.cases : 60, config_.seed, config_.tolerance));
    }
    if (all || o_.check == "pairing") {
      known = true;
      sweeps.push_back(sweep_pairing(space, o_.cases > 0 ? o_.cases : 120,
                                     std::min(o_.max_length, space.truncation().n_max), config_.seed,
                                     config_.tolerance));
    }
    if (all || o_.check == "poisson") {
      known = true;
      std::vector<Rational> times;
      for (const Rational& t : {Rational(1, 2), Rational(1)})
        if (t <= space.truncation().delta * space.truncation().d && is_grid_point(space, t)) times.push_back(t);
      if (times.empty()) times.push_back(space.truncation().delta);
      const std::vector<Filter> filters{Filter::all(), Filter::empty(), Filter::prefix(2), Filter::prefix(3)};
      sweeps.push_back(sweep_poisson_noise(space, o_.poisson_n, times,
                                           filters, config_.tolerance));
    }
    if (!known) throw UsageError("--check must be commutation, pairing, poisson or all");
    return finish(sweeps);
  }

  int mfree_verify() {
    const FockSpace space(config_.truncation);
    describe_space(space);
    std::vector<SweepResult> sweeps;
    const bool all = o_.check == "all";
    bool known = all;
    const auto ms = m_values(space);
    if (all || o_.check == "cuntz") {
      known = true;
      sweeps.push_back(sweep_cuntz(space, ms, 3, config_.seed, config_.tolerance));
    }
    if (all || o_.check == "resolution") {
      known = true;
      sweeps.push_back(sweep_resolution(space, ms, config_.tolerance));
    }
    if (all || o_.check == "semicircle") {
      known = true;
      std::vector<int> finite;
      for (int m = 1; m <= std::min(space.truncation().M, 3); ++m) finite.push_back(m);
      sweeps.push_back(sweep_semicircle(space, finite, std::min(3, space.truncation().n_max), config_.tolerance));
    }
    if (all || o_.check == "decomposition") {
      known = true;
      const auto sectors = sample_sectors(space, o_.sectors);
      const auto report = verify_decomposition(space, sectors, o_.words, o_.max_length, config_.seed);
      SweepResult s;
      s.name = "free Fock decomposition";
      s.tolerance = config_.tolerance;
      s.seed = report.seed;
      s.record(report.orthogonality, "sector orthogonality");
      s.record(report.oracle, "free Fock oracle");
      if (report.norm_cases > 0) s.record(report.norm_factor, "symmetric product factor");
      s.notes.push_back(std::to_string(report.sectors) + " sectors, " + std::to_string(report.words_per_sector) +
                        " words each, " + std::to_string(report.norm_cases) + " product cases");
      sweeps.push_back(s);
    }
    if (!known) throw UsageError("--check must be cuntz, resolution, decomposition, semicircle or all");
    return finish(sweeps);
  }

  int suite(std::ostream& err) {
    SuiteOptions options;
    options.seed = config_.seed;
    if (!o_.only.empty()) options.only = parse_int_list(o_.only);
    const auto results = run_suite(options, [&](const CriterionResult& r) {
      err << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.seconds << " s)\n";
    });
    json list = json::array();
    bool passed = true;
    for (const auto& r : results) {
      json row;
      row["id"] = r.id;
      row["title"] = r.title;
      row["passed"] = r.passed;
      row["seconds"] = r.seconds;
      row["details"] = r.details;
      list.push_back(row);
      passed = passed && r.passed;
    }
    report_["inputs"]["seed"] = config_.seed;
    report_["result"]["criteria"] = list;
    report_["passed"] = passed;
    return passed ? kPass : kVerificationFailure;
  }

 private:
  static bool is_grid_point(const FockSpace& space, const Rational& t) {
    Rational cells = t / space.truncation().delta;
    cells.canonicalize();
    return cells.get_den() == 1;
  }

  void describe_space(const FockSpace& space) {
    const auto& t = space.truncation();
    report_["inputs"]["d"] = t.d;
    report_["inputs"]["delta"] = to_string(t.delta);
    report_["inputs"]["M"] = t.M;
    report_["inputs"]["n_max"] = t.n_max;
    report_["inputs"]["basis_size"] = space.size();
    report_["inputs"]["seed"] = config_.seed;
    report_["inputs"]["tolerance"] = config_.tolerance;
  }

  int finish(const std::vector<SweepResult>& sweeps) {
    json list = json::array();
    bool passed = true;
    for (const auto& s : sweeps) {
      list.push_back(sweep_json(s));
      passed = passed && s.passed();
    }
    report_["result"]["sweeps"] = list;
    report_["passed"] = passed;
    return passed ? kPass : kVerificationFailure;
  }

  const RunConfig& config_;
  const Options& o_;
  json& report_;
};

RunConfig resolve_config(const CLI::App& app, const Globals& g) {
  RunConfig config = load_config(g.config_path.empty() ? std::nullopt
                                                       : std::optional<std::string>(g.config_path));
  auto given = [&](const char* name) { return app.get_option(name)->count() > 0; };
  if (given("--d")) config.truncation.d = g.d;
  if (given("--delta")) config.truncation.delta = parse_rational(g.delta);
  if (given("--M")) config.truncation.M = g.M;
  if (given("--n-max")) config.truncation.n_max = g.n_max;
  if (given("--basis-cap")) config.truncation.basis_cap = g.basis_cap;
  if (given("--tolerance")) config.tolerance = g.tolerance;
  if (given("--max-n")) config.enumeration.max_n = g.max_n;
  if (given("--max-terms")) config.max_terms = g.max_terms;
  if (given("--seed")) config.seed = g.seed;
  config.validate();
  return config;
}

json error_json(const std::string& kind, const std::string& message) {
  json e;
  e["kind"] = kind;
  e["message"] = message;
  return e;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Filtered noise moments: adapted partitions and truncated Fock space checks", "fnoise"};
  app.require_subcommand(1);
  Globals g;
  Options o;

  app.add_option("--config", g.config_path, "key = value config file (else $FILTERED_NOISE_CONFIG)");
  app.add_option("--d", g.d, "grid cells");
  app.add_option("--delta", g.delta, "grid cell width, rational");
  app.add_option("--M", g.M, "number of colors");
  app.add_option("--n-max", g.n_max, "particle cap");
  app.add_option("--basis-cap", g.basis_cap, "largest allowed Fock basis");
  app.add_option("--tolerance", g.tolerance, "residual tolerance in (0, 1e-3)");
  app.add_option("--max-n", g.max_n, "enumeration guard on word length");
  app.add_option("--max-terms", g.max_terms, "work guard on brute-force terms");
  app.add_option("--seed", g.seed, "seed for randomized sweeps");

  auto add_cf = [&](CLI::App* sub) {
    sub->add_option("--colors", o.colors, "comma-separated colors")->required();
    sub->add_option("--filters", o.filters, "comma-separated filters: all | empty | p<r> | {c,...}")->required();
  };

  auto* partitions = app.add_subcommand("partitions", "list, count, or coarsen adapted partitions");
  partitions->add_option("action", o.action, "list | count | coarsest");
  add_cf(partitions);
  partitions->add_flag("--pairs", o.pairs, "pair partitions only");
  partitions->add_option("--blocks", o.blocks, "partition to coarsen, e.g. \"1,3,5|2,4\"");

  auto* moment = app.add_subcommand("moment", "filtered word moment under a moment model");
  add_cf(moment);
  moment->add_option("--labels", o.labels, "comma-separated algebra labels")->required();
  moment->add_option("--model", o.model, "model file: one label=m0,m1,... per line");
  moment->add_option("--moments", o.moments, "inline model: \"1=1,0,1;2=1,1/2,1/3\"");

  auto* convolve = app.add_subcommand("convolve", "N-fold filtered convolution power");
  add_cf(convolve);
  convolve->add_option("--N", o.n_copies, "number of copies")->required();
  convolve->add_option("--seq", o.seq, "rademacher | gaussian | m0,m1,...");
  convolve->add_flag("--bruteforce", o.bruteforce, "also sum over all site tuples and compare");

  auto* clt = app.add_subcommand("clt", "central limit: adapted pair partitions");
  add_cf(clt);
  clt->add_option("--N", o.n_copies, "also report the normalized N-fold power");
  clt->add_option("--seq", o.seq, "rademacher | gaussian | m0,m1,...");

  auto* poisson = app.add_subcommand("poisson", "Poisson limit: rate-weighted adapted partitions");
  add_cf(poisson);
  poisson->add_option("--lambda", o.lambda, "color=rate, repeatable or comma-separated")->required();

  auto* mfree = app.add_subcommand("mfree", "limit moments of the m-free combination");
  mfree->add_option("--m", o.m, "positive integer")->required();
  mfree->add_option("--n", o.n, "moment order")->required();
  mfree->add_option("--kind", o.kind, "clt | poisson");
  mfree->add_option("--lambda", o.rate, "Poisson rate");

  auto* fock = app.add_subcommand("fock-verify", "commutation, pairing and Poisson noise sweeps");
  fock->add_option("--check", o.check, "commutation | pairing | poisson | all");
  fock->add_option("--cases", o.cases, "random cases per sweep");
  fock->add_option("--max-length", o.max_length, "longest random word");
  fock->add_option("--poisson-n", o.poisson_n, "longest Lambda word");

  auto* mfv = app.add_subcommand("mfree-verify", "Cuntz, resolution, decomposition and semicircle checks");
  mfv->add_option("--check", o.check, "cuntz | resolution | decomposition | semicircle | all");
  mfv->add_option("--sectors", o.sectors, "D-basis sectors to sample");
  mfv->add_option("--words", o.words, "words per sector");
  mfv->add_option("--max-length", o.max_length, "longest random word");

  auto* suite = app.add_subcommand("suite", "full acceptance battery");
  suite->add_option("--only", o.only, "comma-separated criterion ids");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  json report;
  const auto start = std::chrono::steady_clock::now();
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    report["error"] = error_json("usage", e.what());
    report["exit_code"] = static_cast<int>(kUsage);
    out << report.dump(2) << "\n";
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  report["command"] = command;
  std::vector<std::string> echo(args.begin() + (args.empty() ? 0 : 1), args.end());
  report["argv"] = echo;

  int code = kPass;
  try {
    const RunConfig config = resolve_config(app, g);
    Runner runner(config, o, report);
    if (command == "partitions") code = runner.partitions();
    else if (command == "moment") code = runner.moment();
    else if (command == "convolve") code = runner.convolve();
    else if (command == "clt") code = runner.clt();
    else if (command == "poisson") code = runner.poisson();
    else if (command == "mfree") code = runner.mfree();
    else if (command == "fock-verify") code = runner.fock_verify();
    else if (command == "mfree-verify") code = runner.mfree_verify();
    else code = runner.suite(err);
  } catch (const GuardError& e) {
    err << "guard violation: " << e.what() << "\n";
    report["error"] = error_json("guard", e.what());
    code = kUsage;
  } catch (const TruncationError& e) {
    err << "truncation too small: " << e.what() << "\n";
    report["error"] = error_json("truncation", e.what());
    code = kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    report["error"] = error_json("usage", e.what());
    code = kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    report["error"] = error_json("input", e.what());
    code = kUsage;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    report["error"] = error_json("input", e.what());
    code = kUsage;
  }
  report["exit_code"] = code;
  report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace fnoise::cli
