#include "fsplit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>

#include "fsplit/errors.hpp"
#include "fsplit/frobenius.hpp"
#include "fsplit/fsignature.hpp"
#include "fsplit/ideal.hpp"
#include "fsplit/parse.hpp"
#include "fsplit/test_ideals.hpp"

namespace fsplit {

namespace {

using nlohmann::ordered_json;

// Bad flags, unreadable config files, rings that cannot be built.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Request {
  std::string verb;
  std::vector<std::string> args;
  std::optional<std::string> t;
  std::optional<std::string> t_max;
  std::optional<std::string> test_element;
  std::vector<std::string> minimal_primes;
  std::optional<unsigned> e;
  std::optional<unsigned> n;
  std::optional<unsigned> d;
  std::string kind = "powers";
};

struct Settings {
  std::vector<std::uint32_t> primes;
  std::vector<std::string> vars;
  std::string order = "degrevlex";
  Budget budget;
  bool json = false;
  bool timing = false;
  bool sweep = false;
};

struct Outcome {
  ordered_json result;
  std::string text;
  std::optional<unsigned> stabilized_at_e;
};

// ------------------------------------------------------------------ output

ordered_json ideal_json(const Ideal& ideal) { return basis_strings(ideal); }

std::string ideal_text(const Ideal& ideal) {
  const auto gens = basis_strings(ideal);
  if (gens.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i];
  return out + ")";
}

Outcome ideal_outcome(const Ideal& ideal) { return {ideal_json(ideal), ideal_text(ideal), std::nullopt}; }
Outcome bool_outcome(bool value) { return {value, value ? "true" : "false", std::nullopt}; }
Outcome number_outcome(std::uint64_t value) { return {value, std::to_string(value), std::nullopt}; }

// ------------------------------------------------------------------ verbs

class Executor {
 public:
  Executor(const Request& req, ContextPtr ctx, const Budget& budget) : req_(req), ctx_(std::move(ctx)), budget_(budget) {}

  Outcome run() {
    const auto& v = req_.verb;
    if (v == "gb") return ideal_outcome(Ideal::from_reduced_basis(ctx_, groebner_basis(ideal(0))));
    if (v == "member") return bool_outcome(ideal_member(poly(0), ideal(1)));
    if (v == "colon") return ideal_outcome(ideal_colon(ideal(0), ideal(1)));
    if (v == "intersect") return ideal_outcome(ideal_intersect(ideal(0), ideal(1)));
    if (v == "fpower") return ideal_outcome(frobenius_power(ideal(0), req_.e.value_or(1)));
    if (v == "froot") return ideal_outcome(frobenius_root(ideal(0), req_.e.value_or(1)));
    if (v == "split") return bool_outcome(fedder_split_test(ideal(0)));
    if (v == "split-coeff") return number_outcome(splitting_coefficient(poly(0)));
    if (v == "nu") {
      const Ideal j = req_.args.size() > 1 ? ideal(1) : Ideal::maximal(ctx_);
      return number_outcome(nu_value(ideal(0), j, positive_e(1)));
    }
    if (v == "compatible") return bool_outcome(is_compatible(ideal(0), CartierMap(poly(1), positive_e(1))));
    if (v == "ucompatible") return bool_outcome(is_uniformly_compatible(ideal(0)));
    if (v == "test-ideal") {
      if (!req_.t) throw ConfigError("test-ideal needs --t");
      auto report = test_ideal_regular(ideal(0), exponent(*req_.t), budget_);
      Outcome out = ideal_outcome(report.result);
      out.stabilized_at_e = report.stabilized_at_e;
      return out;
    }
    if (v == "fpt") {
      const auto interval = fpt_interval(ideal(0), positive_e(1));
      ordered_json j{{"low", interval.low.to_string()}, {"high", interval.high.to_string()}, {"level", interval.level},
                     {"nu", interval.nu}};
      return {j, "[" + interval.low.to_string() + ", " + interval.high.to_string() + "]", std::nullopt};
    }
    if (v == "jumps") {
      if (!req_.t_max) throw ConfigError("jumps needs --t-max");
      const auto jumps = f_jumping_candidates(ideal(0), positive_e(1), exponent(*req_.t_max), budget_);
      ordered_json j = ordered_json::array();
      std::string text;
      for (const auto& t : jumps) {
        j.push_back(t.to_string());
        text += (text.empty() ? "" : ", ") + t.to_string();
      }
      return {j, "{" + text + "}", std::nullopt};
    }
    if (v == "tau-quotient") {
      std::optional<Polynomial> c;
      if (req_.test_element) c = parse_polynomial(*req_.test_element, ctx_);
      std::vector<Ideal> primes;
      for (const auto& text : req_.minimal_primes) primes.push_back(parse_ideal(text, ctx_));
      const auto tau = test_ideal_quotient(ideal(0), c, primes, budget_);
      ordered_json j{{"ideal", ideal_json(tau.ideal)},
                     {"test_element", tau.test_element.to_string()},
                     {"iterations", tau.iterations}};
      return {j, ideal_text(tau.ideal) + "  (test element " + tau.test_element.to_string() + ")", std::nullopt};
    }
    if (v == "vassilev") {
      const auto chain = vassilev_chain(ideal(0), budget_);
      ordered_json j = ordered_json::array();
      std::string text;
      for (const auto& tau : chain) {
        j.push_back(ideal_json(tau));
        text += (text.empty() ? "" : " ⊂ ") + ideal_text(tau);
      }
      return {j, chain.empty() ? "[] (quotient is F-regular)" : text, std::nullopt};
    }
    if (v == "asymptotic") {
      const auto seq = sequence();
      auto report = asymptotic_test_ideal(seq, positive(req_.n, "--n", 1), budget_);
      Outcome out = ideal_outcome(report.result);
      out.stabilized_at_e = report.stabilized_at_e;
      return out;
    }
    if (v == "symbolic") return ideal_outcome(symbolic_power(all_ideals(), positive(req_.n, "--n", 1)));
    if (v == "symbolic-check") {
      const unsigned d = positive(req_.d, "--d", static_cast<unsigned>(ctx_->num_variables()));
      return bool_outcome(check_symbolic_containment(all_ideals(), positive(req_.n, "--n", 1), d));
    }
    if (v == "fsig") return fsig(fsignature_estimate(poly(0), req_.e.value_or(3)));
    throw ConfigError("unknown verb '" + v + "'");
  }

 private:
  const std::string& arg(std::size_t i) const {
    if (i >= req_.args.size()) throw ConfigError(req_.verb + " needs at least " + std::to_string(i + 1) + " argument(s)");
    return req_.args[i];
  }
  Ideal ideal(std::size_t i) const { return parse_ideal(arg(i), ctx_); }
  Polynomial poly(std::size_t i) const { return parse_polynomial(arg(i), ctx_); }

  std::vector<Ideal> all_ideals() const {
    if (req_.args.empty()) throw ConfigError(req_.verb + " needs at least one ideal");
    std::vector<Ideal> out;
    for (const auto& text : req_.args) out.push_back(parse_ideal(text, ctx_));
    return out;
  }

  static Exponent exponent(const std::string& text) {
    try {
      return Exponent::parse(text);
    } catch (const ParseError& ex) {
      throw ConfigError("bad rational '" + text + "': " + ex.what());
    }
  }

  unsigned positive(const std::optional<unsigned>& value, const char* flag, unsigned fallback) const {
    const unsigned v = value.value_or(fallback);
    if (v == 0) throw ConfigError(std::string(flag) + " must be at least 1");
    return v;
  }
  unsigned positive_e(unsigned fallback) const { return positive(req_.e, "--e", fallback); }

  GradedSequenceSpec sequence() const {
    if (req_.kind == "powers") {
      if (req_.args.size() != 1) throw ConfigError("asymptotic --kind powers takes exactly one ideal");
      return GradedSequenceSpec::ordinary_powers(ideal(0));
    }
    if (req_.kind == "symbolic") return GradedSequenceSpec::symbolic_squarefree(ctx_, all_ideals());
    throw ConfigError("--kind must be 'powers' or 'symbolic'");
  }

  static Outcome fsig(const FSignatureReport& report) {
    ordered_json samples = ordered_json::array();
    std::ostringstream text;
    text << "dimension " << report.dimension << ", delta = p^" << report.delta_exponent << "\n";
    for (const auto& s : report.samples) {
      samples.push_back({{"e", s.e}, {"a_e", s.a_e}, {"ratio", s.ratio.to_string()}});
      text << "  e=" << s.e << "  a_e=" << s.a_e << "  ratio=" << s.ratio.to_string() << "\n";
    }
    text << "estimate " << report.estimate.to_string();
    ordered_json j{{"prime", report.prime},
                   {"dimension", report.dimension},
                   {"delta_exponent", report.delta_exponent},
                   {"samples", samples},
                   {"estimate", report.estimate.to_string()}};
    return {j, text.str(), std::nullopt};
  }

  const Request& req_;
  ContextPtr ctx_;
  Budget budget_;
};

// ------------------------------------------------------------- one entry

struct EntryResult {
  int code = kExitOk;
  std::uint32_t prime = 0;
  std::optional<Outcome> outcome;
  std::string error;
  double ms = 0;
};

EntryResult run_entry(const Request& req, const Settings& settings, std::uint32_t prime) {
  EntryResult r;
  r.prime = prime;
  const auto start = std::chrono::steady_clock::now();
  try {
    ContextPtr ctx;
    try {
      ctx = RingContext::make(prime, settings.vars, parse_monomial_order(settings.order));
    } catch (const DomainError& ex) {
      throw ConfigError(ex.what());
    }
    r.outcome = Executor(req, ctx, settings.budget).run();
  } catch (const ParseError& ex) {
    r.code = kExitParse;
    r.error = std::string("parse error: ") + ex.what();
  } catch (const ConfigError& ex) {
    r.code = kExitParse;
    r.error = std::string("configuration error: ") + ex.what();
  } catch (const BudgetExceeded& ex) {
    r.code = kExitBudget;
    r.error = std::string("budget exceeded: ") + ex.what();
  } catch (const std::exception& ex) {
    r.code = kExitDomain;
    r.error = std::string("error: ") + ex.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ordered_json inputs_json(const Request& req, const Settings& settings, std::uint32_t prime) {
  ordered_json in{{"prime", prime}, {"vars", settings.vars}, {"order", settings.order}, {"args", req.args}};
  if (req.e) in["e"] = *req.e;
  if (req.t) in["t"] = *req.t;
  if (req.t_max) in["t_max"] = *req.t_max;
  if (req.test_element) in["test_element"] = *req.test_element;
  if (!req.minimal_primes.empty()) in["minimal_primes"] = req.minimal_primes;
  if (req.n) in["n"] = *req.n;
  if (req.d) in["d"] = *req.d;
  if (req.verb == "asymptotic") in["kind"] = req.kind;
  return in;
}

ordered_json entry_json(const Request& req, const Settings& settings, const EntryResult& r) {
  ordered_json j{{"verb", req.verb}, {"inputs", inputs_json(req, settings, r.prime)}};
  if (r.outcome) {
    j["result"] = r.outcome->result;
    if (r.outcome->stabilized_at_e) j["stabilized_at_e"] = *r.outcome->stabilized_at_e;
  } else {
    j["result"] = nullptr;
    j["error"] = r.error;
    j["exit_code"] = r.code;
  }
  j["budget"] = {{"max_e", settings.budget.max_e}, {"confirmations", settings.budget.confirmations}};
  if (settings.timing) j["timing_ms"] = r.ms;
  return j;
}

// ------------------------------------------------------------- settings

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

std::uint32_t parse_prime(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 10) {
    throw ConfigError("'" + text + "' is not a natural number");
  }
  const auto v = std::stoull(text);
  if (v >= (1ull << 31) || !is_prime(v)) throw ConfigError(text + " is not a prime below 2^31");
  return static_cast<std::uint32_t>(v);
}

unsigned parse_unsigned(const std::string& key, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || text.size() > 6) {
    throw ConfigError("config value for " + key + " must be a small natural number, got '" + text + "'");
  }
  return static_cast<unsigned>(std::stoul(text));
}

// key=value lines; blank lines and '#' comments ignored.
void load_config(const std::string& path, Budget& budget) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::string line;
  for (unsigned lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "max_e" || key == "max-e") {
      budget.max_e = parse_unsigned(key, value);
    } else if (key == "confirmations" || key == "confirm") {
      budget.confirmations = parse_unsigned(key, value);
    } else {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

void print_entry_text(std::ostream& out, const EntryResult& r, bool timing) {
  out << r.outcome->text;
  if (r.outcome->stabilized_at_e) out << "\nstabilized at e=" << *r.outcome->stabilized_at_e;
  if (timing) out << "\ntime " << r.ms << " ms";
  out << "\n";
}

void print_sweep_table(std::ostream& out, const std::vector<EntryResult>& results, bool timing) {
  out << "prime\tstatus\tresult";
  if (timing) out << "\ttime_ms";
  out << "\n";
  for (const auto& r : results) {
    std::string text = r.outcome ? r.outcome->text : r.error;
    std::replace(text.begin(), text.end(), '\n', ' ');
    out << r.prime << "\t" << (r.outcome ? "ok" : "exit " + std::to_string(r.code)) << "\t" << text;
    if (timing) out << "\t" << r.ms;
    out << "\n";
  }
}

const std::vector<std::pair<std::string, std::string>>& verb_table() {
  static const std::vector<std::pair<std::string, std::string>> verbs = {
      {"gb", "reduced Groebner basis: gb IDEAL"},
      {"member", "ideal membership: member POLY IDEAL"},
      {"colon", "colon ideal: colon I J"},
      {"intersect", "intersection: intersect I J"},
      {"fpower", "Frobenius power I^[p^e]: fpower I --e E"},
      {"froot", "Frobenius root I^[1/p^e]: froot I --e E"},
      {"split", "Fedder splitting test of S/I at the origin: split I"},
      {"split-coeff", "coefficient of (x_1...x_d)^(p-1) in f^(p-1): split-coeff F"},
      {"nu", "nu_a(p^e) against J (default m): nu A [J] --e E"},
      {"compatible", "is J compatible with Psi_e(g^(1/p^e) .): compatible J G --e E"},
      {"ucompatible", "uniform F-compatibility in the polynomial ring: ucompatible J"},
      {"test-ideal", "tau(a^t): test-ideal A --t T"},
      {"fpt", "F-pure threshold bracket at level e: fpt A --e E"},
      {"jumps", "F-jumping candidates on the p^-e grid: jumps A --e E --t-max T"},
      {"tau-quotient", "lift of tau(S/I): tau-quotient I [--test-element C] [--minimal-prime P ...]"},
      {"vassilev", "Vassilev chain of test ideals: vassilev I"},
      {"asymptotic", "asymptotic test ideal: asymptotic IDEAL... --n N [--kind powers|symbolic]"},
      {"symbolic", "symbolic power of a squarefree monomial ideal: symbolic P1 P2 ... --n N"},
      {"symbolic-check", "check I^(dn) in I^n: symbolic-check P1 P2 ... --n N [--d D]"},
      {"fsig", "F-signature estimate of S/(f): fsig F [--e E_MAX]"},
  };
  return verbs;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fsplit: Frobenius splitting invariants over F_p"};
  app.name("fsplit");
  app.require_subcommand(1);

  std::string prime_text;
  std::string sweep_text;
  std::string vars_text;
  std::string config_path;
  std::optional<unsigned> max_e;
  std::optional<unsigned> confirm;
  Settings settings;
  Request req;

  auto* prime_opt = app.add_option("--prime", prime_text, "characteristic p");
  app.add_option("--sweep-prime", sweep_text, "comma list of primes; runs the command for each")->excludes(prime_opt);
  app.add_option("--vars", vars_text, "comma list of variables, in order")->required();
  app.add_option("--order", settings.order, "degrevlex | lex | deglex")->capture_default_str();
  app.add_flag("--json", settings.json, "emit JSON");
  app.add_flag("--timing", settings.timing, "report wall-clock time");
  app.add_option("--max-e", max_e, "chain length cap (default 6)");
  app.add_option("--confirm", confirm, "repeats required for stabilization (default 2)");
  app.add_option("--config", config_path, "key=value budget file");

  for (const auto& [verb, help] : verb_table()) {
    auto* sub = app.add_subcommand(verb, help);
    sub->fallthrough();
    sub->add_option("args", req.args, "positional inputs");
    sub->add_option("--e", req.e, "Frobenius level / e_max");
    sub->add_option("--t", req.t, "exponent t (a or a/b)");
    sub->add_option("--t-max", req.t_max, "largest grid point");
    sub->add_option("--test-element", req.test_element, "test element c");
    sub->add_option("--minimal-prime", req.minimal_primes, "minimal primes of I");
    sub->add_option("--n", req.n, "power / index");
    sub->add_option("--d", req.d, "symbolic containment factor");
    sub->add_option("--kind", req.kind, "graded sequence kind");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitParse;
  }
  for (auto* sub : app.get_subcommands()) req.verb = sub->get_name();

  try {
    if (!config_path.empty()) load_config(config_path, settings.budget);
    if (max_e) settings.budget.max_e = *max_e;
    if (confirm) settings.budget.confirmations = *confirm;
    if (settings.budget.max_e == 0) throw ConfigError("--max-e must be at least 1");
    settings.vars = split_list(vars_text);
    if (!sweep_text.empty()) {
      settings.sweep = true;
      for (const auto& item : split_list(sweep_text)) settings.primes.push_back(parse_prime(item));
    } else if (!prime_text.empty()) {
      settings.primes.push_back(parse_prime(prime_text));
    } else {
      throw ConfigError("one of --prime or --sweep-prime is required");
    }
  } catch (const ConfigError& ex) {
    err << "configuration error: " << ex.what() << "\n";
    return kExitParse;
  }

  std::vector<std::future<EntryResult>> pending;
  for (auto p : settings.primes) {
    pending.push_back(std::async(std::launch::async, [&req, &settings, p] { return run_entry(req, settings, p); }));
  }
  std::vector<EntryResult> results;
  for (auto& f : pending) results.push_back(f.get());

  int code = kExitOk;
  for (const auto& r : results) {
    if (r.code != kExitOk) {
      if (code == kExitOk) code = r.code;
      if (!settings.json || !settings.sweep) err << (settings.sweep ? "p=" + std::to_string(r.prime) + ": " : "") << r.error << "\n";
    }
  }

  if (settings.json) {
    if (settings.sweep) {
      ordered_json all = ordered_json::array();
      for (const auto& r : results) all.push_back(entry_json(req, settings, r));
      out << all.dump(2) << "\n";
    } else if (results.front().outcome) {
      out << entry_json(req, settings, results.front()).dump(2) << "\n";
    }
  } else if (settings.sweep) {
    print_sweep_table(out, results, settings.timing);
  } else if (results.front().outcome) {
    print_entry_text(out, results.front(), settings.timing);
  }
  return code;
}

}  // namespace fsplit
