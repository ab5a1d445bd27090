#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "adwords/adversary.hpp"
#include "adwords/errors.hpp"
#include "adwords/generators.hpp"
#include "adwords/instance_io.hpp"
#include "adwords/opt.hpp"
#include "adwords/report.hpp"

using namespace adwords;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidation = 2;
constexpr int kExitAudit = 3;
constexpr int kExitOracle = 4;

struct Global {
  std::uint64_t seed = 1;
  bool reproducible = false;
  std::string audit = "end";
  std::string sigma_rule = "covering-minimum";
  std::string out;
};

struct GenArgs {
  std::string kind = "random-laminar";
  RandomInstanceSpec spec;
  double bid_fraction = 0;
  int n = 16;
  int p = 4;
  std::string eps = "1/2";
  std::optional<std::string> delta;
  std::string branch = "A";
};

struct OptArgs {
  std::string method = "lp";
  std::string semantics = "partial";
};

void add_spec_options(CLI::App* cmd, GenArgs& g) {
  cmd->add_option("--bidders", g.spec.bidders)->check(CLI::PositiveNumber);
  cmd->add_option("--dimensions", g.spec.dimensions)->check(CLI::PositiveNumber);
  cmd->add_option("--depth", g.spec.depth)->check(CLI::PositiveNumber);
  cmd->add_option("--branching", g.spec.branching)->check(CLI::PositiveNumber);
  cmd->add_option("--p", g.p, "constraints per dimension (random-general), or constraints (lb-aon)");
  cmd->add_option("--impressions", g.spec.impressions)->check(CLI::NonNegativeNumber);
  cmd->add_option("--bid-scale", g.spec.bid_scale, "bid cap as a multiple of the small-bids threshold");
  cmd->add_option("--bid-fraction", g.bid_fraction, "absolute bid-to-budget cap; overrides --bid-scale");
}

void finish_spec(GenArgs& g) {
  g.spec.p = g.p;
  if (g.bid_fraction > 0) g.spec.bid_fraction = g.bid_fraction;
}

SessionOptions session_options(const Global& global) {
  SessionOptions opts;
  auto audit = parse_audit_mode(global.audit);
  if (!audit) throw ValidationError({"unknown audit mode '" + global.audit + "'"});
  opts.audit = *audit;
  auto rule = parse_sigma_rule(global.sigma_rule);
  if (!rule) throw ValidationError({"unknown sigma rule '" + global.sigma_rule + "'"});
  opts.sigma_rule = *rule;
  return opts;
}

Strategy strategy_named(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) throw ValidationError({"unknown algorithm '" + name + "'"});
  return *s;
}

Rational money(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw ValidationError({"not a number: '" + text + "'"});
  }
}

void stamp(json& doc, const Global& global) {
  if (global.reproducible) return;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  doc["timestamp"] = buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

Instance generate(const GenArgs& g, std::uint64_t seed) {
  if (g.kind == "random-laminar" || g.kind == "random-general") {
    RandomInstanceSpec spec = g.spec;
    spec.mode = g.kind == "random-laminar" ? Mode::Laminar : Mode::General;
    return random_instance(spec, seed);
  }
  if (g.kind == "lb-admission") return admission_skeleton(g.n);
  if (g.kind == "lb-aon") return aon_skeleton(g.p, money(g.eps));
  if (g.kind == "intro-example") {
    const SharedDimScenarios sc = g.delta ? shared_dim_scenarios(money(*g.delta)) : shared_dim_scenarios();
    if (g.branch == "A") return g.delta ? sc.a_small : sc.a;
    if (g.branch == "B") return g.delta ? sc.b_small : sc.b;
    throw ValidationError({"intro-example branch must be A or B"});
  }
  throw ValidationError({"unknown generator kind '" + g.kind + "'"});
}

Instance load_checked(const std::string& path) {
  if (!std::filesystem::exists(path)) throw ValidationError({"no such file: " + path});
  return load_instance(path);
}

double opt_value(const Instance& inst, const OptArgs& a, json& detail) {
  if (a.method == "lp") {
    const LpResult lp = opt_lp(inst);
    detail["exact"] = lp.exact ? json(lp.exact->str()) : json(nullptr);
    detail["rows"] = lp.rows;
    detail["cols"] = lp.cols;
    detail["pivots"] = lp.pivots;
    return lp.value;
  }
  if (a.method == "brute") {
    auto sem = parse_semantics(a.semantics);
    if (!sem) throw ValidationError({"unknown semantics '" + a.semantics + "'"});
    const Rational v = opt_brute(inst, *sem);
    detail["exact"] = v.str();
    detail["semantics"] = a.semantics;
    return v.to_double();
  }
  if (a.method == "analytic") {
    const Rational v = opt_analytic(inst);
    detail["exact"] = v.str();
    return v.to_double();
  }
  throw ValidationError({"unknown method '" + a.method + "'"});
}

// Guarantee each strategy is measured against; null where only asymptotic.
json bound_for(Strategy s, int p) {
  switch (s) {
    case Strategy::AdLaminar: return std::numbers::e / (std::numbers::e - 1);
    case Strategy::AdGeneral: return 1 + 4 * lg_2p2(p);
    case Strategy::GreedyLaminar: return 2.0;
    default: return nullptr;
  }
}

json ratio_entry(const Instance& inst, Strategy strategy, const SessionOptions& opts, const OptArgs& a) {
  const Report report = run_online(inst, strategy, opts);
  json detail;
  const double opt = opt_value(inst, a, detail);
  const double alg = report.primal.to_double();
  const double ratio = competitive_ratio(opt, alg);
  json e;
  e["alg"] = report.primal.str();
  e["opt"] = opt;
  e["opt_detail"] = detail;
  e["ratio"] = std::isinf(ratio) ? json("inf") : json(ratio);
  e["p"] = report.p;
  e["bound"] = bound_for(strategy, report.p);
  e["audit_failures"] = report.audit_failures;
  e["warnings"] = report.warnings.size();
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online budgeted allocation: generators, strategies, certificates and offline oracles"};
  app.require_subcommand(1);
  Global global;
  app.add_option("--seed", global.seed, "random seed")->capture_default_str();
  app.add_flag("--reproducible", global.reproducible, "omit the timestamp from reports");
  app.add_option("--audit", global.audit, "off, end or paranoid")
      ->check(CLI::IsMember({"off", "end", "paranoid"}))
      ->capture_default_str();
  app.add_option("--sigma-rule", global.sigma_rule, "score-at-arrival, exact-increment or covering-minimum")
      ->check(CLI::IsMember({"score-at-arrival", "exact-increment", "covering-minimum"}))
      ->capture_default_str();
  app.add_option("--out", global.out, "output file (stdout when omitted)");
  app.fallthrough();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "write an instance");
  gen_cmd->add_option("--kind", gen.kind)
      ->check(CLI::IsMember({"random-laminar", "random-general", "lb-admission", "lb-aon", "intro-example"}))
      ->capture_default_str();
  add_spec_options(gen_cmd, gen);
  gen_cmd->add_option("--n", gen.n, "edges (lb-admission)");
  gen_cmd->add_option("--eps", gen.eps, "bid size (lb-aon)");
  gen_cmd->add_option("--delta", gen.delta, "split unit impressions into 1/delta parts (intro-example)");
  gen_cmd->add_option("--branch", gen.branch, "A or B (intro-example)");

  std::string instance_path;
  std::string algo = "adlaminar";
  std::string trace_path;
  auto* run_cmd = app.add_subcommand("run", "run a strategy and write its report");
  run_cmd->add_option("--instance", instance_path)->required();
  run_cmd->add_option("--algo", algo)->capture_default_str();
  run_cmd->add_option("--trace", trace_path, "per-impression CSV (default: <out>.csv)");

  OptArgs opt_args;
  GenArgs ratio_gen;
  int trials = 1;
  auto* ratio_cmd = app.add_subcommand("ratio", "measure OPT / ALG");
  ratio_cmd->add_option("--instance", instance_path, "instance file; otherwise generated");
  ratio_cmd->add_option("--algo", algo)->capture_default_str();
  ratio_cmd->add_option("--method", opt_args.method)->check(CLI::IsMember({"lp", "brute", "analytic"}));
  ratio_cmd->add_option("--semantics", opt_args.semantics)->check(CLI::IsMember({"partial", "aon"}));
  ratio_cmd->add_option("--kind", ratio_gen.kind)
      ->check(CLI::IsMember({"random-laminar", "random-general", "intro-example"}));
  add_spec_options(ratio_cmd, ratio_gen);
  ratio_cmd->add_option("--branch", ratio_gen.branch);
  ratio_cmd->add_option("--delta", ratio_gen.delta);
  ratio_cmd->add_option("--trials", trials, "seeds seed .. seed+trials-1, run in parallel")
      ->check(CLI::PositiveNumber);

  auto* opt_cmd = app.add_subcommand("opt", "offline optimum");
  opt_cmd->add_option("--instance", instance_path)->required();
  opt_cmd->add_option("--method", opt_args.method)->check(CLI::IsMember({"lp", "brute", "analytic"}));
  opt_cmd->add_option("--semantics", opt_args.semantics)->check(CLI::IsMember({"partial", "aon"}));

  std::string adv_kind = "admission";
  int adv_n = 16;
  int adv_p = 4;
  std::string adv_eps = "1/2";
  std::optional<std::string> adv_delta;
  std::string adv_algo = "adgeneral";
  std::string adv_report;
  bool adv_unit = false;
  auto* adv_cmd = app.add_subcommand("adversary", "play an adaptive lower-bound construction");
  adv_cmd->add_option("--kind", adv_kind)->check(CLI::IsMember({"admission", "aon"}))->capture_default_str();
  adv_cmd->add_option("--n", adv_n);
  adv_cmd->add_option("--p", adv_p);
  adv_cmd->add_option("--eps", adv_eps);
  adv_cmd->add_option("--delta", adv_delta);
  adv_cmd->add_option("--algo", adv_algo)->capture_default_str();
  adv_cmd->add_flag("--unit", adv_unit, "admission: one request of demand 1 per group");
  adv_cmd->add_option("--report", adv_report, "ratio report JSON (stdout when omitted); --out takes the transcript");

  auto* verify_cmd = app.add_subcommand("verify", "validate an instance and print its statistics");
  verify_cmd->add_option("--instance", instance_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      finish_spec(gen);
      emit(serialize_instance(generate(gen, global.seed)), global.out);
      return kExitOk;
    }

    if (run_cmd->parsed()) {
      const Instance inst = load_checked(instance_path);
      const Report report = run_online(inst, strategy_named(algo), session_options(global));
      json doc = json::parse(report_json(report));
      stamp(doc, global);
      emit(doc.dump(1) + "\n", global.out);
      if (trace_path.empty() && !global.out.empty()) trace_path = global.out + ".csv";
      if (!trace_path.empty()) write_text_file(trace_path, trace_csv(report, inst));
      return report.audit_failed() ? kExitAudit : kExitOk;
    }

    if (ratio_cmd->parsed()) {
      const Strategy strategy = strategy_named(algo);
      const SessionOptions opts = session_options(global);
      json doc;
      doc["algo"] = algo;
      doc["method"] = opt_args.method;
      if (!instance_path.empty()) {
        doc["trials"] = json::array({ratio_entry(load_checked(instance_path), strategy, opts, opt_args)});
      } else {
        finish_spec(ratio_gen);
        std::vector<json> results(static_cast<std::size_t>(trials));
        std::vector<std::string> errors(static_cast<std::size_t>(trials));
        std::vector<std::thread> pool;
        for (int t = 0; t < trials; ++t) {
          pool.emplace_back([&, t] {
            const std::uint64_t seed = global.seed + static_cast<std::uint64_t>(t);
            try {
              results[static_cast<std::size_t>(t)] = ratio_entry(generate(ratio_gen, seed), strategy, opts, opt_args);
              results[static_cast<std::size_t>(t)]["seed"] = seed;
            } catch (const std::exception& e) {
              errors[static_cast<std::size_t>(t)] = e.what();
            }
          });
        }
        for (auto& th : pool) th.join();
        for (const std::string& e : errors) {
          if (!e.empty()) throw Error(e);
        }
        doc["trials"] = results;
      }
      double worst = 0;
      bool audits_ok = true;
      for (const json& e : doc["trials"]) {
        worst = e["ratio"].is_string() ? INFINITY : std::max(worst, e["ratio"].get<double>());
        audits_ok = audits_ok && e["audit_failures"].empty();
      }
      doc["max_ratio"] = std::isinf(worst) ? json("inf") : json(worst);
      stamp(doc, global);
      emit(doc.dump(1) + "\n", global.out);
      return audits_ok ? kExitOk : kExitAudit;
    }

    if (opt_cmd->parsed()) {
      const Instance inst = load_checked(instance_path);
      json detail;
      const double value = opt_value(inst, opt_args, detail);
      std::cout.precision(17);
      std::cout << value << '\n';
      if (!global.out.empty()) {
        json doc{{"method", opt_args.method}, {"value", value}, {"detail", detail}};
        stamp(doc, global);
        write_text_file(global.out, doc.dump(1) + "\n");
      }
      return kExitOk;
    }

    if (adv_cmd->parsed()) {
      const Strategy strategy = strategy_named(adv_algo);
      json doc;
      Instance transcript;
      Rational alg;
      Rational opt;
      if (adv_kind == "admission") {
        std::optional<Rational> delta;
        if (adv_delta) delta = money(*adv_delta);
        const AdmissionResult r = run_admission_lb(strategy, adv_n, delta, adv_unit, session_options(global));
        transcript = r.transcript;
        alg = r.alg_revenue;
        opt = r.opt_analytic;
        doc["stop_phase"] = r.stop_phase;
        doc["weighted_sum"] = r.weighted_sum.str();
        doc["p"] = r.p;
        json xs = json::array();
        for (const Rational& x : r.x) xs.push_back(x.str());
        doc["x"] = xs;
        doc["notes"] = r.notes;
      } else {
        const Rational delta = adv_delta ? money(*adv_delta) : Rational(1, 1000);
        const AonResult r = run_aon_lb(strategy, adv_p, money(adv_eps), delta, session_options(global));
        transcript = r.transcript;
        alg = r.alg_revenue;
        opt = r.opt_analytic;
        doc["ell"] = r.ell;
        doc["branching"] = r.branching;
        doc["delta_accepted"] = r.delta_accepted;
        doc["utilization_lemma_holds"] = r.utilization_lemma_holds;
        doc["segment_bound_holds"] = r.segment_bound_holds;
        doc["cells"] = r.cells.size();
        doc["notes"] = r.notes;
      }
      doc["kind"] = adv_kind;
      doc["algo"] = adv_algo;
      doc["alg"] = alg.str();
      doc["opt_analytic"] = opt.str();
      const double ratio = competitive_ratio(opt.to_double(), alg.to_double());
      doc["ratio"] = std::isinf(ratio) ? json("inf") : json(ratio);
      doc["impressions"] = transcript.num_impressions();
      stamp(doc, global);
      if (!global.out.empty()) save_instance(transcript, global.out);
      emit(doc.dump(1) + "\n", adv_report);
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      LoadOptions load;
      load.validate = false;
      const Instance inst = load_instance(instance_path, load);
      const auto problems = validate(inst);
      const InstanceStats stats = instance_stats(inst);
      json doc{{"valid", problems.empty()},
               {"problems", problems},
               {"mode", std::string(to_string(inst.mode()))},
               {"bidders", inst.num_bidders()},
               {"impressions", inst.num_impressions()},
               {"p", stats.p},
               {"eps", stats.eps.str()},
               {"small_bids_ok", stats.small_bids_ok}};
      emit(doc.dump(1) + "\n", global.out);
      return problems.empty() ? kExitOk : kExitValidation;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const OracleLimitExceeded& e) {
    std::cerr << "oracle limit: " << e.what() << '\n';
    return kExitOracle;
  } catch (const InvariantViolation& e) {
    std::cerr << "audit failure: " << e.what() << '\n';
    return kExitAudit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}
