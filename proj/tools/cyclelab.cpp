// cyclelab: construct, verify, transform, and simulate the artifacts of
// the cycle-freeness testing pipeline. JSON in, JSON out.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyclelab/behrend.hpp"
#include "cyclelab/cwgen.hpp"
#include "cyclelab/ffield.hpp"
#include "cyclelab/gadgets.hpp"
#include "cyclelab/pmf.hpp"
#include "cyclelab/search.hpp"
#include "cyclelab/tester.hpp"
#include "cyclelab/util.hpp"
#include "cyclelab/zvectors.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

using nlohmann::json;

struct RunManifest {
  std::string command;
  std::vector<std::string> parameters;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> input_digests;
  std::map<std::string, std::string> output_digests;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  static std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return cyclelab::sha256_hex(buf.str());
  }

  void emit() const {
    json j{{"command", command},
           {"parameters", parameters},
           {"seed", seed},
           {"inputs", input_digests},
           {"outputs", output_digests},
           {"version", kVersion},
           {"wall_time", std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count()}};
    std::cerr << "manifest " << j.dump() << "\n";
  }
};

RunManifest g_manifest;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open " + path);
  g_manifest.input_digests[path] = RunManifest::digest_file(path);
  json j;
  in >> j;
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("cannot write " + path);
  out << j.dump(2) << "\n";
  out.close();
  g_manifest.output_digests[path] = RunManifest::digest_file(path);
}

struct Globals {
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;  // 0 = library default (env or built-in)
  int threads = 1;
  std::string format = "text";
};

bool json_mode(const Globals& g) { return g.format == "json"; }

/// Prints an ok/witness report and returns the exit code.
int report_check(const Globals& g, const std::optional<json>& witness,
                 const std::string& what) {
  if (json_mode(g)) {
    json j{{"check", what}, {"ok", !witness.has_value()}};
    if (witness) j["witness"] = *witness;
    std::cout << j.dump(2) << "\n";
  } else if (witness) {
    std::cout << what << ": violation, witness " << witness->dump() << "\n";
  } else {
    std::cout << what << ": ok\n";
  }
  return witness ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cyclelab;

  Globals g;
  int exit_code = kExitOk;

  CLI::App app{"cycle-freeness testing toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "PRNG seed for randomized subcommands");
  app.add_option("--budget", g.budget, "enumeration budget (default: CYCLELAB_BUDGET or built-in)");
  app.add_option("--threads", g.threads, "worker threads (results are thread-count independent)");
  app.add_option("--format", g.format, "report format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  g_manifest.parameters.assign(argv + 1, argv + argc);

  // gadget
  auto* gadget = app.add_subcommand("gadget", "matrix gadget families");
  {
    auto* c = gadget->add_subcommand("construct", "build a family");
    auto p = std::make_shared<int>(2);
    auto k = std::make_shared<int>(1);
    auto kind = std::make_shared<std::string>("A");
    auto out = std::make_shared<std::string>();
    c->add_option("--p", *p, "field characteristic")->required();
    c->add_option("--k", *k, "extension degree")->required();
    c->add_option("--kind", *kind, "A or B")->check(CLI::IsMember({"A", "B"}));
    c->add_option("--out", *out, "output file")->required();
    c->callback([=]() {
      MatrixFamily f = *kind == "A" ? construct_A(*p, *k) : construct_B(*p, *k);
      json j;
      to_json(j, f);
      save_json(*out, j);
    });

    auto* v = gadget->add_subcommand("verify", "check the separation property");
    auto in = std::make_shared<std::string>();
    v->add_option("--in", *in, "family file")->required();
    v->callback([=, &g, &exit_code]() {
      MatrixFamily f = load_json(*in).get<MatrixFamily>();
      std::optional<json> witness;
      if (auto w = verify_gadget(f))
        witness = json{{"i", w->i}, {"j", w->j}, {"subset", w->subset}};
      exit_code = report_check(g, witness, "gadget");
    });
  }

  // sunflower
  auto* sunflower = app.add_subcommand("sunflower", "vector collections over Z_D");
  {
    auto* f = sunflower->add_subcommand("find", "search a collection for a 3-sunflower");
    auto in = std::make_shared<std::string>();
    f->add_option("--in", *in, "collection file")->required();
    f->callback([=, &g, &exit_code]() {
      ZVecCollection coll = load_json(*in).get<ZVecCollection>();
      std::optional<json> witness;
      if (auto w = find_sunflower(coll)) witness = json{(*w)[0], (*w)[1], (*w)[2]};
      exit_code = report_check(g, witness, "sunflower-free");
    });

    auto* s = sunflower->add_subcommand("search", "largest predicate-satisfying collection");
    auto D = std::make_shared<int>(3);
    auto n = std::make_shared<int>(1);
    auto k = std::make_shared<int>(3);
    auto pred = std::make_shared<std::string>("sunflower");
    auto out = std::make_shared<std::string>();
    auto checkpoint = std::make_shared<std::string>();
    auto no_prune = std::make_shared<bool>(false);
    s->add_option("--D", *D, "alphabet size")->required();
    s->add_option("--n", *n, "dimension")->required();
    s->add_option("--k", *k, "tuple arity for the two-symbol predicate");
    s->add_option("--predicate", *pred, "sunflower|two-symbol")
        ->check(CLI::IsMember({"sunflower", "two-symbol"}));
    s->add_option("--out", *out, "report output file");
    s->add_option("--checkpoint", *checkpoint, "frontier file written on budget exhaustion");
    s->add_flag("--no-prune", *no_prune, "disable symmetry pruning (oracle mode)");
    s->callback([=, &g]() {
      SearchOptions opts;
      opts.budget = g.budget;
      opts.prune = !*no_prune;
      opts.checkpoint = *checkpoint;
      SearchReport r = *pred == "sunflower" ? max_sunflower_free(*D, *n, opts)
                                            : max_two_symbol(*D, *n, *k, opts);
      json j;
      to_json(j, r);
      if (!out->empty()) save_json(*out, j);
      if (json_mode(g)) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "best size " << r.best.size() << (r.optimal ? " (optimal)" : " (heuristic)")
                  << ", " << r.nodes_explored << " nodes\n";
      }
    });
  }

  // pmf
  auto* pmf = app.add_subcommand("pmf", "perfect-matching-free families");
  {
    auto* t = pmf->add_subcommand("transform", "collection -> local PMF");
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto p = std::make_shared<int>(2);
    auto k = std::make_shared<int>(3);
    auto mode = std::make_shared<std::string>("gadget");
    t->add_option("--in", *in, "collection file")->required();
    t->add_option("--out", *out, "PMF output file")->required();
    t->add_option("--p", *p, "target characteristic");
    t->add_option("--k", *k, "cycle length");
    t->add_option("--mode", *mode, "gadget|diag|balanced")
        ->check(CLI::IsMember({"gadget", "diag", "balanced"}));
    t->callback([=, &g, &exit_code]() {
      ZVecCollection coll = load_json(*in).get<ZVecCollection>();
      LocalPMF P;
      try {
        if (*mode == "gadget") P = sunflower_to_pmf(coll, *p, *k);
        else if (*mode == "diag") P = diag_pmf(coll);
        else P = balanced_to_pmf(coll, *p);
      } catch (const std::invalid_argument& e) {
        exit_code = report_check(g, json{{"error", e.what()}}, "pmf transform");
        return;
      }
      json j;
      to_json(j, P);
      save_json(*out, j);
    });

    auto* v = pmf->add_subcommand("verify", "check the local PMF condition");
    auto vin = std::make_shared<std::string>();
    v->add_option("--in", *vin, "PMF file")->required();
    v->callback([=, &g, &exit_code]() {
      LocalPMF P = load_json(*vin).get<LocalPMF>();
      std::optional<json> witness;
      if (auto w = verify_local_pmf(P, g.budget)) witness = json(*w);
      exit_code = report_check(g, witness, "local-pmf");
    });

    auto* c = pmf->add_subcommand("concat", "componentwise product of two PMFs");
    auto in1 = std::make_shared<std::string>();
    auto in2 = std::make_shared<std::string>();
    auto cout_path = std::make_shared<std::string>();
    c->add_option("--in1", *in1)->required();
    c->add_option("--in2", *in2)->required();
    c->add_option("--out", *cout_path)->required();
    c->callback([=]() {
      LocalPMF P1 = load_json(*in1).get<LocalPMF>();
      LocalPMF P2 = load_json(*in2).get<LocalPMF>();
      json j;
      to_json(j, concat_pmf(P1, P2));
      save_json(*cout_path, j);
    });

    auto* e = pmf->add_subcommand("exponent", "epsilon and query exponent of a PMF");
    auto ein = std::make_shared<std::string>();
    e->add_option("--in", *ein, "PMF file")->required();
    e->callback([=, &g]() {
      LocalPMF P = load_json(*ein).get<LocalPMF>();
      PmfExponent x = pmf_to_exponent(P);
      if (json_mode(g)) {
        std::cout << json{{"eps", {{"num", x.eps_num}, {"den", x.eps_den}}},
                          {"alpha", x.alpha}}
                         .dump(2)
                  << "\n";
      } else {
        std::printf("eps %llu/%llu alpha %.6f\n",
                    static_cast<unsigned long long>(x.eps_num),
                    static_cast<unsigned long long>(x.eps_den), x.alpha);
      }
    });
  }

  // behrend
  auto* behrend = app.add_subcommand("behrend", "equation-free subsets of [m]");
  {
    auto* b = behrend->add_subcommand("build", "digit construction");
    auto r = std::make_shared<int>(2);
    auto m = std::make_shared<std::uint64_t>(100);
    auto out = std::make_shared<std::string>();
    b->add_option("--r", *r, "equation arity")->required();
    b->add_option("--m", *m, "range bound")->required();
    b->add_option("--out", *out, "output file");
    b->callback([=, &g]() {
      BehrendSet s = behrend_construct(*r, *m);
      json j;
      to_json(j, s);
      if (!out->empty()) save_json(*out, j);
      if (json_mode(g)) std::cout << j.dump(2) << "\n";
      else std::cout << "size " << s.elements.size() << " of [" << *m << "]\n";
    });

    auto* v = behrend->add_subcommand("verify", "exhaustive equation check");
    auto in = std::make_shared<std::string>();
    auto modulus = std::make_shared<std::uint64_t>(0);
    v->add_option("--in", *in, "set file")->required();
    v->add_option("--modulus", *modulus, "check the equation mod M instead of over Z");
    v->callback([=, &g, &exit_code]() {
      BehrendSet s = load_json(*in).get<BehrendSet>();
      std::optional<std::uint64_t> mod;
      if (*modulus != 0) mod = *modulus;
      std::optional<json> witness;
      if (auto w = verify_equation_free(s.elements, s.r, mod, g.budget)) witness = json(*w);
      exit_code = report_check(g, witness, "equation-free");
    });
  }

  // cw
  auto* cw = app.add_subcommand("cw", "randomized balanced-vector construction");
  {
    auto add_common = [](CLI::App* sub, const std::shared_ptr<CWConfig>& cfg,
                         const std::shared_ptr<double>& c_k) {
      sub->add_option("--k", cfg->k, "cycle length")->required();
      sub->add_option("--n", cfg->n, "block size")->required();
      sub->add_option("--c", *c_k, "modulus constant override");
      sub->add_option("--trials", cfg->trials, "random trials");
    };

    auto* b = cw->add_subcommand("build", "run the construction");
    auto cfg = std::make_shared<CWConfig>();
    auto c_k = std::make_shared<double>(0.0);
    auto out = std::make_shared<std::string>();
    add_common(b, cfg, c_k);
    b->add_option("--out", *out, "output file");
    b->callback([=, &g]() {
      CWConfig c = *cfg;
      c.seed = g.seed;
      c.budget = g.budget;
      if (*c_k > 0) c.c_k = *c_k;
      CWResult res = cw_construct(c);
      json j;
      to_json(j, res);
      if (!out->empty()) save_json(*out, j);
      if (json_mode(g)) std::cout << j.dump(2) << "\n";
      else
        std::cout << "collection size " << res.collection.size() << ", M " << res.M
                  << ", |B| " << res.B.elements.size() << "\n";
    });

    auto* r = cw->add_subcommand("report", "bucket-size statistics vs expectation");
    auto rcfg = std::make_shared<CWConfig>();
    auto rc_k = std::make_shared<double>(0.0);
    auto rtrials = std::make_shared<int>(200);
    add_common(r, rcfg, rc_k);
    r->add_option("--report-trials", *rtrials, "trials for the statistics");
    r->callback([=, &g]() {
      CWConfig c = *rcfg;
      c.seed = g.seed;
      c.budget = g.budget;
      if (*rc_k > 0) c.c_k = *rc_k;
      CWReport rep = cw_expectation_report(c, *rtrials);
      json j;
      to_json(j, rep);
      if (json_mode(g)) std::cout << j.dump(2) << "\n";
      else
        std::printf("mean |L| %.4f (expected %.4f), mean |L'| %.4f (lower bound %.4f), %llu samples\n",
                    rep.mean_L, rep.expected_L, rep.mean_Lp, rep.lower_bound_Lp,
                    static_cast<unsigned long long>(rep.samples));
    });
  }

  // tester
  auto* tester = app.add_subcommand("tester", "cycle counting and the canonical tester");
  {
    auto in = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();

    auto* count = tester->add_subcommand("count", "ordered cycle count");
    count->add_option("--in", *in, "instance file")->required();
    auto unordered = std::make_shared<bool>(false);
    count->add_flag("--unordered", *unordered, "count unordered cycles (single mode)");
    count->callback([=, &g]() {
      CycleInstance inst = load_json(*in).get<CycleInstance>();
      const std::uint64_t c = *unordered ? count_unordered_cycles(inst, g.budget)
                                         : count_cycles(inst, g.budget);
      if (json_mode(g)) std::cout << json{{"count", c}}.dump() << "\n";
      else std::cout << c << "\n";
    });

    auto* prob = tester->add_subcommand("prob", "exact per-iteration hit probability");
    prob->add_option("--in", *in, "instance file")->required();
    prob->callback([=, &g]() {
      CycleInstance inst = load_json(*in).get<CycleInstance>();
      Rational r = rejection_probability(inst, g.budget);
      if (json_mode(g)) {
        json j;
        to_json(j, r);
        std::cout << j.dump() << "\n";
      } else {
        std::cout << r.num << "/" << r.den << "\n";
      }
    });

    auto* sim = tester->add_subcommand("simulate", "seeded canonical-tester run");
    auto iters = std::make_shared<std::uint64_t>(100000);
    sim->add_option("--in", *in, "instance file")->required();
    sim->add_option("--iterations", *iters, "tester iterations");
    sim->callback([=, &g]() {
      CycleInstance inst = load_json(*in).get<CycleInstance>();
      SimulationResult r = simulate_canonical(inst, *iters, g.seed);
      json j;
      to_json(j, r);
      if (json_mode(g)) std::cout << j.dump(2) << "\n";
      else
        std::printf("%s after %llu trials, rate %.6f\n", r.found ? "hit" : "no hit",
                    static_cast<unsigned long long>(r.trials_used), r.empirical_rate);
    });

    auto* dist = tester->add_subcommand("distance", "exact distance to cycle-freeness");
    dist->add_option("--in", *in, "instance file")->required();
    dist->callback([=, &g]() {
      CycleInstance inst = load_json(*in).get<CycleInstance>();
      DistanceResult r = exact_distance(inst);
      json j;
      to_json(j, r);
      if (json_mode(g)) std::cout << j.dump() << "\n";
      else std::cout << r.changes << " changes, eps " << r.eps.num << "/" << r.eps.den << "\n";
    });

    auto* red = tester->add_subcommand("reduce", "pack k functions into one");
    red->add_option("--in", *in, "instance file")->required();
    red->add_option("--out", *out, "output file")->required();
    red->callback([=]() {
      CycleInstance inst = load_json(*in).get<CycleInstance>();
      json j;
      to_json(j, reduce_to_single(inst));
      save_json(*out, j);
    });

    auto* ext = tester->add_subcommand("extend", "pad the domain with zero-sum tails");
    auto n_target = std::make_shared<int>(0);
    ext->add_option("--in", *in, "instance file")->required();
    ext->add_option("--n-target", *n_target, "target dimension")->required();
    ext->add_option("--out", *out, "output file")->required();
    ext->callback([=]() {
      CycleInstance inst = load_json(*in).get<CycleInstance>();
      json j;
      to_json(j, extend_domain(inst, *n_target));
      save_json(*out, j);
    });

    auto* zero = tester->add_subcommand("zero", "one-sided zero tester on support 1");
    auto eps = std::make_shared<double>(0.1);
    zero->add_option("--in", *in, "instance file")->required();
    zero->add_option("--eps", *eps, "distance parameter");
    zero->callback([=, &g, &exit_code]() {
      CycleInstance inst = load_json(*in).get<CycleInstance>();
      ZeroTestResult r = zero_tester(inst.supports.at(0), inst.p, inst.n, *eps, g.seed);
      if (json_mode(g))
        std::cout << json{{"accept", r.accept}, {"queries", r.queries}}.dump() << "\n";
      else
        std::cout << (r.accept ? "accept" : "reject") << " after " << r.queries
                  << " queries\n";
      if (!r.accept) exit_code = kExitViolation;
    });
  }

  // exponent
  auto* exponent = app.add_subcommand("exponent", "query-complexity exponents");
  {
    auto* a = exponent->add_subcommand("alpha", "capacity-based lower-bound exponent");
    auto k = std::make_shared<int>(3);
    auto p = std::make_shared<double>(2);
    auto d = std::make_shared<double>(0);
    a->add_option("--k", *k)->required();
    a->add_option("--p", *p)->required();
    a->add_option("--d", *d, "capacity lower bound, 1 < d < p")->required();
    a->callback([=, &g]() {
      const double v = lower_bound_exponent(*k, *p, *d);
      if (json_mode(g)) std::cout << json{{"alpha", v}}.dump() << "\n";
      else std::printf("%.6f\n", v);
    });

    auto* gg = exponent->add_subcommand("g", "entropy-capacity exponent g(k)");
    auto gk = std::make_shared<int>(3);
    auto gp = std::make_shared<double>(2);
    gg->add_option("--k", *gk)->required();
    gg->add_option("--p", *gp)->required();
    gg->callback([=, &g]() {
      const double v = g_exponent(*gk, *gp);
      if (json_mode(g)) std::cout << json{{"g", v}}.dump() << "\n";
      else std::printf("%.6f\n", v);
    });
  }

  g_manifest.command = argc > 1 ? argv[1] : "";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const cyclelab::budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  g_manifest.seed = g.seed;
  g_manifest.emit();
  return exit_code;
}
