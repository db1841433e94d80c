#include "cli/commands.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/acceptance.hpp"
#include "cli/json_io.hpp"
#include "linfproj/float_oracle.hpp"

namespace linfproj::cli {
namespace {

struct GlobalFlags {
  bool json = false;
  bool timing = false;
  std::size_t budget_ambient = LpBudget{}.max_ambient;
  std::size_t budget_dim = LpBudget{}.max_dim;
  std::uint64_t seed = 0;

  [[nodiscard]] LpBudget budget() const { return {budget_ambient, budget_dim}; }
};

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "p/q", "p" or a terminating decimal such as "2.75" (converted exactly).
Rat parse_number(const std::string& text) {
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) return Rat::parse(text);
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac = text.size() - dot - 1;
    if (frac == 0 || text.find('/') != std::string::npos) throw ArithmeticError("bad decimal");
    Rat scale = pow(Rat(10), static_cast<unsigned>(frac));
    return Rat::parse(digits) / scale;
  } catch (const ArithmeticError&) {
    throw InputError("malformed number '" + text + "'");
  }
}

// Accumulates one RunReport and writes it.
class Reporter {
 public:
  Reporter(std::string command, const GlobalFlags& flags, std::ostream& out)
      : command_(std::move(command)), flags_(flags), out_(out),
        start_(std::chrono::steady_clock::now()) {}

  void add_input(const std::string& part) { digest_input_ += part + '\x1f'; }

  int emit(const Json& outputs, const std::string& status, int code) {
    Json report{{"command", command_},
                {"inputs_digest", sha256_hex(digest_input_)},
                {"outputs", outputs},
                {"status", status}};
    if (flags_.timing) {
      report["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start_)
                                   .count();
    }
    out_ << dump(report);
    return code;
  }

 private:
  std::string command_;
  const GlobalFlags& flags_;
  std::ostream& out_;
  std::string digest_input_;
  std::chrono::steady_clock::time_point start_;
};

int cmd_minproj(const GlobalFlags& g, const std::string& path, bool oracle, double tol,
                std::ostream& out) {
  Reporter rep("minproj", g, out);
  const std::string text = read_file(path);
  rep.add_input(text);
  rep.add_input(oracle ? "oracle:" + std::to_string(tol) : "exact");
  const Subspace s = parse_subspace_document(text);
  if (!g.budget().admits(s)) {
    return rep.emit(Json{{"error", "subspace exceeds the LP budget"}}, "inconclusive",
                    kBudgetExceeded);
  }
  const ProjectionConstantResult res = projection_constant(s);
  Json outputs = to_json(res);
  std::string status = "ok";
  if (oracle) {
    OracleOptions oo;
    oo.tol = tol;
    oo.seed = g.seed;
    const OracleResult o = float_oracle(s, oo);
    const bool agrees = std::abs(o.estimate - res.lambda.to_double()) <= tol;
    outputs["oracle"] = Json{{"estimate", o.estimate},
                             {"tol", tol},
                             {"agrees", agrees},
                             {"converged", o.converged}};
    if (!agrees || !o.converged) status = "inconclusive";
  }
  return rep.emit(outputs, status, kOk);
}

int cmd_zerosum(const GlobalFlags& g, const std::string& path, std::size_t copies,
                std::ostream& out) {
  Reporter rep("zerosum", g, out);
  const std::string text = read_file(path);
  rep.add_input(text);
  rep.add_input(std::to_string(copies));
  if (copies < 2 || copies > kMaxSymmetrizeCopies) {
    throw InvalidArgument("--copies must lie in [2, 6]");
  }
  const Subspace e = parse_subspace_document(text);
  const MultiplicationReport r = verify_multiplication_law(e, copies, g.budget());
  if (r.inconclusive) return rep.emit(to_json(r), "inconclusive", kBudgetExceeded);
  if (!r.equal) return rep.emit(to_json(r), "error", kSolverIntegrity);
  return rep.emit(to_json(r), "ok", kOk);
}

int cmd_plan(const GlobalFlags& g, const std::string& lambda_text,
             const std::optional<std::string>& demo, std::size_t steps,
             const std::optional<std::size_t>& copies, bool csv, std::ostream& out) {
  Reporter rep("plan", g, out);
  rep.add_input(lambda_text);
  const Rat lambda = parse_number(lambda_text);

  AmplificationPlan plan;
  if (copies) {
    if (*copies < 2) throw InvalidArgument("--copies must be at least 2");
    if (lambda <= Rat(1)) throw InvalidArgument("target constant must exceed 1");
    const auto m = static_cast<unsigned>(steps);
    plan = adhoc_plan(lambda / pow(centring_norm(*copies), m), *copies, m);
    rep.add_input("copies:" + std::to_string(*copies));
  } else {
    plan = plan_parameters(lambda);
  }

  Json outputs = to_json(plan);
  std::optional<ScheduleReport> demo_report;
  if (demo) {
    const std::string text = read_file(*demo);
    rep.add_input(text);
    rep.add_input("steps:" + std::to_string(steps));
    const Subspace e0 = parse_subspace_document(text);
    demo_report = demonstrate_schedule(e0, plan, steps, g.budget());
    outputs["demo"] = to_json(*demo_report);
  }

  if (csv) {
    out << "k,lambda_k,ambient,certified\n";
    for (const auto& e : plan.schedule) {
      std::string certified;
      if (demo_report) {
        if (e.k == 0) certified = demo_report->base_lambda.to_string();
        for (const auto& s : demo_report->steps) {
          if (s.k == e.k && s.certified) certified = s.certified->to_string();
        }
      }
      out << e.k << ',' << e.lambda_k << ',' << e.ambient << ',' << certified << '\n';
    }
  }

  if (demo_report) {
    if (demo_report->truncated) return csv ? kBudgetExceeded : rep.emit(outputs, "inconclusive", kBudgetExceeded);
    for (const auto& s : demo_report->steps) {
      if (!s.equal) return csv ? kSolverIntegrity : rep.emit(outputs, "error", kSolverIntegrity);
    }
  }
  return csv ? kOk : rep.emit(outputs, "ok", kOk);
}

int cmd_bm(const GlobalFlags& g, bool optimize, const std::optional<std::string>& params,
           const std::optional<std::string>& model, std::size_t window, std::ostream& out) {
  Reporter rep("bm", g, out);
  const int modes = (optimize ? 1 : 0) + (params ? 1 : 0) + (model ? 1 : 0);
  if (modes != 1) throw InvalidArgument("choose exactly one of --optimize, --params, --model");

  if (optimize) {
    rep.add_input("optimize");
    const OptimizerResult closed = optimize_closed_form();
    const OptimizerResult numeric = optimize_numeric(0.1, 10.0, 1e-8);
    const BoundComparison cmp = compare_with_prior_bound();
    return rep.emit(Json{{"a_star", closed.a_star},
                         {"g_star", closed.g_star},
                         {"cubic_residual", closed.cubic_residual},
                         {"a_numeric", numeric.a_star},
                         {"g_numeric", numeric.g_star},
                         {"prior_bound", cmp.prior},
                         {"improvement", cmp.improvement}},
                    "ok", kOk);
  }
  if (params) {
    rep.add_input("params:" + *params);
    const Rat a = parse_number(*params);
    if (a.sign() <= 0) throw InvalidArgument("a must be positive");
    return rep.emit(to_json(bm_params(a)), "ok", kOk);
  }

  rep.add_input("model:" + *model + ":" + std::to_string(window));
  const Rat a = parse_number(*model);
  if (a.sign() <= 0) throw InvalidArgument("a must be positive");
  const BMModel m = build_model(a);
  const bool inverse_ok = verify_inverse(m.w, m.w_inv, 256);
  const NormWindow nw = operator_norm_window(m.w, window);
  const NormWindow ni = operator_norm_window(m.w_inv, window);
  const bool stabilized = nw.stabilized && ni.stabilized;
  const bool ok = inverse_ok && stabilized && nw.lower <= m.bound && ni.lower <= m.bound;
  return rep.emit(Json{{"a", rat_to_json(a)},
                       {"K", rat_to_json(m.bound)},
                       {"inverse_ok", inverse_ok},
                       {"W_norm_lower", rat_to_json(nw.lower)},
                       {"Winv_norm_lower", rat_to_json(ni.lower)},
                       {"stabilized", stabilized},
                       {"descriptor", m.w.descriptor()}},
                  ok ? "ok" : "error", ok ? kOk : kSolverIntegrity);
}

int cmd_selftest(const GlobalFlags& g, const std::string& fault, std::ostream& out) {
  acceptance::Options opt;
  opt.seed = g.seed;
  if (!fault.empty()) {
    if (fault != "centring-norm") throw InvalidArgument("unknown fault '" + fault + "'");
    opt.corrupt_centring_constant = true;
  }
  const auto outcomes = acceptance::run_all(opt);
  bool all = true;
  for (const auto& o : outcomes) all = all && o.passed;
  if (g.json) {
    Json list = Json::array();
    for (const auto& o : outcomes) {
      Json entry{{"id", o.id}, {"name", o.name}, {"passed", o.passed}, {"detail", o.detail}};
      if (g.timing) entry["elapsed_ms"] = o.elapsed_ms;  // timings break byte-identity
      list.push_back(std::move(entry));
    }
    Reporter rep("selftest", g, out);
    rep.add_input("seed:" + std::to_string(g.seed) + ":" + fault);
    return rep.emit(Json{{"criteria", list}, {"passed", all}}, all ? "ok" : "error",
                    all ? kOk : kCheckFailed);
  } else {
    for (const auto& o : outcomes) out << acceptance::format_line(o) << '\n';
    out << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  }
  return all ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact relative projection constants in l_inf^n", "linfproj"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalFlags g;
  app.add_flag("--json", g.json, "Machine-readable selftest summary");
  app.add_flag("--timing", g.timing, "Add wall_time_ms to reports");
  app.add_option("--budget", g.budget_ambient, "Largest ambient dimension for exact LPs")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-dim", g.budget_dim, "Largest subspace dimension for exact LPs")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks");

  std::string input;
  bool oracle = false;
  double tol = 1e-6;
  auto* minproj = app.add_subcommand("minproj", "Projection constant of a subspace");
  minproj->add_option("input", input, "SubspaceDocument JSON")->required();
  minproj->add_flag("--oracle", oracle, "Cross-check with the floating-point oracle");
  minproj->add_option("--tol", tol, "Oracle agreement tolerance")->check(CLI::PositiveNumber);

  std::size_t copies = 0;
  auto* zerosum = app.add_subcommand("zerosum", "Check lambda(Sigma_N(E)) = mu_N lambda(E)");
  zerosum->add_option("input", input, "SubspaceDocument JSON")->required();
  zerosum->add_option("--copies", copies, "N")->required();

  std::string lambda_text;
  std::optional<std::string> demo;
  std::size_t steps = 0;
  std::optional<std::size_t> plan_copies;
  bool csv = false;
  auto* plan = app.add_subcommand("plan", "Amplification parameters for a target constant");
  plan->add_option("--lambda", lambda_text, "Target constant (p/q)")->required();
  plan->add_option("--demo", demo, "Base subspace to certify the schedule on");
  plan->add_option("--steps", steps, "Number of certified amplification steps");
  plan->add_option("--copies", plan_copies, "Fix N instead of choosing it (m = --steps)");
  plan->add_flag("--csv", csv, "Emit the schedule as CSV");

  bool optimize = false;
  std::optional<std::string> params;
  std::optional<std::string> model;
  std::size_t window = 4096;
  auto* bm = app.add_subcommand("bm", "Banach-Mazur decomposition bound");
  bm->add_flag("--optimize", optimize, "Closed-form and numeric minimization of g");
  bm->add_option("--params", params, "Parameter set for a");
  bm->add_option("--model", model, "Exact operator model for a (2a+1 a rational square)");
  bm->add_option("--window", window, "Rows scanned for norm bounds")->check(CLI::Range(2, 1 << 20));

  std::string fault;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--inject-fault", fault, "Negative control (centring-norm)");

  std::vector<std::string> argv_store{"linfproj"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (minproj->parsed()) return cmd_minproj(g, input, oracle, tol, out);
    if (zerosum->parsed()) return cmd_zerosum(g, input, copies, out);
    if (plan->parsed()) return cmd_plan(g, lambda_text, demo, steps, plan_copies, csv, out);
    if (bm->parsed()) return cmd_bm(g, optimize, params, model, window, out);
    if (selftest->parsed()) return cmd_selftest(g, fault, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kBadInput;
  } catch (const DimensionError& e) {
    err << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const ArithmeticError& e) {
    err << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const RankError& e) {
    err << "rank-deficient basis: " << e.what() << '\n';
    return kRankDeficient;
  } catch (const BudgetExceeded& e) {
    err << "LP budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const BaseMismatchError& e) {
    err << "base constant mismatch: " << e.what() << '\n';
    return kBaseMismatch;
  } catch (const NonExactParameter& e) {
    err << "non-exact parameter: " << e.what() << '\n';
    return kNonExactParameter;
  } catch (const Error& e) {
    // SolverIntegrityError, NotSymmetrizedError: internal inconsistencies.
    err << "solver integrity error: " << e.what() << '\n';
    return kSolverIntegrity;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kSolverIntegrity;
  }
  return kBadInput;
}

}  // namespace linfproj::cli
