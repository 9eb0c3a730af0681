#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "air/errors.hpp"
#include "air/report.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::uint64_t> parse_primes(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& tok : split_csv(s)) {
    std::size_t used = 0;
    const auto p = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("bad prime '" + tok + "'");
    if (p < 5) throw std::invalid_argument("primes must be >= 5, got " + tok);
    (void)air::FieldDesc::prime(p);
    out.push_back(p);
  }
  if (out.empty()) throw std::invalid_argument("empty prime list");
  return out;
}

int emit(const air::CommandResult& r) {
  std::cout << r.output;
  std::cerr << r.error;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify finite-dimensional associative algebras for the almost inner Rickart property"};
  app.require_subcommand(1);

  air::RunConfig cfg;
  std::string method = "auto", set_op = "union", cond_b = "forall", cube = "cubeset", field_token, primes = "5,7",
              alphas = "2";
  bool json = false;
  std::optional<std::size_t> budget;

  auto* check = app.add_subcommand("check", "Classify one algebra file");
  std::string input;
  check->add_option("file", input, "DSL file")->required();
  check->add_option("--method", method, "auto|bruteforce|criteria")
      ->check(CLI::IsMember({"auto", "bruteforce", "criteria"}));
  check->add_option("--field", field_token, "Q or F<p>, overrides the file's field");
  check->add_flag("--json", json, "JSON report");
  check->add_option("--budget", budget, "enumeration budget (elements)")->check(CLI::PositiveNumber);
  check->add_option("--set-op", set_op, "union|intersection")->check(CLI::IsMember({"union", "intersection"}));
  check->add_option("--cond-b", cond_b, "forall|exists")->check(CLI::IsMember({"forall", "exists"}));
  check->add_option("--cube", cube, "cubeset|idealpower")->check(CLI::IsMember({"cubeset", "idealpower"}));

  auto* tables = app.add_subcommand("tables", "Reproduce the two- and three-dimensional classification tables");
  tables->add_option("--primes", primes, "comma-separated primes for brute force");
  tables->add_option("--alpha", alphas, "comma-separated instantiations of the generic three-dimensional row");
  tables->add_flag("--json", json, "JSON report");
  tables->add_option("--set-op", set_op, "union|intersection")->check(CLI::IsMember({"union", "intersection"}));
  tables->add_option("--cond-b", cond_b, "forall|exists")->check(CLI::IsMember({"forall", "exists"}));
  tables->add_option("--budget", budget, "enumeration budget (elements)")->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle-compare", "Random criterion vs brute-force agreement suites");
  oracle->add_option("--count", cfg.count, "instances per suite and prime");
  oracle->add_option("--primes", primes, "comma-separated primes");
  oracle->add_option("--seed", cfg.seed, "RNG seed");
  oracle->add_flag("--json", json, "JSON report");

  auto* gen = app.add_subcommand("gen", "Emit DSL for a named generator");
  air::GenParams gp;
  std::string kind = "a";
  gen->add_option("generator", gp.generator,
                  "matrix-unit|unital-null|matrix|remark|table|random-nilpotent|random-codim1")
      ->required();
  gen->add_option("--kind", kind, "matrix-unit kind a|b|c|d")->check(CLI::IsMember({"a", "b", "c", "d"}));
  gen->add_option("--k", gp.k, "number of matrix units");
  gen->add_option("--n", gp.n, "size parameter");
  gen->add_option("--name", gp.name, "remark key (A1..C2) or table row name");
  gen->add_option("--field", gp.field, "Q or F<p>");
  gen->add_option("--seed", gp.seed, "RNG seed for random generators");

  CLI11_PARSE(app, argc, argv);

  try {
    if (auto env = air::budget_from_env()) cfg.options.budget = *env;
    if (budget) cfg.options.budget = *budget;
    cfg.format = json ? air::OutputFormat::Json : air::OutputFormat::Text;
    cfg.options.set_op = set_op == "union" ? air::SetOp::Union : air::SetOp::Intersection;
    cfg.options.cond_b = cond_b == "forall" ? air::CondBReading::ForAll : air::CondBReading::Exists;
    cfg.options.cube = cube == "cubeset" ? air::CubeReading::CubeSet : air::CubeReading::IdealPower;

    if (*check) {
      cfg.inputs = {input};
      cfg.method = method == "auto"         ? air::Method::Auto
                   : method == "bruteforce" ? air::Method::BruteForce
                                            : air::Method::Criteria;
      if (!field_token.empty()) cfg.field = air::FieldDesc::parse(field_token);
      return emit(air::cmd_check(cfg));
    }
    if (*tables) {
      cfg.primes = parse_primes(primes);
      cfg.alphas.clear();
      for (const auto& a : split_csv(alphas)) {
        mpq_class q(a);
        q.canonicalize();
        cfg.alphas.push_back(q);
      }
      if (cfg.alphas.empty()) throw std::invalid_argument("empty alpha list");
      return emit(air::cmd_tables(cfg));
    }
    if (*oracle) {
      cfg.primes = parse_primes(primes);
      return emit(air::cmd_oracle_compare(cfg));
    }
    gp.kind = kind.front();
    return emit(air::cmd_gen(gp));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return air::kExitError;
  }
}
