#include "air/report.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include <json.hpp>

#include "air/errors.hpp"

namespace air {

using Json = nlohmann::ordered_json;

std::string verdict_sign(const std::optional<bool>& air) {
  if (!air) return "undecided";
  return *air ? "+" : "-";
}

std::optional<std::size_t> budget_from_env() {
  const char* raw = std::getenv("AIR_BUDGET");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(raw).size() || value == 0) {
    throw std::invalid_argument(std::string("AIR_BUDGET must be a positive integer, got '") + raw + "'");
  }
  return static_cast<std::size_t>(value);
}

namespace {

Json air_value(const std::optional<bool>& air) {
  if (!air) return "undecided";
  return *air;
}

Json options_json(const AirOptions& opt) {
  return Json{{"set_op", to_string(opt.set_op)},
              {"cond_b", to_string(opt.cond_b)},
              {"cube", to_string(opt.cube)},
              {"budget", opt.budget}};
}

std::string condition_text(const std::optional<bool>& c) {
  if (!c) return "undetermined";
  return *c ? "pass" : "fail";
}

std::string json_scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

// Text rendering of a check report, field by field, so that text and JSON
// carry the same content.
std::string render_check_text(const Json& j) {
  std::ostringstream os;
  os << "name: " << j["name"].get<std::string>() << "\n";
  os << "field: " << j["field"].get<std::string>() << "\n";
  os << "dim: " << j["dim"].get<std::size_t>() << "\n";
  os << "air: " << json_scalar_text(j["air"]) << "\n";
  os << "method: " << j["method"].get<std::string>() << "\n";
  if (!j["conditions"].empty()) {
    os << "conditions:";
    for (const auto& [id, v] : j["conditions"].items()) os << " " << id << "=" << v.get<std::string>();
    os << "\n";
  }
  os << "witnesses: " << j["witnesses_total"].get<std::size_t>();
  if (j["witnesses_truncated"].get<bool>()) os << " (first " << j["witnesses"].size() << " shown)";
  os << "\n";
  for (const auto& w : j["witnesses"]) {
    os << "  " << w["x"].get<std::string>() << " -> " << w["e"].get<std::string>() << "\n";
  }
  os << "counterexample: " << json_scalar_text(j["counterexample"]) << "\n";
  if (!j["condition_b"].is_null()) {
    const auto& b = j["condition_b"];
    os << "condition B (" << b["reading"].get<std::string>() << "): " << (b["holds"].get<bool>() ? "holds" : "fails");
    if (!b["violating_pair"].is_null()) {
      os << ", x = " << b["violating_pair"]["x"].get<std::string>()
         << ", e = " << b["violating_pair"]["e"].get<std::string>();
    }
    os << "\n";
  }
  os << "expected: " << json_scalar_text(j["expected_air"]) << "\n";
  os << "match: " << json_scalar_text(j["match"]) << "\n";
  for (const auto& n : j["notes"]) os << "note: " << n.get<std::string>() << "\n";
  return os.str();
}

}  // namespace

CommandResult check_text(const std::string& text, const std::string& origin, const RunConfig& cfg) {
  CommandResult res;
  std::optional<ParsedAlgebra> parsed;
  try {
    parsed.emplace(parse_algebra(text, cfg.field));
  } catch (const ParseError& e) {
    res.exit_code = kExitError;
    res.error = origin + ":" + e.what() + "\n";
    return res;
  } catch (const Error& e) {
    res.exit_code = kExitError;
    res.error = origin + ": " + e.what() + "\n";
    return res;
  }
  const auto& a = parsed->algebra;
  const auto& d = parsed->decomposition;
  if (!d.verified) {
    res.exit_code = kExitError;
    res.error = origin + ": declared decomposition rejected\n";
    for (const auto& f : parsed->report.failures) res.error += "  - " + f + "\n";
    return res;
  }

  AirVerdict v;
  std::optional<ConditionBVerdict> cond_b;
  try {
    v = classify(a, d, cfg.method, cfg.options);
    if (v.method == "bruteforce") cond_b = check_condition_B_bruteforce(a, d, cfg.options);
  } catch (const Error& e) {
    res.exit_code = kExitError;
    res.error = origin + ": " + e.what() + "\n";
    return res;
  }

  Json j;
  j["name"] = parsed->spec.name;
  j["field"] = a.field().token();
  j["dim"] = a.dim();
  j["air"] = air_value(v.is_air);
  j["method"] = v.method;
  Json witnesses = Json::array();
  const auto pairs = v.witness_pairs();
  for (std::size_t i = 0; i < pairs.size() && i < kWitnessCap; ++i) {
    const auto& w = pairs[i];
    witnesses.push_back({{"x", w.x ? format_element(a, *w.x) : w.x_class}, {"e", format_element(a, w.e)}});
  }
  j["witnesses"] = witnesses;
  j["witnesses_total"] = pairs.size();
  j["witnesses_truncated"] = pairs.size() > kWitnessCap;
  j["counterexample"] = v.counterexample ? Json(format_element(a, *v.counterexample)) : Json(nullptr);
  Json conditions = Json::object();
  for (const auto& [id, c] : v.conditions) conditions[id] = condition_text(c);
  j["conditions"] = conditions;
  if (cond_b) {
    Json pair = nullptr;
    if (cond_b->violating_pair) {
      pair = {{"x", format_element(a, cond_b->violating_pair->first)},
              {"e", format_element(a, cond_b->violating_pair->second)}};
    }
    j["condition_b"] = {{"reading", to_string(cfg.options.cond_b)}, {"holds", cond_b->holds}, {"violating_pair", pair}};
  } else {
    j["condition_b"] = nullptr;
  }
  const auto& expected = parsed->spec.expected_air;
  j["expected_air"] = expected ? Json(verdict_sign(expected)) : Json(nullptr);
  if (expected && v.is_air) {
    j["match"] = *expected == *v.is_air;
  } else {
    j["match"] = nullptr;
  }
  j["notes"] = v.notes;
  j["options"] = options_json(cfg.options);

  if (!v.is_air) {
    res.exit_code = kExitUndecided;
  } else if (expected && *expected != *v.is_air) {
    res.exit_code = kExitMismatch;
  } else {
    res.exit_code = kExitOk;
  }
  res.output = cfg.format == OutputFormat::Json ? j.dump(2) + "\n" : render_check_text(j);
  return res;
}

CommandResult cmd_check(const RunConfig& cfg) {
  CommandResult res;
  if (cfg.inputs.size() != 1) {
    res.exit_code = kExitError;
    res.error = "check expects exactly one input file\n";
    return res;
  }
  std::ifstream in(cfg.inputs.front(), std::ios::binary);
  if (!in) {
    res.exit_code = kExitError;
    res.error = cfg.inputs.front() + ": cannot open file\n";
    return res;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return check_text(buf.str(), cfg.inputs.front(), cfg);
}

// ---------------------------------------------------------------------------
// tables

namespace {

struct TableRow {
  AlgebraSpec spec;
  std::optional<mpq_class> alpha;  // generic A3_2 row
};

// alpha = +-1 mod p (or undefined there) turns the generic row into another algebra.
bool alpha_degenerates(const mpq_class& alpha, const FieldDesc& f) {
  if (alpha.get_den() % static_cast<unsigned long>(f.modulus()) == 0) return true;
  const Scalar s = Scalar::from_rational(f, alpha);
  return s.is_one() || (-s).is_one();
}

}  // namespace

CommandResult cmd_tables(const RunConfig& cfg) {
  CommandResult res;
  std::vector<TableRow> rows;
  try {
    const mpq_class first = cfg.alphas.empty() ? mpq_class(2) : cfg.alphas.front();
    for (auto& s : builtin_table1()) rows.push_back({std::move(s), std::nullopt});
    auto t2 = builtin_table2(first);
    for (std::size_t i = 0; i < t2.size(); ++i) {
      rows.push_back({t2[i], i == 1 ? std::optional<mpq_class>(first) : std::nullopt});
    }
    for (std::size_t i = 1; i < cfg.alphas.size(); ++i) {
      rows.push_back({builtin_table2(cfg.alphas[i])[1], cfg.alphas[i]});
    }
  } catch (const std::exception& e) {
    res.exit_code = kExitError;
    res.error = std::string("tables: ") + e.what() + "\n";
    return res;
  }

  Json report;
  report["options"] = options_json(cfg.options);
  report["primes"] = cfg.primes;
  Json jrows = Json::array();
  std::size_t matched = 0;
  std::ostringstream text;
  text << std::left << std::setw(18) << "row" << std::setw(5) << "exp" << std::setw(22) << "Q (criteria)";
  for (auto p : cfg.primes) text << std::setw(6) << ("F" + std::to_string(p));
  text << "status\n";

  for (const auto& row : rows) {
    Json jr;
    const bool expected = row.spec.expected_air.value_or(false);
    bool ok = true;
    jr["name"] = row.spec.name;
    jr["expected"] = verdict_sign(row.spec.expected_air);
    std::string q_cell;
    try {
      const auto pa = instantiate(row.spec);
      const auto v = classify(pa.algebra, pa.decomposition, Method::Criteria, cfg.options);
      jr["criteria"] = {{"air", air_value(v.is_air)}, {"method", v.method}};
      ok = ok && v.is_air && *v.is_air == expected;
      q_cell = v.is_air ? verdict_sign(v.is_air) + " " + v.method : "undecided";
    } catch (const std::exception& e) {
      jr["criteria"] = {{"error", e.what()}};
      ok = false;
      q_cell = "error";
    }
    Json brute = Json::object();
    std::vector<std::string> cells;
    for (auto p : cfg.primes) {
      const std::string key = "F" + std::to_string(p);
      try {
        const FieldDesc f = FieldDesc::prime(p);
        if (row.alpha && alpha_degenerates(*row.alpha, f)) {
          brute[key] = {{"air", nullptr}, {"skipped", "alpha is +-1 or undefined mod p"}};
          cells.push_back("n/a");
          continue;
        }
        const auto pa = instantiate(row.spec, f);
        AirOptions opt = cfg.options;
        const auto v = classify(pa.algebra, pa.decomposition, Method::BruteForce, opt);
        brute[key] = {{"air", air_value(v.is_air)},
                      {"counterexample",
                       v.counterexample ? Json(format_element(pa.algebra, *v.counterexample)) : Json(nullptr)}};
        ok = ok && v.is_air && *v.is_air == expected;
        cells.push_back(verdict_sign(v.is_air));
      } catch (const std::exception& e) {
        brute[key] = {{"error", e.what()}};
        ok = false;
        cells.push_back("error");
      }
    }
    jr["bruteforce"] = brute;
    jr["match"] = ok;
    if (ok) ++matched;
    jrows.push_back(jr);

    text << std::left << std::setw(18) << row.spec.name << std::setw(5) << verdict_sign(row.spec.expected_air)
         << std::setw(22) << q_cell;
    for (const auto& c : cells) text << std::setw(6) << c;
    text << (ok ? "ok" : "MISMATCH") << "\n";
  }
  report["rows"] = jrows;
  report["matched"] = matched;
  report["total"] = rows.size();
  text << matched << "/" << rows.size() << " rows match\n";

  if (matched == rows.size()) {
    res.exit_code = kExitOk;
  } else {
    const bool flags = cfg.options.set_op != SetOp::Union;
    res.exit_code = flags ? kExitDivergence : kExitMismatch;
    if (flags) text << "divergence induced by --set-op " << to_string(cfg.options.set_op) << "\n";
  }
  res.output = cfg.format == OutputFormat::Json ? report.dump(2) + "\n" : text.str();
  return res;
}

// ---------------------------------------------------------------------------
// oracle-compare

CommandResult cmd_oracle_compare(const RunConfig& cfg) {
  CommandResult res;
  std::mt19937_64 rng(cfg.seed);
  Json report;
  report["seed"] = cfg.seed;
  report["count"] = cfg.count;
  Json suites = Json::array();
  std::ostringstream text;
  bool all_agree = true;

  for (auto p : cfg.primes) {
    FieldDesc f = FieldDesc::rationals();
    try {
      f = FieldDesc::prime(p);
    } catch (const Error& e) {
      res.exit_code = kExitError;
      res.error = std::string("oracle-compare: ") + e.what() + "\n";
      return res;
    }
    // Nilpotent suite: criterion vs exhaustive Condition (A).
    {
      std::map<std::string, std::size_t> matrix;
      Json disagreements = Json::array();
      std::size_t agree = 0;
      for (std::size_t i = 0; i < cfg.count; ++i) {
        const auto spec = random_nilpotent(f, 3, rng);
        const auto pa = instantiate(spec);
        const bool crit = criterion_nilpotent_air(pa.algebra);
        const bool brute = *check_condition_A_bruteforce(pa.algebra, pa.decomposition, cfg.options).is_air;
        ++matrix[std::string(crit ? "criterion+" : "criterion-") + (brute ? "/brute+" : "/brute-")];
        if (crit == brute) {
          ++agree;
        } else {
          disagreements.push_back(serialize(spec));
        }
      }
      all_agree = all_agree && agree == cfg.count;
      suites.push_back({{"suite", "nilpotent"}, {"field", f.token()}, {"instances", cfg.count},
                        {"agree", agree}, {"matrix", matrix}, {"disagreements", disagreements}});
      text << "nilpotent " << f.token() << ": " << agree << "/" << cfg.count << " agree";
      for (const auto& [k, n] : matrix) text << "  " << k << "=" << n;
      text << "\n";
    }
    // Structured codim-1 suite: every instance satisfies the conditions and
    // must be brute-force AIR.
    {
      std::map<std::string, std::size_t> matrix;
      Json disagreements = Json::array();
      std::size_t agree = 0;
      std::uniform_int_distribution<std::size_t> ndim(1, 3);
      for (std::size_t i = 0; i < cfg.count; ++i) {
        const auto spec = random_codim1(f, ndim(rng), rng);
        const auto pa = instantiate(spec);
        const auto crit = criterion_codim1(pa.algebra, pa.decomposition, cfg.options);
        const bool brute = *check_condition_A_bruteforce(pa.algebra, pa.decomposition, cfg.options).is_air;
        const std::string ck = crit.outcome == CriterionOutcome::Air      ? "criterion+"
                               : crit.outcome == CriterionOutcome::NotAir ? "criterion-"
                                                                          : "criterion?";
        ++matrix[ck + (brute ? "/brute+" : "/brute-")];
        if (crit.outcome == CriterionOutcome::Air && brute) {
          ++agree;
        } else {
          disagreements.push_back(serialize(spec));
        }
      }
      all_agree = all_agree && agree == cfg.count;
      suites.push_back({{"suite", "codim1-structured"}, {"field", f.token()}, {"instances", cfg.count},
                        {"agree", agree}, {"matrix", matrix}, {"disagreements", disagreements}});
      text << "codim1-structured " << f.token() << ": " << agree << "/" << cfg.count << " agree";
      for (const auto& [k, n] : matrix) text << "  " << k << "=" << n;
      text << "\n";
    }
  }
  report["suites"] = suites;
  for (const auto& s : suites) {
    for (const auto& d : s["disagreements"]) text << "disagreement (" << s["suite"].get<std::string>() << "):\n" << d.get<std::string>();
  }
  res.exit_code = all_agree ? kExitOk : kExitMismatch;
  res.output = cfg.format == OutputFormat::Json ? report.dump(2) + "\n" : text.str();
  return res;
}

// ---------------------------------------------------------------------------
// gen

CommandResult cmd_gen(const GenParams& params) {
  CommandResult res;
  try {
    AlgebraSpec spec;
    const std::string& g = params.generator;
    if (g == "matrix-unit") {
      spec = example_matrix_unit(params.kind, params.k, params.field);
    } else if (g == "unital-null") {
      spec = example_unital_null(params.n, params.field);
    } else if (g == "matrix") {
      spec = matrix_algebra(params.n, params.field);
    } else if (g == "remark") {
      spec = remark_algebra(params.name);
      if (params.field != "Q") {
        (void)FieldDesc::parse(params.field);
        spec.field = params.field;
      }
    } else if (g == "table") {
      bool found = false;
      for (auto& row : builtin_tables()) {
        if (row.name == params.name) {
          spec = std::move(row);
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("no table row named '" + params.name + "'");
    } else if (g == "random-nilpotent" || g == "random-codim1") {
      const FieldDesc f = FieldDesc::parse(params.field);
      std::mt19937_64 rng(params.seed);
      spec = g == "random-nilpotent" ? random_nilpotent(f, std::max<std::size_t>(params.n, 1), rng)
                                     : random_codim1(f, std::max<std::size_t>(params.n, 1), rng);
    } else {
      res.exit_code = kExitError;
      res.error = "unknown generator '" + g +
                  "' (expected matrix-unit, unital-null, matrix, remark, table, random-nilpotent, random-codim1)\n";
      return res;
    }
    res.output = serialize(spec);
  } catch (const std::exception& e) {
    res.exit_code = kExitError;
    res.error = std::string("gen: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace air
