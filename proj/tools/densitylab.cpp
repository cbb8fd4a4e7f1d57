// densitylab: exact densities, ideals and TAD families for symbolic subsets
// of the naturals.
//
// Exit codes: 0 value computed / all checks passed; 1 a verification suite
// found a violation; 2 the result is unknown under the configured budget;
// 3 usage or parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "densitylab/densities.hpp"
#include "densitylab/dsl.hpp"
#include "densitylab/families.hpp"
#include "densitylab/ideals.hpp"
#include "densitylab/serialize.hpp"
#include "densitylab/verify.hpp"

namespace {

using namespace densitylab;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

struct GlobalOptions {
  std::string format = "text";
  unsigned long budget_cap = 1'000'000;

  bool json() const { return format == "json"; }
  Budget budget() const {
    Budget b;
    b.element_cap = budget_cap;
    return b;
  }
};

// Expression arguments starting with '@' name a file holding the expression.
std::string load_expr_arg(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw DomainError("cannot open expression file " + arg.substr(1));
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

IdealOracle parse_ideal_spec(const std::string& spec) {
  if (spec == "fin") return IdealOracle::fin();
  if (spec == "density-zero") return IdealOracle::density_zero();
  if (spec == "piece-finite") return IdealOracle::piece_finite();
  if (spec == "summable" || spec == "summable:harmonic") return IdealOracle::summable();
  const std::string pow_prefix = "summable:pow:";
  if (spec.rfind(pow_prefix, 0) == 0) {
    Rat p = parse_rat(spec.substr(pow_prefix.size()));
    return IdealOracle::summable(SummableWeight::power_law(
        to_ulong_checked(p.get_num(), "power-law numerator"),
        to_ulong_checked(p.get_den(), "power-law denominator")));
  }
  throw DomainError("unknown ideal '" + spec +
                    "' (expected fin, density-zero, summable[:harmonic|:pow:U/V], piece-finite)");
}

std::vector<Branch> parse_branch_list(const std::string& inline_list,
                                      const std::string& file_path) {
  std::vector<Branch> branches;
  auto add_token = [&branches](const std::string& token) {
    if (!token.empty()) branches.push_back(Branch::parse(token));
  };
  if (!inline_list.empty()) {
    std::string token;
    std::istringstream in(inline_list);
    while (std::getline(in, token, ';')) add_token(token);
  }
  if (!file_path.empty()) {
    std::ifstream in(file_path);
    if (!in) throw DomainError("cannot open branches file " + file_path);
    std::string token;
    while (in >> token) add_token(token);
  }
  return branches;
}

// Two-column assignment file: "head|cycle p/2^q" per line.
std::pair<std::vector<Branch>, std::vector<Rat>> parse_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open values file " + path);
  std::vector<Branch> branches;
  std::vector<Rat> values;
  std::string branch_text, value_text;
  while (in >> branch_text >> value_text) {
    branches.push_back(Branch::parse(branch_text));
    values.push_back(parse_rat(value_text));
  }
  return {std::move(branches), std::move(values)};
}

int emit_report(const Report& report, const GlobalOptions& global) {
  if (global.json()) {
    std::cout << to_json(report).dump(2) << "\n";
  } else {
    std::cout << report.text();
  }
  return report.ok() ? kExitOk : kExitViolation;
}

int run_eval(const GlobalOptions& global, const std::string& density_kind,
             const std::string& ideal_spec, const std::string& expr_text, std::uint64_t terms,
             unsigned long horizon, unsigned long window_cap) {
  SetExpr e = parse_expr(load_expr_arg(expr_text));
  DensityValue value = DensityValue::enclosure(0, 1);
  if (density_kind == "two-valued") {
    value = eval_two_valued(parse_ideal_spec(ideal_spec), e, global.budget());
  } else if (density_kind == "omega") {
    value = eval_omega_partition(parse_ideal_spec(ideal_spec), Partition::dyadic(), e, terms,
                                 global.budget());
  } else {
    ClassicalKind kind;
    if (density_kind == "asymptotic") {
      kind = ClassicalKind::Asymptotic;
    } else if (density_kind == "lower-asymptotic") {
      kind = ClassicalKind::LowerAsymptotic;
    } else if (density_kind == "logarithmic") {
      kind = ClassicalKind::Logarithmic;
    } else if (density_kind == "banach") {
      kind = ClassicalKind::Banach;
    } else {
      throw DomainError("unknown density kind '" + density_kind + "'");
    }
    ClassicalOptions options;
    options.horizon = horizon;
    options.banach_window_cap = window_cap;
    options.budget = global.budget();
    value = eval_classical(kind, e, options);
  }
  if (global.json()) {
    Json j{{"expression", print_expr(e)}, {"density", density_kind}, {"value", to_json(value)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << density_value_text(value, true) << "\n";
  }
  const bool unknown_ish =
      value.kind == DensityValueKind::Enclosure && value.lo == 0 && value.hi == 1;
  return unknown_ish ? kExitUnknown : kExitOk;
}

int run_ideal(const GlobalOptions& global, const std::string& ideal_spec,
              const std::string& expr_text) {
  SetExpr e = parse_expr(load_expr_arg(expr_text));
  IdealOracle ideal = parse_ideal_spec(ideal_spec);
  Verdict v = ideal_member(ideal, e, global.budget());
  if (global.json()) {
    Json j{{"ideal", ideal.name()}, {"expression", print_expr(e)}};
    j.update(Json{{"verdict", to_json(v)}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << ideal.name() << " : " << print_expr(e) << " : " << verdict_text(v) << "\n";
  }
  return v.decided() ? kExitOk : kExitUnknown;
}

int run_tad_verify(const GlobalOptions& global, const IntervalScheme& scheme,
                   const std::vector<Branch>& branches, std::uint64_t shifts,
                   unsigned long limit, std::uint64_t probe) {
  TadFamily family(scheme, branches);
  Report report;
  report.suite = "tad:" + scheme.text();
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      std::string pair_name = family.branches()[i].text() + " / " + family.branches()[j].text();
      try {
        for (Int k = -Int(shifts); k <= Int(shifts); ++k) {
          verify_tad_pair(family, i, j, k, Int(limit), global.budget());
        }
        CheckRecord rec;
        rec.name = "pair-certified";
        rec.inputs = pair_name;
        rec.expected = "finite intersection for |k| <= " + std::to_string(shifts);
        rec.got = "certified";
        rec.status = CheckRecord::Status::Pass;
        report.add(std::move(rec));
      } catch (const VerificationError& err) {
        CheckRecord rec;
        rec.name = "pair-certified";
        rec.inputs = pair_name;
        rec.expected = "finite intersection";
        rec.got = err.what();
        rec.status = CheckRecord::Status::Fail;
        report.add(std::move(rec));
      }
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    Verdict v = member_positivity(family, i, probe, global.budget());
    CheckRecord rec;
    rec.name = "member-positive";
    rec.inputs = family.branches()[i].text();
    rec.expected = "interval pattern";
    rec.got = verdict_text(v);
    rec.status =
        v.decision == Decision::NotIn ? CheckRecord::Status::Pass : CheckRecord::Status::Fail;
    report.add(std::move(rec));
  }
  return emit_report(report, global);
}

int run_tad_density(const GlobalOptions& global, const IntervalScheme& scheme,
                    std::vector<Branch> branches, std::vector<Rat> values,
                    const std::string& expr_text, std::uint64_t shifts, std::uint64_t members) {
  SetExpr e = parse_expr(load_expr_arg(expr_text));
  TadFamily family(scheme, std::move(branches));
  SupTadEvaluator evaluator =
      values.empty() ? SupTadEvaluator(std::move(family))
                     : SupTadEvaluator(std::move(family), std::move(values));
  SupTadResult result = eval_sup_tad(evaluator, e, shifts, members, global.budget());
  if (global.json()) {
    Json j{{"expression", print_expr(e)}, {"value", to_json(result.value)}};
    if (result.witness) {
      j["witness"] = Json{{"member", evaluator.family().branches()[result.witness->first].text()},
                          {"shift", result.witness->second.get_str()}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << density_value_text(result.value, true);
    if (result.witness) {
      std::cout << "  (member " << evaluator.family().branches()[result.witness->first].text()
                << ", shift " << result.witness->second.get_str() << ")";
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int run_axioms(const GlobalOptions& global, const std::string& evaluator_kind,
               const std::string& ideal_spec, std::uint64_t terms, std::size_t pairs,
               std::uint64_t translation_shifts) {
  std::vector<SetExpr> corpus = default_corpus();
  DensityEvaluatorRef ref =
      evaluator_kind == "two-valued"
          ? two_valued_ref(parse_ideal_spec(ideal_spec), global.budget())
          : omega_ref(parse_ideal_spec(ideal_spec), Partition::dyadic(), terms, global.budget());
  Report axioms = check_axioms(ref, corpus, pairs);
  int code = emit_report(axioms, global);
  if (translation_shifts > 0) {
    Report translation = check_translation(ref, corpus, translation_shifts);
    int tcode = emit_report(translation, global);
    code = std::max(code, tcode);
  }
  return code;
}

int run_witness(const GlobalOptions& global, const std::string& witness_kind,
                const std::string& value_text, bool check) {
  Rat r = parse_rat(value_text);
  SetExpr witness = witness_kind == "omega" ? richness_witness_omega(Partition::dyadic(), r)
                                            : density_witness_asymptotic(r);
  bool verified = true;
  DensityValue value = DensityValue::enclosure(0, 1);
  if (check) {
    if (witness_kind == "omega") {
      const auto q = dyadic_exponent(r);
      value = eval_omega_partition(IdealOracle::piece_finite(), Partition::dyadic(), witness,
                                   std::max<std::uint64_t>(*q, 16), global.budget());
    } else {
      value = eval_classical(ClassicalKind::Asymptotic, witness);
    }
    verified = value.is_exact() && value.lo == r;
  }
  if (global.json()) {
    Json j{{"witness", print_expr(witness)}, {"target", rat_str(r)}};
    if (check) {
      j["value"] = to_json(value);
      j["verified"] = verified;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << print_expr(witness) << "\n";
    if (check) {
      std::cout << "evaluates to " << density_value_text(value)
                << (verified ? " == " : " != ") << rat_str(r) << "\n";
    }
  }
  return verified ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"densitylab: exact densities and ideals over symbolic subsets of the naturals"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--budget", global.budget_cap, "Enumeration fallback cap")
      ->envname("DENSITYLAB_BUDGET")
      ->capture_default_str();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a density of an expression");
  std::string density_kind = "asymptotic";
  std::string ideal_spec = "piece-finite";
  std::string expr_text;
  std::uint64_t terms = 16;
  unsigned long horizon = 100000;
  unsigned long window_cap = 1u << 14;
  eval_cmd->add_option("--density", density_kind,
                       "asymptotic|lower-asymptotic|logarithmic|banach|two-valued|omega")
      ->capture_default_str();
  eval_cmd->add_option("--ideal", ideal_spec, "Ideal for two-valued/omega densities")
      ->capture_default_str();
  eval_cmd->add_option("--terms", terms, "Evaluated partition components (omega)")
      ->capture_default_str();
  eval_cmd->add_option("--horizon", horizon, "Estimation horizon")->capture_default_str();
  eval_cmd->add_option("--window", window_cap, "Banach window cap")->capture_default_str();
  eval_cmd->add_option("expr", expr_text, "Set expression")->required();

  // ideal
  auto* ideal_cmd = app.add_subcommand("ideal", "Decide ideal membership with a certificate");
  std::string ideal_spec2 = "fin";
  std::string ideal_expr;
  ideal_cmd->add_option("--ideal", ideal_spec2, "fin|density-zero|summable[:...]|piece-finite")
      ->capture_default_str();
  ideal_cmd->add_option("expr", ideal_expr, "Set expression")->required();

  // tad
  auto* tad_cmd = app.add_subcommand("tad", "TAD family certificates and densities");
  tad_cmd->require_subcommand(1);
  std::string scheme_text = "geo(2,1)";
  std::string branches_inline;
  std::string branches_file;
  std::string values_file;
  std::uint64_t tad_shifts = 16;
  unsigned long tad_limit = 1'000'000;
  std::uint64_t tad_probe = 10;
  std::uint64_t tad_members = 64;
  std::string tad_expr;
  auto* tad_verify_cmd =
      tad_cmd->add_subcommand("verify", "Certify all pairs at all probed shifts");
  auto* tad_density_cmd = tad_cmd->add_subcommand("density", "Evaluate the sup-TAD density");
  for (auto* cmd : {tad_verify_cmd, tad_density_cmd}) {
    cmd->add_option("--scheme", scheme_text, "Interval scheme")->capture_default_str();
    cmd->add_option("--branches", branches_inline, "Semicolon-separated branch literals");
    cmd->add_option("--branches-file", branches_file, "File of branch literals");
  }
  tad_verify_cmd->add_option("--shifts", tad_shifts, "Max |k|")->capture_default_str();
  tad_verify_cmd->add_option("--limit", tad_limit, "Enumeration confirmation limit")
      ->capture_default_str();
  tad_verify_cmd->add_option("--probe", tad_probe, "Positivity pattern probe depth")
      ->capture_default_str();
  tad_density_cmd->add_option("--values-file", values_file,
                              "Two-column assignment file: branch dyadic");
  tad_density_cmd->add_option("--shifts", tad_shifts, "Shift search budget")
      ->capture_default_str();
  tad_density_cmd->add_option("--members", tad_members, "Member search budget")
      ->capture_default_str();
  tad_density_cmd->add_option("expr", tad_expr, "Set expression")->required();

  // axioms
  auto* axioms_cmd = app.add_subcommand("axioms", "Run the axiom suite over the default corpus");
  std::string axioms_evaluator = "omega";
  std::string axioms_ideal = "piece-finite";
  std::size_t axioms_pairs = 400;
  std::uint64_t axioms_translation = 0;
  std::uint64_t axioms_terms = 12;
  axioms_cmd->add_option("--evaluator", axioms_evaluator, "omega|two-valued")
      ->capture_default_str();
  axioms_cmd->add_option("--ideal", axioms_ideal, "Ideal")->capture_default_str();
  axioms_cmd->add_option("--pairs", axioms_pairs, "Pair budget")->capture_default_str();
  axioms_cmd->add_option("--terms", axioms_terms, "Omega components")->capture_default_str();
  axioms_cmd->add_option("--translation", axioms_translation,
                         "Also run the translation suite up to this shift");

  // gallery
  auto* gallery_cmd = app.add_subcommand("gallery", "In-proof computation galleries");
  gallery_cmd->require_subcommand(1);
  auto* gallery_block = gallery_cmd->add_subcommand("block", "Alternating block set");
  std::uint64_t block_shifts = 8;
  std::uint64_t block_terms = 20;
  gallery_block->add_option("--shifts", block_shifts, "Max k")->capture_default_str();
  gallery_block->add_option("--terms", block_terms, "Ratio identity terms")
      ->capture_default_str();
  auto* gallery_gap = gallery_cmd->add_subcommand("gap", "Boundary-value gap set");
  unsigned long gap_limit = 1'000'000;
  std::uint64_t gap_shifts = 100;
  std::string gap_scheme = "tri";
  gallery_gap->add_option("--n", gap_limit, "Enumeration limit")->capture_default_str();
  gallery_gap->add_option("--shifts", gap_shifts, "Max |l|")->capture_default_str();
  gallery_gap->add_option("--scheme", gap_scheme, "Boundary scheme")->capture_default_str();

  // witness
  auto* witness_cmd = app.add_subcommand("witness", "Construct richness witnesses");
  witness_cmd->require_subcommand(1);
  auto* witness_omega = witness_cmd->add_subcommand("omega", "Partition-density witness");
  auto* witness_asym = witness_cmd->add_subcommand("asymptotic", "Residue-class witness");
  std::string witness_value;
  bool witness_check = false;
  for (auto* cmd : {witness_omega, witness_asym}) {
    cmd->add_option("value", witness_value, "Target rational")->required();
    cmd->add_flag("--check", witness_check, "Evaluate the witness and compare");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval_cmd) {
      return run_eval(global, density_kind, ideal_spec, expr_text, terms, horizon, window_cap);
    }
    if (*ideal_cmd) return run_ideal(global, ideal_spec2, ideal_expr);
    if (*tad_cmd) {
      IntervalScheme scheme = parse_scheme(scheme_text);
      std::vector<Branch> branches = parse_branch_list(branches_inline, branches_file);
      std::vector<Rat> values;
      if (*tad_density_cmd && !values_file.empty()) {
        auto [file_branches, file_values] = parse_values_file(values_file);
        branches = std::move(file_branches);
        values = std::move(file_values);
      }
      if (branches.empty()) throw DomainError("no branches given");
      if (*tad_verify_cmd) {
        return run_tad_verify(global, scheme, branches, tad_shifts, tad_limit, tad_probe);
      }
      return run_tad_density(global, scheme, std::move(branches), std::move(values), tad_expr,
                             tad_shifts, tad_members);
    }
    if (*axioms_cmd) {
      return run_axioms(global, axioms_evaluator, axioms_ideal, axioms_terms, axioms_pairs,
                        axioms_translation);
    }
    if (*gallery_cmd) {
      if (*gallery_block) {
        return emit_report(gallery_block_set(block_terms, block_shifts), global);
      }
      return emit_report(
          gallery_gap_set_for(parse_scheme(gap_scheme), Int(gap_limit), gap_shifts), global);
    }
    if (*witness_cmd) {
      return run_witness(global, *witness_omega ? "omega" : "asymptotic", witness_value,
                         witness_check);
    }
  } catch (const ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceededError& err) {
    std::cerr << "budget exceeded: " << err.what() << "\n";
    return kExitUnknown;
  } catch (const VerificationError& err) {
    std::cerr << "verification failure: " << err.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
