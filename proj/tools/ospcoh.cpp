// ospcoh: audits, cohomology dimension tables, explicit cocycles, self-tests.
//
// exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage or input error

#include "ospcoh/io.hpp"
#include "ospcoh/selftest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ospcoh;

namespace {

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::string table = "printed";
  bool no_repair = false;
  std::string format = "json";
  std::string lambda = "0";
  std::string mu = "0";
  int K = 3;
  int nmax = 4;
  int window = 2;
  std::string grid;
  std::string kind = "h";
  int k = 0;
  std::string suite = "all";
  unsigned threads = 0;
  std::string out;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot open " + cfg.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

/// "halfints:a..b" (cross product of half-integers in [a, b]) or
/// "λ:μ,λ:μ,..." (explicit pairs).
std::vector<std::pair<Rational, Rational>> parse_grid(const std::string& spec) {
  std::vector<std::pair<Rational, Rational>> out;
  const std::string prefix = "halfints:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string range = spec.substr(prefix.size());
    const auto dots = range.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("grid range must look like a..b");
    const Rational lo = Rational::parse(range.substr(0, dots));
    const Rational hi = Rational::parse(range.substr(dots + 2));
    std::vector<Rational> values;
    for (Rational x = Rational((Rational(2) * lo).ceil().get_si(), 2); x <= hi; x += Rational(1, 2)) values.push_back(x);
    for (const auto& l : values)
      for (const auto& m : values) out.emplace_back(l, m);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("grid pair must look like lambda:mu");
    out.emplace_back(Rational::parse(item.substr(0, colon)), Rational::parse(item.substr(colon + 1)));
  }
  if (out.empty()) throw std::invalid_argument("empty grid");
  return out;
}

int cmd_audit(const RunConfig& cfg) {
  StructureTable input = printed_table();
  if (cfg.table == "adopted") input = adopted_table();
  else if (cfg.table != "printed") throw std::invalid_argument("--table must be printed or adopted");

  if (cfg.no_repair) {
    const auto fails = jacobi_failures(input);
    if (cfg.format == "csv") {
      std::string text = "u,v,w,defect\n";
      for (const auto& f : fails)
        text += std::string(name(f.u)) + ',' + name(f.v) + ',' + name(f.w) + ',' + to_string(f.defect) + '\n';
      emit(cfg, text);
    } else {
      json j;
      j["table"] = input.label();
      json arr = json::array();
      for (const auto& f : fails)
        arr.push_back({{"triple", std::string(name(f.u)) + name(f.v) + name(f.w)}, {"defect", to_string(f.defect)}});
      j["jacobi_failures"] = std::move(arr);
      emit(cfg, j.dump(2));
    }
    return fails.empty() ? kPass : kMismatch;
  }

  AuditResult result;
  try {
    result = audit_and_repair(input);
  } catch (const NoConsistentRepair& e) {
    std::cerr << "audit: " << e.what() << '\n';
    return kMismatch;
  }
  const auto rows = audit_action_rows(result.table);
  const bool ok = result.module_compatible && satisfies_jacobi(result.table);
  if (cfg.format == "csv") {
    std::string text = "kind,item,from,to\n";
    for (const auto& c : result.changes) text += "relation," + c.pair + ',' + c.from + ',' + c.to + '\n';
    for (const auto& r : rows) text += std::string("action_row,") + name(r.gen) + "·" + name(r.family) + ",,\"" + r.sample + "\"\n";
    for (const auto& f : result.jacobi_failures_input)
      text += std::string("jacobi_failure_printed,") + name(f.u) + name(f.v) + name(f.w) + ',' + to_string(f.defect) + ",\n";
    emit(cfg, text);
  } else {
    json j = to_json(result, rows);
    if (ok) j["realization"] = to_json(adopted_realization());
    emit(cfg, j.dump(2));
  }
  return ok ? kPass : kMismatch;
}

int cmd_dims(const RunConfig& cfg) {
  std::vector<std::pair<Rational, Rational>> points;
  if (cfg.grid.empty())
    points.emplace_back(Rational::parse(cfg.lambda), Rational::parse(cfg.mu));
  else
    points = parse_grid(cfg.grid);
  ReportOptions opt{cfg.K, cfg.nmax, cfg.window, cfg.threads};
  bool all_match = true;
  std::vector<CohomologyReport> reports;
  for (const auto& [l, m] : points) {
    reports.push_back(compute_report(l, m, opt));
    all_match = all_match && reports.back().match;
  }
  const bool csv = cfg.format == "csv" || (!cfg.grid.empty() && cfg.format != "json");
  if (csv) {
    std::string text = csv_header();
    for (const auto& r : reports) text += to_csv(r);
    emit(cfg, text);
  } else if (reports.size() == 1) {
    emit(cfg, to_json(reports[0]).dump(2));
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    emit(cfg, arr.dump(2));
  }
  return all_match ? kPass : kMismatch;
}

json slots_json(const DerivedCocycle& d) {
  json arr = json::array();
  for (const auto& s : d.slots)
    arr.push_back({{"slot", name(s.slot)},
                   {"derived", to_string(to_operator(s.derived))},
                   {"printed", to_string(to_operator(s.printed))},
                   {"ratio", s.ratio.str()}});
  return arr;
}

json verify_json(const Cochain& f, bool& ok) {
  const bool closed = coboundary(f).is_zero();
  const bool reduced = is_reduced(f);
  const bool nontrivial = closed && !is_coboundary(f).has_value();
  const Sl2Cochain r = restrict_sl2(f);
  const bool sl2_nontrivial = closed && !r.is_zero() && !is_sl2_coboundary(r).has_value();
  ok = closed && reduced && nontrivial && sl2_nontrivial;
  return {{"cocycle", closed}, {"reduced", reduced}, {"nontrivial", nontrivial}, {"restriction_nontrivial", sl2_nontrivial}};
}

int cmd_cocycles(const RunConfig& cfg) {
  if (cfg.k < 0) throw std::invalid_argument("--k must be non-negative");
  json j;
  bool ok = false;
  if (cfg.kind == "h" || cfg.kind == "f" || cfg.kind == "ftilde") {
    DerivedCocycle d = cfg.kind == "h"   ? make_h_lambda(Rational::parse(cfg.lambda), cfg.K)
                       : cfg.kind == "f" ? make_f_k(cfg.k)
                                         : make_ftilde_k(cfg.k);
    j["kind"] = cfg.kind;
    j["module"] = to_json(d.cocycle.module);
    j["slots"] = slots_json(d);
    j["verification"] = verify_json(d.cocycle, ok);
    j["cochain"] = to_json(d.cocycle);
  } else if (cfg.kind == "cup") {
    const GelfandFuchsReport g = gelfand_fuchs_check(cfg.k);
    j["kind"] = "cup";
    j["k"] = cfg.k;
    j["module"] = to_json(g.omega_k.module);
    j["cup_sign"] = name(g.sign);
    json slots = json::object();
    for (const auto& [u, v] : g.omega_k.values) slots[u.str()] = to_string(to_operator(v));
    j["slots"] = std::move(slots);
    json pairs = json::array();
    for (const auto& p : g.pairs)
      pairs.push_back({{"f", p.f}, {"g", p.g}, {"omega", p.omega.str()}, {"value", to_string(to_operator(p.value))}});
    j["gelfand_fuchs"] = {{"pairs", std::move(pairs)}, {"C", g.C.str()}, {"ratio_to_printed", g.ratio_to_printed.str()}};
    j["verification"] = {{"cocycle", g.cocycle}, {"nontrivial", g.nontrivial}, {"restriction_nontrivial", g.sl2_nontrivial}};
    ok = g.cocycle && g.nontrivial && g.sl2_nontrivial;
  } else {
    throw std::invalid_argument("--kind must be h, f, ftilde or cup");
  }
  emit(cfg, j.dump(2));
  return ok ? kPass : kMismatch;
}

int cmd_selftest(const RunConfig& cfg) {
  const auto results = run_suite(cfg.suite);
  json arr = json::array();
  bool ok = true;
  for (const auto& r : results) {
    arr.push_back({{"suite", r.suite}, {"check", r.check}, {"passed", r.passed}, {"detail", r.detail}});
    ok = ok && r.passed;
    if (!r.passed) std::cerr << "FAIL " << r.suite << ": " << r.check << ": " << r.detail << '\n';
  }
  emit(cfg, json{{"suite", cfg.suite}, {"passed", ok}, {"checks", std::move(arr)}}.dump(2));
  return ok ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"osp(1|2) cohomology with coefficients in D_{λ,μ}"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto fmt = CLI::IsMember({"json", "csv"});

  auto* audit = app.add_subcommand("audit", "audit the bracket table and print the repair");
  audit->add_option("--table", cfg.table, "printed or adopted")->check(CLI::IsMember({"printed", "adopted"}));
  audit->add_flag("--no-repair", cfg.no_repair, "only list graded Jacobi failures");
  audit->add_option("--format", cfg.format)->check(fmt);
  audit->add_option("--out", cfg.out);

  auto* dims = app.add_subcommand("dims", "cohomology dimension tables");
  dims->add_option("--lambda", cfg.lambda, "rational, p/q");
  dims->add_option("--mu", cfg.mu, "rational, p/q");
  dims->add_option("--kmax", cfg.K, "truncation order K")->check(CLI::NonNegativeNumber);
  dims->add_option("--nmax", cfg.nmax)->check(CLI::Range(0, 6));
  dims->add_option("--window", cfg.window, "weights j/2 with |j| <= 2*window")->check(CLI::NonNegativeNumber);
  dims->add_option("--grid", cfg.grid, "halfints:a..b or l:m,l:m,...");
  dims->add_option("--format", cfg.format)->check(fmt);
  dims->add_option("--threads", cfg.threads, "0 = hardware concurrency");
  dims->add_option("--out", cfg.out);

  auto* cocycles = app.add_subcommand("cocycles", "re-derive and verify explicit cocycles");
  cocycles->add_option("--kind", cfg.kind)->check(CLI::IsMember({"h", "f", "ftilde", "cup"}));
  cocycles->add_option("--k", cfg.k)->check(CLI::NonNegativeNumber);
  cocycles->add_option("--lambda", cfg.lambda);
  cocycles->add_option("--kmax", cfg.K)->check(CLI::NonNegativeNumber);
  cocycles->add_option("--out", cfg.out);

  auto* selftest = app.add_subcommand("selftest", "run invariant suites");
  selftest->add_option("--suite", cfg.suite)->check(CLI::IsMember(suite_names()));
  selftest->add_option("--out", cfg.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*audit) return cmd_audit(cfg);
    if (*dims) return cmd_dims(cfg);
    if (*cocycles) return cmd_cocycles(cfg);
    if (*selftest) return cmd_selftest(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
