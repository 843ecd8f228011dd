// prrlab: verify conjectures over ranges, reproduce the data tables, take
// square roots and scan for primitive prime divisors.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "prrlab/harness.hpp"
#include "prrlab/registry.hpp"
#include "prrlab/residues.hpp"
#include "prrlab/tables.hpp"

namespace {

using namespace prrlab;

int run_verify(const std::string& id, u64 min, u64 max, unsigned workers, const std::string& checkpoint, bool csv,
               std::optional<unsigned> order, std::optional<u64> budget) {
  ConjectureSpec spec = find_conjecture(id);
  if (order) spec = with_franel_order(spec, *order);
  VerifyOptions options;
  options.workers = workers;
  if (!checkpoint.empty()) options.checkpoint = checkpoint;
  if (budget) options.budget.rho_iterations = *budget;
  if (csv) std::cout << csv_header() << '\n';
  options.on_record = [csv](const ScanLine& line) {
    if (csv) {
      std::cout << to_csv(line) << '\n';
    } else {
      std::cout << to_json(line).dump() << '\n';
    }
  };
  ScanReport report = verify_range(spec, min, max, options);
  std::cout.flush();
  std::cerr << id << ": " << report.records.size() << " records, " << report.exceptions.size() << " exceptions, "
            << report.counterexamples.size() << " counterexample candidates, " << report.inconclusive.size()
            << " inconclusive";
  if (report.completed_through) std::cerr << ", completed through " << *report.completed_through;
  std::cerr << '\n';
  for (u64 key : report.counterexamples) std::cerr << "COUNTEREXAMPLE CANDIDATE: " << id << " at " << key << '\n';
  return report.exit_code();
}

int run_table(const std::string& id, bool csv_only, bool text_only) {
  Table t = reproduce_table(id);
  if (!csv_only) std::cout << t.text();
  if (!csv_only && !text_only) std::cout << '\n';
  if (!text_only) std::cout << t.csv();
  return 0;
}

int run_sqrt(const std::string& a_text, u64 p) {
  i64 a = std::stoll(a_text);
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw error(errc::bad_modulus, std::to_string(p) + " is not an odd prime");
  SqrtResult r = deterministic_sqrt(a, p);
  nlohmann::ordered_json j;
  j["a"] = a;
  j["p"] = p;
  j["root"] = r.root;
  j["nonresidue"] = r.nonresidue;
  j["path"] = r.fibonacci_path ? "fibonacci" : "sequential";
  if (r.fibonacci_path) j["fibonacci_index"] = r.fibonacci_index;
  std::cout << j.dump() << '\n';
  return 0;
}

int run_fpd_scan(const std::string& kind_name, u64 max_n, std::optional<u64> min_n, std::optional<u64> budget,
                 bool json) {
  SequenceKind kind = parse_sequence_kind(kind_name);
  u64 first = min_n.value_or(kind.tag == SequenceKind::Tag::franel ? 1 : 2);
  FactorBudget b;
  if (budget) b.rho_iterations = *budget;
  if (!json) std::cout << divisor_csv_header() << '\n';
  bool counterexample = false, open = false;
  for (const auto& r : scan(kind, first, max_n, b)) {
    std::cout << (json ? to_json(r).dump() : to_csv(r)) << '\n';
    counterexample |= is_divisor_counterexample(r);
    open |= r.status == DivisorStatus::inconclusive || (r.status == DivisorStatus::found && !r.least_certified);
  }
  return counterexample ? 2 : open ? 3 : 0;
}

int run_fpd_verify(const std::string& kind_name, u64 n, const std::string& p_text) {
  SequenceKind kind = parse_sequence_kind(kind_name);
  BigInt p(p_text);
  bool ok = verify_primitive(kind, n, p);
  nlohmann::ordered_json j;
  j["kind"] = kind.name();
  j["n"] = n;
  j["p"] = detail::json_integer(p);
  j["primitive"] = ok;
  std::cout << j.dump() << '\n';
  return ok ? 0 : 2;
}

int run_stats(const std::string& kind, u64 max_p) {
  std::cout << "p,witness,ratio,running_max\n";
  char buf[64];
  for (const auto& row : growth_stats(kind, max_p)) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", row.ratio, row.running_max);
    std::cout << row.p << ',' << row.witness << ',' << buf << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prrlab: primitive roots, residues and primitive divisors"};
  app.require_subcommand(1);

  std::string id, checkpoint;
  u64 min = 0, max = 0;
  unsigned workers = 1;
  bool json_out = false, csv_out = false;
  std::optional<unsigned> order;
  std::optional<u64> budget;
  auto* verify = app.add_subcommand("verify", "verify a registry entry over [min, max]");
  verify->add_option("id", id, "registry id, e.g. C3.4")->required();
  verify->add_option("--min", min, "smallest prime or index")->required();
  verify->add_option("--max", max, "largest prime or index")->required();
  verify->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));
  verify->add_option("--checkpoint", checkpoint, "append-only checkpoint file (resumes when present)");
  verify->add_option("--order", order, "Franel order for C4.4iii")->check(CLI::Range(2u, 64u));
  verify->add_option("--budget", budget, "rho iterations per cofactor");
  auto* fmt = verify->add_option_group("format");
  fmt->add_flag("--json", json_out, "JSON lines (default)");
  fmt->add_flag("--csv", csv_out, "CSV with a header row");
  fmt->require_option(0, 1);

  std::string table_id;
  bool table_csv = false, table_text = false;
  auto* table = app.add_subcommand("table", "reproduce a data table");
  table->add_option("id", table_id, "3.1, 3.2, 3.3, 3.4, 3.5, 4.1 or 4.2")
      ->required()
      ->check(CLI::IsMember(table_ids()));
  table->add_flag("--csv", table_csv, "CSV only");
  table->add_flag("--text", table_text, "aligned text only");

  std::string sqrt_a;
  u64 sqrt_p = 0;
  auto* sqrt_cmd = app.add_subcommand("sqrt", "square root of A modulo the odd prime P");
  sqrt_cmd->add_option("A", sqrt_a)->required();
  sqrt_cmd->add_option("P", sqrt_p)->required();

  std::vector<std::string> fpd_args;
  u64 max_n = 0;
  std::optional<u64> min_n;
  bool fpd_json = false;
  auto* fpd = app.add_subcommand("fpd", "primitive prime divisors: fpd <kind> --max-n N | fpd verify <kind> <n> <p>");
  fpd->add_option("args", fpd_args, "kind, or: verify kind n p")->required();
  fpd->add_option("--max-n", max_n, "largest index");
  fpd->add_option("--min-n", min_n, "smallest index");
  fpd->add_option("--budget", budget, "rho iterations per cofactor");
  fpd->add_flag("--json", fpd_json, "JSON lines instead of CSV");

  std::string stats_kind;
  u64 max_p = 0;
  auto* stats = app.add_subcommand("stats", "growth statistics of least nonresidues");
  stats->add_option("kind", stats_kind, "fib_qnr, lucas_qnr or mersenne_cubic")
      ->required()
      ->check(CLI::IsMember({"fib_qnr", "lucas_qnr", "mersenne_cubic"}));
  stats->add_option("--max-p", max_p)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return run_verify(id, min, max, workers, checkpoint, csv_out, order, budget);
    if (*table) return run_table(table_id, table_csv, table_text);
    if (*sqrt_cmd) return run_sqrt(sqrt_a, sqrt_p);
    if (*stats) return run_stats(stats_kind, max_p);
    if (*fpd) {
      if (fpd_args.front() == "verify") {
        if (fpd_args.size() != 4) throw CLI::ValidationError("fpd verify", "expected: fpd verify <kind> <n> <p>");
        return run_fpd_verify(fpd_args[1], std::stoull(fpd_args[2]), fpd_args[3]);
      }
      if (fpd_args.size() != 1) throw CLI::ValidationError("fpd", "expected a single sequence kind");
      if (max_n == 0) throw CLI::ValidationError("fpd", "--max-n is required");
      return run_fpd_scan(fpd_args[0], max_n, min_n, budget, fpd_json);
    }
  } catch (const prrlab::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
