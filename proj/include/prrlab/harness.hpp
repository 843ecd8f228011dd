#pragma once

// Range verification: split the keys (primes or indices) of [min, max] into
// fixed-size chunks, evaluate them on worker threads, and emit results in key
// order with one checkpoint line per emitted chunk.

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "prrlab/bigint.hpp"
#include "prrlab/error.hpp"
#include "prrlab/factor.hpp"
#include "prrlab/primes.hpp"
#include "prrlab/primitive_divisors.hpp"
#include "prrlab/primitive_roots.hpp"
#include "prrlab/registry.hpp"
#include "prrlab/residues.hpp"

namespace prrlab {

/// Rho iterations per cofactor in range scans, where only existence is asserted.
inline constexpr u64 existence_rho_budget = u64{1} << 14;

enum class Verdict { holds, exception, inconclusive };

/// One emitted result line.
struct ScanLine {
  std::string conjecture;
  u64 key = 0;  // the prime p, or the index n for index-domain entries
  Verdict verdict = Verdict::holds;
  std::optional<BigInt> p;
  std::vector<u64> params;
  std::optional<std::string> witness;  // decimal value, or a status word for divisor scans
  std::optional<bool> unique;

  friend bool operator==(const ScanLine&, const ScanLine&) = default;
};

struct ScanReport {
  std::string conjecture;
  u64 min = 0;
  u64 max = 0;
  std::vector<ScanLine> records;        // lines produced by this run
  std::vector<u64> exceptions;          // every key where the property failed (whole range, resume-aware)
  std::vector<u64> counterexamples;     // exceptions outside the statement's own exclusions
  std::vector<u64> inconclusive;
  std::optional<u64> completed_through;
  bool interrupted = false;
  double wall_time = 0;

  /// 0 all verified, 2 counterexample candidate, 3 inconclusive.
  [[nodiscard]] int exit_code() const {
    if (!counterexamples.empty()) return 2;
    if (!inconclusive.empty()) return 3;
    return 0;
  }
};

struct VerifyOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> checkpoint;
  std::size_t chunk_size = 64;
  FactorBudget budget{existence_rho_budget};
  std::optional<std::size_t> stop_after_chunks;  // simulated interruption
  std::function<void(const ScanLine&)> on_record;
};

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline constexpr u64 max_safe_json_integer = u64{1} << 53;

inline nlohmann::ordered_json json_integer(const BigInt& v) {
  if (fits_u64(v) && to_u64(v) <= max_safe_json_integer) return to_u64(v);
  return v.get_str();
}

inline nlohmann::ordered_json json_integer(u64 v) {
  if (v <= max_safe_json_integer) return v;
  return std::to_string(v);
}

inline bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline u64 fnv1a(std::string_view bytes) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(u64 v) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << v;
  return out.str();
}

}  // namespace detail

/// {conjecture, p, params, witness, unique}; integers above 2^53 become decimal strings.
inline nlohmann::ordered_json to_json(const ScanLine& line) {
  nlohmann::ordered_json j;
  j["conjecture"] = line.conjecture;
  j["p"] = line.p ? detail::json_integer(*line.p) : nlohmann::ordered_json(nullptr);
  j["params"] = nlohmann::ordered_json::array();
  for (u64 v : line.params) j["params"].push_back(detail::json_integer(v));
  if (!line.witness) {
    j["witness"] = nullptr;
  } else if (detail::all_digits(*line.witness)) {
    j["witness"] = detail::json_integer(BigInt(*line.witness));
  } else {
    j["witness"] = *line.witness;
  }
  j["unique"] = line.unique ? nlohmann::ordered_json(*line.unique) : nlohmann::ordered_json(nullptr);
  return j;
}

inline std::string csv_header() { return "conjecture,p,params,witness,unique"; }

/// Params joined by ';' so no field needs quoting.
inline std::string to_csv(const ScanLine& line) {
  std::string params;
  for (std::size_t i = 0; i < line.params.size(); ++i) {
    if (i) params += ';';
    params += std::to_string(line.params[i]);
  }
  std::string unique = line.unique ? (*line.unique ? "true" : "false") : "";
  return line.conjecture + "," + (line.p ? line.p->get_str() : "") + "," + params + "," +
         line.witness.value_or("") + "," + unique;
}

/// Factorization as [[prime, exponent], ...] with primes as decimal strings.
inline nlohmann::ordered_json to_json(const Factorization& f) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [q, e] : f.factors) arr.push_back({q.get_str(), e});
  return arr;
}

/// "2^3*7", with unsplit composites appended as "?c".
inline std::string factorization_text(const FactorOutcome& f) {
  std::string out;
  for (const auto& [q, e] : f.partial.factors) {
    if (!out.empty()) out += '*';
    out += q.get_str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  for (const auto& c : f.unresolved) {
    if (!out.empty()) out += '*';
    out += "?" + c.get_str();
  }
  return out;
}

inline std::string divisor_csv_header() { return "kind,n,status,p,factorization"; }

inline std::string to_csv(const PrimitiveDivisorRecord& r) {
  return r.kind.name() + "," + std::to_string(r.n) + "," + to_string(r.status) + "," + (r.p ? r.p->get_str() : "") +
         "," + factorization_text(r.evidence);
}

inline nlohmann::ordered_json to_json(const PrimitiveDivisorRecord& r) {
  nlohmann::ordered_json j;
  j["kind"] = r.kind.name();
  j["n"] = r.n;
  j["status"] = to_string(r.status);
  j["p"] = r.p ? detail::json_integer(*r.p) : nlohmann::ordered_json(nullptr);
  j["least_certified"] = r.least_certified;
  j["factorization"] = to_json(r.evidence.partial);
  j["unresolved"] = nlohmann::ordered_json::array();
  for (const auto& c : r.evidence.unresolved) j["unresolved"].push_back(c.get_str());
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

/// The registry entry whose statement is about `kind`, if any.
inline const ConjectureSpec* divisor_conjecture(const SequenceKind& kind) {
  for (const auto& s : registry()) {
    if (s.sequence && s.sequence->tag == kind.tag && (kind.tag != SequenceKind::Tag::franel || s.sequence->r == kind.r)) {
      return &s;
    }
  }
  return nullptr;
}

/// NoneExists at an index the statement covers and does not exclude.
inline bool is_divisor_counterexample(const PrimitiveDivisorRecord& r) {
  if (r.status != DivisorStatus::none_exists) return false;
  const ConjectureSpec* spec = divisor_conjecture(r.kind);
  return spec != nullptr && !spec->asymptotic && r.n >= spec->min_key && !in_exception_set(*spec, r.n);
}

// ---------------------------------------------------------------------------
// Checkpoints

struct CheckpointLine {
  std::string id;
  u64 completed_through = 0;
  std::vector<u64> exceptions;
};

inline std::string checkpoint_body(const CheckpointLine& c) {
  nlohmann::ordered_json j;
  j["id"] = c.id;
  j["completed_through"] = c.completed_through;
  j["exceptions"] = c.exceptions;
  return j.dump();
}

/// The JSON line appended to the checkpoint file, carrying an FNV-1a hash of its other fields.
inline std::string checkpoint_record(const CheckpointLine& c) {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(checkpoint_body(c));
  j["line_hash"] = detail::hex64(detail::fnv1a(checkpoint_body(c)));
  return j.dump();
}

/// Last valid line of a checkpoint file, nullopt when the file is missing or empty.
/// Throws CheckpointCorrupt on any malformed line, hash mismatch or foreign id.
inline std::optional<CheckpointLine> read_checkpoint(const std::filesystem::path& path, std::string_view id) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::optional<CheckpointLine> last;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    auto corrupt = [&](const std::string& why) {
      return error(errc::checkpoint_corrupt, path.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    CheckpointLine c;
    std::string stored_hash;
    try {
      auto j = nlohmann::json::parse(text);
      c.id = j.at("id").get<std::string>();
      c.completed_through = j.at("completed_through").get<u64>();
      c.exceptions = j.at("exceptions").get<std::vector<u64>>();
      stored_hash = j.at("line_hash").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw corrupt(e.what());
    }
    if (detail::hex64(detail::fnv1a(checkpoint_body(c))) != stored_hash) throw corrupt("hash mismatch");
    if (c.id != id) throw corrupt("checkpoint belongs to " + c.id);
    if (last && c.completed_through <= last->completed_through) throw corrupt("cursor went backwards");
    last = std::move(c);
  }
  return last;
}

// ---------------------------------------------------------------------------
// Evaluation

/// Read-only state shared by the workers of one run.
class ScanContext {
 public:
  ScanContext(const ConjectureSpec& spec, u64 max_key, FactorBudget budget)
      : spec_(spec), budget_(budget) {
    u64 sieve_limit = std::max<u64>(max_key, 1000);
    if (spec.id == "C3.2ii") sieve_limit = nth_prime_upper_bound(max_key);
    sieve_ = std::make_unique<PrimeSieve>(sieve_limit);
    if (spec.search == SearchKind::witness) {
      u64 largest_prime = spec.domain == Domain::indices ? sieve_limit : max_key;
      if (largest_prime <= SmallestFactorTable::max_limit) factors_ = std::make_unique<SmallestFactorTable>(largest_prime);
      finder_ = std::make_unique<WitnessFinder>(*sieve_);
    }
    if (spec.search == SearchKind::primitive_divisor) {
      for (u64 k = 1; k <= max_key; ++k) terms_.push_back(term_value(*spec.sequence, k));
    }
  }

  [[nodiscard]] const PrimeSieve& sieve() const { return *sieve_; }

  /// All keys of [min, max] the statement covers, ascending.
  [[nodiscard]] std::vector<u64> keys(u64 min, u64 max) const {
    std::vector<u64> out;
    min = std::max(min, spec_.min_key);
    if (spec_.domain == Domain::indices) {
      for (u64 n = min; n <= max; ++n) out.push_back(n);
      return out;
    }
    for (std::uint32_t p : sieve_->primes_in(min, max)) {
      if (spec_.requires_one_mod_three && p % 3 != 1) continue;
      out.push_back(p);
    }
    return out;
  }

  [[nodiscard]] ScanLine evaluate(u64 key) const {
    ScanLine line;
    line.conjecture = std::string(spec_.id);
    line.key = key;
    switch (spec_.search) {
      case SearchKind::fib_qnr:
      case SearchKind::fib_qnr_growth:
      case SearchKind::lucas_qnr:
      case SearchKind::lucas_qnr_growth:
      case SearchKind::mersenne_cubic:
      case SearchKind::two_pow_plus_one_qnr: return evaluate_residue(std::move(line), key);
      case SearchKind::witness: return evaluate_witness(std::move(line), key);
      case SearchKind::primitive_divisor: return evaluate_divisor(std::move(line), key);
    }
    return line;
  }

 private:
  static u64 nth_prime_upper_bound(u64 n) {
    if (n < 6) return 1000;
    double x = static_cast<double>(n);
    return static_cast<u64>(x * (std::log(x) + std::log(std::log(x)))) + 1000;
  }

  ScanLine evaluate_residue(ScanLine line, u64 p) const {
    line.p = big(p);
    std::optional<NonresidueWitness> w;
    switch (spec_.search) {
      case SearchKind::fib_qnr: w = least_fib_qnr(p); break;
      case SearchKind::fib_qnr_growth: w = least_fib_qnr(p, ValueCap::unbounded()); break;
      case SearchKind::lucas_qnr: w = least_lucas_qnr(p); break;
      case SearchKind::lucas_qnr_growth: w = least_lucas_qnr(p, ValueCap::unbounded()); break;
      case SearchKind::mersenne_cubic: w = least_mersenne_cubic_nr(p); break;
      default: w = exists_two_pow_plus_one_qnr(p); break;
    }
    if (!w) {
      line.verdict = spec_.asymptotic ? Verdict::inconclusive : Verdict::exception;
      return line;
    }
    line.params = {w->index};
    line.witness = std::to_string(w->value);
    return line;
  }

  ScanLine evaluate_witness(ScanLine line, u64 key) const {
    u64 p = spec_.domain == Domain::indices ? sieve_->nth_prime(key) : key;
    line.p = big(p);
    UnitGroup group = factors_ ? UnitGroup::of(p, *factors_) : UnitGroup::of(p);
    auto rec = finder_->find(spec_.id, p, group);
    if (!rec) {
      line.verdict = Verdict::exception;
      line.unique = false;
      return line;
    }
    line.params = rec->params;
    line.witness = std::to_string(rec->witness);
    line.unique = rec->unique;
    return line;
  }

  ScanLine evaluate_divisor(ScanLine line, u64 n) const {
    std::vector<BigInt> prefix(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(n));
    PrimitiveDivisorRecord rec = detail::classify(*spec_.sequence, n, prefix, budget_);
    line.params = {n};
    line.witness = to_string(rec.status);
    if (rec.p && rec.least_certified) line.p = rec.p;
    if (rec.status == DivisorStatus::none_exists) line.verdict = Verdict::exception;
    if (rec.status == DivisorStatus::inconclusive) line.verdict = Verdict::inconclusive;
    return line;
  }

  const ConjectureSpec& spec_;
  FactorBudget budget_;
  std::unique_ptr<PrimeSieve> sieve_;
  std::unique_ptr<SmallestFactorTable> factors_;
  std::unique_ptr<WitnessFinder> finder_;
  std::vector<BigInt> terms_;
};

// ---------------------------------------------------------------------------
// Driver

inline ScanReport verify_range(const ConjectureSpec& spec, u64 min, u64 max, const VerifyOptions& options = {}) {
  if (min > max) throw error(errc::bad_parameters, "min exceeds max");
  if (options.chunk_size == 0) throw error(errc::bad_parameters, "chunk size must be positive");
  const auto started = std::chrono::steady_clock::now();

  ScanReport report;
  report.conjecture = std::string(spec.id);
  report.min = min;
  report.max = max;

  std::optional<CheckpointLine> resume;
  if (options.checkpoint) resume = read_checkpoint(*options.checkpoint, spec.id);

  const ScanContext context(spec, max, options.budget);
  std::vector<u64> keys = context.keys(min, max);
  std::size_t first = 0;
  if (resume) {
    report.completed_through = resume->completed_through;
    report.exceptions = resume->exceptions;
    while (first < keys.size() && keys[first] <= resume->completed_through) ++first;
  }
  const std::size_t chunk_count = (keys.size() - first + options.chunk_size - 1) / options.chunk_size;
  const std::size_t chunks_to_run =
      options.stop_after_chunks ? std::min(chunk_count, *options.stop_after_chunks) : chunk_count;

  std::vector<std::optional<std::vector<ScanLine>>> results(chunks_to_run);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next_chunk{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;

  auto worker = [&] {
    while (!abort) {
      std::size_t c = next_chunk.fetch_add(1);
      if (c >= chunks_to_run) return;
      std::vector<ScanLine> lines;
      try {
        std::size_t begin = first + c * options.chunk_size;
        std::size_t end = std::min(keys.size(), begin + options.chunk_size);
        for (std::size_t i = begin; i < end; ++i) lines.push_back(context.evaluate(keys[i]));
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        abort = true;
        ready.notify_all();
        return;
      }
      std::lock_guard lock(mutex);
      results[c] = std::move(lines);
      ready.notify_all();
    }
  };

  std::ofstream checkpoint_out;
  if (options.checkpoint) {
    checkpoint_out.open(*options.checkpoint, std::ios::app);
    if (!checkpoint_out) throw error(errc::checkpoint_corrupt, "cannot open " + options.checkpoint->string());
  }

  {
    std::vector<std::jthread> pool;
    const unsigned n_workers = std::max(1u, options.workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);

    for (std::size_t c = 0; c < chunks_to_run; ++c) {
      std::vector<ScanLine> lines;
      {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return results[c].has_value() || failure; });
        if (failure) break;
        lines = std::move(*results[c]);
        results[c].reset();
      }
      for (auto& line : lines) {
        if (line.verdict == Verdict::exception) {
          report.exceptions.push_back(line.key);
          if (!spec.asymptotic && !in_exception_set(spec, line.key)) report.counterexamples.push_back(line.key);
        } else if (line.verdict == Verdict::inconclusive) {
          report.inconclusive.push_back(line.key);
        }
        if (options.on_record) options.on_record(line);
        report.records.push_back(std::move(line));
      }
      report.completed_through = report.records.back().key;
      if (checkpoint_out) {
        checkpoint_out << checkpoint_record({std::string(spec.id), *report.completed_through, report.exceptions})
                       << '\n'
                       << std::flush;
      }
    }
    abort = true;
  }
  if (failure) std::rethrow_exception(failure);

  // exceptions restored from a checkpoint also count
  for (u64 key : report.exceptions) {
    bool counted = std::find(report.counterexamples.begin(), report.counterexamples.end(), key) !=
                   report.counterexamples.end();
    if (!counted && !spec.asymptotic && !in_exception_set(spec, key)) report.counterexamples.push_back(key);
  }
  std::sort(report.counterexamples.begin(), report.counterexamples.end());
  report.interrupted = chunks_to_run < chunk_count;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

inline ScanReport verify_range(std::string_view id, u64 min, u64 max, const VerifyOptions& options = {}) {
  return verify_range(find_conjecture(id), min, max, options);
}

// ---------------------------------------------------------------------------
// Growth statistics

struct GrowthRow {
  u64 p = 0;
  u64 witness = 0;
  double ratio = 0;        // log(witness) / log(p)
  double running_max = 0;  // max ratio over rows so far
};

/// Least Fibonacci / Lucas nonresidue or Mersenne cubic nonresidue per prime,
/// with its exponent log w / log p. Primes without a witness are skipped.
inline std::vector<GrowthRow> growth_stats(std::string_view kind, u64 max_p) {
  PrimeSieve sieve(std::max<u64>(max_p, 2));
  std::vector<GrowthRow> rows;
  double best = 0;
  for (std::uint32_t p : sieve.primes()) {
    std::optional<NonresidueWitness> w;
    if (kind == "fib_qnr") {
      if (p < 3) continue;
      w = least_fib_qnr(p, ValueCap::unbounded());
    } else if (kind == "lucas_qnr") {
      if (p < 3) continue;
      w = least_lucas_qnr(p, ValueCap::unbounded());
    } else if (kind == "mersenne_cubic") {
      if (p % 3 != 1) continue;
      w = least_mersenne_cubic_nr(p, ValueCap::unbounded());
    } else {
      throw error(errc::bad_parameters, "unknown statistics kind " + std::string(kind));
    }
    if (!w) continue;
    double ratio = std::log(static_cast<double>(w->value)) / std::log(static_cast<double>(p));
    best = std::max(best, ratio);
    rows.push_back({p, w->value, ratio, best});
  }
  return rows;
}

}  // namespace prrlab
