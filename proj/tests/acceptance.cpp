// Acceptance run: one PASS/FAIL line per check, grouped by criterion, with a
// summary line per criterion. Exits nonzero when any check fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "prrlab/harness.hpp"
#include "prrlab/primitive_roots.hpp"
#include "prrlab/residues.hpp"
#include "prrlab/tables.hpp"

using namespace prrlab;
namespace fs = std::filesystem;

namespace {

constexpr double tables_3_seconds = 60;
constexpr double tables_4_seconds = 600;
constexpr double anchor_seconds = 30;
constexpr double ranges_seconds = 1800;
constexpr u64 rediscovery_ceiling = 1'000'000'000'000;

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Criteria {
 public:
  /// Runs one check, prints its line, and returns elapsed seconds.
  double check(int criterion, const std::string& name, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    record(criterion, name, o, secs);
    return secs;
  }

  void record(int criterion, const std::string& name, const Outcome& o, double secs) {
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  [" << criterion << "] " << name << " (" << t << ")";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << std::endl;
    auto& s = summary_[criterion];
    ++s.first;
    s.second += o.ok ? 0 : 1;
  }

  int finish() const {
    std::cout << "\n";
    int failed = 0;
    for (const auto& [c, s] : summary_) {
      std::cout << (s.second == 0 ? "PASS" : "FAIL") << "  criterion " << c << ": " << s.first - s.second << "/"
                << s.first << " checks passed" << std::endl;
      failed += s.second;
    }
    return failed == 0 ? 0 : 1;
  }

 private:
  std::map<int, std::pair<int, int>> summary_;
};

Outcome timed(Outcome o, double secs, double limit) {
  if (secs >= limit) {
    o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time limit");
  }
  return o;
}

std::string first_difference(const std::string& want, const std::string& got) {
  std::istringstream a(want), b(got);
  std::string la, lb;
  for (int line = 1;; ++line) {
    bool ha = static_cast<bool>(std::getline(a, la)), hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) return "";
    if (!ha) la = "<end>";
    if (!hb) lb = "<end>";
    if (la != lb) return "line " + std::to_string(line) + ": expected '" + la + "', got '" + lb + "'";
  }
}

fs::path golden(const std::string& name) { return fs::path(PRRLAB_GOLDEN_DIR) / name; }

// ---------------------------------------------------------------------------

void criterion_tables_3(Criteria& c) {
  double total = 0;
  for (std::string id : {"3.1", "3.2", "3.3", "3.4", "3.5"}) {
    std::string file = "table_" + id.substr(0, 1) + "_" + id.substr(2) + ".csv";
    total += c.check(1, "table " + id + " matches " + file, [&] {
      std::string want = oracle::read_file(golden(file));
      std::string got = reproduce_table(id).csv();
      std::string note;
      if (id == "3.1") {
        // g must lie in [1, p - 1]; for p = 2 the only such root is g = 1 (k = 0)
        const std::string listed = "2,1,2\n", computed = "2,0,1\n";
        auto at = got.find('\n') + 1;
        if (got.compare(at, computed.size(), computed) != 0) return Outcome{false, "p = 2 row is not 2,0,1"};
        got.replace(at, computed.size(), listed);
        note = "p = 2 row computed as 2,0,1 (g = 1), golden lists g = 2";
      }
      std::string diff = first_difference(want, got);
      return diff.empty() ? Outcome{true, note} : Outcome{false, diff};
    });
  }
  c.record(1, "tables 3.1-3.5 total runtime", timed({}, total, tables_3_seconds), total);
}

void criterion_tables_4(Criteria& c) {
  double total = 0;
  for (std::string id : {"4.1", "4.2"}) {
    total += c.check(2, "table " + id + " rediscovery and verification", [&] {
      auto rows = oracle::read_csv(golden("table_" + id.substr(0, 1) + "_" + id.substr(2) + ".csv"));
      Table t = reproduce_table(id);
      if (t.rows.size() + 1 != rows.size()) return Outcome{false, "row count differs"};
      int rediscovered = 0, verified = 0;
      std::string problems;
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& want = rows[i + 1];
        const auto& got = t.rows[i];
        const u64 n = std::stoull(want[0]);
        for (int col = 0; col < 2; ++col) {
          const std::string& value = want[1 + col];
          const std::string& cell = got[1 + 2 * col];
          const std::string& mode = got[2 + 2 * col];
          bool must_rediscover;
          if (id == "4.1") {
            must_rediscover = col == 0 ? (n >= 5 && n <= 16) : (n >= 2 && n <= 20);
          } else {
            must_rediscover = !value.empty() && BigInt(value) <= BigInt(std::to_string(rediscovery_ceiling));
          }
          std::string where = "n=" + std::to_string(n) + " col " + std::to_string(col + 1);
          if (value.empty()) {
            if (mode != "none" || !cell.empty()) problems += where + " expected none; ";
            continue;
          }
          if (cell != value) {
            problems += where + " got '" + cell + "'; ";
            continue;
          }
          if (mode == "rediscovered") {
            ++rediscovered;
          } else if (mode == "verified" && !must_rediscover) {
            ++verified;
          } else {
            problems += where + " mode " + mode + "; ";
          }
        }
      }
      std::string detail = std::to_string(rediscovered) + " rediscovered, " + std::to_string(verified) + " verified";
      return problems.empty() ? Outcome{true, detail} : Outcome{false, problems};
    });
  }
  c.record(2, "tables 4.1-4.2 total runtime", timed({}, total, tables_4_seconds), total);
}

void criterion_anchors(Criteria& c) {
  auto anchor = [&](const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.record(3, name, timed(o, secs, anchor_seconds), secs);
  };
  anchor("3001 has no Fibonacci primitive root", [] { return Outcome{!fibonacci_primitive_root_exists(3001), ""}; });
  anchor("28657 has no Lucas primitive root", [] { return Outcome{!lucas_primitive_root_exists(28657), ""}; });
  anchor("2089 has no prime q < p with 2^q + 1 a primitive root",
         [] { return Outcome{!two_pow_plus_one_primitive_root_exists(2089), ""}; });
  anchor("least cubic nonresidue 2^k - 1 mod 4667629 is 32767", [] {
    auto w = least_mersenne_cubic_nr(4667629);
    return w ? Outcome{w->value == 32767, "got " + std::to_string(w->value)} : Outcome{false, "none found"};
  });
  anchor("least prime q with 2^q - 1 a primitive root mod 5336101 is 193", [] {
    auto r = find_witness(5336101, "C3.3i");
    return r ? Outcome{r->params[0] == 193, "got q = " + std::to_string(r->params[0])} : Outcome{false, "none found"};
  });
}

void criterion_ranges(Criteria& c) {
  struct Range {
    std::string id;
    u64 min, max;
    bool all_found = false;
    std::vector<u64> exceptions{};
  };
  const std::vector<Range> ranges{
      {"C2.1i", 5, 99999},     {"C2.1iii", 5, 99999},   {"C2.2iii", 2, 99999},  {"C2.4", 7, 9999},
      {"C3.1i", 2, 99999},     {"C3.2i", 2, 99999},     {"C3.2ii", 2, 10000},   {"C3.3i", 2, 9999},
      {"C3.3ii", 2, 9999},     {"C3.3iii", 2, 9999},    {"C3.4", 2, 9999},      {"C3.5i", 5, 9999},
      {"C3.6i", 2, 9999},      {"C3.6ii", 2, 9999},     {"C3.7i", 2, 9999},     {"C3.7ii", 2, 9999},
      {"C3.7iii", 2, 9999},    {"C4.1", 1, 200, false, {5, 16}},                {"C4.4i", 1, 60, true},
      {"C4.4ii", 1, 60, true}, {"C4.5", 2, 60, true},
  };
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  double total = 0;
  for (const auto& r : ranges) {
    std::string name = r.id + " over [" + std::to_string(r.min) + ", " + std::to_string(r.max) + "]";
    total += c.check(4, name, [&] {
      VerifyOptions o;
      o.workers = workers;
      ScanReport rep = verify_range(r.id, r.min, r.max, o);
      std::string detail = std::to_string(rep.records.size()) + " cases";
      bool ok = rep.exceptions == r.exceptions && rep.inconclusive.empty();
      if (!rep.exceptions.empty()) {
        detail += ", exceptions at";
        for (std::size_t i = 0; i < rep.exceptions.size() && i < 20; ++i) detail += " " + std::to_string(rep.exceptions[i]);
      }
      if (!rep.inconclusive.empty()) detail += ", " + std::to_string(rep.inconclusive.size()) + " inconclusive";
      if (r.all_found) {
        for (const auto& line : rep.records) {
          if (line.witness != "found") {
            ok = false;
            detail += ", n=" + std::to_string(line.key) + " " + line.witness.value_or("?");
          }
        }
      }
      return Outcome{ok, detail};
    });
  }
  c.record(4, "range verification total runtime", timed({}, total, ranges_seconds), total);
}

void criterion_sqrt(Criteria& c) {
  c.check(5, "Tonelli-Shanks on every quadratic residue, odd p < 2000", [] {
    u64 cases = 0;
    for (u64 p : oracle::primes_upto(1999)) {
      if (p == 2) continue;
      u64 d = 2;
      while (legendre(static_cast<i64>(d), p) != -1) ++d;
      for (u64 a : oracle::squares(p)) {
        u64 x = tonelli_shanks(a, p, d);
        if (oracle::mul_mod(x, x, p) != a) return Outcome{false, std::to_string(a) + " mod " + std::to_string(p)};
        SqrtResult s = deterministic_sqrt(static_cast<i64>(a), p);
        if (s.root != x) return Outcome{false, "deterministic root differs at " + std::to_string(a) + " mod " + std::to_string(p)};
        ++cases;
      }
    }
    return Outcome{true, std::to_string(cases) + " residues"};
  });
  c.check(5, "deterministic_sqrt uses a Fibonacci nonresidue < p/2 for 4 < p < 100000", [] {
    u64 count = 0;
    for (u64 p : oracle::primes_upto(99999)) {
      if (p <= 4) continue;
      for (u64 x : {u64{2}, p / 3, p - 1}) {
        u64 a = oracle::mul_mod(x, x, p);
        SqrtResult s = deterministic_sqrt(static_cast<i64>(a), p);
        if (!s.fibonacci_path || 2 * s.nonresidue >= p || oracle::mul_mod(s.root, s.root, p) != a) {
          return Outcome{false, "p = " + std::to_string(p)};
        }
      }
      ++count;
    }
    return Outcome{true, std::to_string(count) + " primes"};
  });
}

void criterion_oracles(Criteria& c) {
  c.check(6, "is_primitive_root matches brute-force order, p < 2000", [] {
    for (u64 p : oracle::primes_upto(1999)) {
      UnitGroup g = UnitGroup::of(p);
      for (u64 x = 1; x < p; ++x) {
        if (is_primitive_root(static_cast<i64>(x), g) != (oracle::order(x, p) == p - 1)) {
          return Outcome{false, std::to_string(x) + " mod " + std::to_string(p)};
        }
      }
    }
    return Outcome{};
  });
  c.check(6, "count_primitive_roots(p) = phi(p - 1), p < 10000", [] {
    for (u64 p : oracle::primes_upto(9999)) {
      if (count_primitive_roots(p) != oracle::phi(p - 1)) return Outcome{false, "p = " + std::to_string(p)};
    }
    return Outcome{};
  });
  c.check(6, "legendre matches square enumeration, p < 500", [] {
    for (u64 p : oracle::primes_upto(499)) {
      if (p == 2) continue;
      auto sq = oracle::squares(p);
      for (u64 a = 1; a < p; ++a) {
        if ((legendre(static_cast<i64>(a), p) == 1) != sq.contains(a)) {
          return Outcome{false, std::to_string(a) + " mod " + std::to_string(p)};
        }
      }
    }
    return Outcome{};
  });
  c.check(6, "Bernoulli and Euler tables mod p match exact values, p <= 101", [] {
    auto bern = oracle::bernoulli(100);
    auto eul = oracle::euler(100);
    auto reduce_q = [](const mpq_class& q, u64 p) {
      mpz_class m = static_cast<unsigned long>(p), inv, num = q.get_num() % m, den = q.get_den() % m;
      if (num < 0) num += m;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
      return mpz_class(num * inv % m).get_ui();
    };
    for (u64 p : oracle::primes_upto(101)) {
      if (p == 2) continue;
      if (p > 3) {
        auto tb = bernoulli_mod_table(p);
        for (u64 k = 0; k < tb.size(); ++k) {
          if (tb[k] != reduce_q(bern[k], p)) return Outcome{false, "B_" + std::to_string(k) + " mod " + std::to_string(p)};
        }
      }
      auto te = euler_mod_table(p);
      for (u64 k = 0; k < te.size(); ++k) {
        if (te[k] != reduce_q(mpq_class(eul[k]), p)) return Outcome{false, "E_" + std::to_string(k) + " mod " + std::to_string(p)};
      }
    }
    return Outcome{};
  });
}

void criterion_determinism(Criteria& c) {
  const std::string id = "C3.4";
  const u64 lo = 1, hi = 10000;
  auto output = [&](VerifyOptions o, ScanReport* report = nullptr) {
    std::string out;
    o.on_record = [&out](const ScanLine& line) { out += to_json(line).dump() + "\n"; };
    ScanReport r = verify_range(id, lo, hi, o);
    if (report) *report = r;
    return out;
  };
  std::string reference;
  c.check(7, id + " output identical for 1, 2 and 8 workers", [&] {
    for (unsigned w : {1u, 2u, 8u}) {
      VerifyOptions o;
      o.workers = w;
      std::string out = output(o);
      if (w == 1) reference = out;
      if (out != reference) return Outcome{false, std::to_string(w) + " workers differ"};
    }
    return Outcome{true, std::to_string(std::count(reference.begin(), reference.end(), '\n')) + " lines"};
  });
  c.check(7, id + " interrupt and resume at every checkpoint boundary", [&] {
    const fs::path dir = fs::temp_directory_path();
    const std::string tag = std::to_string(::getpid());
    const fs::path whole = dir / ("prrlab_accept_whole_" + tag);
    fs::remove(whole);
    VerifyOptions base;
    base.workers = 4;
    base.checkpoint = whole;
    ScanReport full_report;
    std::string full = output(base, &full_report);
    std::string full_checkpoint = oracle::read_file(whole);
    fs::remove(whole);
    if (full != reference) return Outcome{false, "checkpointed run differs from plain run"};
    const std::size_t chunks = (full_report.records.size() + base.chunk_size - 1) / base.chunk_size;
    for (std::size_t stop = 1; stop < chunks; ++stop) {
      const fs::path part = dir / ("prrlab_accept_part_" + tag);
      fs::remove(part);
      VerifyOptions first = base;
      first.checkpoint = part;
      first.stop_after_chunks = stop;
      std::string a = output(first);
      VerifyOptions second = base;
      second.checkpoint = part;
      std::string b = output(second);
      std::string cp = oracle::read_file(part);
      fs::remove(part);
      if (a + b != full) return Outcome{false, "output differs after stopping at chunk " + std::to_string(stop)};
      if (cp != full_checkpoint) return Outcome{false, "checkpoint differs after stopping at chunk " + std::to_string(stop)};
    }
    return Outcome{true, std::to_string(chunks - 1) + " boundaries"};
  });
}

}  // namespace

int main() {
  Criteria c;
  criterion_tables_3(c);
  criterion_tables_4(c);
  criterion_anchors(c);
  criterion_ranges(c);
  criterion_sqrt(c);
  criterion_oracles(c);
  criterion_determinism(c);
  return c.finish();
}
