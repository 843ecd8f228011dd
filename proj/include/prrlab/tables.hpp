#pragma once

// Regeneration of the reference data tables: uniqueness scans for the
// primitive-root tables and least primitive divisors for the divisor tables.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prrlab/bigint.hpp"
#include "prrlab/error.hpp"
#include "prrlab/primitive_divisors.hpp"
#include "prrlab/primitive_roots.hpp"
#include "prrlab/sequences.hpp"

namespace prrlab {

/// Primes up to this bound are scanned for unique witnesses.
inline constexpr u64 uniqueness_scan_bound = 3000;

struct Table {
  std::string id;
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  [[nodiscard]] std::string csv() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }

  /// Columns right-aligned to their widest cell.
  [[nodiscard]] std::string text() const {
    std::vector<std::size_t> width(header.size(), 0);
    auto measure = [&width](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
    };
    measure(header);
    for (const auto& r : rows) measure(r);
    std::string out = title + "\n";
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += "  ";
        out += std::string(width[i] - cells[i].size(), ' ') + cells[i];
      }
      out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }
};

namespace detail {

inline Table uniqueness_table(std::string id, std::string title, std::string_view conjecture,
                              std::vector<std::string> header,
                              const std::function<std::vector<std::string>(const WitnessRecord&)>& cells) {
  Table t{std::move(id), std::move(title), std::move(header), {}};
  PrimeSieve sieve(uniqueness_scan_bound);
  WitnessFinder finder(sieve);
  const u64 min_prime = find_witness_search(conjecture)->min_prime;
  for (std::uint32_t p : sieve.primes()) {
    if (p < min_prime) continue;
    auto rec = finder.find(conjecture, p);
    if (rec && rec->unique) t.rows.push_back(cells(*rec));
  }
  return t;
}

inline std::string str(u64 v) { return std::to_string(v); }

}  // namespace detail

/// Listed least primitive divisors, used to verify rows beyond the rediscovery budget.
struct ListedDivisorRow {
  u64 n;
  std::string_view first;   // p_B(n) or p_H(n); empty when the table leaves it blank
  std::string_view second;  // p_E(n) or p_H2(n)
};

inline constexpr std::array<ListedDivisorRow, 31> listed_bernoulli_euler{{
    {2, "", "5"},
    {3, "", "61"},
    {4, "", "277"},
    {5, "5", "19"},
    {6, "691", "13"},
    {7, "7", "47"},
    {8, "3617", "17"},
    {9, "43867", "79"},
    {10, "283", "41737"},
    {11, "11", "31"},
    {12, "103", "2137"},
    {13, "13", "67"},
    {14, "9349", "29"},
    {15, "1721", "15669721"},
    {16, "37", "930157"},
    {17, "17", "4153"},
    {18, "26315271553053477373", "37"},
    {19, "19", "23489580527043108252017828576198947741"},
    {20, "137616929", "41"},
    {21, "1520097643918070802691", "137"},
    {22, "59", "587"},
    {23, "23", "285528427091"},
    {24, "653", "5516994249383296071214195242422482492286460673697"},
    {25, "417202699", "5639"},
    {26, "577", "53"},
    {27, "39409", "2749"},
    {28, "113161", "5303"},
    {29, "29", "1459879476771247347961031445001033"},
    {30, "2003", "6821509"},
    {31, "31", "101"},
    {32, "1226592271", "25349"},
}};

inline constexpr std::array<ListedDivisorRow, 31> listed_harmonic{{
    {2, "3", "5"},
    {3, "11", "7"},
    {4, "5", "41"},
    {5, "137", "11"},
    {6, "7", "13"},
    {7, "", "266681"},
    {8, "761", "17"},
    {9, "7129", "19"},
    {10, "61", "178939"},
    {11, "97", "23"},
    {12, "13", "18500393"},
    {13, "29", "40799043101"},
    {14, "1049", "29"},
    {15, "41233", "31"},
    {16, "17", "619"},
    {17, "37", "601"},
    {18, "19", "8821"},
    {19, "7440427", "86364397717734821"},
    {20, "11167027", "421950627598601"},
    {21, "18858053", "2621"},
    {22, "23", "295831"},
    {23, "583859", "47"},
    {24, "577", "2237"},
    {25, "109", "157"},
    {26, "34395742267", "53"},
    {27, "521", "307"},
    {28, "375035183", "7741"},
    {29, "4990290163", "6823"},
    {30, "31", "61"},
    {31, "2667653736673", "205883"},
    {32, "2917", "487"},
}};

/// Rediscovery reach per column (largest n factored rather than verified).
struct DivisorTablePolicy {
  u64 first_rediscover_max;
  u64 second_rediscover_max;
  FactorBudget budget{};
};

inline constexpr DivisorTablePolicy bernoulli_euler_policy{16, 20};
inline constexpr DivisorTablePolicy harmonic_policy{32, 32};

namespace detail {

/// Value cell and mode cell for one (kind, n): rediscovered by factoring within
/// reach, otherwise the listed value checked in verify mode.
inline std::pair<std::string, std::string> divisor_cells(const SequenceKind& kind, u64 n, std::string_view listed,
                                                         bool rediscover, FactorBudget budget) {
  if (rediscover) {
    PrimitiveDivisorRecord rec = least_primitive_prime_divisor(kind, n, budget);
    if (rec.status == DivisorStatus::none_exists) return {"", "none"};
    if (rec.p && rec.least_certified) return {rec.p->get_str(), "rediscovered"};
  }
  if (listed.empty()) return {"", "unverified"};
  BigInt p(std::string{listed});
  return verify_primitive(kind, n, p) ? std::pair{std::string(listed), std::string("verified")}
                                      : std::pair{std::string(listed), std::string("mismatch")};
}

inline Table divisor_table(std::string id, std::string title, std::vector<std::string> header,
                           const SequenceKind& first, const SequenceKind& second,
                           const std::array<ListedDivisorRow, 31>& listed, DivisorTablePolicy policy) {
  Table t{std::move(id), std::move(title), std::move(header), {}};
  for (const auto& row : listed) {
    auto [a, a_mode] = divisor_cells(first, row.n, row.first, row.n <= policy.first_rediscover_max, policy.budget);
    auto [b, b_mode] = divisor_cells(second, row.n, row.second, row.n <= policy.second_rediscover_max, policy.budget);
    t.rows.push_back({str(row.n), a, a_mode, b, b_mode});
  }
  return t;
}

}  // namespace detail

inline const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids{"3.1", "3.2", "3.3", "3.4", "3.5", "4.1", "4.2"};
  return ids;
}

inline Table reproduce_table(std::string_view id, DivisorTablePolicy policy_override = {0, 0}) {
  using detail::str;
  if (id == "3.1") {
    return detail::uniqueness_table("3.1", "Primes p with unique primitive root g = k^2 + 1 < p", "C3.1i",
                                    {"p", "k", "g"}, [](const WitnessRecord& r) {
                                      return std::vector{str(r.p), str(r.params[0]), str(r.witness)};
                                    });
  }
  if (id == "3.2") {
    return detail::uniqueness_table("3.2", "Primes p with unique primitive root g = p_1 + ... + p_n < p", "C3.2i",
                                    {"p", "n", "g"}, [](const WitnessRecord& r) {
                                      return std::vector{str(r.p), str(r.params[0]), str(r.witness)};
                                    });
  }
  if (id == "3.3") {
    return detail::uniqueness_table(
        "3.3", "Primes p with unique 0 < g < p such that g, 2^g - 1 and (g-1)! are all primitive roots", "C3.3iii",
        {"p", "g", "2^g-1 mod p", "(g-1)! mod p"}, [](const WitnessRecord& r) {
          u64 g = r.witness;
          u64 mersenne = sub_mod(pow_mod(2, g, r.p), 1, r.p);
          u64 fact = form_value(SequenceKind::of(SequenceKind::Tag::factorial), g - 1, r.p);
          return std::vector{str(r.p), str(g), str(mersenne), str(fact)};
        });
  }
  if (id == "3.4") {
    return detail::uniqueness_table(
        "3.4", "Primes p with unique prime q < p such that q and 2^q - q are primitive roots", "C3.4",
        {"p", "q", "2^q-q mod p"},
        [](const WitnessRecord& r) { return std::vector{str(r.p), str(r.params[0]), str(r.witness)}; });
  }
  if (id == "3.5") {
    return detail::uniqueness_table(
        "3.5", "Primes p with unique prime q < p such that B_{q-1} is a primitive root", "C3.5i",
        {"p", "q", "B_{q-1}", "B_{q-1} mod p"}, [](const WitnessRecord& r) {
          u64 q = r.params[0];
          return std::vector{str(r.p), str(q), to_string(bernoulli_exact(q - 1)), str(r.witness)};
        });
  }
  if (id == "4.1") {
    DivisorTablePolicy policy = policy_override.first_rediscover_max ? policy_override : bernoulli_euler_policy;
    return detail::divisor_table("4.1", "Least primitive divisors p_B(n) of B_{2n} and p_E(n) of E_{2n}",
                                 {"n", "p_B", "mode_B", "p_E", "mode_E"}, SequenceKind::of(SequenceKind::Tag::bernoulli),
                                 SequenceKind::of(SequenceKind::Tag::euler), listed_bernoulli_euler, policy);
  }
  if (id == "4.2") {
    DivisorTablePolicy policy = policy_override.first_rediscover_max ? policy_override : harmonic_policy;
    return detail::divisor_table("4.2", "Least primitive divisors p_H(n) of H_n and p_H2(n) of H^(2)_n",
                                 {"n", "p_H", "mode_H", "p_H2", "mode_H2"}, SequenceKind::of(SequenceKind::Tag::harmonic),
                                 SequenceKind::of(SequenceKind::Tag::harmonic2), listed_harmonic, policy);
  }
  throw error(errc::bad_parameters, "unknown table " + std::string(id));
}

}  // namespace prrlab
