#pragma once
// Machine replay of link case analyses: every tuple produced by the generic
// link solver is either killed by a named constraint or survives, and the
// surviving set is compared against the published one.
//
// Constraint ids fall in three groups:
//   - generic filters of the solver (see sarkisov.hpp),
//   - "no-solution:<class>" when a secondary relation has no admissible value,
//     "exceptional-divisor" (only the contracted divisor can have s_k = 0,
//     and only when its system is a single divisor) and "target-theorem"
//     (the rationality criteria applied to the target Fano threefold),
//   - declared, case-specific facts, each with a short statement of what it
//     rests on.

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qfano/sarkisov.hpp"

namespace qfano {

struct ClassValue {
  std::string label;
  Int k = 0;
  SecondaryValue value;
  std::optional<Int> dim;
};

struct ReplayCandidate {
  std::string branch;
  LinkSolution sol;
  std::vector<ClassValue> classes;

  // s of the class with the given label; -1 when absent.
  Int s_of(std::string_view label) const;
  const ClassValue* find(std::string_view label) const;
  std::string describe() const;
};

struct SideConstraint {
  std::string id;
  std::string basis;  // what the fact rests on
  std::function<bool(const ReplayCandidate&)> kills;
};

struct ReplayBranch {
  std::string label;
  LinkScenario scenario;
  std::vector<SecondaryClass> classes;
  std::vector<SideConstraint> constraints;
  RationalityClauses target_clauses{true, false, false, false};
};

struct ReplayConfig {
  std::string id;     // role-based name
  std::string alias;  // published-case name accepted by the CLI
  std::string summary;
  std::string conclusion;
  std::vector<ReplayBranch> branches;
};

struct ReplayTrace {
  std::string id;
  std::vector<std::string> lines;  // one per generated candidate
  std::vector<ReplayCandidate> survivors;
  std::map<std::string, Int> kill_counts;
  std::vector<std::string> notes;  // e.g. a reached discrepancy cap
  Int candidates = 0;
  std::string conclusion;

  // Full trace (every candidate) or only surviving lines; always ends with
  // "SURVIVORS: N".
  std::string render(bool full) const;
};

const std::vector<ReplayConfig>& replay_library();
// Accepts either the id or the alias; throws unknown_id.
const ReplayConfig& find_replay(std::string_view id_or_alias);
ReplayTrace run_replay(const ReplayConfig& config);
ReplayTrace replay(std::string_view id_or_alias);

// Whether some index-q candidate (torsion free, default search filters) has
// A^3 = 1/12; used when the criteria are applied to an unknown target.
bool index_admits_A3_one_twelfth(Int q);

}  // namespace qfano
