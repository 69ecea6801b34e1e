#pragma once
// Numerical shadow of a Sarkisov link started by an extremal blowup
// f: X~ -> X of a mobile system M ~ nA (anticanonical class -K ~ qA):
//
//   K~ = f*K + alpha E,   M~ = f*M - beta E,   M~_k = f*M_k - beta_k E,
//   n qhat = q s   + (q beta   - n alpha) e,
//   k qhat = q s_k + (q beta_k - k alpha) e,
//
// and, when the second contraction is divisorial onto a target with class
// group Z, b e = qhat delta - q and e gamma_k = s_k delta - k.
//
// Also here: the exceptional-divisor intersection calculus used on
// weighted blowups, conic-bundle base invariants, and the rationality
// criteria the case analyses feed into.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfano/basket.hpp"
#include "qfano/ratmod.hpp"

namespace qfano {

// ---------------------------------------------------------------------------
// Scenario and solutions

struct LinkPoint {
  SingularPointSpec spec;
  std::string label;  // free-form tag shown in traces, e.g. "P9"
  // Local class of A as a multiple of -K (A ~ a(-K) near the point). When
  // absent and gcd(q, r) = 1 it is q^{-1} mod r.
  std::optional<Int> a_local;
  // Local class of M as a multiple of -K; overrides n * a_local.
  std::optional<Int> local_m;
  bool may_be_center = true;
};

struct LinkScenario {
  Int q = 0;
  Int n = 0;      // M ~ nA, 0 < n < q
  Int dimM = 1;
  std::vector<LinkPoint> points;
  Int gorenstein_cap = 4;  // integer discrepancies 1..cap over Gorenstein centers; 0 disables
  // q beta - n alpha is an integer (holds whenever the Fano and Weil indices agree).
  bool torsion_free = true;
  std::vector<std::pair<Int, Int>> known_dims;  // (k, dim|kA|), -1 for empty
  std::vector<Int> qhat_domain;                 // empty means the default domain
  bool fibration_index_one = true;              // non-rational X: a fibration has qhat = 1
};

std::vector<Int> default_qhat_domain();
void validate(const LinkScenario& scenario);
std::optional<Int> known_dim(const LinkScenario& scenario, Int k);

// Multiple m with M ~ -mK near the point (in [0, r)), if determinable.
std::optional<Int> local_m_of(const LinkScenario& scenario, const LinkPoint& point, Int k);
// Largest local m over the non-Gorenstein points: c(X, M) <= 1/m, so
// beta >= m alpha for every centre.
Int ct_multiplier(const LinkScenario& scenario);

// Possible discrepancies of an extremal blowup with centre at the point.
std::vector<Rational> discrepancy_candidates(const SingularPointSpec& point, Int gorenstein_cap = 4);

struct Center {
  Int point = -1;  // index into scenario.points; -1 for a Gorenstein centre
  std::string label;
  Int r = 1;
  Rational alpha;
  bool kawamata = false;  // cyclic quotient centre with alpha = 1/r
};

std::vector<Center> centers_of(const LinkScenario& scenario);

// Values allowed for beta (or beta_k): offset + step * Z>=0.
struct BetaLattice {
  Rational offset = 0;
  Rational step = 1;
  bool contains(const Rational& x) const;
};

// For a class ~ -mK near the centre, beta = m alpha mod Z (Gorenstein
// centres: m = 0); when m is unknown only beta in (1/r) Z is used.
BetaLattice beta_lattice(const Center& center, std::optional<Int> local_m);

enum class LinkKind { fibration, birational };
const char* link_kind_name(LinkKind kind);

struct SecondaryValue {
  Int s = 0;
  Rational beta;
};

struct DivisorialData {
  Int delta = 0;
  Rational b;
  std::map<Int, Rational> gamma;
};

struct LinkSolution {
  LinkKind kind = LinkKind::fibration;
  Center center;
  Rational alpha, beta;
  Int e = 0, s = 0, qhat = 0;
  std::map<Int, SecondaryValue> secondary;
  std::optional<DivisorialData> divisorial;
};

// Exact re-substitution of every recorded relation.
bool satisfies_relations(const LinkScenario& scenario, const LinkSolution& sol);

// Generic filters applied to each primary tuple (alpha, qhat, s, e); beta is
// determined by the main relation. Ids are stable and appear in traces.
inline constexpr const char* kPositivity = "positivity";
inline constexpr const char* kLattice = "lattice";
inline constexpr const char* kCtBound = "ct-bound";
inline constexpr const char* kIntegrality = "integrality";
inline constexpr const char* kFiberIndex = "fiber-index";

struct PrimaryEvent {
  LinkSolution sol;
  const char* killed_by = nullptr;  // nullptr: survives
};

// Visits every generated primary tuple in a fixed order.
void enumerate_primary(const LinkScenario& scenario, const std::function<void(const PrimaryEvent&)>& visit);
std::vector<LinkSolution> solve_main(const LinkScenario& scenario);
// A tuple over a Gorenstein centre with alpha at the discrepancy cap: larger
// discrepancies were not enumerated, so callers report it.
bool at_gorenstein_cap(const LinkScenario& scenario, const LinkSolution& sol);

// One of the classes M_k = |kA| or a twist |kA + T|, with the local data
// needed for its beta lattice.
struct SecondaryClass {
  std::string label;  // "1", "3'", ...
  Int k = 1;
  std::optional<Int> local_m;  // override (twisted classes); else derived from k
  bool derive_local_m = true;  // false: plain (1/r) Z lattice
  bool twisted = false;        // a torsion twist: kept out of LinkSolution::secondary
  bool beta_positive = false;  // class known not to be Cartier at the centre
  std::optional<Int> dim;
  std::function<bool(const LinkSolution&)> applies;  // empty: always
};

std::vector<SecondaryValue> extend_class(const LinkScenario& scenario, const LinkSolution& sol,
                                         const SecondaryClass& cls);
std::vector<SecondaryValue> extend_secondary(const LinkScenario& scenario, const LinkSolution& sol, Int k);

// Tuples (delta, b, gamma_k) for delta = 1..delta_max with b > 0 (an
// integer when b_integral) and gamma_k >= 0. s_k values missing from
// sol.secondary are taken from extend_secondary; k = n uses s.
std::vector<DivisorialData> divisorial_relations(const LinkScenario& scenario, const LinkSolution& sol,
                                                 const std::vector<Int>& ks, Int delta_max = 0,
                                                 bool b_integral = true);

// ---------------------------------------------------------------------------
// Rationality criteria

struct RationalityInputs {
  Int qhat = 0;
  std::optional<Int> p1, p2, p3;  // lower bounds; absent means unknown
  std::optional<Rational> A3;
  bool A3_not_1_12 = false;  // known to differ from 1/12 without knowing A3
  Int torsion_order = 0;     // 0: unknown
};

struct RationalityClauses {
  bool base_theorem = true;     // the six p_n / index criteria
  bool index_six = true;        // every index-6 variety is rational
  bool index_seven_p1 = true;   // index 7 with p1 > 0
  bool torsion_index5 = true;   // index >= 5 with torsion
};

struct RationalityVerdict {
  bool rational = false;
  std::string clause;  // empty when open
};

RationalityVerdict rationality_verdict(const RationalityInputs& in, const RationalityClauses& clauses = {});

// ---------------------------------------------------------------------------
// Intersection calculus on a point blowup

// E^3 for the Kawamata blowup of 1/r(1, a, r - a).
Rational kawamata_E3(Int r, Int a);

struct BlowupClass {
  Rational a;     // coefficient of f*A
  Rational beta;  // coefficient of -E
};

struct BlowupLattice {
  Rational A3;
  Rational E3;
};

// (a1 f*A - b1 E)(a2 f*A - b2 E)(a3 f*A - b3 E); mixed terms vanish.
Rational blowup_triple(const BlowupClass& c1, const BlowupClass& c2, const BlowupClass& c3,
                       const BlowupLattice& lattice);
// E^3 making the class have zero self-intersection cube (a^3 A3 / beta^3).
Rational E3_from_null_cube(const BlowupClass& c, const Rational& A3);

struct CbInvariants {
  Rational H2;
  Rational HDelta;
  Int q_S = 0;
  bool delta_is_minus_2K() const { return HDelta == 2 * q_S * H2; }
};

// Base invariants of a conic bundle whose fibre-pullback class is F and whose
// anticanonical class is anti_K (both on the blowup):
//   H^2 = 1/2 (-K).F.F,  H.Delta = 4 q_S H^2 - (-K)^2.F.
CbInvariants cb_invariants(const BlowupLattice& lattice, const BlowupClass& anti_K, const BlowupClass& F,
                           Int q_S);

// ---------------------------------------------------------------------------
// Scenario files (JSON); see README for the schema.

LinkScenario parse_scenario_json(const std::string& text);
std::string scenario_to_json(const LinkScenario& scenario);
std::string format_solution(const LinkSolution& sol);

}  // namespace qfano
