#include "qfano/replay.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "qfano/orbifold_rr.hpp"
#include "qfano/search.hpp"
#include "qfano/wps.hpp"

namespace qfano {

Int ReplayCandidate::s_of(std::string_view label) const {
  const auto* c = find(label);
  return c ? c->value.s : -1;
}

const ClassValue* ReplayCandidate::find(std::string_view label) const {
  for (const auto& c : classes)
    if (c.label == label) return &c;
  return nullptr;
}

std::string ReplayCandidate::describe() const {
  std::ostringstream os;
  if (!branch.empty()) os << "[" << branch << "] ";
  os << "center=" << sol.center.label << " alpha=" << to_string(sol.alpha) << " qhat=" << sol.qhat
     << " e=" << sol.e << " s=" << sol.s << " beta=" << to_string(sol.beta) << " kind=" << link_kind_name(sol.kind);
  for (const auto& c : classes) os << " s" << c.label << "=" << c.value.s << " beta" << c.label << "=" << to_string(c.value.beta);
  return os.str();
}

std::string ReplayTrace::render(bool full) const {
  std::ostringstream os;
  os << "REPLAY " << id << "\n";
  if (full) {
    for (const auto& l : lines) os << l << "\n";
  } else {
    for (const auto& s : survivors) os << s.describe() << " SURVIVES\n";
  }
  os << "CANDIDATES: " << candidates << "\n";
  for (const auto& [k, v] : kill_counts) os << "KILLED-BY " << k << ": " << v << "\n";
  for (const auto& n : notes) os << "NOTE " << n << "\n";
  os << "CONCLUSION: " << conclusion << "\n";
  os << "SURVIVORS: " << survivors.size() << "\n";
  return os.str();
}

bool index_admits_A3_one_twelfth(Int q) {
  if (q != 6 && q != 7) return true;  // only consulted where the criteria need it
  static std::mutex mu;
  static std::map<Int, bool> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(q); it != cache.end()) return it->second;
  SearchConfig cfg;
  cfg.q = q;
  cfg.jobs = 1;
  bool found = false;
  for (const auto& row : search_q_serial(cfg).rows) {
    const auto& c = row.candidate;
    if (c.A3 != make_rational(1, 12)) continue;
    // A candidate the remaining clauses already settle does not count.
    RationalityInputs in;
    in.qhat = q;
    in.p1 = p_n(c, 1);
    in.p2 = p_n(c, 2);
    in.p3 = p_n(c, 3);
    in.A3 = c.A3;
    if (!rationality_verdict(in, {true, false, false, false}).rational) found = true;
  }
  cache[q] = found;
  return found;
}

namespace {

using Check = std::function<bool(const ReplayCandidate&)>;

LinkPoint pt(PointKind kind, Int r, std::string label, Int aw = 1, bool center = true) {
  LinkPoint p;
  p.spec.kind = kind;
  p.spec.r = r;
  p.spec.aw = aw;
  p.label = std::move(label);
  p.may_be_center = center;
  return p;
}

LinkPoint cyclic(Int r, std::string label, bool center = true) {
  return pt(PointKind::cyclic, r, std::move(label), 1, center);
}

// dim|kA| for k = 1..upto from orbifold Riemann-Roch.
std::vector<std::pair<Int, Int>> rr_dims(Int q, std::string_view basket, std::string_view A3, Int upto) {
  auto parsed = parse_basket(basket);
  auto c = make_candidate(q, parsed.basket, parse_rational(A3), upto);
  std::vector<std::pair<Int, Int>> out;
  auto dims = dims_of(c, upto);
  for (Int k = 1; k <= upto; ++k) out.emplace_back(k, dims[static_cast<std::size_t>(k - 1)]);
  return out;
}

SecondaryClass plain(Int k) {
  SecondaryClass c;
  c.label = std::to_string(k);
  c.k = k;
  return c;
}

SecondaryClass twist(std::string label, Int k, std::optional<Int> local_m, Int dim,
                     std::function<bool(const LinkSolution&)> applies) {
  SecondaryClass c;
  c.label = std::move(label);
  c.k = k;
  c.local_m = local_m;
  c.derive_local_m = false;
  c.twisted = true;
  c.beta_positive = true;
  c.dim = dim;
  c.applies = std::move(applies);
  return c;
}

bool birational(const ReplayCandidate& c) { return c.sol.kind == LinkKind::birational; }

SideConstraint six_m1() {
  return {"sixfold-M1", "6 M_1 is a member of M = |6A|, so 6 beta_1 >= beta",
          [](const ReplayCandidate& c) {
            const auto* m1 = c.find("1");
            return m1 && 6 * m1->value.beta < c.sol.beta;
          }};
}

// An index-5 target with p2 >= 2 is the degree-10 hypersurface in
// P(1,2,3,4,5); the transform of M_k lies in |s_k A| there, so its
// dimension bounds dim M_k.
SideConstraint index5_target_dims() {
  return {"index5-target-dims",
          "an index-5 target with p2 >= 2 is the degree-10 hypersurface in P(1,2,3,4,5); the transform of M_k is "
          "a subsystem of |s_k A| on it",
          [](const ReplayCandidate& c) {
            if (!birational(c) || c.sol.qhat != 5) return false;
            static const auto h = hilbert_series(WeightedHypersurface{{1, 2, 3, 4, 5}, 10, std::nullopt}, 12);
            for (const auto& cv : c.classes)
              if (cv.dim && cv.value.s < static_cast<Int>(h.size()) && *cv.dim + 1 > h[static_cast<std::size_t>(cv.value.s)])
                return true;
            return false;
          }};
}

SideConstraint e_exceeds_one(std::string basis) {
  return {"e-exceeds-one", std::move(basis), [](const ReplayCandidate& c) { return birational(c) && c.sol.e == 1; }};
}

SideConstraint fibration_rational(std::string basis) {
  return {"fibration-rational", std::move(basis),
          [](const ReplayCandidate& c) { return c.sol.kind == LinkKind::fibration; }};
}

const RationalityClauses kBase{true, false, false, false};
const RationalityClauses kWithIndex67{true, true, true, false};

std::vector<ReplayConfig> build_library() {
  std::vector<ReplayConfig> lib;

  {  // index 3 with 3-torsion
    ReplayConfig cfg;
    cfg.id = "index3-torsion3-pencil";
    cfg.alias = "lemma-5.4";
    cfg.summary = "q=3, Cl torsion Z/3, B=(2,3^2,12), A^3=1/4; M=|2A| (a pencil), A ~ 11(-K) at the index-12 point";
    cfg.conclusion = "no link survives: X is rational";
    ReplayBranch br;
    br.scenario.q = 3;
    br.scenario.n = 2;
    br.scenario.dimM = 1;
    br.scenario.torsion_free = false;
    auto p12 = cyclic(12, "P12");
    p12.a_local = 11;
    br.scenario.points = {cyclic(2, "P2"), cyclic(3, "P3"), p12};
    br.target_clauses = kBase;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {  // index 5, B = (2, 9^2)
    ReplayConfig cfg;
    cfg.id = "index5-basket-2-9-9";
    cfg.alias = "lemma-5.5";
    cfg.summary = "q=5, B=(2,9^2), A^3=1/18; M=|4A| (a pencil); index-9 locus may be one cA/9 point of axial weight 2";
    cfg.conclusion = "survivors: a fibration with qhat=1, or a target of index 6 or 7 with s=4";
    ReplayBranch br;
    br.scenario.q = 5;
    br.scenario.n = 4;
    br.scenario.dimM = 1;
    br.scenario.points = {cyclic(2, "P2"), pt(PointKind::cA, 9, "P9", 2)};
    br.scenario.known_dims = {{1, 0}, {2, 0}, {3, 0}};
    br.classes = {plain(1)};
    br.target_clauses = kBase;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {  // index 7, B = (2, 6, 10)
    ReplayConfig cfg;
    cfg.id = "index7-basket-2-6-10";
    cfg.alias = "lemma-5.8";
    cfg.summary = "q=7, B=(2,6,10), A^3=1/30; M=|6A| (dim 4); when s_1=0 and e=2 the group Cl(X) has 2-torsion T and |3A+T| is a pencil";
    cfg.conclusion = "no link survives: X is rational";
    ReplayBranch br;
    br.scenario.q = 7;
    br.scenario.n = 6;
    br.scenario.dimM = 4;
    br.scenario.points = {cyclic(2, "P2"), cyclic(6, "P6"), cyclic(10, "P10")};
    br.scenario.known_dims = rr_dims(7, "2,6,10:3", "1/30", 6);
    br.classes = {plain(1), twist("3'", 3, std::nullopt, 1, [](const LinkSolution& s) {
                    auto it = s.secondary.find(1);
                    return s.e == 2 && it != s.secondary.end() && it->second.s == 0;
                  })};
    br.constraints = {six_m1()};
    br.target_clauses = kBase;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {  // index 5 with 2-torsion: two numerical cases
    ReplayConfig cfg;
    cfg.id = "index5-torsion2-quartic";
    cfg.alias = "prop-5.7";
    cfg.summary = "q=5 with Cl torsion Z/2 and T generating it; M=|4A|; cases B=(4^2,12), A^3=1/12 and B=(2,4,14), A^3=1/28";
    cfg.conclusion = "no link survives in either case: X is rational";
    {
      ReplayBranch br;
      br.label = "B=(4^2,12)";
      br.scenario.q = 5;
      br.scenario.n = 4;
      br.scenario.dimM = 3;
      br.scenario.points = {cyclic(12, "P12"), cyclic(4, "P4"), pt(PointKind::cA, 4, "P4*", 2)};
      // T ~ 6(-K) and 3A + T ~ 9(-K) at the index-12 point.
      br.classes = {twist("3'", 3, 9, 1, [](const LinkSolution& s) { return s.center.label == "P12"; })};
      br.target_clauses = kBase;
      cfg.branches.push_back(std::move(br));
    }
    {
      ReplayBranch br;
      br.label = "B=(2,4,14)";
      br.scenario.q = 5;
      br.scenario.n = 4;
      br.scenario.dimM = 1;
      br.scenario.points = {cyclic(14, "P14"), cyclic(4, "P4"), cyclic(2, "P2")};
      br.scenario.known_dims = rr_dims(5, "2,4,14:5", "1/28", 4);
      // T ~ 7(-K) and 4A + T ~ 5(-K) at the index-14 point.
      br.classes = {plain(1), twist("4'", 4, 5, 1, [](const LinkSolution& s) { return s.center.label == "P14"; })};
      br.constraints = {{"torsion-free-target",
                         "a target with torsion would have p3 >= 2 and be rational; a torsion-free target forces "
                         "d = e/2 = 1, i.e. M_1 is the contracted divisor and s_1 = 0",
                         [](const ReplayCandidate& c) { return birational(c) && c.s_of("1") != 0; }}};
      br.target_clauses = kBase;
      cfg.branches.push_back(std::move(br));
    }
    lib.push_back(std::move(cfg));
  }

  {  // index 5, B = (2^2, 3, 4): the conic bundle link
    ReplayConfig cfg;
    cfg.id = "index5-x10-conic-bundle";
    cfg.alias = "prop-6.2";
    cfg.summary = "q=5, B=(2^2,3,4), A^3=1/12, Cl torsion free; M=|3A| (dim 2); the index-4 point is cyclic or cAx/4";
    cfg.conclusion = "every survivor is a fibration over a base of fibre index 1 with s=0, e=1";
    ReplayBranch br;
    br.scenario.q = 5;
    br.scenario.n = 3;
    br.scenario.dimM = 2;
    br.scenario.points = {pt(PointKind::cAx4, 4, "P4", 2), cyclic(3, "P3"), pt(PointKind::cA, 2, "P2", 2)};
    br.scenario.known_dims = {{1, 0}, {2, 1}, {3, 2}, {4, 4}, {5, 6}};
    br.classes = {plain(2)};
    br.target_clauses = kBase;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {  // index 7, B = (2, 3, 13)
    ReplayConfig cfg;
    cfg.id = "index7-basket-2-3-13";
    cfg.alias = "prop-7.1";
    cfg.summary = "q=7, B=(2,3,13), A^3=1/78; M=|6A| (a pencil)";
    cfg.conclusion = "no link survives: X is rational";
    ReplayBranch br;
    br.scenario.q = 7;
    br.scenario.n = 6;
    br.scenario.dimM = 1;
    br.scenario.points = {cyclic(2, "P2"), cyclic(3, "P3"), cyclic(13, "P13")};
    br.scenario.known_dims = rr_dims(7, "2,3,13:6", "1/78", 6);
    br.classes = {plain(1)};
    br.constraints = {
        six_m1(),
        fibration_rational("a surface base would give M ~ 2 M_1; over P^1, M_1 is a fibre of multiplicity 6, the "
                           "generic fibre is a sextic del Pezzo surface with a rational point, hence rational"),
        {"torsion-free-target",
         "s_1 = 0 makes the contracted divisor a member of |A|, so d = 1; X is torsion free, hence so is the target "
         "and e = d = 1",
         [](const ReplayCandidate& c) { return birational(c) && c.s_of("1") == 0 && c.sol.e != 1; }},
    };
    br.target_clauses = kBase;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {  // index 6: the three numerical cases
    ReplayConfig cfg;
    cfg.id = "index6-pencil";
    cfg.alias = "prop-7.2";
    cfg.summary = "q=6, the three cases with p3 <= 1; M=|5A| (a pencil); all points cyclic, Cl torsion free";
    cfg.conclusion = "no link survives in any case: every index-6 Q-Fano threefold is rational";
    struct Case {
      const char* label;
      const char* basket;
      const char* A3;
      Int r1, r2;
    };
    for (const Case& cs : {Case{"B=(5,17)", "5:2,17:6", "2/85", 5, 17}, Case{"B=(7,11)", "7:2,11:3", "2/77", 7, 11},
                           Case{"B=(5,11)", "5:2,11:5", "1/55", 5, 11}}) {
      ReplayBranch br;
      br.label = cs.label;
      br.scenario.q = 6;
      br.scenario.n = 5;
      br.scenario.dimM = 1;
      br.scenario.points = {cyclic(cs.r1, "P" + std::to_string(cs.r1)), cyclic(cs.r2, "P" + std::to_string(cs.r2))};
      br.scenario.known_dims = rr_dims(6, cs.basket, cs.A3, 5);
      br.constraints = {
          fibration_rational("with s_5 = 0 the members of |A|, |2A|, |3A| are vertical; a surface base contradicts "
                             "the base-surface dimension table, and over P^1 they are multiple fibres, giving a "
                             "rational del Pezzo fibration of degree 5 or a contradiction in Cl(X)"),
          {"index5-target",
           "p2 of an index-5 target is >= 2, so it is the degree-10 hypersurface, which is torsion free; then "
           "|A_X| is empty and e = 1 force torsion in Cl(X)",
           [](const ReplayCandidate& c) { return birational(c) && c.sol.qhat == 5; }},
      };
      br.target_clauses = kWithIndex67;
      cfg.branches.push_back(std::move(br));
    }
    lib.push_back(std::move(cfg));
  }

  // The three numerical cases of index 7 with p1 = 0 and p3 <= 1.
  const auto dims_2223_4_5 = std::vector<std::pair<Int, Int>>{{1, -1}, {2, 0}, {3, 0}, {4, 1}, {5, 1}, {6, 2}};
  const std::string torsion_e1 =
      "|A_X| is empty and X is torsion free: e = 1 would give the target torsion of order d >= 2, which is "
      "impossible for a non-rational target of index >= 3";

  {
    ReplayConfig cfg;
    cfg.id = "index7-basket-2223-4-5-quartic";
    cfg.alias = "prop-8.2";
    cfg.summary = "q=7, B=(2^3,3,4,5), A^3=1/60; M=|4A| (a pencil); the index-2 locus is one cA/2 point of axial "
                  "weight <= 3";
    cfg.conclusion = "unique survivor: Kawamata blowup of the index-5 point, target of index 5 with s=2, e=3";
    ReplayBranch br;
    br.scenario.q = 7;
    br.scenario.n = 4;
    br.scenario.dimM = 1;
    br.scenario.points = {cyclic(5, "P5"), cyclic(4, "P4"), cyclic(3, "P3"), pt(PointKind::cA, 2, "P2", 3),
                          pt(PointKind::cA, 2, "P2'", 2)};
    br.scenario.known_dims = dims_2223_4_5;
    br.classes = {plain(2), plain(3), plain(6)};
    br.constraints = {e_exceeds_one(torsion_e1), index5_target_dims()};
    br.target_clauses = kWithIndex67;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {
    ReplayConfig cfg;
    cfg.id = "index7-basket-3-8-9";
    cfg.alias = "prop-8.4";
    cfg.summary = "q=7, B=(3,8,9), A^3=1/72; M=|6A| (a pencil); all points cyclic";
    cfg.conclusion = "unique survivor: Kawamata blowup of the index-9 point, target of index 5 with s=2, e=4";
    ReplayBranch br;
    br.scenario.q = 7;
    br.scenario.n = 6;
    br.scenario.dimM = 1;
    br.scenario.points = {cyclic(3, "P3"), cyclic(8, "P8"), cyclic(9, "P9")};
    br.scenario.known_dims = {{1, -1}, {2, -1}, {3, 0}, {4, 0}, {5, 1}, {6, 1}};
    br.classes = {plain(3), plain(4), plain(5)};
    br.constraints = {
        {"index3-target-torsion",
         "|A_X| = |2A_X| = empty: with e = 1 the target has torsion of order >= 3, and index-3 targets with such "
         "torsion are rational",
         [](const ReplayCandidate& c) { return birational(c) && c.sol.qhat == 3 && c.sol.e == 1; }},
        {"index5-target-e",
         "an index-5 target with p2 >= 2 is the torsion-free degree-10 hypersurface, so e = d >= 3 because "
         "|A_X| = |2A_X| = empty",
         [](const ReplayCandidate& c) { return birational(c) && c.sol.qhat == 5 && c.sol.e < 3; }},
        index5_target_dims(),
    };
    br.target_clauses = kWithIndex67;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {
    ReplayConfig cfg;
    cfg.id = "index7-basket-222-5-8";
    cfg.alias = "prop-8.5";
    cfg.summary = "q=7, B=(2^3,5,8), A^3=1/40; M=|4A| (a pencil)";
    cfg.conclusion = "unique survivor: Kawamata blowup of the index-8 point, target of index 5 with s=2, e=2";
    ReplayBranch br;
    br.scenario.q = 7;
    br.scenario.n = 4;
    br.scenario.dimM = 1;
    br.scenario.points = {cyclic(8, "P8"), cyclic(5, "P5"), pt(PointKind::cA, 2, "P2", 3),
                          pt(PointKind::cA, 2, "P2'", 2)};
    br.scenario.known_dims = rr_dims(7, "2^3,5:2,8:3", "1/40", 6);
    br.classes = {plain(2), plain(3), plain(5), plain(6)};
    br.constraints = {
        {"index5-target-e",
         "an index-5 target with p2 >= 2 is the torsion-free degree-10 hypersurface, so e = d >= 2 because "
         "|A_X| is empty",
         [](const ReplayCandidate& c) { return birational(c) && c.sol.qhat == 5 && c.sol.e < 2; }},
        index5_target_dims(),
    };
    br.target_clauses = kWithIndex67;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {
    ReplayConfig cfg;
    cfg.id = "index7-basket-2223-4-5-quintic";
    cfg.alias = "lemma-9.1";
    cfg.summary = "q=7, B=(2^3,3,4,5), A^3=1/60; M=|5A| (a pencil)";
    cfg.conclusion = "unique survivor: blowup of the index-4 point, target of index 3, e=2, s_2=0, s_3=s_5=1";
    ReplayBranch br;
    br.scenario.q = 7;
    br.scenario.n = 5;
    br.scenario.dimM = 1;
    br.scenario.points = {cyclic(5, "P5"), cyclic(4, "P4"), cyclic(3, "P3"), pt(PointKind::cA, 2, "P2", 3),
                          pt(PointKind::cA, 2, "P2'", 2)};
    br.scenario.known_dims = dims_2223_4_5;
    br.classes = {plain(2), plain(3), plain(4), plain(6)};
    br.constraints = {
        {"center-off-base-locus",
         "the quartic link gives beta_5 = 0 at the index-5 point, so it is not a base point of |5A|",
         [](const ReplayCandidate& c) { return c.sol.center.label == "P5"; }},
        e_exceeds_one(torsion_e1),
    };
    br.target_clauses = kWithIndex67;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  {
    ReplayConfig cfg;
    cfg.id = "index7-basket-2223-4-5-index3-center";
    cfg.alias = "lemma-9.2";
    cfg.summary = "q=7, B=(2^3,3,4,5); M = members of |6A| through the index-3 point; the Kawamata blowup of that "
                  "point is crepant for K + M/3";
    cfg.conclusion = "two survivors: (qhat=2, e=1) and (qhat=4, e=2), both with s_2=0 and s_3=e";
    ReplayBranch br;
    br.scenario.q = 7;
    br.scenario.n = 6;
    br.scenario.dimM = 1;
    br.scenario.gorenstein_cap = 0;
    br.scenario.points = {cyclic(3, "P3"), cyclic(4, "P4", false), cyclic(5, "P5", false)};
    br.scenario.known_dims = dims_2223_4_5;
    br.classes = {plain(2), plain(3)};
    br.constraints = {
        {"crepant-center",
         "both the index-3 and index-5 points are centres of canonical singularities of (X, M/3), so beta = 3 alpha",
         [](const ReplayCandidate& c) { return c.sol.beta != 3 * c.sol.alpha; }},
    };
    br.target_clauses = kBase;
    cfg.branches.push_back(std::move(br));
    lib.push_back(std::move(cfg));
  }

  return lib;
}

std::optional<Int> class_dim(const ReplayBranch& br, const SecondaryClass& cls) {
  if (cls.dim) return cls.dim;
  if (!cls.twisted) return known_dim(br.scenario, cls.k);
  return std::nullopt;
}

// Only the contracted divisor can have s_k = 0, and only when its system is
// a single divisor.
bool exceptional_divisor_violated(const ReplayCandidate& c) {
  if (!birational(c)) return false;
  int zeros = 0;
  for (const auto& cv : c.classes) {
    if (cv.value.s != 0) continue;
    ++zeros;
    if (cv.dim && *cv.dim >= 1) return true;
  }
  return zeros > 1;
}

std::optional<std::string> target_rational(const ReplayBranch& br, const ReplayCandidate& c) {
  if (!birational(c)) return std::nullopt;
  RationalityInputs in;
  in.qhat = c.sol.qhat;
  auto bump = [&](Int s, Int lower) {
    std::optional<Int>* slot = s == 1 ? &in.p1 : s == 2 ? &in.p2 : s == 3 ? &in.p3 : nullptr;
    if (slot) *slot = std::max(slot->value_or(0), lower);
  };
  bump(c.sol.s, br.scenario.dimM + 1);
  for (const auto& cv : c.classes)
    if (cv.dim && *cv.dim >= 0) bump(cv.value.s, *cv.dim + 1);
  bump(c.sol.e, 1);  // the image of E is an effective member of |e A|
  in.A3_not_1_12 = !index_admits_A3_one_twelfth(c.sol.qhat);
  auto verdict = rationality_verdict(in, br.target_clauses);
  if (verdict.rational) return verdict.clause;
  return std::nullopt;
}

}  // namespace

const std::vector<ReplayConfig>& replay_library() {
  static const std::vector<ReplayConfig> lib = build_library();
  return lib;
}

const ReplayConfig& find_replay(std::string_view id) {
  for (const auto& cfg : replay_library())
    if (cfg.id == id || cfg.alias == id) return cfg;
  throw Error(ErrorKind::unknown_id, "unknown replay id: " + std::string(id));
}

ReplayTrace run_replay(const ReplayConfig& cfg) {
  ReplayTrace trace;
  trace.id = cfg.id;
  trace.conclusion = cfg.conclusion;
  auto record = [&](const ReplayCandidate& c, const std::string& killed) {
    ++trace.candidates;
    if (killed.empty()) {
      trace.lines.push_back(c.describe() + " SURVIVES");
      trace.survivors.push_back(c);
    } else {
      trace.lines.push_back(c.describe() + " KILLED " + killed);
      ++trace.kill_counts[killed];
    }
  };

  for (const auto& br : cfg.branches) {
    bool cap_noted = false;
    enumerate_primary(br.scenario, [&](const PrimaryEvent& ev) {
      if (!ev.killed_by && !cap_noted && at_gorenstein_cap(br.scenario, ev.sol)) {
        cap_noted = true;
        trace.notes.push_back("gorenstein-cap:" + (br.label.empty() ? std::string() : " [" + br.label + "]") +
                              " tuples pass the generic filters at alpha=" + std::to_string(br.scenario.gorenstein_cap) +
                              "; larger integer discrepancies are not enumerated");
      }
      ReplayCandidate base;
      base.branch = br.label;
      base.sol = ev.sol;
      if (ev.killed_by) {
        record(base, ev.killed_by);
        return;
      }
      std::vector<ReplayCandidate> partial{base};
      for (const auto& cls : br.classes) {
        std::vector<ReplayCandidate> next;
        for (auto& cand : partial) {
          if (cls.applies && !cls.applies(cand.sol)) {
            next.push_back(std::move(cand));
            continue;
          }
          auto values = extend_class(br.scenario, cand.sol, cls);
          if (values.empty()) {
            record(cand, "no-solution:" + cls.label);
            continue;
          }
          for (const auto& v : values) {
            auto copy = cand;
            if (!cls.twisted) copy.sol.secondary[cls.k] = v;
            copy.classes.push_back({cls.label, cls.k, v, class_dim(br, cls)});
            next.push_back(std::move(copy));
          }
        }
        partial = std::move(next);
      }
      for (const auto& cand : partial) {
        std::string killed;
        if (exceptional_divisor_violated(cand)) {
          killed = "exceptional-divisor";
        } else if (auto clause = target_rational(br, cand)) {
          killed = "target-theorem(" + *clause + ")";
        } else {
          for (const auto& sc : br.constraints)
            if (sc.kills(cand)) {
              killed = sc.id;
              break;
            }
        }
        record(cand, killed);
      }
    });
  }
  return trace;
}

ReplayTrace replay(std::string_view id) { return run_replay(find_replay(id)); }

}  // namespace qfano
