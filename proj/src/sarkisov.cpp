#include "qfano/sarkisov.hpp"

#include "json.hpp"

#include <algorithm>
#include <sstream>

namespace qfano {

namespace {

Rational rat(Int v) { return make_rational(v); }

[[noreturn]] void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace

std::vector<Int> default_qhat_domain() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 13, 17, 19}; }

void validate(const LinkScenario& sc) {
  if (sc.q < 2) fail(ErrorKind::precondition, "scenario: q must be >= 2, got " + std::to_string(sc.q));
  if (sc.n <= 0 || sc.n >= sc.q)
    fail(ErrorKind::precondition,
         "scenario: need 0 < n < q, got n=" + std::to_string(sc.n) + " q=" + std::to_string(sc.q));
  if (sc.dimM < 1) fail(ErrorKind::precondition, "scenario: a mobile system has dimM >= 1");
  if (sc.gorenstein_cap < 0) fail(ErrorKind::precondition, "scenario: gorenstein_cap must be >= 0");
  for (const auto& p : sc.points) {
    if (p.spec.kind == PointKind::gorenstein) continue;
    if (p.spec.r < 2) fail(ErrorKind::invalid_point, "scenario: point " + p.label + " has index < 2");
    auto m = local_m_of(sc, p, sc.n);
    if (m && (*m < 0 || *m >= p.spec.r))
      fail(ErrorKind::precondition, "scenario: local_m of " + p.label + " outside [0, r)");
  }
  for (Int qh : sc.qhat_domain)
    if (qh < 1) fail(ErrorKind::precondition, "scenario: qhat domain entries must be positive");
}

std::optional<Int> known_dim(const LinkScenario& sc, Int k) {
  if (k == sc.n) return sc.dimM;
  for (auto [kk, d] : sc.known_dims)
    if (kk == k) return d;
  return std::nullopt;
}

std::optional<Int> local_m_of(const LinkScenario& sc, const LinkPoint& point, Int k) {
  const Int r = point.spec.r;
  if (point.spec.kind == PointKind::gorenstein || r <= 1) return 0;
  if (k == sc.n && point.local_m) return bar(*point.local_m, r).value;
  std::optional<Int> a = point.a_local;
  if (!a && gcd(sc.q, r) == 1) a = inv_mod(sc.q, r).value;
  if (!a) return std::nullopt;
  return bar(k * *a, r).value;
}

Int ct_multiplier(const LinkScenario& sc) {
  Int best = 0;
  for (const auto& p : sc.points) {
    if (p.spec.kind == PointKind::gorenstein) continue;
    if (auto m = local_m_of(sc, p, sc.n)) best = std::max(best, *m);
  }
  return best;
}

std::vector<Rational> discrepancy_candidates(const SingularPointSpec& point, Int gorenstein_cap) {
  std::vector<Rational> out;
  switch (point.kind) {
    case PointKind::gorenstein:
      for (Int k = 1; k <= gorenstein_cap; ++k) out.push_back(rat(k));
      break;
    case PointKind::cyclic:
    case PointKind::cAx4:
      out.push_back(make_rational(1, point.r));
      break;
    case PointKind::cA:
      for (Int k = 1; k <= point.aw; ++k)
        if (point.aw % k == 0) out.push_back(make_rational(k, point.r));
      break;
    case PointKind::cD2:
    case PointKind::cE2:
      for (Int k = 1; k <= 2 * gorenstein_cap; ++k) out.push_back(make_rational(k, 2));
      break;
  }
  return out;
}

std::vector<Center> centers_of(const LinkScenario& sc) {
  std::vector<Center> out;
  for (std::size_t i = 0; i < sc.points.size(); ++i) {
    const auto& p = sc.points[i];
    if (!p.may_be_center || p.spec.kind == PointKind::gorenstein) continue;
    for (const auto& a : discrepancy_candidates(p.spec, sc.gorenstein_cap)) {
      Center c;
      c.point = static_cast<Int>(i);
      c.label = p.label.empty() ? "P" + std::to_string(p.spec.r) : p.label;
      c.r = p.spec.r;
      c.alpha = a;
      c.kawamata = p.spec.kind == PointKind::cyclic && a == make_rational(1, p.spec.r);
      out.push_back(std::move(c));
    }
  }
  for (Int k = 1; k <= sc.gorenstein_cap; ++k) {
    Center c;
    c.label = "G";
    c.alpha = rat(k);
    out.push_back(std::move(c));
  }
  if (out.empty()) fail(ErrorKind::ill_posed, "scenario: no admissible blowup centre");
  return out;
}

bool BetaLattice::contains(const Rational& x) const {
  if (x < 0) return false;
  return is_integer(Rational((x - offset) / step));
}

BetaLattice beta_lattice(const Center& center, std::optional<Int> local_m) {
  if (center.point < 0) return {0, 1};
  if (!local_m) return {0, make_rational(1, center.r)};
  // M + mK is Cartier near the centre, so beta - m alpha is an integer.
  Rational shift = *local_m * center.alpha;
  shift -= floor_int(shift);
  return {shift, 1};
}

const char* link_kind_name(LinkKind kind) {
  return kind == LinkKind::fibration ? "fibration" : "birational";
}

namespace {

std::optional<Int> center_local_m(const LinkScenario& sc, const Center& c, Int k) {
  if (c.point < 0) return 0;
  return local_m_of(sc, sc.points[static_cast<std::size_t>(c.point)], k);
}

}  // namespace

bool satisfies_relations(const LinkScenario& sc, const LinkSolution& sol) {
  const Rational term = sc.q * sol.beta - sc.n * sol.alpha;
  if (rat(sc.n * sol.qhat) != sc.q * sol.s + term * sol.e) return false;
  if (!(term >= sol.alpha && sol.alpha > 0)) return false;
  if (sc.torsion_free && !is_integer(term)) return false;
  for (const auto& [k, v] : sol.secondary)
    if (rat(k * sol.qhat) != sc.q * v.s + (sc.q * v.beta - k * sol.alpha) * sol.e) return false;
  if (sol.divisorial) {
    const auto& d = *sol.divisorial;
    if (d.b * sol.e != rat(sol.qhat * d.delta - sc.q)) return false;
    for (const auto& [k, g] : d.gamma) {
      Int sk = k == sc.n ? sol.s : sol.secondary.count(k) ? sol.secondary.at(k).s : -1;
      if (sk >= 0 && g * sol.e != rat(sk * d.delta - k)) return false;
    }
  }
  return true;
}

void enumerate_primary(const LinkScenario& sc, const std::function<void(const PrimaryEvent&)>& visit) {
  validate(sc);
  const auto domain = sc.qhat_domain.empty() ? default_qhat_domain() : sc.qhat_domain;
  const Int m_ct = ct_multiplier(sc);
  for (const auto& center : centers_of(sc)) {
    const BetaLattice lattice = beta_lattice(center, center_local_m(sc, center, sc.n));
    for (Int qhat : domain) {
      for (Int s = 0; sc.q * s <= sc.n * qhat; ++s) {
        const Int rest = sc.n * qhat - sc.q * s;
        // (q beta - n alpha) e = rest with q beta - n alpha >= alpha bounds e.
        const Int emax = std::max<Int>(1, floor_int(Rational(rat(rest) / center.alpha)));
        for (Int e = 1; e <= emax; ++e) {
          PrimaryEvent ev;
          auto& sol = ev.sol;
          sol.center = center;
          sol.alpha = center.alpha;
          sol.qhat = qhat;
          sol.s = s;
          sol.e = e;
          sol.kind = s == 0 ? LinkKind::fibration : LinkKind::birational;
          const Rational term = make_rational(rest, e);
          sol.beta = (term + sc.n * center.alpha) / sc.q;
          if (!(term >= center.alpha))
            ev.killed_by = kPositivity;
          else if (sc.torsion_free && !is_integer(term))
            ev.killed_by = kIntegrality;
          else if (!lattice.contains(sol.beta))
            ev.killed_by = kLattice;
          else if (sol.beta < m_ct * center.alpha)
            ev.killed_by = kCtBound;
          else if (sol.kind == LinkKind::fibration && (qhat > 3 || (sc.fibration_index_one && qhat != 1)))
            ev.killed_by = kFiberIndex;
          visit(ev);
        }
      }
    }
  }
}

bool at_gorenstein_cap(const LinkScenario& sc, const LinkSolution& sol) {
  return sc.gorenstein_cap > 0 && sol.center.point < 0 && sol.alpha == sc.gorenstein_cap;
}

std::vector<LinkSolution> solve_main(const LinkScenario& sc) {
  std::vector<LinkSolution> out;
  enumerate_primary(sc, [&](const PrimaryEvent& ev) {
    if (!ev.killed_by) out.push_back(ev.sol);
  });
  return out;
}

std::vector<SecondaryValue> extend_class(const LinkScenario& sc, const LinkSolution& sol,
                                         const SecondaryClass& cls) {
  if (cls.k <= 0) fail(ErrorKind::precondition, "secondary class needs k > 0");
  std::optional<Int> m = cls.local_m;
  if (!m && cls.derive_local_m) m = center_local_m(sc, sol.center, cls.k);
  if (!m && sol.center.point < 0) m = 0;
  const BetaLattice lattice = beta_lattice(sol.center, m);
  std::vector<SecondaryValue> out;
  const Rational top = rat(cls.k * sol.qhat) + cls.k * sol.alpha * sol.e;
  for (Int sk = 0; sc.q * sk <= top; ++sk) {
    SecondaryValue v;
    v.s = sk;
    v.beta = (Rational(rat(cls.k * sol.qhat - sc.q * sk) / sol.e) + cls.k * sol.alpha) / sc.q;
    if (v.beta < 0 || (cls.beta_positive && v.beta == 0)) continue;
    if (!lattice.contains(v.beta)) continue;
    out.push_back(v);
  }
  return out;
}

std::vector<SecondaryValue> extend_secondary(const LinkScenario& sc, const LinkSolution& sol, Int k) {
  SecondaryClass cls;
  cls.label = std::to_string(k);
  cls.k = k;
  return extend_class(sc, sol, cls);
}

std::vector<DivisorialData> divisorial_relations(const LinkScenario& sc, const LinkSolution& sol,
                                                 const std::vector<Int>& ks, Int delta_max, bool b_integral) {
  if (sol.kind != LinkKind::birational)
    fail(ErrorKind::precondition, "divisorial relations need a birational link");
  if (delta_max <= 0) delta_max = 4 * sc.q;
  std::vector<DivisorialData> out;
  for (Int delta = 1; delta <= delta_max; ++delta) {
    const Rational b = make_rational(sol.qhat * delta - sc.q, sol.e);
    if (b <= 0 || (b_integral && !is_integer(b))) continue;
    std::vector<std::pair<Int, std::vector<Rational>>> options;
    bool feasible = true;
    for (Int k : ks) {
      std::vector<Int> s_values;
      if (k == sc.n)
        s_values = {sol.s};
      else if (auto it = sol.secondary.find(k); it != sol.secondary.end())
        s_values = {it->second.s};
      else
        for (const auto& v : extend_secondary(sc, sol, k)) s_values.push_back(v.s);
      std::vector<Rational> gammas;
      for (Int sk : s_values) {
        Rational g = make_rational(sk * delta - k, sol.e);
        if (g >= 0) gammas.push_back(g);
      }
      if (gammas.empty()) {
        feasible = false;
        break;
      }
      options.emplace_back(k, std::move(gammas));
    }
    if (!feasible) continue;
    std::vector<DivisorialData> partial(1, DivisorialData{delta, b, {}});
    for (const auto& [k, gammas] : options) {
      std::vector<DivisorialData> next;
      for (const auto& d : partial)
        for (const auto& g : gammas) {
          auto copy = d;
          copy.gamma[k] = g;
          next.push_back(std::move(copy));
        }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

RationalityVerdict rationality_verdict(const RationalityInputs& in, const RationalityClauses& clauses) {
  const Int q = in.qhat;
  auto at_least = [](const std::optional<Int>& p, Int v) { return p && *p >= v; };
  if (clauses.base_theorem && q >= 2) {
    if (at_least(in.p1, 4)) return {true, "p1>=4"};
    if (q >= 3 && at_least(in.p1, 3)) return {true, "q>=3,p1>=3"};
    if (q >= 4 && at_least(in.p1, 2)) return {true, "q>=4,p1>=2"};
    const bool not_112 = in.A3_not_1_12 || (in.A3 && *in.A3 != make_rational(1, 12));
    if (q >= 5 && at_least(in.p2, 2) && not_112) return {true, "q>=5,p2>=2,A3!=1/12"};
    if (q >= 6 && at_least(in.p3, 2)) return {true, "q>=6,p3>=2"};
    if (q >= 8) return {true, "q>=8"};
  }
  if (clauses.index_six && q == 6) return {true, "index-6"};
  if (clauses.index_seven_p1 && q == 7 && at_least(in.p1, 1)) return {true, "index-7,p1>0"};
  if (clauses.torsion_index5 && q >= 5 && in.torsion_order > 1) return {true, "index>=5,torsion"};
  return {false, ""};
}

Rational kawamata_E3(Int r, Int a) {
  if (r < 2 || a <= 0 || a >= r || gcd(a, r) != 1)
    fail(ErrorKind::invalid_point,
         "kawamata_E3: need 0 < a < r coprime, got r=" + std::to_string(r) + " a=" + std::to_string(a));
  return make_rational(r * r, a * (r - a));
}

Rational blowup_triple(const BlowupClass& c1, const BlowupClass& c2, const BlowupClass& c3,
                       const BlowupLattice& lattice) {
  return c1.a * c2.a * c3.a * lattice.A3 - c1.beta * c2.beta * c3.beta * lattice.E3;
}

Rational E3_from_null_cube(const BlowupClass& c, const Rational& A3) {
  if (c.beta == 0) fail(ErrorKind::precondition, "E3_from_null_cube: class has no E component");
  return Rational(c.a * c.a * c.a * A3 / (c.beta * c.beta * c.beta));
}

CbInvariants cb_invariants(const BlowupLattice& lattice, const BlowupClass& anti_K, const BlowupClass& F,
                           Int q_S) {
  if (q_S <= 0) fail(ErrorKind::precondition, "cb_invariants: q_S must be positive");
  CbInvariants out;
  out.q_S = q_S;
  out.H2 = blowup_triple(anti_K, F, F, lattice) / 2;
  if (out.H2 <= 0)
    fail(ErrorKind::degenerate_fibration, "cb_invariants: nonpositive H^2 = " + to_string(out.H2));
  out.HDelta = 4 * q_S * out.H2 - blowup_triple(anti_K, anti_K, F, lattice);
  return out;
}

// ---------------------------------------------------------------------------

using nlohmann::json;

LinkScenario parse_scenario_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    fail(ErrorKind::input, std::string("scenario: invalid JSON: ") + ex.what());
  }
  try {
    LinkScenario sc;
    sc.q = j.at("q").get<Int>();
    sc.n = j.at("n").get<Int>();
    sc.dimM = j.value("dimM", Int{1});
    sc.gorenstein_cap = j.value("gorenstein_cap", Int{4});
    sc.torsion_free = j.value("torsion_free", true);
    sc.fibration_index_one = j.value("fibration_index_one", true);
    if (j.contains("qhat_domain")) sc.qhat_domain = j.at("qhat_domain").get<std::vector<Int>>();
    if (j.contains("known_dims"))
      for (const auto& kd : j.at("known_dims")) sc.known_dims.emplace_back(kd.at(0).get<Int>(), kd.at(1).get<Int>());
    if (j.contains("points"))
      for (const auto& jp : j.at("points")) {
        LinkPoint p;
        p.spec.kind = parse_point_kind(jp.value("kind", std::string("cyclic")));
        p.spec.r = jp.value("r", Int{1});
        p.spec.aw = jp.value("aw", Int{1});
        p.spec.a = jp.value("a", Int{1});
        p.label = jp.value("label", std::string());
        if (jp.contains("a_local")) p.a_local = jp.at("a_local").get<Int>();
        if (jp.contains("local_m")) p.local_m = jp.at("local_m").get<Int>();
        p.may_be_center = jp.value("center", true);
        sc.points.push_back(std::move(p));
      }
    validate(sc);
    return sc;
  } catch (const json::exception& ex) {
    fail(ErrorKind::input, std::string("scenario: ") + ex.what());
  }
}

std::string scenario_to_json(const LinkScenario& sc) {
  json j;
  j["q"] = sc.q;
  j["n"] = sc.n;
  j["dimM"] = sc.dimM;
  j["gorenstein_cap"] = sc.gorenstein_cap;
  j["torsion_free"] = sc.torsion_free;
  j["fibration_index_one"] = sc.fibration_index_one;
  j["qhat_domain"] = sc.qhat_domain.empty() ? default_qhat_domain() : sc.qhat_domain;
  j["known_dims"] = json::array();
  for (auto [k, d] : sc.known_dims) j["known_dims"].push_back({k, d});
  j["points"] = json::array();
  for (const auto& p : sc.points) {
    json jp{{"kind", point_kind_name(p.spec.kind)}, {"r", p.spec.r}, {"aw", p.spec.aw}, {"a", p.spec.a},
            {"label", p.label}, {"center", p.may_be_center}};
    if (p.a_local) jp["a_local"] = *p.a_local;
    if (p.local_m) jp["local_m"] = *p.local_m;
    j["points"].push_back(std::move(jp));
  }
  return j.dump(2);
}

std::string format_solution(const LinkSolution& sol) {
  std::ostringstream os;
  os << "qhat=" << sol.qhat << " alpha=" << to_string(sol.alpha) << " beta=" << to_string(sol.beta)
     << " e=" << sol.e << " s=" << sol.s << " kind=" << link_kind_name(sol.kind) << " center=" << sol.center.label;
  for (const auto& [k, v] : sol.secondary) os << " s" << k << "=" << v.s << " beta" << k << "=" << to_string(v.beta);
  if (sol.divisorial) {
    os << " delta=" << sol.divisorial->delta << " b=" << to_string(sol.divisorial->b);
    for (const auto& [k, g] : sol.divisorial->gamma) os << " gamma" << k << "=" << to_string(g);
  }
  return os.str();
}

}  // namespace qfano
