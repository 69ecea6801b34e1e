#include "qfano/wps.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

namespace qfano {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<Int> parse_int_list(std::string_view text, std::string_view whole) {
  std::vector<Int> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::input, "malformed integer '" + tok + "' in '" + std::string(whole) + "'");
    }
  }
  return out;
}

// Visits every exponent tuple of the given weighted degree.
void for_each_monomial(const std::vector<Int>& weights, Int k,
                       const std::function<void(const std::vector<Int>&)>& visit) {
  if (k < 0) return;
  std::vector<Int> exps(weights.size(), 0);
  std::function<void(std::size_t, Int)> rec = [&](std::size_t i, Int left) {
    if (i + 1 == weights.size()) {
      if (left % weights[i] == 0) {
        exps[i] = left / weights[i];
        visit(exps);
      }
      return;
    }
    for (Int e = 0; e * weights[i] <= left; ++e) {
      exps[i] = e;
      rec(i + 1, left - e * weights[i]);
    }
  };
  if (weights.empty()) {
    if (k == 0) visit(exps);
    return;
  }
  rec(0, k);
}

void validate(const WeightedHypersurface& wh) {
  if (wh.weights.empty()) throw Error(ErrorKind::input, "hypersurface needs at least one weight");
  for (Int w : wh.weights)
    if (w < 1) throw Error(ErrorKind::input, "weights must be positive, got " + std::to_string(w));
  if (wh.degree < 0) throw Error(ErrorKind::input, "degree must be nonnegative");
  if (wh.action) {
    if (wh.action->order < 1) throw Error(ErrorKind::input, "group order must be >= 1");
    if (wh.action->chars.size() != wh.weights.size()) {
      throw Error(ErrorKind::input, "need one character per coordinate (" +
                                        std::to_string(wh.weights.size()) + "), got " +
                                        std::to_string(wh.action->chars.size()));
    }
  }
}

}  // namespace

WeightedHypersurface parse_hypersurface(std::string_view text) {
  WeightedHypersurface wh;
  std::string s(text);
  std::string head = s, tail;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    head = s.substr(0, slash);
    tail = s.substr(slash + 1);
  }
  auto colon = head.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::input, "hypersurface must look like 'w1,...,wn : d', got '" + s + "'");
  }
  wh.weights = parse_int_list(std::string_view(head).substr(0, colon), text);
  auto deg = parse_int_list(std::string_view(head).substr(colon + 1), text);
  if (deg.size() != 1) throw Error(ErrorKind::input, "exactly one degree expected in '" + s + "'");
  wh.degree = deg[0];
  if (!tail.empty()) {
    std::string t = trim(tail);
    if (t.rfind("mu", 0) != 0) throw Error(ErrorKind::input, "group action must start with 'mu' in '" + s + "'");
    t = t.substr(2);
    auto c1 = t.find(':');
    auto semi = t.find(';');
    if (c1 == std::string::npos || semi == std::string::npos || semi < c1) {
      throw Error(ErrorKind::input, "group action must look like 'mu n : c1,...,cn ; cf' in '" + s + "'");
    }
    CyclicAction act;
    auto n = parse_int_list(std::string_view(t).substr(0, c1), text);
    if (n.size() != 1) throw Error(ErrorKind::input, "one group order expected in '" + s + "'");
    act.order = n[0];
    act.chars = parse_int_list(std::string_view(t).substr(c1 + 1, semi - c1 - 1), text);
    auto cf = parse_int_list(std::string_view(t).substr(semi + 1), text);
    if (cf.size() != 1) throw Error(ErrorKind::input, "one equation character expected in '" + s + "'");
    act.cf = cf[0];
    wh.action = act;
  }
  validate(wh);
  return wh;
}

std::string format_hypersurface(const WeightedHypersurface& wh) {
  std::string s;
  for (std::size_t i = 0; i < wh.weights.size(); ++i) s += (i ? "," : "") + std::to_string(wh.weights[i]);
  s += " : " + std::to_string(wh.degree);
  if (wh.action) {
    s += " / mu " + std::to_string(wh.action->order) + " : ";
    for (std::size_t i = 0; i < wh.action->chars.size(); ++i)
      s += (i ? "," : "") + std::to_string(wh.action->chars[i]);
    s += " ; " + std::to_string(wh.action->cf);
  }
  return s;
}

Int fano_index(const WeightedHypersurface& wh) {
  Int total = std::accumulate(wh.weights.begin(), wh.weights.end(), Int{0});
  if (wh.degree >= total) {
    throw Error(ErrorKind::not_fano, "degree " + std::to_string(wh.degree) +
                                         " is not below the weight sum " + std::to_string(total));
  }
  return total - wh.degree;
}

Rational degree_A3(const WeightedHypersurface& wh) {
  Int prod = 1;
  for (Int w : wh.weights) prod *= w;
  return make_rational(wh.degree == 0 ? 1 : wh.degree, prod);
}

Int count_monomials(const std::vector<Int>& weights, Int k) {
  Int n = 0;
  for_each_monomial(weights, k, [&](const std::vector<Int>&) { ++n; });
  return n;
}

std::vector<Int> count_monomials_by_character(const std::vector<Int>& weights, const std::vector<Int>& chars,
                                              Int n, Int k) {
  std::vector<Int> out(static_cast<std::size_t>(n), 0);
  for_each_monomial(weights, k, [&](const std::vector<Int>& e) {
    Int c = 0;
    for (std::size_t i = 0; i < e.size(); ++i) c += e[i] * chars[i];
    out[static_cast<std::size_t>(bar(c, n).value)]++;
  });
  return out;
}

Int hilbert_coeff(const WeightedHypersurface& wh, Int k) {
  validate(wh);
  if (k < 0) throw Error(ErrorKind::precondition, "degree k must be >= 0");
  Int v = count_monomials(wh.weights, k);
  if (wh.degree > 0) v -= count_monomials(wh.weights, k - wh.degree);
  return v;
}

std::vector<Int> hilbert_series(const WeightedHypersurface& wh, Int M) {
  std::vector<Int> out;
  for (Int k = 0; k <= M; ++k) out.push_back(hilbert_coeff(wh, k));
  return out;
}

EquivariantSeries equivariant_series(const WeightedHypersurface& wh, Int M) {
  validate(wh);
  if (!wh.action) throw Error(ErrorKind::precondition, "equivariant series needs a group action");
  const auto& act = *wh.action;
  Int n = act.order;
  if (wh.degree > 0) {
    auto at_d = count_monomials_by_character(wh.weights, act.chars, n, wh.degree);
    if (at_d[static_cast<std::size_t>(bar(act.cf, n).value)] == 0) {
      throw Error(ErrorKind::inconsistent_action, "no degree-" + std::to_string(wh.degree) +
                                                      " monomial has character " + std::to_string(act.cf) +
                                                      " mod " + std::to_string(n));
    }
  }
  EquivariantSeries s{n, {}};
  for (Int m = 0; m <= M; ++m) {
    auto row = count_monomials_by_character(wh.weights, act.chars, n, m);
    if (wh.degree > 0 && m >= wh.degree) {
      auto sub = count_monomials_by_character(wh.weights, act.chars, n, m - wh.degree);
      // multiplying by the equation shifts characters by cf
      for (Int j = 0; j < n; ++j)
        row[static_cast<std::size_t>(bar(j + act.cf, n).value)] -= sub[static_cast<std::size_t>(j)];
    }
    s.h.push_back(row);
  }
  return s;
}

EquivariantSeries retwist(const EquivariantSeries& series, Int c) {
  EquivariantSeries out{series.order, series.h};
  const Int n = series.order;
  for (std::size_t m = 0; m < series.h.size(); ++m)
    for (Int j = 0; j < n; ++j)
      out.h[m][static_cast<std::size_t>(j)] =
          series.h[m][static_cast<std::size_t>(bar(j + static_cast<Int>(m) * c, n).value)];
  return out;
}

std::string format_series(const EquivariantSeries& series) {
  std::string out;
  for (std::size_t m = 0; m < series.h.size(); ++m) {
    for (std::size_t j = 0; j < series.h[m].size(); ++j) {
      Int c = series.h[m][j];
      if (c == 0) continue;
      std::string mono;
      if (m > 0) mono += m == 1 ? "t" : "t^" + std::to_string(m);
      if (j > 0) mono += j == 1 ? "s" : "s^" + std::to_string(j);
      std::string term = (c == 1 && !mono.empty()) ? mono : std::to_string(c) + mono;
      out += (out.empty() ? "" : "+") + term;
    }
  }
  return out.empty() ? "0" : out;
}

// ---- X10 normal forms --------------------------------------------------------

const char* normal_form_name(NormalFormCase c) {
  switch (c) {
    case NormalFormCase::case_a_cyclic: return "case-a-cyclic";
    case NormalFormCase::case_b_cAx4: return "case-b-cAx4";
    case NormalFormCase::rational_by_projection: return "rational-by-projection";
    case NormalFormCase::non_terminal: return "non-terminal";
  }
  return "?";
}

Int weighted_degree(const Exponent& e) {
  Int d = 0;
  for (std::size_t i = 0; i < 5; ++i) d += static_cast<Int>(i + 1) * e[i];
  return d;
}

namespace {

Exponent mono(Int e1, Int e2, Int e3, Int e4, Int e5) { return {e1, e2, e3, e4, e5}; }

Rational coeff(const SparsePoly& p, const Exponent& e) {
  auto it = p.find(e);
  return it == p.end() ? Rational(0) : it->second;
}

void add_term(SparsePoly& p, const Exponent& e, const Rational& c) {
  Rational& slot = p[e];
  slot += c;
  if (slot == 0) p.erase(e);
}

}  // namespace

X10Classification classify_x10(const SparsePoly& equation) {
  for (const auto& [e, c] : equation) {
    for (Int v : e)
      if (v < 0) throw Error(ErrorKind::input, "negative exponent in equation");
    if (weighted_degree(e) != 10) {
      throw Error(ErrorKind::input, "monomial of weighted degree " + std::to_string(weighted_degree(e)) +
                                        " in a degree-10 equation for P(1,2,3,4,5)");
    }
  }
  X10Classification out;
  SparsePoly p;
  for (const auto& [e, c] : equation)
    if (c != 0) p[e] = c;

  Rational a = coeff(p, mono(0, 0, 0, 0, 2));
  if (a == 0) {
    out.reason = "x5^2 absent: the index-5 point lies on X and is not terminal";
    return out;
  }
  // normalize to x5^2 + x5*L + R, then complete the square: R - L^2/4
  for (auto& [e, c] : p) c /= a;
  SparsePoly L, R;
  for (const auto& [e, c] : p) {
    if (e[4] == 2) continue;
    if (e[4] == 1) {
      Exponent rest = e;
      rest[4] = 0;
      L[rest] = c;
    } else {
      R[e] = c;
    }
  }
  for (const auto& [e1, c1] : L)
    for (const auto& [e2, c2] : L) {
      Exponent prod{};
      for (std::size_t i = 0; i < 5; ++i) prod[i] = e1[i] + e2[i];
      add_term(R, prod, -c1 * c2 / 4);
    }

  bool x4x3sq = coeff(R, mono(0, 0, 2, 1, 0)) != 0;
  bool x3cube_x1 = coeff(R, mono(1, 0, 3, 0, 0)) != 0;
  bool x4sq_x2 = coeff(R, mono(0, 1, 0, 2, 0)) != 0;
  if (!x4x3sq && !x3cube_x1) {
    out.reason = "neither x1*x3^3 nor x4*x3^2: the index-3 point is not a cyclic quotient";
    return out;
  }
  if (x4sq_x2) {
    out.verdict = NormalFormCase::case_a_cyclic;
    out.phi6_has_x3sq = x4x3sq;
    out.phi10_has_x3cube_x1 = x3cube_x1;
    out.reason = "x4^2*x2 present: the index-4 point is a cyclic quotient";
    return out;
  }
  if (!x4x3sq) {
    out.reason = "x4^2*x2 and x4*x3^2 absent: the index-4 point is not terminal";
    return out;
  }
  out.lambda = coeff(R, mono(2, 0, 0, 2, 0));
  if (*out.lambda == 0) {
    out.verdict = NormalFormCase::rational_by_projection;
    out.reason = "cAx/4 index-4 point with lambda = 0: projection to P(1,2,3,5) is birational";
  } else {
    out.verdict = NormalFormCase::case_b_cAx4;
    out.reason = "cAx/4 index-4 point with lambda != 0: x5 -/+ x4 coordinate change gives rationality";
  }
  out.rational = true;
  return out;
}

SparsePoly parse_poly5(std::string_view text) {
  // terms separated by + or -, factors by '*' or whitespace, powers by '^'
  SparsePoly p;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorKind::input, "empty polynomial");
  std::size_t i = 0;
  while (i < s.size()) {
    Rational sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    i = j;
    if (term.empty()) throw Error(ErrorKind::input, "dangling sign in polynomial '" + std::string(text) + "'");
    Rational c = sign;
    Exponent e{};
    std::stringstream ts(term);
    std::string factor;
    while (std::getline(ts, factor, '*')) {
      if (factor.empty()) throw Error(ErrorKind::input, "empty factor in '" + term + "'");
      if (factor[0] == 'x') {
        Int power = 1;
        auto caret = factor.find('^');
        std::string var = factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        if (caret != std::string::npos) power = std::stoll(factor.substr(caret + 1));
        if (var.size() != 1 || var[0] < '1' || var[0] > '5') {
          throw Error(ErrorKind::input, "variables are x1..x5, got '" + factor + "'");
        }
        e[static_cast<std::size_t>(var[0] - '1')] += power;
      } else {
        c *= parse_rational(factor);
      }
    }
    add_term(p, e, c);
  }
  return p;
}

// ---- del Pezzo table -----------------------------------------------------------

const std::vector<DelPezzoSurface>& del_pezzo_table() {
  static const std::vector<DelPezzoSurface> table = [] {
    std::vector<DelPezzoSurface> t{
        {"P2", 9, 3, make_rational(1), "smooth", {1, 1, 1}, 0, {}},
        {"P(1,1,2)", 8, 4, make_rational(1, 2), "A1", {1, 1, 2}, 0, {}},
        {"P(1,2,3)", 6, 6, make_rational(1, 6), "A1A2", {1, 2, 3}, 0, {}},
        {"S_DP5", 5, 5, make_rational(1, 5), "A4", {1, 2, 3, 5}, 6, {}},
    };
    for (auto& s : t)
      for (Int k = 1; k <= 5; ++k) s.dims.push_back(dp_dims(s, k));
    return t;
  }();
  return table;
}

const DelPezzoSurface& del_pezzo(std::string_view name) {
  for (const auto& s : del_pezzo_table())
    if (s.name == name) return s;
  throw Error(ErrorKind::input, "unknown del Pezzo surface '" + std::string(name) +
                                    "' (known: P2, P(1,1,2), P(1,2,3), S_DP5)");
}

Int dp_dims(const DelPezzoSurface& surface, Int k) {
  if (k < 1) throw Error(ErrorKind::precondition, "dp_dims needs k >= 1");
  WeightedHypersurface wh{surface.weights, surface.degree, std::nullopt};
  return hilbert_coeff(wh, k) - 1;
}

}  // namespace qfano
