#include "qfano/basket.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace qfano {

BasketPoint make_point(Int r, Int b, Int multiplicity) {
  if (r < 2) throw Error(ErrorKind::invalid_point, "basket index must be >= 2, got " + std::to_string(r));
  if (multiplicity < 1) {
    throw Error(ErrorKind::invalid_point, "multiplicity must be >= 1, got " + std::to_string(multiplicity));
  }
  Int bb = bar(b, r).value;
  if (gcd(bb, r) != 1) {
    throw Error(ErrorKind::invalid_point, "pairing unit b=" + std::to_string(b) +
                                              " is not coprime to r=" + std::to_string(r));
  }
  if (bb > r / 2) bb = r - bb;
  return {r, bb, multiplicity};
}

Int Basket::size() const {
  Int n = 0;
  for (const auto& p : points) n += p.multiplicity;
  return n;
}

std::vector<Int> Basket::indices() const {
  std::vector<Int> out;
  for (const auto& p : points) out.insert(out.end(), static_cast<std::size_t>(p.multiplicity), p.r);
  std::sort(out.begin(), out.end());
  return out;
}

Basket make_basket(std::vector<BasketPoint> points) {
  std::map<std::pair<Int, Int>, Int> merged;
  for (const auto& p : points) {
    BasketPoint n = make_point(p.r, p.b, p.multiplicity);
    merged[{n.r, n.b}] += n.multiplicity;
  }
  Basket out;
  for (const auto& [key, mult] : merged) out.points.push_back({key.first, key.second, mult});
  return out;
}

Basket basket_from_indices(const std::vector<Int>& indices) {
  std::vector<BasketPoint> pts;
  for (Int r : indices) pts.push_back(make_point(r, 1));
  return make_basket(std::move(pts));
}

const char* point_kind_name(PointKind kind) {
  switch (kind) {
    case PointKind::cyclic: return "cyclic";
    case PointKind::cA: return "cA/r";
    case PointKind::cAx4: return "cAx/4";
    case PointKind::cD2: return "cD/2";
    case PointKind::cE2: return "cE/2";
    case PointKind::gorenstein: return "Gorenstein";
  }
  return "?";
}

PointKind parse_point_kind(std::string_view name) {
  if (name == "cyclic" || name == "cyclic-quotient") return PointKind::cyclic;
  if (name == "cA/r" || name == "cA") return PointKind::cA;
  if (name == "cAx/4" || name == "cAx4") return PointKind::cAx4;
  if (name == "cD/2" || name == "cD2") return PointKind::cD2;
  if (name == "cE/2" || name == "cE2") return PointKind::cE2;
  if (name == "Gorenstein" || name == "gorenstein") return PointKind::gorenstein;
  throw Error(ErrorKind::input, "unknown singular point kind '" + std::string(name) + "'");
}

std::vector<Int> expand_point(const SingularPointSpec& spec) {
  if (spec.kind == PointKind::gorenstein) return {};
  if (spec.r <= 1) {
    throw Error(ErrorKind::precondition, "expand_point needs index r > 1, got " + std::to_string(spec.r));
  }
  if (spec.aw < 1) throw Error(ErrorKind::precondition, "axial weight must be >= 1");
  if (spec.kind == PointKind::cAx4) {
    if (spec.r != 4) throw Error(ErrorKind::precondition, "cAx/4 point must have index 4");
    std::vector<Int> out{4};
    out.insert(out.end(), static_cast<std::size_t>(spec.aw - 1), 2);
    return out;
  }
  if (spec.kind == PointKind::cyclic && spec.aw != 1) {
    throw Error(ErrorKind::precondition, "cyclic quotient point must have axial weight 1");
  }
  return std::vector<Int>(static_cast<std::size_t>(spec.aw), spec.r);
}

Rational kawamata_sum(const std::vector<Int>& indices) {
  Rational s = 0;
  for (Int r : indices) s += make_rational(r * r - 1, r);
  return s;
}

Rational kawamata_sum(const Basket& basket) { return kawamata_sum(basket.indices()); }

Rational anticanonical_c2(const Basket& basket) {
  Rational s = kawamata_sum(basket);
  if (s >= 24) {
    throw Error(ErrorKind::non_terminal,
                "basket sum of (r - 1/r) is " + to_string(s) + " >= 24; no terminal Fano has it");
  }
  return Rational(24) - s;
}

Int global_index(const std::vector<Int>& indices) { return lcm_all(indices); }

Int global_index(const Basket& basket) { return global_index(basket.indices()); }

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

bool witness_shape_ok(const std::vector<Int>& sub, Int n) {
  Int total = 0;
  for (Int r : sub) total += r;
  switch (n) {
    case 2: return total == 16;
    case 3: return total == 18;
    case 5: {
      static const std::vector<std::vector<Int>> shapes{{5, 5, 5, 5}, {5, 5, 10}, {10, 10}};
      return std::find(shapes.begin(), shapes.end(), sub) != shapes.end();
    }
    case 7: return sub == std::vector<Int>{7, 7, 7};
    default: return false;
  }
}

}  // namespace

std::vector<std::vector<Int>> torsion_witnesses(const std::vector<Int>& indices, Int n,
                                                bool divisible_only) {
  if (!is_prime(n)) {
    throw Error(ErrorKind::precondition, "torsion order must be prime, got " + std::to_string(n));
  }
  std::vector<std::vector<Int>> out;
  if (n != 2 && n != 3 && n != 5 && n != 7) return out;

  std::map<Int, Int> counts;
  for (Int r : indices)
    if (!divisible_only || r % n == 0) counts[r]++;
  std::vector<std::pair<Int, Int>> groups(counts.begin(), counts.end());

  // walk all sub-multisets via per-index counts
  std::vector<Int> take(groups.size(), 0);
  while (true) {
    std::vector<Int> sub;
    for (std::size_t g = 0; g < groups.size(); ++g)
      sub.insert(sub.end(), static_cast<std::size_t>(take[g]), groups[g].first);
    if (!sub.empty() && witness_shape_ok(sub, n)) out.push_back(sub);
    std::size_t g = 0;
    while (g < groups.size() && take[g] == groups[g].second) take[g++] = 0;
    if (g == groups.size()) break;
    take[g]++;
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

std::optional<std::vector<Int>> torsion_basket_check(const std::vector<Int>& indices, Int n,
                                                     bool divisible_only) {
  auto all = torsion_witnesses(indices, n, divisible_only);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool qw_equals_qq(Int q, const Basket& basket) {
  if (q < 1) throw Error(ErrorKind::precondition, "Fano index must be >= 1");
  return gcd(q, global_index(basket)) == 1;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Int parse_positive(const std::string& tok, std::string_view whole) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used == tok.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::input, "malformed basket '" + std::string(whole) + "' near '" + tok + "'");
}

}  // namespace

ParsedBasket parse_basket(std::string_view text) {
  std::string body = trim(text);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  ParsedBasket out;
  std::vector<BasketPoint> pts;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string::npos) comma = body.size();
    std::string tok = trim(std::string_view(body).substr(start, comma - start));
    start = comma + 1;
    if (tok.empty()) {
      if (comma == body.size() && pts.empty()) break;
      throw Error(ErrorKind::input, "empty entry in basket '" + std::string(text) + "'");
    }
    Int mult = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      mult = parse_positive(trim(tok.substr(caret + 1)), text);
      tok = trim(tok.substr(0, caret));
    }
    Int b = 1;
    if (auto colon = tok.find(':'); colon != std::string::npos) {
      b = parse_positive(trim(tok.substr(colon + 1)), text);
      tok = trim(tok.substr(0, colon));
    } else {
      out.all_b_explicit = false;
    }
    Int r = parse_positive(tok, text);
    pts.push_back(make_point(r, b, mult));
    for (Int k = 0; k < mult; ++k) out.indices.push_back(r);
  }
  std::sort(out.indices.begin(), out.indices.end());
  out.basket = make_basket(std::move(pts));
  return out;
}

std::string format_indices(const std::vector<Int>& indices) {
  std::map<Int, Int> counts;
  for (Int r : indices) counts[r]++;
  std::string s = "(";
  bool first = true;
  for (const auto& [r, k] : counts) {
    if (!first) s += ",";
    first = false;
    s += std::to_string(r);
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s + ")";
}

std::string format_indices(const Basket& basket) { return format_indices(basket.indices()); }

}  // namespace qfano
