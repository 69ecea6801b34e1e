#include "qfano/search.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <map>

namespace qfano {

namespace {

void validate(const SearchConfig& c) {
  if (!fano_index_allowed(c.q)) {
    throw Error(ErrorKind::precondition, "Fano index " + std::to_string(c.q) + " is not in {1..9,11,13,17,19}");
  }
  if (c.integrality_span < 1) throw Error(ErrorKind::precondition, "integrality span must be >= 1");
  if (c.torsion_order > 1 && !is_prime(c.torsion_order)) {
    throw Error(ErrorKind::precondition, "torsion order must be prime, got " + std::to_string(c.torsion_order));
  }
  if (c.max_anticanonical_cube <= 0) throw Error(ErrorKind::precondition, "anticanonical bound must be positive");
}

Int span_for(Int gi, const SearchConfig& c) { return c.integrality_span * lcm(12, gi); }

// Shared checks on chi for a (q, basket, A^3): integrality and nonnegativity up
// to `span`, and optionally vanishing for -q < m < 0. Returns the row.
Outcome<std::vector<Int>> checked_row(const ChiEvaluator& chi, const Rational& A3, Int span, bool vanishing,
                                      const std::string& prefix) {
  std::vector<Int> row;
  row.reserve(static_cast<std::size_t>(span) + 1);
  for (Int m = 0; m <= span; ++m) {
    Rational v = chi(A3, m);
    if (!is_integer(v)) return Rejection{prefix + "integrality", m, "chi(" + std::to_string(m) + "A) = " + to_string(v)};
    if (v < 0) return Rejection{prefix + "nonnegativity", m, "chi(" + std::to_string(m) + "A) = " + to_string(v)};
    row.push_back(to_int(v));
  }
  if (vanishing) {
    for (Int t = 1; t < chi.q(); ++t) {
      Rational v = chi(A3, -t);
      if (v != 0) return Rejection{prefix + "vanishing", -t, "chi(" + std::to_string(-t) + "A) = " + to_string(v)};
    }
  }
  return row;
}

Basket cover_basket(const Basket& basket, const std::vector<Int>& witness, Int n) {
  // points of the witness lift to one point of index r/n; others to n copies
  std::map<Int, Int> left;
  for (Int r : witness) left[r]++;
  std::vector<BasketPoint> pts;
  for (const auto& p : basket.points) {
    for (Int k = 0; k < p.multiplicity; ++k) {
      auto it = left.find(p.r);
      if (it != left.end() && it->second > 0) {
        it->second--;
        Int rr = p.r / n;
        if (rr > 1) pts.push_back(make_point(rr, p.b % rr == 0 ? 1 : p.b % rr, 1));
      } else {
        pts.push_back(make_point(p.r, p.b, n));
      }
    }
  }
  return make_basket(std::move(pts));
}

Outcome<std::vector<Int>> cover_check(Int q, const Basket& basket, const Rational& A3, const std::vector<Int>& witness,
                                      Int n, const std::vector<Int>& row, const SearchConfig& cfg) {
  Basket cover = cover_basket(basket, witness, n);
  ChiEvaluator chi(q, cover);
  Int span = span_for(global_index(cover), cfg);
  auto crow = checked_row(chi, A3 * n, std::max<Int>(span, static_cast<Int>(row.size()) - 1), true, "torsion-cover-");
  if (!ok(crow)) return crow;
  const auto& cr = std::get<std::vector<Int>>(crow);
  std::vector<Int> classes;
  for (std::size_t m = 0; m < row.size(); ++m) {
    if (cr[m] < row[m]) {
      return Rejection{"torsion-cover-classes", static_cast<Int>(m),
                       "cover h0 " + std::to_string(cr[m]) + " < " + std::to_string(row[m])};
    }
    classes.push_back(cr[m] - row[m]);
  }
  return classes;
}

struct Kernel {
  const SearchConfig& cfg;

  // Candidates for one index multiset: every b-assignment, every A^3 making
  // chi(A) a nonnegative integer below the bound, then the full filter chain.
  // Without keep_rejections, A^3 values with chi(A) not a nonnegative
  // integer are skipped arithmetically instead of being tried one by one.
  void run(const std::vector<Int>& indices, std::vector<SearchRow>& rows, std::vector<RejectedCandidate>& rejected,
           Int& assignments) const {
    if (cfg.torsion_order > 1 && !torsion_basket_check(indices, cfg.torsion_order)) return;
    Int q = cfg.q;
    Int gi = global_index(indices);
    Int den = cfg.wide_denominator ? lcm(12, gi) : gi;
    Rational cube1 = ChiEvaluator::cubic(q, 1);
    Rational a3_max = cfg.max_anticanonical_cube / Rational(q * q * q);
    for (const Basket& basket : pairing_assignments(indices)) {
      ++assignments;
      if (cfg.keep_rejections) {
        // slow path: every admissible A^3, so each refusal is reported
        for (const Rational& A3 : admissible_A3(q, indices, cfg)) {
          auto out = build_candidate(q, basket, A3, cfg);
          if (ok(out)) rows.push_back(std::move(std::get<SearchRow>(out)));
          else rejected.push_back({basket, A3, std::get<Rejection>(out)});
        }
        continue;
      }
      ChiEvaluator chi(q, basket);
      Rational base1 = chi.base(1);
      // chi(A) = base1 + A3 * cube1 must be an integer k >= 0
      Int k_lo = std::max<Int>(0, floor_int(base1) + 1);
      Int k_hi = floor_int(base1 + cube1 * a3_max);
      for (Int k = k_lo; k <= k_hi; ++k) {
        Rational A3 = (Rational(k) - base1) / cube1;
        if (A3 <= 0) continue;
        if (!is_integer(A3 * den)) continue;
        auto out = build_candidate(q, basket, A3, cfg);
        if (ok(out)) rows.push_back(std::move(std::get<SearchRow>(out)));
      }
    }
  }
};

void canonical_sort(SearchResult& r) {
  std::sort(r.rows.begin(), r.rows.end(), [](const SearchRow& a, const SearchRow& b) {
    if (a.candidate.A3 != b.candidate.A3) return a.candidate.A3 < b.candidate.A3;
    return a.candidate.basket < b.candidate.basket;
  });
  std::sort(r.rejected.begin(), r.rejected.end(), [](const RejectedCandidate& a, const RejectedCandidate& b) {
    if (a.A3 != b.A3) return a.A3 < b.A3;
    return a.basket < b.basket;
  });
}

}  // namespace

std::vector<std::vector<Int>> enumerate_baskets(Int q, const Rational& cap) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  std::function<void(Int, const Rational&)> rec = [&](Int start, const Rational& sum) {
    out.push_back(cur);
    for (Int r = start;; ++r) {
      Rational w = make_rational(r * r - 1, r);
      if (sum + w >= cap) break;
      if (gcd(r, q) != 1) continue;
      cur.push_back(r);
      rec(r, sum + w);
      cur.pop_back();
    }
  };
  rec(2, Rational(0));
  return out;
}

std::vector<Basket> pairing_assignments(const std::vector<Int>& indices) {
  std::map<Int, Int> groups;
  for (Int r : indices) groups[r]++;
  std::vector<std::pair<Int, Int>> gs(groups.begin(), groups.end());
  std::vector<std::vector<Int>> units;
  for (const auto& [r, k] : gs) {
    std::vector<Int> u;
    for (Int b = 1; b <= r / 2; ++b)
      if (gcd(b, r) == 1) u.push_back(b);
    units.push_back(std::move(u));
  }
  // per index: multisets of size k from its units (nondecreasing sequences)
  std::vector<Basket> out;
  std::vector<BasketPoint> pts;
  std::function<void(std::size_t, Int, std::size_t)> rec = [&](std::size_t g, Int left, std::size_t from) {
    if (g == gs.size()) {
      out.push_back(make_basket(pts));
      return;
    }
    if (left == 0) {
      rec(g + 1, g + 1 < gs.size() ? gs[g + 1].second : 0, 0);
      return;
    }
    for (std::size_t u = from; u < units[g].size(); ++u) {
      pts.push_back({gs[g].first, units[g][u], 1});
      rec(g, left - 1, u);
      pts.pop_back();
    }
  };
  rec(0, gs.empty() ? 0 : gs[0].second, 0);
  return out;
}

std::vector<Rational> admissible_A3(Int q, const std::vector<Int>& indices, const SearchConfig& config) {
  Int gi = global_index(indices);
  Int den = config.wide_denominator ? lcm(12, gi) : gi;
  std::vector<Rational> out;
  Rational qqq(q * q * q);
  for (Int N = 1;; ++N) {
    Rational A3 = make_rational(N, den);
    if (qqq * A3 > config.max_anticanonical_cube) break;
    out.push_back(A3);
  }
  return out;
}

std::vector<Int> dims_of(const FanoCandidate& c, Int count) {
  std::vector<Int> d;
  for (Int k = 1; k <= count; ++k) {
    Int h = static_cast<std::size_t>(k) < c.hilbert_row.size() ? c.hilbert_row[static_cast<std::size_t>(k)]
                                                                : to_int(chi_mA(c.q, c.A3, c.basket, k));
    d.push_back(h - 1);
  }
  return d;
}

Outcome<SearchRow> build_candidate(Int q, const Basket& basket, const Rational& A3, const SearchConfig& cfg) {
  if (A3 <= 0) return Rejection{"positivity", std::nullopt, "A^3 = " + to_string(A3)};
  Rational cube = Rational(q * q * q) * A3;
  if (cube > cfg.max_anticanonical_cube) {
    return Rejection{"anticanonical-bound", std::nullopt, "q^3 A^3 = " + to_string(cube)};
  }
  Rational ksum = kawamata_sum(basket);
  if (ksum >= cfg.basket_cap) return Rejection{"basket-bound", std::nullopt, "sum(r - 1/r) = " + to_string(ksum)};
  Rational c2 = Rational(24) - ksum;
  for (const auto& p : basket.points)
    if (gcd(q, p.r) != 1) return Rejection{"coprime-index", std::nullopt, "index " + std::to_string(p.r)};

  ChiEvaluator chi(q, basket);
  Int gi = global_index(basket);
  Int M = cfg.truncation > 0 ? cfg.truncation : default_truncation(q);
  Int span = std::max(span_for(gi, cfg), M);
  auto row_out = checked_row(chi, A3, span, false, "");
  if (!ok(row_out)) return std::get<Rejection>(row_out);
  auto row = std::get<std::vector<Int>>(std::move(row_out));
  if (row[0] != 1) return Rejection{"chi0", 0, "chi(0) = " + std::to_string(row[0])};
  if (row[static_cast<std::size_t>(q)] < 1) {
    return Rejection{"anticanonical-sections", q, "h0(-K) = " + std::to_string(row[static_cast<std::size_t>(q)])};
  }
  if (cfg.vanishing) {
    for (Int t = 1; t < q; ++t) {
      Rational v = chi(A3, -t);
      if (v != 0) return Rejection{"vanishing", -t, "chi(" + std::to_string(-t) + "A) = " + to_string(v)};
    }
  }
  if (cfg.bogomolov_kawamata && Rational(4 * q * q - 3 * q) * A3 > 4 * c2) {
    return Rejection{"bogomolov-kawamata", std::nullopt,
                     "(4q^2-3q)A^3 = " + to_string(Rational(4 * q * q - 3 * q) * A3) + " > 4(-K.c2) = " + to_string(4 * c2)};
  }
  if (cfg.kawamata_miyaoka && cube > 3 * c2) {
    return Rejection{"kawamata-miyaoka", std::nullopt, "(-K)^3 = " + to_string(cube) + " > 3(-K.c2) = " + to_string(3 * c2)};
  }
  if (cfg.max_dim3A && row[3] - 1 > *cfg.max_dim3A) {
    return Rejection{"dim3A", 3, "dim|3A| = " + std::to_string(row[3] - 1)};
  }
  if (cfg.superadditivity) {
    std::size_t lim = std::min<std::size_t>(row.size(), 121);
    for (std::size_t a = 1; a < lim; ++a)
      for (std::size_t b = a; a + b < lim; ++b)
        if (row[a] > 0 && row[b] > 0 && row[a + b] < row[a] + row[b] - 1) {
          return Rejection{"superadditivity", static_cast<Int>(a + b),
                           "h0(" + std::to_string(a + b) + "A) = " + std::to_string(row[a + b]) + " < h0(" +
                               std::to_string(a) + "A) + h0(" + std::to_string(b) + "A) - 1"};
        }
  }

  SearchRow out;
  out.candidate.q = q;
  out.candidate.basket = basket;
  out.candidate.A3 = A3;
  out.candidate.torsion_order = cfg.torsion_order;
  out.candidate.genus = row[static_cast<std::size_t>(q)] - 2;
  out.candidate.hilbert_row.assign(row.begin(), row.begin() + M + 1);

  if (cfg.torsion_order > 1) {
    Int n = cfg.torsion_order;
    auto indices = basket.indices();
    if (!torsion_basket_check(indices, n)) {
      return Rejection{"torsion-basket", std::nullopt, "no sub-basket fits " + std::to_string(n) + "-torsion"};
    }
    if (cfg.torsion_cover) {
      std::optional<Rejection> first;
      bool found = false;
      for (const auto& w : torsion_witnesses(indices, n, true)) {
        auto cls = cover_check(q, basket, A3, w, n, out.candidate.hilbert_row, cfg);
        if (ok(cls)) {
          out.torsion_witness = w;
          out.torsion_classes_row = std::get<std::vector<Int>>(cls);
          found = true;
          break;
        }
        if (!first) first = std::get<Rejection>(cls);
      }
      if (!found) {
        if (first) return *first;
        return Rejection{"torsion-cover", std::nullopt, "no witness with indices divisible by " + std::to_string(n)};
      }
    } else {
      out.torsion_witness = *torsion_basket_check(indices, n);
    }
  }
  return out;
}

SearchResult search_q_serial(const SearchConfig& config) {
  validate(config);
  SearchResult res;
  res.config = config;
  Kernel kernel{config};
  auto baskets = enumerate_baskets(config.q, config.basket_cap);
  res.baskets_examined = static_cast<Int>(baskets.size());
  for (const auto& indices : baskets) kernel.run(indices, res.rows, res.rejected, res.assignments_examined);
  canonical_sort(res);
  return res;
}

SearchResult search_q(const SearchConfig& config) {
  validate(config);
  SearchResult res;
  res.config = config;
  Kernel kernel{config};
  auto baskets = enumerate_baskets(config.q, config.basket_cap);
  res.baskets_examined = static_cast<Int>(baskets.size());
  const long nb = static_cast<long>(baskets.size());
  std::vector<std::vector<SearchRow>> rows(baskets.size());
  std::vector<std::vector<RejectedCandidate>> rejected(baskets.size());
  std::vector<Int> assignments(baskets.size(), 0);
  int threads = config.jobs > 0 ? config.jobs : omp_get_max_threads();
  bool failed = false;
  std::string failure;
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (long i = 0; i < nb; ++i) {
    try {
      kernel.run(baskets[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(i)],
                 rejected[static_cast<std::size_t>(i)], assignments[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
#pragma omp critical
      {
        failed = true;
        failure = e.what();
      }
    }
  }
  if (failed) throw Error(ErrorKind::precondition, "search worker failed: " + failure);
  for (std::size_t i = 0; i < baskets.size(); ++i) {
    for (auto& r : rows[i]) res.rows.push_back(std::move(r));
    for (auto& r : rejected[i]) res.rejected.push_back(std::move(r));
    res.assignments_examined += assignments[i];
  }
  canonical_sort(res);
  return res;
}

}  // namespace qfano
