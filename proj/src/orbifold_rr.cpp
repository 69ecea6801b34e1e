#include "qfano/orbifold_rr.hpp"

#include <algorithm>

namespace qfano {

bool fano_index_allowed(Int q) {
  return (q >= 1 && q <= 9) || q == 11 || q == 13 || q == 17 || q == 19;
}

Int default_truncation(Int q) { return std::max<Int>(q + 3, 12); }

Residue local_type_of_A(Int q, Int r) { return -inv_mod(q, r); }

Rational local_contribution(Int r, Int b, Int i) {
  if (r < 2 || gcd(b, r) != 1) {
    throw Error(ErrorKind::invalid_point, "invalid basket point r=" + std::to_string(r) +
                                              ", b=" + std::to_string(b));
  }
  if (i < 0 || i >= r) {
    throw Error(ErrorKind::precondition, "local type must lie in [0, r), got " + std::to_string(i));
  }
  Rational c = make_rational(-i * (r * r - 1), 12 * r);
  for (Int j = 1; j < i; ++j) {
    Int v = bar(j * b, r).value;
    c += make_rational(v * (r - v), 2 * r);
  }
  return c;
}

static void require_coprime(Int q, const Basket& basket) {
  for (const auto& p : basket.points) {
    if (gcd(q, p.r) != 1) {
      throw Error(ErrorKind::torsion_ambiguous,
                  "index " + std::to_string(p.r) + " shares a factor with q=" + std::to_string(q) +
                      "; use equivariant counting instead");
    }
  }
}

Rational ChiEvaluator::cubic(Int q, Int m) {
  Rational c(mpz_class(static_cast<long>(m * (m + q))) * (2 * m + q), 12);
  c.canonicalize();
  return c;
}

ChiEvaluator::ChiEvaluator(Int q, const Basket& basket) : q_(q) {
  if (q < 1) throw Error(ErrorKind::precondition, "Fano index must be >= 1");
  require_coprime(q, basket);
  c2_over_12q_ = anticanonical_c2(basket) / Rational(12 * q);
  for (const auto& p : basket.points) {
    Periodic per{p.r, p.multiplicity, {}};
    Int iA = local_type_of_A(q, p.r).value;
    per.by_residue.reserve(static_cast<std::size_t>(p.r));
    for (Int m = 0; m < p.r; ++m)
      per.by_residue.push_back(local_contribution(p.r, p.b, bar(m * iA, p.r).value));
    periodic_.push_back(std::move(per));
  }
}

Rational ChiEvaluator::base(Int m) const {
  Rational v = 1 + Rational(m) * c2_over_12q_;
  for (const auto& per : periodic_)
    v += Rational(per.multiplicity) * per.by_residue[static_cast<std::size_t>(bar(m, per.r).value)];
  return v;
}

Rational ChiEvaluator::operator()(const Rational& A3, Int m) const {
  return base(m) + A3 * cubic(q_, m);
}

Rational chi_mA(Int q, const Rational& A3, const Basket& basket, Int m) {
  require_coprime(q, basket);
  Rational v = 1 + A3 * ChiEvaluator::cubic(q, m) + Rational(m) * anticanonical_c2(basket) / Rational(12 * q);
  for (const auto& p : basket.points) {
    Int type = bar(m * local_type_of_A(q, p.r).value, p.r).value;
    v += Rational(p.multiplicity) * local_contribution(p.r, p.b, type);
  }
  return v;
}

Outcome<std::vector<Int>> hilbert_row(Int q, const Rational& A3, const Basket& basket, Int M) {
  ChiEvaluator chi(q, basket);
  std::vector<Int> row;
  for (Int m = 0; m <= M; ++m) {
    Rational v = chi(A3, m);
    if (!is_integer(v)) return Rejection{"integrality", m, "chi(" + std::to_string(m) + "A) = " + to_string(v)};
    if (v < 0) return Rejection{"nonnegativity", m, "chi(" + std::to_string(m) + "A) = " + to_string(v)};
    row.push_back(to_int(v));
  }
  return row;
}

Outcome<std::vector<Int>> hilbert_row(const FanoCandidate& c, Int M) {
  return hilbert_row(c.q, c.A3, c.basket, M);
}

Int genus(const FanoCandidate& c) {
  Rational v = chi_mA(c.q, c.A3, c.basket, c.q);
  if (!is_integer(v)) {
    throw Error(ErrorKind::precondition, "chi(-K) = " + to_string(v) + " is not an integer");
  }
  return to_int(v) - 2;
}

Int p_n(const FanoCandidate& c, Int n, const TorsionTable* table) {
  if (n < 0) throw Error(ErrorKind::precondition, "p_n needs n >= 0");
  if (c.torsion_order > 1) {
    if (!table || static_cast<std::size_t>(n) >= table->size()) {
      throw Error(ErrorKind::insufficient_data,
                  "torsion candidate needs an equivariant series covering degree " + std::to_string(n));
    }
    const auto& classes = (*table)[static_cast<std::size_t>(n)];
    return *std::max_element(classes.begin(), classes.end());
  }
  if (static_cast<std::size_t>(n) < c.hilbert_row.size()) return c.hilbert_row[static_cast<std::size_t>(n)];
  Rational v = chi_mA(c.q, c.A3, c.basket, n);
  return to_int(v);
}

FanoCandidate make_candidate(Int q, const Basket& basket, const Rational& A3, Int M, Int torsion_order) {
  if (M <= 0) M = default_truncation(q);
  FanoCandidate c{q, basket, A3, torsion_order, {}, 0};
  auto row = hilbert_row(c, std::max(M, q));
  if (!ok(row)) {
    const auto& rej = std::get<Rejection>(row);
    throw Error(ErrorKind::precondition, "invalid candidate: " + rej.filter + " fails, " + rej.detail);
  }
  c.hilbert_row = std::get<std::vector<Int>>(row);
  c.genus = c.hilbert_row[static_cast<std::size_t>(q)] - 2;
  c.hilbert_row.resize(static_cast<std::size_t>(M) + 1);
  return c;
}

}  // namespace qfano
