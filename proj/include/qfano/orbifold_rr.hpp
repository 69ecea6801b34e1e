#pragma once
// Orbifold Riemann-Roch for multiples of the fundamental divisor.
//
// Convention: a basket point is 1/r(1,-1,b); a divisor "of type i" there is
// locally i*K_X, and its correction term sums bar(j*b) for j < i. Since
// -K_X = q*A_X, A_X is locally of type bar(-q^{-1}) and mA_X of type
// bar(m * that). This normalization is pinned by the calibration fixtures
// (X_6, X_10, basket (2,6,10)) in the tests.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfano/basket.hpp"

namespace qfano {

struct FanoCandidate {
  Int q = 1;
  Basket basket;
  Rational A3;
  Int torsion_order = 1;
  std::vector<Int> hilbert_row;  // h^0(mA) for m = 0..M
  Int genus = 0;
};

// Why a candidate was refused; `m` is the first offending multiple (if any).
struct Rejection {
  std::string filter;
  std::optional<Int> m;
  std::string detail;
};

template <class T>
using Outcome = std::variant<T, Rejection>;

template <class T>
bool ok(const Outcome<T>& o) {
  return std::holds_alternative<T>(o);
}

bool fano_index_allowed(Int q);
Int default_truncation(Int q);

Residue local_type_of_A(Int q, Int r);
Rational local_contribution(Int r, Int b, Int i);

// chi(mA) for any integer m (negative m are used by the vanishing filter).
Rational chi_mA(Int q, const Rational& A3, const Basket& basket, Int m);

// Same formula with the per-point periodic parts tabulated once; used by
// the search where chi is evaluated thousands of times per basket.
class ChiEvaluator {
 public:
  ChiEvaluator(Int q, const Basket& basket);
  Rational operator()(const Rational& A3, Int m) const;
  // chi(mA) with A3 = 0: chi = base(m) + A3 * cubic(m).
  Rational base(Int m) const;
  static Rational cubic(Int q, Int m);
  Int q() const { return q_; }

 private:
  Int q_;
  Rational c2_over_12q_;
  struct Periodic {
    Int r;
    Int multiplicity;
    std::vector<Rational> by_residue;  // indexed by bar(m, r)
  };
  std::vector<Periodic> periodic_;
};

Outcome<std::vector<Int>> hilbert_row(Int q, const Rational& A3, const Basket& basket, Int M);
Outcome<std::vector<Int>> hilbert_row(const FanoCandidate& candidate, Int M);
Int genus(const FanoCandidate& candidate);

// Coefficients h[m][j] = h^0(mA + jT); provided by the weighted-hypersurface
// module for torsion candidates.
using TorsionTable = std::vector<std::vector<Int>>;

Int p_n(const FanoCandidate& candidate, Int n, const TorsionTable* torsion_table = nullptr);

// Fully populated candidate (row to M, genus); throws on an invalid row.
FanoCandidate make_candidate(Int q, const Basket& basket, const Rational& A3, Int M = 0,
                             Int torsion_order = 1);

}  // namespace qfano
