#pragma once
// Terminal-singularity baskets: points 1/r(1,-1,b) with multiplicity.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfano/ratmod.hpp"

namespace qfano {

struct BasketPoint {
  Int r = 2;
  Int b = 1;  // normalized into [1, r/2], coprime to r
  Int multiplicity = 1;

  friend bool operator==(const BasketPoint&, const BasketPoint&) = default;
  friend auto operator<=>(const BasketPoint&, const BasketPoint&) = default;
};

// Validates gcd(b, r) = 1 and folds b into [1, r/2].
BasketPoint make_point(Int r, Int b, Int multiplicity = 1);

// Canonical form: points sorted by (r, b), equal (r, b) merged.
struct Basket {
  std::vector<BasketPoint> points;

  Int size() const;  // total multiplicity
  std::vector<Int> indices() const;  // expanded, ascending
  bool empty() const { return points.empty(); }

  friend bool operator==(const Basket&, const Basket&) = default;
  friend auto operator<=>(const Basket&, const Basket&) = default;
};

Basket make_basket(std::vector<BasketPoint> points);
// Index-only basket with every b = 1 (a placeholder until b is assigned).
Basket basket_from_indices(const std::vector<Int>& indices);

enum class PointKind { cyclic, cA, cAx4, cD2, cE2, gorenstein };

struct SingularPointSpec {
  PointKind kind = PointKind::cyclic;
  Int r = 1;
  Int aw = 1;  // axial weight
  Int a = 1;   // quotient weight for cyclic points 1/r(1, a, r-a)
};

const char* point_kind_name(PointKind kind);
PointKind parse_point_kind(std::string_view name);

// Index multiset (descending) contributed by one singular point; b is left
// for the search to choose.
std::vector<Int> expand_point(const SingularPointSpec& spec);

Rational kawamata_sum(const Basket& basket);
Rational kawamata_sum(const std::vector<Int>& indices);
// -K.c2 = 24 - sum(r - 1/r); throws non_terminal when the sum reaches 24.
Rational anticanonical_c2(const Basket& basket);
Int global_index(const Basket& basket);
Int global_index(const std::vector<Int>& indices);

// Sub-multiset of indices allowed to carry the non-Cartier locus of an
// n-torsion class. With divisible_only, only indices divisible by n qualify.
std::optional<std::vector<Int>> torsion_basket_check(const std::vector<Int>& indices, Int n,
                                                     bool divisible_only = false);
// Every witness (as index multisets, ascending), in canonical order.
std::vector<std::vector<Int>> torsion_witnesses(const std::vector<Int>& indices, Int n,
                                                bool divisible_only = false);

bool qw_equals_qq(Int q, const Basket& basket);

bool is_prime(Int n);

// Accepts "2,2,3,4", "(2^3, 3, 4, 5)", "2,6,10:3" (r:b sets the pairing unit
// and "r:b^k" a multiplicity). Points without ":b" get b = 1 and are
// reported through `all_b_explicit`.
struct ParsedBasket {
  Basket basket;
  bool all_b_explicit = true;
  std::vector<Int> indices;
};
ParsedBasket parse_basket(std::string_view text);

// "(2^3, 3, 4, 5)" style, indices only.
std::string format_indices(const std::vector<Int>& indices);
std::string format_indices(const Basket& basket);

}  // namespace qfano
