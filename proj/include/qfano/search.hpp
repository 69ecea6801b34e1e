#pragma once
// Enumeration of numerical Q-Fano candidates of a given Fano index.
//
// The parallel kernel (OpenMP, over baskets) and the serial reference share
// every filter; the parallel one is the default, the serial one is kept for
// the determinism tests and the benchmark.

#include <optional>
#include <string>
#include <vector>

#include "qfano/orbifold_rr.hpp"

namespace qfano {

struct SearchConfig {
  Int q = 7;
  Rational max_anticanonical_cube = 72;  // bound on q^3 * A^3
  Int integrality_span = 2;              // chi checked for m <= span * lcm(12, r(X))
  Rational basket_cap = 24;              // sum (r - 1/r) < cap
  std::optional<Int> max_dim3A;          // require dim|3A| <= value
  Int torsion_order = 1;                 // > 1: require an n-torsion compatible basket
  bool superadditivity = false;
  bool wide_denominator = false;  // A^3 denominators lcm(12, r(X)) instead of r(X)
  // Filters from the general theory of terminal Fano threefolds; see README.
  bool vanishing = true;            // chi(-tA) = 0 for 0 < t < q
  bool bogomolov_kawamata = true;   // (4q^2 - 3q) A^3 <= 4 (-K.c2)
  bool kawamata_miyaoka = true;     // (-K)^3 <= 3 (-K.c2)
  bool torsion_cover = true;        // the degree-n cover passes the same tests
  Int truncation = 0;               // Hilbert row length; 0 = max(q+3, 12)
  bool keep_rejections = false;
  int jobs = 0;  // 0 = OpenMP default
};

struct SearchRow {
  FanoCandidate candidate;
  // torsion searches: witness sub-basket and, per m, the summed h^0 over the
  // nontrivial torsion classes (read off the cover)
  std::vector<Int> torsion_witness;
  std::vector<Int> torsion_classes_row;
};

struct RejectedCandidate {
  Basket basket;
  Rational A3;
  Rejection reason;
};

struct SearchResult {
  SearchConfig config;
  std::vector<SearchRow> rows;
  std::vector<RejectedCandidate> rejected;
  Int baskets_examined = 0;
  Int assignments_examined = 0;
};

std::vector<std::vector<Int>> enumerate_baskets(Int q, const Rational& cap = 24);
std::vector<Basket> pairing_assignments(const std::vector<Int>& indices);
std::vector<Rational> admissible_A3(Int q, const std::vector<Int>& indices, const SearchConfig& config);

Outcome<SearchRow> build_candidate(Int q, const Basket& basket, const Rational& A3, const SearchConfig& config);

SearchResult search_q(const SearchConfig& config);
SearchResult search_q_serial(const SearchConfig& config);

// dim|kA| = h^0 - 1, k = 1..count
std::vector<Int> dims_of(const FanoCandidate& c, Int count);

}  // namespace qfano
