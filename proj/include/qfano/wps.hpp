#pragma once
// Weighted projective hypersurfaces: invariants, monomial-counting Hilbert
// series (plain and mu_n-equivariant), degree-10 normal forms in
// P(1,2,3,4,5), and the del Pezzo surfaces used as conic-bundle bases.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfano/ratmod.hpp"

namespace qfano {

struct CyclicAction {
  Int order = 1;
  std::vector<Int> chars;  // character of each coordinate
  Int cf = 0;              // character of the defining equation
};

struct WeightedHypersurface {
  std::vector<Int> weights;
  Int degree = 0;  // 0 means the ambient space itself (no equation)
  std::optional<CyclicAction> action;
};

// "w1,...,wn : d [/ mu n : c1,...,cn ; cf]"
WeightedHypersurface parse_hypersurface(std::string_view text);
std::string format_hypersurface(const WeightedHypersurface& wh);

Int fano_index(const WeightedHypersurface& wh);
Rational degree_A3(const WeightedHypersurface& wh);

// Number of monomials of weighted degree k (k < 0 gives 0).
Int count_monomials(const std::vector<Int>& weights, Int k);
// Same, split by character: entry j counts monomials of character j mod n.
std::vector<Int> count_monomials_by_character(const std::vector<Int>& weights,
                                              const std::vector<Int>& chars, Int n, Int k);

Int hilbert_coeff(const WeightedHypersurface& wh, Int k);
std::vector<Int> hilbert_series(const WeightedHypersurface& wh, Int M);

struct EquivariantSeries {
  Int order = 1;
  std::vector<std::vector<Int>> h;  // h[m][j], m = 0..M, j = 0..n-1
};

EquivariantSeries equivariant_series(const WeightedHypersurface& wh, Int M);
// The same series for the fundamental class A + cT: h'[m][j] = h[m][j + mc].
// The T-Hilbert series depends on which of the classes A + jT is called A.
EquivariantSeries retwist(const EquivariantSeries& series, Int c);
// "1+t+t^2+t^2s+..." style rendering (sigma written as s^j).
std::string format_series(const EquivariantSeries& series);

// ---- degree-10 hypersurfaces in P(1,2,3,4,5) ------------------------------

using Exponent = std::array<Int, 5>;
using SparsePoly = std::map<Exponent, Rational>;

enum class NormalFormCase { case_a_cyclic, case_b_cAx4, rational_by_projection, non_terminal };

const char* normal_form_name(NormalFormCase c);

struct X10Classification {
  NormalFormCase verdict = NormalFormCase::non_terminal;
  std::string reason;
  // case a: which of the two terms keeps the index-3 point a cyclic quotient
  bool phi6_has_x3sq = false;
  bool phi10_has_x3cube_x1 = false;
  // case b: coefficient of x4^2 x1^2 after completing the square, with the
  // equation scaled so that x5^2 has coefficient 1
  std::optional<Rational> lambda;
  bool rational = false;
};

X10Classification classify_x10(const SparsePoly& equation);
// "x5^2 + x4^2*x2 + 3/2*x4*x3^2 + x1^10"
SparsePoly parse_poly5(std::string_view text);
Int weighted_degree(const Exponent& e);

// ---- del Pezzo surfaces with type-A singularities ---------------------------

struct DelPezzoSurface {
  std::string name;
  Int K2 = 0;
  Int qW = 0;
  Rational A2;
  std::string singularities;
  std::vector<Int> weights;  // ambient weighted projective plane or 3-space
  Int degree = 0;            // 0 for the toric (weighted plane) cases
  std::vector<Int> dims;     // tabulated dim|kA_S|, k = 1..5
};

const std::vector<DelPezzoSurface>& del_pezzo_table();
const DelPezzoSurface& del_pezzo(std::string_view name);
Int dp_dims(const DelPezzoSurface& surface, Int k);

}  // namespace qfano
