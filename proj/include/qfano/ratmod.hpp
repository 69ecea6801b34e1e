#pragma once
// Exact rationals and modular residues shared by every other module.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qfano {

using Int = std::int64_t;
using Rational = mpq_class;

enum class ErrorKind {
  modulus,
  non_invertible,
  invalid_point,
  non_terminal,
  torsion_ambiguous,
  insufficient_data,
  not_fano,
  inconsistent_action,
  input,
  ill_posed,
  unknown_id,
  degenerate_fibration,
  precondition,
};

const char* error_kind_name(ErrorKind kind);

// All domain failures are reported through this one exception type; the
// kind lets callers (notably the CLI) map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Residue {
  Int value = 0;
  Int modulus = 1;

  friend bool operator==(const Residue&, const Residue&) = default;
};

// Canonical representative of x modulo r, in [0, r).
Residue bar(Int x, Int r);
// u with a*u = 1 (mod r).
Residue inv_mod(Int a, Int r);

Residue operator+(const Residue& a, const Residue& b);
Residue operator-(const Residue& a, const Residue& b);
Residue operator*(const Residue& a, const Residue& b);
Residue operator*(Int k, const Residue& a);
Residue operator-(const Residue& a);

Int gcd(Int a, Int b);
Int lcm(Int a, Int b);
Int lcm_all(std::span<const Int> values);

Rational make_rational(Int num, Int den = 1);
bool is_integer(const Rational& x);
// Exact conversion; throws if x is not an integer or does not fit.
Int to_int(const Rational& x);
Int floor_int(const Rational& x);
Int ceil_int(const Rational& x);

// "p/q" or "p" (optional sign); decimals are rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

}  // namespace qfano
