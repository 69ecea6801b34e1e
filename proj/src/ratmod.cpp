#include "qfano/ratmod.hpp"

#include <charconv>
#include <numeric>

namespace qfano {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::modulus: return "modulus";
    case ErrorKind::non_invertible: return "non-invertible";
    case ErrorKind::invalid_point: return "invalid-basket-point";
    case ErrorKind::non_terminal: return "non-terminal-fano";
    case ErrorKind::torsion_ambiguous: return "torsion-ambiguous";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::not_fano: return "not-fano";
    case ErrorKind::inconsistent_action: return "inconsistent-action";
    case ErrorKind::input: return "input";
    case ErrorKind::ill_posed: return "ill-posed-scenario";
    case ErrorKind::unknown_id: return "unknown-id";
    case ErrorKind::degenerate_fibration: return "degenerate-fibration";
    case ErrorKind::precondition: return "precondition";
  }
  return "unknown";
}

Residue bar(Int x, Int r) {
  if (r <= 0) {
    throw Error(ErrorKind::modulus, "modulus must be >= 1, got " + std::to_string(r));
  }
  Int v = x % r;
  if (v < 0) v += r;
  return {v, r};
}

Residue inv_mod(Int a, Int r) {
  if (r <= 0) {
    throw Error(ErrorKind::modulus, "modulus must be >= 1, got " + std::to_string(r));
  }
  // extended Euclid on (a mod r, r)
  Int old_r = bar(a, r).value, cur_r = r;
  Int old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    Int quot = old_r / cur_r;
    Int tmp = old_r - quot * cur_r;
    old_r = cur_r;
    cur_r = tmp;
    tmp = old_s - quot * cur_s;
    old_s = cur_s;
    cur_s = tmp;
  }
  if (old_r != 1 && r != 1) {
    throw Error(ErrorKind::non_invertible,
                std::to_string(a) + " is not invertible modulo " + std::to_string(r));
  }
  return bar(old_s, r);
}

static void check_same_modulus(const Residue& a, const Residue& b) {
  if (a.modulus != b.modulus) {
    throw Error(ErrorKind::modulus, "residue modulus mismatch: " + std::to_string(a.modulus) +
                                        " vs " + std::to_string(b.modulus));
  }
}

Residue operator+(const Residue& a, const Residue& b) {
  check_same_modulus(a, b);
  return bar(a.value + b.value, a.modulus);
}

Residue operator-(const Residue& a, const Residue& b) {
  check_same_modulus(a, b);
  return bar(a.value - b.value, a.modulus);
}

Residue operator*(const Residue& a, const Residue& b) {
  check_same_modulus(a, b);
  return bar(a.value * b.value, a.modulus);
}

Residue operator*(Int k, const Residue& a) { return bar(bar(k, a.modulus).value * a.value, a.modulus); }

Residue operator-(const Residue& a) { return bar(-a.value, a.modulus); }

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = std::gcd(a, b);
  Int out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) {
    throw Error(ErrorKind::input, "lcm overflow");
  }
  return out < 0 ? -out : out;
}

Int lcm_all(std::span<const Int> values) {
  Int acc = 1;
  for (Int v : values) acc = lcm(acc, v);
  return acc;
}

Rational make_rational(Int num, Int den) {
  if (den == 0) throw Error(ErrorKind::input, "zero denominator");
  Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& x) { return x.get_den() == 1; }

Int to_int(const Rational& x) {
  if (!is_integer(x) || !x.get_num().fits_slong_p()) {
    throw Error(ErrorKind::input, "expected a machine integer, got " + to_string(x));
  }
  return x.get_num().get_si();
}

Int floor_int(const Rational& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f.get_si();
}

Int ceil_int(const Rational& x) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return c.get_si();
}

static Int parse_int(std::string_view s, std::string_view whole) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  Int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::input, "malformed rational '" + std::string(whole) +
                                      "' (expected p/q with integers)");
  }
  return v;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return make_rational(parse_int(text, text));
  Int num = parse_int(text.substr(0, slash), text);
  Int den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorKind::input, "zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

std::string to_string(const Rational& x) {
  if (is_integer(x)) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace qfano
