#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

// Scalar layer: every algebraic routine in this library is templated over a
// scalar type T.  Two backends are supported:
//
//   * projorb::Rat  -- arbitrary-precision rationals, all comparisons exact
//   * double        -- IEEE doubles, comparisons relative to a global epsilon
//
// The float tolerance is process-global and intended to be configured once at
// startup (CLI flag); nothing else in the library mutates it.

namespace projorb {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace mp = boost::multiprecision;
using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rat = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

inline double& float_tolerance() {
  static double eps = 1e-9;
  return eps;
}

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";

  // |a-b| <= eps * max(1, |a|, |b|)
  static bool eq(double a, double b) {
    const double eps = float_tolerance();
    double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)));
    return std::abs(a - b) <= eps * scale;
  }
  static bool is_zero(double a) { return eq(a, 0.0); }
  static double to_double(double a) { return a; }
  static double abs(double a) { return std::abs(a); }
  static std::optional<double> sqrt_checked(double a) {
    if (a < 0.0 && !is_zero(a)) return std::nullopt;
    return std::sqrt(std::max(a, 0.0));
  }
  static double from_int(long v) { return static_cast<double>(v); }
};

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";

  static bool eq(const Rat& a, const Rat& b) { return a == b; }
  static bool is_zero(const Rat& a) { return a.is_zero(); }
  static double to_double(const Rat& a) { return a.convert_to<double>(); }
  static Rat abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

  // Exact square root: succeeds iff numerator and denominator are both
  // perfect squares.
  static std::optional<Rat> sqrt_checked(const Rat& a) {
    if (a < 0) return std::nullopt;
    BigInt n = numerator(a), d = denominator(a);
    BigInt sn = mp::sqrt(n), sd = mp::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rat(sn) / Rat(sd);
  }
  static Rat from_int(long v) { return Rat(v); }
};

template <class T>
bool approx_eq(const T& a, const T& b) {
  return scalar_traits<T>::eq(a, b);
}

template <class T>
bool is_zero(const T& a) {
  return scalar_traits<T>::is_zero(a);
}

template <class T>
double to_double(const T& a) {
  return scalar_traits<T>::to_double(a);
}

// Parses "p/q", plain integers, and decimal notation ("-2.25", "1.5e-3")
// into an exact rational.
inline Rat rat_from_string(std::string_view s) {
  auto fail = [&]() -> Rat {
    throw error("cannot parse rational: '" + std::string(s) + "'");
  };
  if (s.empty()) fail();
  if (s.find('/') != std::string_view::npos) {
    try {
      return Rat(std::string(s));
    } catch (const std::exception&) {
      fail();
    }
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = (s[i] == '-');
    ++i;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_dot) fail();
      seen_dot = true;
    } else {
      digits.push_back(s[i]);
      if (seen_dot) ++frac_len;
      seen_digit = true;
    }
  }
  if (!seen_digit) fail();
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      eneg = (s[i] == '-');
      ++i;
    }
    if (i == s.size()) fail();
    long v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
      v = v * 10 + (s[i] - '0');
      if (v > 100000) fail();
    }
    exp10 = eneg ? -v : v;
  }
  if (i != s.size()) fail();
  Rat value{BigInt(digits)};
  long denom_pow = frac_len - exp10;
  BigInt ten(10);
  if (denom_pow > 0)
    value /= Rat(mp::pow(ten, static_cast<unsigned>(denom_pow)));
  else if (denom_pow < 0)
    value *= Rat(mp::pow(ten, static_cast<unsigned>(-denom_pow)));
  return neg ? Rat(-value) : value;
}

inline std::string to_string(const Rat& a) { return a.str(); }

}  // namespace projorb
