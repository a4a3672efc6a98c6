#pragma once
/* Exact Gaussian-rational scalars: the coefficient field for every computation.
   No floating point anywhere; equality and norm comparisons are exact. */
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>

#include "errors.hpp"

namespace semicross {

using Rat = boost::multiprecision::cpp_rational;

/* re + im*i with exact rational parts. */
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(long long n) : re(n) {}  // NOLINT: implicit, lets integer literals act as scalars
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }
  /* |z|^2, the exact stand-in for the modulus (which may be irrational). */
  Rat abs_sq() const { return re * re + im * im; }
};

inline bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
/* Lexicographic order on (re, im); used only for deterministic container ordering. */
inline bool operator<(const GaussRat& a, const GaussRat& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

inline GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
inline GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
inline GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
inline GaussRat operator*(const GaussRat& a, const GaussRat& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  Rat d = b.abs_sq();
  if (d == 0) throw invariant_violation("division by a zero scalar");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline GaussRat& operator+=(GaussRat& a, const GaussRat& b) { a = a + b; return a; }
inline GaussRat& operator-=(GaussRat& a, const GaussRat& b) { a = a - b; return a; }
inline GaussRat& operator*=(GaussRat& a, const GaussRat& b) { a = a * b; return a; }

inline std::string to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

/* "p/q" for real values, "a/b*i" for imaginary ones, "p/q+a/b*i" combined. */
inline std::string to_string(const GaussRat& z) {
  if (z.im == 0) return to_string(z.re);
  std::string imag = to_string(z.im) + "*i";
  if (z.re == 0) return imag;
  return to_string(z.re) + (z.im > 0 ? "+" : "") + imag;
}

}  // namespace semicross
