#pragma once

// Text form of path polynomials (1-based indices):
//
//   polynomial  := [sign] term (sign term)*
//   sign        := '+' | '-'
//   term        := factor ('*' factor)*
//   factor      := scalar | monomial
//   scalar      := number ['i'] | 'i' | '(' [sign] number [sign number 'i'] ')'
//   monomial    := 'v' integer                 vertex idempotent
//                | integer '<' integer ':' integer
//                                              arrow to '<' from ':' index
//
// Factors of a term multiply left to right in the operator order, so
// "1<2:1 * 2<2:1" is the loop at 2 followed by the arrow 2 -> 1. A term
// with no monomial is a multiple of the unit. Whitespace is ignored.
//
// Examples: "v1 + 0.5*1<1:1*1<1:2", "(1-2i)*2<1:1 - 3i*v2".

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "quiver/algebra.hpp"
#include "quiver/error.hpp"

namespace quiver {

namespace detail {

class PolyParser {
 public:
  PolyParser(const Quiver& q, std::string_view text) : q_(q), s_(text) {}

  PathPolynomial parse() {
    PathPolynomial out(q_);
    skip();
    double sign = 1.0;
    if (peek('+') || peek('-')) sign = take() == '-' ? -1.0 : 1.0;
    out = out + poly_scale(sign, term());
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      if (!(peek('+') || peek('-'))) fail("expected '+' or '-'");
      sign = take() == '-' ? -1.0 : 1.0;
      out = out + poly_scale(sign, term());
    }
    return out;
  }

 private:
  PathPolynomial term() {
    complex scalar = 1.0;
    std::optional<Path> path;
    bool has_monomial = false;
    bool zero = false;
    do {
      skip();
      if (auto m = monomial()) {
        if (has_monomial && !zero) {
          auto c = compose(*path, *m);
          if (c) path = *c; else zero = true;
        } else if (!has_monomial) {
          path = *m;
        }
        has_monomial = true;
      } else {
        scalar *= this->scalar();
      }
      skip();
    } while (peek('*') && take());
    if (zero) return PathPolynomial(q_);
    if (!has_monomial) return poly_scale(scalar, PathPolynomial::unit(q_));
    return PathPolynomial::monomial(q_, *path, scalar);
  }

  std::optional<Path> monomial() {
    if (peek('v')) {
      ++pos_;
      const std::size_t v = index(q_.vertex_count(), "vertex");
      return Path::vertex(v);
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t save = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      skip();
      const bool is_arrow = peek('<');
      pos_ = save;
      if (!is_arrow) return std::nullopt;
      const std::size_t target = index(q_.vertex_count(), "vertex");
      skip();
      expect('<');
      skip();
      const std::size_t source = index(q_.vertex_count(), "vertex");
      skip();
      expect(':');
      skip();
      const std::size_t k = index(q_.count(target, source), "arrow index");
      return Path::single({target, source, k});
    }
    return std::nullopt;
  }

  complex scalar() {
    if (peek('(')) {
      ++pos_;
      skip();
      double sign = 1.0;
      if (peek('+') || peek('-')) sign = take() == '-' ? -1.0 : 1.0;
      skip();
      complex value = sign * number_with_unit();
      skip();
      if (peek('+') || peek('-')) {
        sign = take() == '-' ? -1.0 : 1.0;
        skip();
        const std::size_t at = pos_;
        const complex im = number_with_unit();
        if (im.real() != 0.0 || s_[pos_ - 1] != 'i') {
          pos_ = at;
          fail("expected an imaginary part");
        }
        value += sign * im;
        skip();
      }
      expect(')');
      return value;
    }
    return number_with_unit();
  }

  complex number_with_unit() {
    if (peek('i')) {
      ++pos_;
      return complex(0.0, 1.0);
    }
    const double x = number();
    skip();
    if (peek('i')) {
      ++pos_;
      return complex(0.0, x);
    }
    return x;
  }

  double number() {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), x);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return x;
  }

  // 1-based integer below bound, returned 0-based.
  std::size_t index(std::size_t bound, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail(std::string("expected ") + what);
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    if (v == 0 || v > bound) fail(std::string(what) + " out of range");
    return v - 1;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  char take() { return s_[pos_++]; }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error("polynomial: " + msg + " at offset " + std::to_string(pos_));
  }

  const Quiver& q_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string format_scalar(complex c) {
  char buf[64];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", c.real());
  } else {
    std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", c.real(), c.imag());
  }
  return buf;
}

}  // namespace detail

inline PathPolynomial parse_polynomial(const Quiver& q, std::string_view text) {
  return detail::PolyParser(q, text).parse();
}

inline std::string to_string(const Path& p) {
  if (p.is_vertex()) return "v" + std::to_string(p.source() + 1);
  std::string out;
  for (const Arrow& a : p.arrows()) {
    if (!out.empty()) out += "*";
    out += std::to_string(a.target + 1) + "<" + std::to_string(a.source + 1) + ":" +
           std::to_string(a.index + 1);
  }
  return out;
}

// Round-trips through parse_polynomial.
inline std::string to_string(const PathPolynomial& p) {
  if (p.is_zero()) return "0*v1";
  std::string out;
  for (const auto& [path, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += detail::format_scalar(c) + "*" + to_string(path);
  }
  return out;
}

}  // namespace quiver
