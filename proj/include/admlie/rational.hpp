#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace admlie {

/// Arbitrary-precision rational scalar. Always stored in lowest terms with
/// positive denominator (canonical form is maintained by the backend).
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

using Vec = std::vector<Rat>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input (syntax, wrong shape, unknown field).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally well-formed input violating a mathematical invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Parses "p", "-p" or "p/q" with q > 0 after normalization.
inline Rat parse_rat(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(text)) throw ParseError("bad rational literal '" + text + "'");
      return Rat(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw ParseError("bad rational literal '" + text + "'");
    Int d(den);
    if (d == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rat(Int(num), d);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad rational literal '" + text + "'");
  }
}

/// Canonical text form: "p" when the denominator is 1, else "p/q".
inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string vec_to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rat_to_string(v[i]);
  }
  return out + ")";
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

inline Vec& add_scaled(Vec& target, const Rat& c, const Vec& src) {
  if (c == 0) return target;
  for (std::size_t i = 0; i < target.size(); ++i)
    if (src[i] != 0) target[i] += c * src[i];
  return target;
}

inline Vec scaled(const Vec& v, const Rat& c) {
  Vec out(v);
  for (auto& x : out) x *= c;
  return out;
}

inline Vec vec_sum(const Vec& a, const Vec& b) {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

inline Rat dot(const Vec& a, const Vec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace admlie
