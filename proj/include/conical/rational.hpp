#ifndef CONICAL_RATIONAL_HPP
#define CONICAL_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "conical/errors.hpp"

namespace conical {

using Int = mpz_class;
using Rat = mpq_class;

/// num/den reduced to canonical form; den must be nonzero.
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw PreconditionViolation("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

/// Parses "p", "-p" or "p/q". Decimal points are rejected on purpose: callers
/// that accept this format require exact inputs.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw PreconditionViolation("empty rational literal");
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos)
    throw PreconditionViolation("expected exact rational 'num/den', got '" + s + "'");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_rat(Int(s), Int(1));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw PreconditionViolation("unparsable rational '" + s + "'");
  }
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

/// "a,b/c,d" -> vector of exact rationals.
inline std::vector<Rat> parse_rat_vector(const std::string& s) {
  std::vector<Rat> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(parse_rat(s.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

}  // namespace conical

#endif
