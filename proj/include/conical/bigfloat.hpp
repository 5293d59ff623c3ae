#ifndef CONICAL_BIGFLOAT_HPP
#define CONICAL_BIGFLOAT_HPP

#include <cmath>

#include <boost/multiprecision/mpfr.hpp>

namespace conical {

/// Runtime-precision float for the exclusion pipeline. Precision is set
/// globally via set_bigfloat_bits (thread-local in boost.multiprecision).
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

inline unsigned bits_to_digits10(unsigned bits) {
  return (unsigned)(bits * 0.30103) + 2;
}

inline void set_bigfloat_bits(unsigned bits) {
  BigFloat::default_precision(bits_to_digits10(bits));
}

template <class F>
F const_pi() {
  return 4 * atan(F(1));
}
template <>
inline double const_pi<double>() {
  return M_PI;
}

}  // namespace conical

#endif
