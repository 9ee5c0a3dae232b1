#pragma once
// Magnitude of a coefficient as a double, for float and exact rational scalars.

#include <boost/rational.hpp>
#include <cmath>
#include <complex>

namespace bgkit {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
template <class I>
double magnitude(const boost::rational<I>& x) {
    return std::abs(boost::rational_cast<double>(x));
}

}  // namespace bgkit
