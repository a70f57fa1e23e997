#pragma once

// Bridges between library numbers and the oracle's 200-bit floats.

#include <string>

#include "oracles/oracle.hpp"
#include "qcross/exactnum.hpp"

namespace testing_support {

inline oracle::Float to_float(const qcross::Integer& x) { return oracle::Float(x.get_str()); }

inline oracle::Float to_float(const qcross::Rational& x) {
  return to_float(x.get_num()) / to_float(x.get_den());
}

inline oracle::Float to_float(const qcross::QuadraticNumber& x) {
  return to_float(x.rational_part()) +
         to_float(x.radical_part()) * boost::multiprecision::sqrt(to_float(x.radicand()));
}

inline qcross::Integer to_integer(const oracle::BigInt& x) { return qcross::Integer(x.str()); }

}  // namespace testing_support
