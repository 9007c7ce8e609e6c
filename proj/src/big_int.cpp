#include "girthlab/big_int.hpp"

#include <cmath>
#include <limits>

namespace girthlab {

double log_big(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const unsigned bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 60) return std::log(v.convert_to<double>());
  const unsigned shift = bits - 60;
  BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

}  // namespace girthlab
