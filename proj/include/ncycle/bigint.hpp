#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ncycle {

using BigInt = boost::multiprecision::cpp_int;

/// Binomial coefficient C(n, r); zero outside 0 <= r <= n.
BigInt binomial(long n, long r);

/// base^exp for exp >= 0.
BigInt power(const BigInt& base, unsigned long exp);

}  // namespace ncycle
