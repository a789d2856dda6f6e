// Copyright 2026 The rqc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace rqc {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

Rational make_rational(std::int64_t numerator, std::int64_t denominator = 1);

/// Always "p/q" (integers render as "p/1") so the text form parses uniformly.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

/// Natural log of |x|; stays finite far outside the double range.
double log_abs(const BigInt& x);
double log_abs(const Rational& r);

BigInt binomial(std::int64_t n, std::int64_t k);

}  // namespace rqc
