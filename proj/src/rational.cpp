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


#include "rqc/rational.hpp"

#include <cmath>
#include <numbers>

#include <gmp.h>

#include "rqc/error.hpp"

namespace rqc {

Rational make_rational(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw DomainError("rational with zero denominator");
    return Rational(BigInt(numerator), BigInt(denominator));
}

std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
        BigInt p(std::string(text.substr(0, slash)));
        BigInt q(std::string(text.substr(slash + 1)));
        if (q == 0) throw DomainError("rational with zero denominator: " + std::string(text));
        return Rational(p, q);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        throw InvalidArgumentError("not a rational: '" + std::string(text) + "'");
    }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

double log_abs(const BigInt& x) {
    if (x == 0) return -std::numeric_limits<double>::infinity();
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, x.backend().data());
    return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_abs(const Rational& r) { return log_abs(numerator(r)) - log_abs(denominator(r)); }

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) return BigInt(0);
    BigInt out;
    mpz_bin_uiui(out.backend().data(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

}  // namespace rqc
