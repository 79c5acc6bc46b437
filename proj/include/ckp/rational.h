// Copyright 2026 The CKP Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact arithmetic primitives. Every solver path in this library works on
// these types; there is no floating point fast path.

#ifndef CKP_RATIONAL_H_
#define CKP_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ckp {

// Expression templates are off so that `auto` and std::max see plain values.
using BigInt = boost::multiprecision::number<
    boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
// Always kept in canonical form (gcd 1, positive denominator) by the backend.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Parses "p/q" or "p" with optional leading '-'. Throws CkpError(kParseError)
// on malformed text or a zero denominator.
Rational ParseRational(std::string_view text);

// Canonical "p/q" text; the denominator is always written, even when 1.
std::string FormatRational(const Rational& value);

BigInt Numerator(const Rational& value);
BigInt Denominator(const Rational& value);

BigInt FloorOf(const Rational& value);
BigInt CeilOf(const Rational& value);

// Narrowing with an overflow check; throws CkpError(kValueOverflow).
int64_t ToInt64(const BigInt& value, std::string_view what);

Rational Abs(const Rational& value);
int Sign(const Rational& value);

}  // namespace ckp

#endif  // CKP_RATIONAL_H_
