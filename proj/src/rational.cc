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

#include "ckp/rational.h"

#include <cctype>
#include <limits>

#include "ckp/error.h"

namespace ckp {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams:
      return "InvalidParams";
    case ErrorCode::kInvalidInstance:
      return "InvalidInstance";
    case ErrorCode::kMixedQuadrantBid:
      return "MixedQuadrantBid";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kGridTooLarge:
      return "GridTooLarge";
    case ErrorCode::kOracleCap:
      return "OracleCap";
    case ErrorCode::kCombinatorialCap:
      return "CombinatorialCap";
    case ErrorCode::kValueOverflow:
      return "ValueOverflow";
    case ErrorCode::kInternalInconsistency:
      return "InternalInconsistency";
  }
  return "Unknown";
}

ErrorFamily FamilyOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGridTooLarge:
    case ErrorCode::kOracleCap:
    case ErrorCode::kCombinatorialCap:
    case ErrorCode::kValueOverflow:
      return ErrorFamily::kResourceCap;
    case ErrorCode::kInternalInconsistency:
      return ErrorFamily::kInternal;
    default:
      return ErrorFamily::kInput;
  }
}

namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const size_t slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!IsDigits(num) || !IsDigits(den)) {
    throw CkpError(ErrorCode::kParseError,
                   "malformed rational '" + std::string(text) + "'");
  }
  BigInt n{std::string(num)};
  BigInt d{std::string(den)};
  if (d == 0) {
    throw CkpError(ErrorCode::kParseError,
                   "zero denominator in '" + std::string(text) + "'");
  }
  if (negative) n = -n;
  return Rational(n, d);
}

std::string FormatRational(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

BigInt Numerator(const Rational& value) {
  return boost::multiprecision::numerator(value);
}

BigInt Denominator(const Rational& value) {
  return boost::multiprecision::denominator(value);
}

BigInt FloorOf(const Rational& value) {
  const BigInt n = Numerator(value);
  const BigInt d = Denominator(value);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

BigInt CeilOf(const Rational& value) {
  const BigInt n = Numerator(value);
  const BigInt d = Denominator(value);
  BigInt q = n / d;
  if (n > 0 && q * d != n) q += 1;
  return q;
}

int64_t ToInt64(const BigInt& value, std::string_view what) {
  if (value > std::numeric_limits<int64_t>::max() ||
      value < std::numeric_limits<int64_t>::min()) {
    throw CkpError(ErrorCode::kValueOverflow,
                   std::string(what) + " does not fit in 64 bits");
  }
  return static_cast<int64_t>(value);
}

Rational Abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

int Sign(const Rational& value) {
  if (value > 0) return 1;
  if (value < 0) return -1;
  return 0;
}

}  // namespace ckp
