// Copyright 2026 The carnotfreq Authors
//
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

#include "carnotfreq/rational.hpp"

#include <cmath>

#include "carnotfreq/errors.hpp"

namespace cfreq {

Rational parse_rational(const std::string& s) {
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational");
  auto dot = s.find('.');
  auto e = s.find_first_of("eE");
  if (dot == std::string::npos && e == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) fail(ErrorCode::ParseError, "bad rational '" + s + "'");
    if (q.get_den() == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }
  // Decimal with optional exponent, parsed exactly as mantissa * 10^exp.
  std::string mant = s.substr(0, e);
  long exp10 = 0;
  if (e != std::string::npos) {
    try {
      exp10 = std::stol(s.substr(e + 1));
    } catch (...) {
      fail(ErrorCode::ParseError, "bad exponent in '" + s + "'");
    }
  }
  bool neg = false;
  std::size_t pos = 0;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    pos = 1;
  }
  std::string digits;
  for (; pos < mant.size(); ++pos) {
    char c = mant[pos];
    if (c == '.') continue;
    if (c < '0' || c > '9') fail(ErrorCode::ParseError, "bad decimal '" + s + "'");
    digits.push_back(c);
  }
  if (digits.empty()) fail(ErrorCode::ParseError, "bad decimal '" + s + "'");
  dot = mant.find('.');
  long frac = dot == std::string::npos ? 0 : static_cast<long>(mant.size() - dot - 1);
  exp10 -= frac;
  mpz_class num(digits, 10);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  Rational q = exp10 >= 0 ? Rational(num * p10) : Rational(num, p10);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) fail(ErrorCode::InvalidArgument, "non-finite value");
  Rational q(x);
  q.canonicalize();
  return q;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t h = splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace cfreq
