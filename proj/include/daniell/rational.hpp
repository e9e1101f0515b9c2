/*
 *   Copyright 2026 The daniell authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DANIELL_RATIONAL_HPP
#define DANIELL_RATIONAL_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "daniell/error.hpp"

namespace daniell {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int::backend_type, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational::backend_type, boost::multiprecision::et_off>;

inline Rational make_rational(long long num, long long den = 1) {
	if (den == 0) {
		throw DomainError("rational with zero denominator");
	}
	return Rational(Integer(num), Integer(den));
}

inline Integer numerator(const Rational &q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational &q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rational &q) { return q.convert_to<double>(); }

inline Rational abs(const Rational &q) { return q < 0 ? Rational(-q) : q; }

inline Rational min(const Rational &a, const Rational &b) { return b < a ? b : a; }
inline Rational max(const Rational &a, const Rational &b) { return a < b ? b : a; }

/// 2^e for any integer e.
inline Rational pow2(int e) {
	Integer p = 1;
	p <<= (e < 0 ? -e : e);
	return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

/// Largest integer <= q.
inline Integer floor(const Rational &q) {
	Integer n = numerator(q);
	Integer d = denominator(q);
	Integer f = n / d;
	if (n < 0 && f * d != n) {
		f -= 1;
	}
	return f;
}

/// Exact value of a finite double.
inline Rational from_double(double v) {
	if (!std::isfinite(v)) {
		throw DomainError("cannot convert a non-finite double to a rational");
	}
	int exp = 0;
	double mant = std::frexp(v, &exp);
	// 53 bits of mantissa scaled to an integer
	auto scaled = static_cast<long long>(std::ldexp(mant, 53));
	return Rational(Integer(scaled)) * pow2(exp - 53);
}

inline std::string to_string(const Rational &q) {
	if (denominator(q) == 1) {
		return numerator(q).str();
	}
	return numerator(q).str() + "/" + denominator(q).str();
}

/// Parses "p", "p/q", or a plain decimal such as "-0.125" exactly.
inline Rational parse_rational(std::string_view text) {
	std::string s(text);
	auto bad = [&]() { return ParseError("not a rational number: '" + s + "'"); };
	if (s.empty()) {
		throw bad();
	}
	auto parse_int = [&](const std::string &part) -> Integer {
		std::size_t i = (part.size() > 0 && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
		if (i == part.size()) {
			throw bad();
		}
		for (std::size_t j = i; j < part.size(); ++j) {
			if (part[j] < '0' || part[j] > '9') {
				throw bad();
			}
		}
		Integer v(part[0] == '+' ? part.substr(1) : part);
		return v;
	};
	if (auto slash = s.find('/'); slash != std::string::npos) {
		Integer n = parse_int(s.substr(0, slash));
		Integer d = parse_int(s.substr(slash + 1));
		if (d == 0) {
			throw bad();
		}
		return Rational(n, d);
	}
	if (auto dot = s.find('.'); dot != std::string::npos) {
		std::string whole = s.substr(0, dot);
		std::string frac = s.substr(dot + 1);
		bool negative = !whole.empty() && whole[0] == '-';
		if (whole.empty() || whole == "-" || whole == "+") {
			whole += "0";
		}
		if (frac.empty()) {
			frac = "0";
		}
		Integer w = parse_int(whole);
		Integer f = parse_int(frac);
		if (frac[0] == '-' || frac[0] == '+') {
			throw bad();
		}
		Integer scale = 1;
		for (std::size_t i = 0; i < frac.size(); ++i) {
			scale *= 10;
		}
		Rational mag = Rational(w < 0 ? Integer(-w) : w) + Rational(f, scale);
		return negative ? Rational(-mag) : mag;
	}
	return Rational(parse_int(s));
}

} // namespace daniell

#endif // DANIELL_RATIONAL_HPP
