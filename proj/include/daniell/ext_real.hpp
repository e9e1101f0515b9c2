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

#ifndef DANIELL_EXT_REAL_HPP
#define DANIELL_EXT_REAL_HPP

#include <compare>
#include <string>

#include "daniell/rational.hpp"

namespace daniell {

/// A point of the extended real line: a rational, +inf or -inf.
///
/// Infinity is a tag, never a large sentinel. Addition is total: the
/// ambiguous sum (+inf) + (-inf) is 0. That sum is commutative with identity 0
/// but not associative around the infinities.
class ExtReal {
public:
	enum class Kind { NegInf, Finite, PosInf };

	ExtReal() = default;
	ExtReal(const Rational &v) : kind_(Kind::Finite), value_(v) {} // NOLINT(implicit)
	ExtReal(long long v) : kind_(Kind::Finite), value_(v) {}      // NOLINT(implicit)
	ExtReal(int v) : kind_(Kind::Finite), value_(v) {}            // NOLINT(implicit)

	static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
	static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }

	Kind kind() const noexcept { return kind_; }
	bool is_finite() const noexcept { return kind_ == Kind::Finite; }
	bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
	bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

	/// The rational value. Throws for the infinities.
	const Rational &value() const {
		if (!is_finite()) {
			throw DomainError("value() of an infinite extended real");
		}
		return value_;
	}

	double to_double() const {
		switch (kind_) {
		case Kind::PosInf:
			return HUGE_VAL;
		case Kind::NegInf:
			return -HUGE_VAL;
		default:
			return daniell::to_double(value_);
		}
	}

	ExtReal operator-() const {
		switch (kind_) {
		case Kind::PosInf:
			return neg_inf();
		case Kind::NegInf:
			return pos_inf();
		default:
			return ExtReal(Rational(-value_));
		}
	}

	friend ExtReal operator+(const ExtReal &a, const ExtReal &b) {
		if (a.is_finite() && b.is_finite()) {
			return ExtReal(Rational(a.value_ + b.value_));
		}
		if (a.is_finite()) {
			return b;
		}
		if (b.is_finite()) {
			return a;
		}
		if (a.kind_ == b.kind_) {
			return a;
		}
		return ExtReal(0);
	}

	friend ExtReal operator-(const ExtReal &a, const ExtReal &b) { return a + (-b); }

	/// Scaling with 0 * inf = 0.
	friend ExtReal operator*(const Rational &c, const ExtReal &a) {
		if (a.is_finite()) {
			return ExtReal(Rational(c * a.value_));
		}
		if (c == 0) {
			return ExtReal(0);
		}
		return (c > 0) ? a : -a;
	}

	ExtReal &operator+=(const ExtReal &o) { return *this = *this + o; }

	friend bool operator==(const ExtReal &a, const ExtReal &b) {
		if (a.kind_ != b.kind_) {
			return false;
		}
		return !a.is_finite() || a.value_ == b.value_;
	}

	friend std::strong_ordering operator<=>(const ExtReal &a, const ExtReal &b) {
		if (a.kind_ != b.kind_) {
			return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
		}
		if (!a.is_finite()) {
			return std::strong_ordering::equal;
		}
		if (a.value_ < b.value_) {
			return std::strong_ordering::less;
		}
		return a.value_ == b.value_ ? std::strong_ordering::equal : std::strong_ordering::greater;
	}

private:
	explicit ExtReal(Kind k) : kind_(k) {}

	Kind kind_ = Kind::Finite;
	Rational value_ = 0;
};

inline ExtReal ext_add(const ExtReal &a, const ExtReal &b) { return a + b; }

inline ExtReal min(const ExtReal &a, const ExtReal &b) { return b < a ? b : a; }
inline ExtReal max(const ExtReal &a, const ExtReal &b) { return a < b ? b : a; }

inline std::string to_string(const ExtReal &x) {
	if (x.is_pos_inf()) {
		return "+inf";
	}
	if (x.is_neg_inf()) {
		return "-inf";
	}
	return to_string(x.value());
}

} // namespace daniell

#endif // DANIELL_EXT_REAL_HPP
