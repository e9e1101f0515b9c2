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

#ifndef DANIELL_INTERVAL_UNION_HPP
#define DANIELL_INTERVAL_UNION_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "daniell/ext_real.hpp"

namespace daniell {

/// Half-open interval [lo, hi) of the real line. lo may be -inf and hi +inf,
/// in which case the interval is a ray or the whole line.
struct Interval {
	ExtReal lo;
	ExtReal hi;

	bool contains(const Rational &t) const { return lo <= ExtReal(t) && ExtReal(t) < hi; }

	bool contains(double t) const { return lo.to_double() <= t && t < hi.to_double(); }

	ExtReal length() const { return hi - lo; }

	friend bool operator==(const Interval &, const Interval &) = default;
};

/// A finite union of half-open intervals kept in canonical form: sorted,
/// pairwise disjoint, non-adjacent (touching pieces are merged), each
/// non-empty. Two unions with the same membership function have identical
/// interval lists.
class IntervalUnion {
public:
	IntervalUnion() = default;

	/// Canonicalizes an arbitrary list of intervals. Empty pieces (lo >= hi)
	/// are dropped.
	explicit IntervalUnion(std::vector<Interval> pieces) : pieces_(canonical(std::move(pieces))) {}

	static IntervalUnion interval(const ExtReal &lo, const ExtReal &hi) {
		return IntervalUnion({Interval{lo, hi}});
	}

	static IntervalUnion whole_line() { return interval(ExtReal::neg_inf(), ExtReal::pos_inf()); }

	const std::vector<Interval> &pieces() const noexcept { return pieces_; }
	bool empty() const noexcept { return pieces_.empty(); }

	bool is_bounded() const {
		return pieces_.empty() || (pieces_.front().lo.is_finite() && pieces_.back().hi.is_finite());
	}

	bool contains(const Rational &t) const {
		return std::any_of(pieces_.begin(), pieces_.end(),
		                   [&](const Interval &iv) { return iv.contains(t); });
	}

	bool contains(double t) const {
		return std::any_of(pieces_.begin(), pieces_.end(),
		                   [&](const Interval &iv) { return iv.contains(t); });
	}

	/// Lebesgue length, +inf for unbounded unions.
	ExtReal length() const {
		ExtReal total = 0;
		for (const auto &iv : pieces_) {
			total += iv.length();
		}
		return total;
	}

	/// Some point of the union, if non-empty.
	std::optional<Rational> some_point() const {
		if (pieces_.empty()) {
			return std::nullopt;
		}
		const auto &iv = pieces_.front();
		if (iv.lo.is_finite()) {
			return iv.lo.value();
		}
		if (iv.hi.is_finite()) {
			return Rational(iv.hi.value() - 1);
		}
		return Rational(0);
	}

	friend IntervalUnion operator|(const IntervalUnion &a, const IntervalUnion &b) {
		return combine(a, b, [](bool x, bool y) { return x || y; });
	}
	friend IntervalUnion operator&(const IntervalUnion &a, const IntervalUnion &b) {
		return combine(a, b, [](bool x, bool y) { return x && y; });
	}
	friend IntervalUnion operator-(const IntervalUnion &a, const IntervalUnion &b) {
		return combine(a, b, [](bool x, bool y) { return x && !y; });
	}

	IntervalUnion complement() const { return whole_line() - *this; }

	/// Canonical pieces are maximal, so each piece must sit inside a single
	/// piece of o.
	bool subset_of(const IntervalUnion &o) const {
		std::size_t j = 0;
		for (const auto &iv : pieces_) {
			while (j < o.pieces_.size() && o.pieces_[j].hi <= iv.lo) {
				++j;
			}
			if (j == o.pieces_.size() || iv.lo < o.pieces_[j].lo || o.pieces_[j].hi < iv.hi) {
				return false;
			}
		}
		return true;
	}

	friend bool operator==(const IntervalUnion &, const IntervalUnion &) = default;

	/// Applies a pointwise boolean rule. Membership is constant on every cell
	/// between consecutive endpoints of either operand.
	template <class Rule>
	static IntervalUnion combine(const IntervalUnion &a, const IntervalUnion &b, Rule rule) {
		std::vector<ExtReal> cuts{ExtReal::neg_inf(), ExtReal::pos_inf()};
		for (const auto *u : {&a, &b}) {
			for (const auto &iv : u->pieces_) {
				cuts.push_back(iv.lo);
				cuts.push_back(iv.hi);
			}
		}
		std::sort(cuts.begin(), cuts.end());
		cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
		std::vector<Interval> out;
		for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
			Rational rep = representative(cuts[i], cuts[i + 1]);
			if (rule(a.contains(rep), b.contains(rep))) {
				out.push_back(Interval{cuts[i], cuts[i + 1]});
			}
		}
		return IntervalUnion(std::move(out));
	}

private:
	static Rational representative(const ExtReal &lo, const ExtReal &hi) {
		if (lo.is_finite()) {
			return lo.value();
		}
		if (hi.is_finite()) {
			return Rational(hi.value() - 1);
		}
		return Rational(0);
	}

	static std::vector<Interval> canonical(std::vector<Interval> pieces) {
		for (const auto &iv : pieces) {
			if (iv.lo.is_pos_inf() || iv.hi.is_neg_inf()) {
				throw DomainError("interval endpoint order: lo = +inf or hi = -inf");
			}
		}
		std::erase_if(pieces, [](const Interval &iv) { return !(iv.lo < iv.hi); });
		std::sort(pieces.begin(), pieces.end(),
		          [](const Interval &x, const Interval &y) { return x.lo < y.lo; });
		std::vector<Interval> out;
		for (auto &iv : pieces) {
			if (!out.empty() && iv.lo <= out.back().hi) {
				out.back().hi = max(out.back().hi, iv.hi);
			} else {
				out.push_back(std::move(iv));
			}
		}
		return out;
	}

	std::vector<Interval> pieces_;
};

inline std::string to_string(const IntervalUnion &u) {
	if (u.empty()) {
		return "{}";
	}
	std::string s;
	for (const auto &iv : u.pieces()) {
		if (!s.empty()) {
			s += " u ";
		}
		s += "[" + to_string(iv.lo) + "," + to_string(iv.hi) + ")";
	}
	return s;
}

} // namespace daniell

#endif // DANIELL_INTERVAL_UNION_HPP
