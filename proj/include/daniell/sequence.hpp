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

#ifndef DANIELL_SEQUENCE_HPP
#define DANIELL_SEQUENCE_HPP

#include <functional>
#include <optional>
#include <string>

#include "daniell/simple_function.hpp"

namespace daniell {

/// Vector-lattice operations a realization of T0 must provide. Specialized
/// for SimpleFunction here and for lebesgue::PiecewiseLinear.
template <class F>
struct T0Traits;

template <>
struct T0Traits<SimpleFunction> {
	static SimpleFunction add(const SimpleFunction &x, const SimpleFunction &y) { return x + y; }
	static SimpleFunction scale(const Rational &c, const SimpleFunction &x) { return c * x; }
	static SimpleFunction abs(const SimpleFunction &x) { return daniell::abs(x); }
	static SimpleFunction positive_part(const SimpleFunction &x) { return daniell::positive_part(x); }

	/// A description of a point where x <= y fails, if any.
	static std::optional<std::string> le_violation(const SimpleFunction &x, const SimpleFunction &y) {
		auto p = find_violation(x, y, [](const Rational &a, const Rational &b) { return a <= b; });
		if (!p) {
			return std::nullopt;
		}
		return describe(x.universe(), *p);
	}

	static std::optional<std::string> negative_point(const SimpleFunction &x) {
		auto p = find_negative(x);
		if (!p) {
			return std::nullopt;
		}
		return describe(x.universe(), *p);
	}

	static std::string show(const SimpleFunction &x) { return to_string(x); }
};

enum class Direction { Increasing, Decreasing };

/// A lazily generated monotone sequence x_1, x_2, ... of T0 members.
///
/// Monotonicity is a claim checked by certify(); an optional tail bound
/// gives a certified bound on |I1(lim x_n) - I(x_n)| for extension results.
template <class F>
class MonotoneSequence {
public:
	using Generator = std::function<F(int)>;
	using TailBound = std::function<Rational(int)>;

	MonotoneSequence(Generator gen, Direction dir, std::string name = "sequence", TailBound tail = {})
	    : gen_(std::move(gen)), dir_(dir), name_(std::move(name)), tail_(std::move(tail)) {}

	/// The n-th member, n >= 1.
	F operator()(int n) const {
		if (n < 1) {
			throw DomainError("sequence index must be >= 1");
		}
		return gen_(n);
	}

	Direction direction() const noexcept { return dir_; }
	const std::string &name() const noexcept { return name_; }
	bool has_tail_bound() const noexcept { return static_cast<bool>(tail_); }
	Rational tail_bound(int n) const { return tail_(n); }

	/// Checks x_n <= x_{n+1} (or >=) for n < depth. Throws PreconditionError
	/// naming the index and a violating point.
	void certify(int depth) const {
		F prev = (*this)(1);
		for (int n = 2; n <= depth; ++n) {
			F cur = (*this)(n);
			auto bad = dir_ == Direction::Increasing ? T0Traits<F>::le_violation(prev, cur)
			                                          : T0Traits<F>::le_violation(cur, prev);
			if (bad) {
				throw PreconditionError("sequence '" + name_ + "' is not " +
				                            (dir_ == Direction::Increasing ? "increasing" : "decreasing") +
				                            " between indices " + std::to_string(n - 1) + " and " +
				                            std::to_string(n),
				                        "n=" + std::to_string(n - 1) + ", " + *bad);
			}
			prev = std::move(cur);
		}
	}

private:
	Generator gen_;
	Direction dir_;
	std::string name_;
	TailBound tail_;
};

} // namespace daniell

#endif // DANIELL_SEQUENCE_HPP
