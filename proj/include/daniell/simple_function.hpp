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

#ifndef DANIELL_SIMPLE_FUNCTION_HPP
#define DANIELL_SIMPLE_FUNCTION_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "daniell/rings.hpp"

namespace daniell {

struct Term {
	Rational coeff;
	RingSet set;
};

/// A finite rational combination of ring-set indicators, sum c_i * chi_{R_i}.
///
/// Canonical form has pairwise disjoint sets, nonzero coefficients, one term
/// per distinct value, sorted by coefficient. On finite universes and the real
/// line it is unique, so the zero function is the empty term list.
class SimpleFunction {
public:
	explicit SimpleFunction(Universe u) : universe_(std::move(u)), canonical_(true) {}

	SimpleFunction(Universe u, std::vector<Term> terms) : universe_(std::move(u)), terms_(std::move(terms)) {
		for (const auto &t : terms_) {
			require_same_universe(universe_, t.set.universe());
		}
	}

	static SimpleFunction indicator(const RingSet &s, const Rational &c = 1) {
		return SimpleFunction(s.universe(), {Term{c, s}});
	}

	const Universe &universe() const noexcept { return universe_; }
	const std::vector<Term> &terms() const noexcept { return terms_; }
	bool is_canonical() const noexcept { return canonical_; }

	/// Exact value at t: the sum of coefficients of the terms containing t.
	ExtReal eval(const Point &t) const {
		Rational v = 0;
		for (const auto &term : terms_) {
			if (term.set.contains(t)) {
				v += term.coeff;
			}
		}
		return v;
	}

	/// Union of all term sets.
	RingSet support() const {
		RingSet s = RingSet::empty(universe_);
		for (const auto &t : terms_) {
			if (t.coeff != 0) {
				s = s | t.set;
			}
		}
		return s;
	}

	SimpleFunction canonical() const;

	friend SimpleFunction canonicalize(const SimpleFunction &x);

private:
	struct CanonicalTag {};
	SimpleFunction(Universe u, std::vector<Term> terms, CanonicalTag)
	    : universe_(std::move(u)), terms_(std::move(terms)), canonical_(true) {}

	Universe universe_;
	std::vector<Term> terms_;
	bool canonical_ = false;
};

namespace detail {

/// A cell of a common refinement with the value of each refined function.
struct Cell {
	RingSet set;
	std::vector<Rational> values;
};

/// Common refinement of several term lists into pairwise disjoint cells.
/// Each new term R splits every existing cell B into B \ R and B ∩ R and
/// contributes the leftover R \ (union of cells) as a fresh cell.
inline std::vector<Cell> refine(const std::vector<const std::vector<Term> *> &lists) {
	std::vector<Cell> cells;
	const std::size_t width = lists.size();
	for (std::size_t which = 0; which < width; ++which) {
		for (const auto &term : *lists[which]) {
			if (term.coeff == 0 || term.set.empty()) {
				continue;
			}
			std::vector<Cell> next;
			next.reserve(cells.size() + 2);
			RingSet rest = term.set;
			for (auto &cell : cells) {
				RingSet inside = cell.set & term.set;
				if (inside.empty()) {
					next.push_back(std::move(cell));
					continue;
				}
				rest = rest - cell.set;
				RingSet outside = cell.set - term.set;
				if (!outside.empty()) {
					next.push_back(Cell{std::move(outside), cell.values});
				}
				cell.values[which] += term.coeff;
				next.push_back(Cell{std::move(inside), std::move(cell.values)});
			}
			if (!rest.empty()) {
				std::vector<Rational> v(width, Rational(0));
				v[which] = term.coeff;
				next.push_back(Cell{std::move(rest), std::move(v)});
			}
			cells = std::move(next);
		}
	}
	return cells;
}

} // namespace detail

/// Pairwise-disjoint, zero-free, one-term-per-value form with unchanged
/// pointwise values.
inline SimpleFunction canonicalize(const SimpleFunction &x) {
	if (x.is_canonical()) {
		return x;
	}
	auto cells = detail::refine({&x.terms()});
	std::map<Rational, RingSet> by_value;
	for (auto &c : cells) {
		const Rational &v = c.values[0];
		if (v == 0) {
			continue;
		}
		auto it = by_value.find(v);
		if (it == by_value.end()) {
			by_value.emplace(v, std::move(c.set));
		} else {
			it->second = it->second | c.set;
		}
	}
	std::vector<Term> terms;
	terms.reserve(by_value.size());
	for (auto &[v, s] : by_value) {
		terms.push_back(Term{v, std::move(s)});
	}
	return SimpleFunction(x.universe(), std::move(terms), SimpleFunction::CanonicalTag{});
}

inline SimpleFunction SimpleFunction::canonical() const { return canonicalize(*this); }

/// Pointwise f(x(t), y(t)); f(0, 0) must be 0 so the result stays simple.
inline SimpleFunction pointwise(const SimpleFunction &x, const SimpleFunction &y,
                                const std::function<Rational(const Rational &, const Rational &)> &f) {
	require_same_universe(x.universe(), y.universe());
	if (f(Rational(0), Rational(0)) != 0) {
		throw DomainError("pointwise rule must map (0, 0) to 0");
	}
	auto cells = detail::refine({&x.terms(), &y.terms()});
	std::vector<Term> terms;
	terms.reserve(cells.size());
	for (auto &c : cells) {
		terms.push_back(Term{f(c.values[0], c.values[1]), std::move(c.set)});
	}
	return canonicalize(SimpleFunction(x.universe(), std::move(terms)));
}

/// First point where pred(x(t), y(t)) fails, or nullopt if it holds
/// everywhere. pred(0, 0) is assumed to hold.
inline std::optional<Point> find_violation(const SimpleFunction &x, const SimpleFunction &y,
                                           const std::function<bool(const Rational &, const Rational &)> &pred) {
	require_same_universe(x.universe(), y.universe());
	auto cells = detail::refine({&x.terms(), &y.terms()});
	for (const auto &c : cells) {
		if (!pred(c.values[0], c.values[1])) {
			return c.set.witness();
		}
	}
	return std::nullopt;
}

enum class LatticeOp { Plus, Scale, Meet, Join, Abs };

inline SimpleFunction operator+(const SimpleFunction &x, const SimpleFunction &y) {
	require_same_universe(x.universe(), y.universe());
	auto terms = x.terms();
	terms.insert(terms.end(), y.terms().begin(), y.terms().end());
	return canonicalize(SimpleFunction(x.universe(), std::move(terms)));
}

inline SimpleFunction operator*(const Rational &c, const SimpleFunction &x) {
	if (c == 0) {
		return SimpleFunction(x.universe());
	}
	auto terms = x.terms();
	for (auto &t : terms) {
		t.coeff *= c;
	}
	return canonicalize(SimpleFunction(x.universe(), std::move(terms)));
}

inline SimpleFunction operator-(const SimpleFunction &x) { return Rational(-1) * x; }
inline SimpleFunction operator-(const SimpleFunction &x, const SimpleFunction &y) { return x + (-y); }

inline SimpleFunction meet(const SimpleFunction &x, const SimpleFunction &y) {
	return pointwise(x, y, [](const Rational &a, const Rational &b) { return min(a, b); });
}

inline SimpleFunction join(const SimpleFunction &x, const SimpleFunction &y) {
	return pointwise(x, y, [](const Rational &a, const Rational &b) { return max(a, b); });
}

inline SimpleFunction abs(const SimpleFunction &x) {
	return pointwise(x, SimpleFunction(x.universe()), [](const Rational &a, const Rational &) { return abs(a); });
}

/// x ∨ 0
inline SimpleFunction positive_part(const SimpleFunction &x) { return join(x, SimpleFunction(x.universe())); }

/// Applies a lattice operation. Binary operations need y; Scale needs c.
inline SimpleFunction lattice_op(LatticeOp op, const SimpleFunction &x, const std::optional<SimpleFunction> &y = {},
                                 const std::optional<Rational> &c = {}) {
	auto need_y = [&]() -> const SimpleFunction & {
		if (!y) {
			throw DomainError("lattice operation needs a second function");
		}
		return *y;
	};
	switch (op) {
	case LatticeOp::Plus:
		return x + need_y();
	case LatticeOp::Scale:
		if (!c) {
			throw DomainError("Scale needs a coefficient");
		}
		return *c * x;
	case LatticeOp::Meet:
		return meet(x, need_y());
	case LatticeOp::Join:
		return join(x, need_y());
	default:
		return abs(x);
	}
}

/// Pointwise equality (valid for every universe).
inline bool operator==(const SimpleFunction &x, const SimpleFunction &y) {
	return !find_violation(x, y, [](const Rational &a, const Rational &b) { return a == b; }).has_value();
}

inline std::optional<Point> find_negative(const SimpleFunction &x) {
	return find_violation(x, SimpleFunction(x.universe()),
	                      [](const Rational &a, const Rational &) { return a >= 0; });
}

/// x <= y everywhere.
inline bool pointwise_le(const SimpleFunction &x, const SimpleFunction &y) {
	return !find_violation(x, y, [](const Rational &a, const Rational &b) { return a <= b; }).has_value();
}

inline ExtReal eval(const SimpleFunction &x, const Point &t) { return x.eval(t); }

inline std::string to_string(const SimpleFunction &x) {
	if (x.terms().empty()) {
		return "0";
	}
	std::string s;
	for (const auto &t : x.terms()) {
		s += (s.empty() ? "" : " + ") + to_string(t.coeff) + "*chi" + to_string(t.set);
	}
	return s;
}

} // namespace daniell

#endif // DANIELL_SIMPLE_FUNCTION_HPP
