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

#ifndef DANIELL_LEBESGUE_HPP
#define DANIELL_LEBESGUE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "daniell/extension.hpp"

namespace daniell::lebesgue {

/// A continuous, compactly supported piecewise-linear function with rational
/// breakpoints. Zero outside [xs.front(), xs.back()].
class PiecewiseLinear {
public:
	PiecewiseLinear() = default;

	PiecewiseLinear(std::vector<Rational> xs, std::vector<Rational> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
		if (xs_.size() != ys_.size()) {
			throw DomainError("breakpoints and values differ in length");
		}
		if (xs_.size() == 1) {
			throw DomainError("a single breakpoint does not define a function");
		}
		for (std::size_t i = 1; i < xs_.size(); ++i) {
			if (!(xs_[i - 1] < xs_[i])) {
				throw DomainError("breakpoints must increase strictly");
			}
		}
		if (!xs_.empty() && (ys_.front() != 0 || ys_.back() != 0)) {
			throw DomainError("compact support needs zero values at both ends");
		}
		simplify();
	}

	/// The triangle (a,0)-(m,h)-(b,0).
	static PiecewiseLinear hat(const Rational &a, const Rational &m, const Rational &b, const Rational &h = 1) {
		return PiecewiseLinear({a, m, b}, {0, h, 0});
	}

	const std::vector<Rational> &breakpoints() const noexcept { return xs_; }
	const std::vector<Rational> &values() const noexcept { return ys_; }
	bool is_zero() const noexcept { return xs_.empty(); }

	Rational operator()(const Rational &t) const {
		if (xs_.empty() || t <= xs_.front() || t >= xs_.back()) {
			return 0;
		}
		auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
		std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
		return ys_[i] + (ys_[i + 1] - ys_[i]) * (t - xs_[i]) / (xs_[i + 1] - xs_[i]);
	}

	double operator()(double t) const {
		if (xs_.empty() || t <= to_double(xs_.front()) || t >= to_double(xs_.back())) {
			return 0;
		}
		return to_double((*this)(from_double(t)));
	}

	friend bool operator==(const PiecewiseLinear &, const PiecewiseLinear &) = default;

private:
	// drop collinear interior breakpoints and redundant zero runs at the ends
	void simplify() {
		std::vector<Rational> x, y;
		for (std::size_t i = 0; i < xs_.size(); ++i) {
			if (x.size() >= 2) {
				const std::size_t k = x.size();
				Rational s1 = (y[k - 1] - y[k - 2]) / (x[k - 1] - x[k - 2]);
				Rational s2 = (ys_[i] - y[k - 1]) / (xs_[i] - x[k - 1]);
				if (s1 == s2) {
					x.back() = xs_[i];
					y.back() = ys_[i];
					continue;
				}
			}
			x.push_back(xs_[i]);
			y.push_back(ys_[i]);
		}
		std::size_t first = 0;
		while (first + 1 < x.size() && y[first] == 0 && y[first + 1] == 0) {
			++first;
		}
		std::size_t last = x.size();
		while (last >= first + 2 && y[last - 1] == 0 && y[last - 2] == 0) {
			--last;
		}
		if (last - first < 2) {
			x.clear();
			y.clear();
		} else {
			x = std::vector<Rational>(x.begin() + first, x.begin() + last);
			y = std::vector<Rational>(y.begin() + first, y.begin() + last);
		}
		xs_ = std::move(x);
		ys_ = std::move(y);
	}

	std::vector<Rational> xs_;
	std::vector<Rational> ys_;
};

inline std::string to_string(const PiecewiseLinear &f) {
	if (f.is_zero()) {
		return "0";
	}
	std::string s = "pl[";
	for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
		if (i) {
			s += " ";
		}
		s += "(" + daniell::to_string(f.breakpoints()[i]) + "," + daniell::to_string(f.values()[i]) + ")";
	}
	return s + "]";
}

/// Exact Riemann integral: the trapezoid sum is exact on linear pieces.
inline Rational riemann_integral(const PiecewiseLinear &f) {
	Rational total = 0;
	const auto &x = f.breakpoints();
	const auto &y = f.values();
	for (std::size_t i = 0; i + 1 < x.size(); ++i) {
		total += (y[i] + y[i + 1]) * (x[i + 1] - x[i]) / 2;
	}
	return total;
}

namespace detail {

/// Breakpoints of f and g merged, plus the exact crossings where the
/// piecewise-linear difference f - g changes sign.
inline std::vector<Rational> merged_grid(const PiecewiseLinear &f, const PiecewiseLinear &g, bool with_crossings) {
	std::vector<Rational> grid = f.breakpoints();
	grid.insert(grid.end(), g.breakpoints().begin(), g.breakpoints().end());
	std::sort(grid.begin(), grid.end());
	grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
	if (!with_crossings || grid.size() < 2) {
		return grid;
	}
	std::vector<Rational> out{grid.front()};
	for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
		Rational d0 = f(grid[i]) - g(grid[i]);
		Rational d1 = f(grid[i + 1]) - g(grid[i + 1]);
		if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
			out.push_back(grid[i] + (grid[i + 1] - grid[i]) * d0 / (d0 - d1));
		}
		out.push_back(grid[i + 1]);
	}
	return out;
}

template <class Op>
PiecewiseLinear combine(const PiecewiseLinear &f, const PiecewiseLinear &g, bool crossings, Op op) {
	auto grid = merged_grid(f, g, crossings);
	if (grid.size() < 2) {
		return {};
	}
	std::vector<Rational> ys;
	ys.reserve(grid.size());
	for (const auto &t : grid) {
		ys.push_back(op(f(t), g(t)));
	}
	return PiecewiseLinear(std::move(grid), std::move(ys));
}

} // namespace detail

/// Pointwise vector-lattice operations. Meet, join and |.| insert the exact
/// crossing points so the result stays piecewise linear.
inline PiecewiseLinear pl_lattice_op(LatticeOp op, const PiecewiseLinear &f, const PiecewiseLinear &g = {},
                                     const Rational &c = 1) {
	switch (op) {
	case LatticeOp::Plus:
		return detail::combine(f, g, false, [](const Rational &a, const Rational &b) { return Rational(a + b); });
	case LatticeOp::Scale:
		return detail::combine(f, PiecewiseLinear{}, false, [&c](const Rational &a, const Rational &) { return Rational(c * a); });
	case LatticeOp::Meet:
		return detail::combine(f, g, true, [](const Rational &a, const Rational &b) { return min(a, b); });
	case LatticeOp::Join:
		return detail::combine(f, g, true, [](const Rational &a, const Rational &b) { return max(a, b); });
	case LatticeOp::Abs:
		return detail::combine(f, PiecewiseLinear{}, true, [](const Rational &a, const Rational &) { return abs(a); });
	}
	throw DomainError("unknown lattice operation");
}

inline PiecewiseLinear operator+(const PiecewiseLinear &f, const PiecewiseLinear &g) {
	return pl_lattice_op(LatticeOp::Plus, f, g);
}
inline PiecewiseLinear operator*(const Rational &c, const PiecewiseLinear &f) {
	return pl_lattice_op(LatticeOp::Scale, f, {}, c);
}
inline PiecewiseLinear operator-(const PiecewiseLinear &f) { return Rational(-1) * f; }
inline PiecewiseLinear operator-(const PiecewiseLinear &f, const PiecewiseLinear &g) { return f + (-g); }
inline PiecewiseLinear meet(const PiecewiseLinear &f, const PiecewiseLinear &g) {
	return pl_lattice_op(LatticeOp::Meet, f, g);
}
inline PiecewiseLinear join(const PiecewiseLinear &f, const PiecewiseLinear &g) {
	return pl_lattice_op(LatticeOp::Join, f, g);
}
inline PiecewiseLinear abs(const PiecewiseLinear &f) { return pl_lattice_op(LatticeOp::Abs, f); }
inline PiecewiseLinear positive_part(const PiecewiseLinear &f) { return join(f, PiecewiseLinear{}); }

/// First breakpoint of the merged grid where f(t) <= g(t) fails. Checking the
/// grid is exact: both sides are linear between grid points.
inline std::optional<Rational> le_violation(const PiecewiseLinear &f, const PiecewiseLinear &g) {
	for (const auto &t : detail::merged_grid(f, g, false)) {
		if (f(t) > g(t)) {
			return t;
		}
	}
	return std::nullopt;
}

/// f_n of the increasing ramp sequence towards chi_(a,b): rises with slope
/// 2n/(b-a) on [a, a+(b-a)/2n], equals 1 up to b-(b-a)/2n, then falls.
inline PiecewiseLinear ramp_sequence(const Rational &a, const Rational &b, int n) {
	if (!(a < b)) {
		throw DomainError("ramp needs a < b, got " + daniell::to_string(a) + " >= " + daniell::to_string(b));
	}
	if (n < 1) {
		throw DomainError("ramp index must be >= 1");
	}
	Rational w = (b - a) / (2 * n);
	if (n == 1) {
		return PiecewiseLinear({a, a + w, b}, {0, 1, 0});
	}
	return PiecewiseLinear({a, a + w, b - w, b}, {0, 1, 1, 0});
}

/// The ramp sequence as a certified monotone sequence with tail bound
/// (b-a) - ∫f_n = (b-a)/(2n).
inline MonotoneSequence<PiecewiseLinear> ramps(const Rational &a, const Rational &b) {
	ramp_sequence(a, b, 1); // validates a < b
	return MonotoneSequence<PiecewiseLinear>(
	    [a, b](int n) { return ramp_sequence(a, b, n); }, Direction::Increasing,
	    "ramp(" + daniell::to_string(a) + "," + daniell::to_string(b) + ")",
	    [a, b](int n) { return Rational((b - a) / (2 * n)); });
}

/// The Riemann integral as a callable I-integral on PiecewiseLinear.
struct Riemann {
	Rational operator()(const PiecewiseLinear &f) const { return riemann_integral(f); }
};

/// I1(chi_[a,b)) as the monotone limit of the ramp integrals.
inline IntegralResult interval_length_via_daniell(const Rational &a, const Rational &b, int n_max,
                                                  const Rational &cauchy_tol = Rational(1, 1000)) {
	return i1_limit(Riemann{}, ramps(a, b), n_max, cauchy_tol);
}

/// A half-open linear segment on [lo, hi) running from y0 towards y1.
struct Segment {
	Rational lo, hi, y0, y1;

	Rational at(const Rational &t) const { return y0 + (y1 - y0) * (t - lo) / (hi - lo); }
};

namespace detail {

/// {t in [lo,hi) : y(t) > c} (or < c), closed up to a half-open interval.
/// Dropping or adding a single endpoint leaves the length unchanged.
inline Interval segment_level(const Segment &s, const Rational &c, bool upper) {
	Rational a = upper ? Rational(s.y0 - c) : Rational(c - s.y0);
	Rational b = upper ? Rational(s.y1 - c) : Rational(c - s.y1);
	if (a > 0 && b >= 0) {
		return {s.lo, s.hi};
	}
	if (a <= 0 && b <= 0) {
		return {s.lo, s.lo};
	}
	Rational cross = s.lo + (s.hi - s.lo) * a / (a - b);
	return a > 0 ? Interval{s.lo, cross} : Interval{cross, s.hi};
}

} // namespace detail

/// A function on the real line given by finitely many linear segments
/// (jumps allowed) and zero elsewhere.
inline MeasurableFunction segment_function(std::vector<Segment> segs) {
	for (const auto &s : segs) {
		if (!(s.lo < s.hi)) {
			throw DomainError("segment needs lo < hi");
		}
	}
	std::sort(segs.begin(), segs.end(), [](const Segment &p, const Segment &q) { return p.lo < q.lo; });
	for (std::size_t i = 1; i < segs.size(); ++i) {
		if (segs[i].lo < segs[i - 1].hi) {
			throw DomainError("segments overlap");
		}
	}
	bool nonneg = std::all_of(segs.begin(), segs.end(), [](const Segment &s) { return s.y0 >= 0 && s.y1 >= 0; });
	auto level = [segs](const Rational &c, bool upper) {
		// outside the segments x = 0
		if (upper ? c < 0 : c > 0) {
			throw DomainError("level set {x " + std::string(upper ? ">" : "<") + " " + daniell::to_string(c) +
			                  "} is unbounded");
		}
		std::vector<Interval> pieces;
		pieces.reserve(segs.size());
		for (const auto &s : segs) {
			pieces.push_back(detail::segment_level(s, c, upper));
		}
		return RingSet::intervals(IntervalUnion(std::move(pieces)));
	};
	return MeasurableFunction(
	    Universe::real_line(),
	    [segs](const Point &p) -> ExtReal {
		    const auto *t = std::get_if<Rational>(&p);
		    if (!t) {
			    throw DomainError("point is not on the real line");
		    }
		    for (const auto &s : segs) {
			    if (s.lo <= *t && *t < s.hi) {
				    return s.at(*t);
			    }
		    }
		    return 0;
	    },
	    [level](const Rational &c) { return level(c, true); }, [level](const Rational &c) { return level(c, false); },
	    nonneg);
}

/// x(t) = t on [0,1), zero elsewhere.
inline MeasurableFunction identity_on_unit() { return segment_function({Segment{0, 1, 0, 1}}); }

inline MeasurableFunction as_measurable(const PiecewiseLinear &f) {
	std::vector<Segment> segs;
	const auto &x = f.breakpoints();
	const auto &y = f.values();
	for (std::size_t i = 0; i + 1 < x.size(); ++i) {
		segs.push_back(Segment{x[i], x[i + 1], y[i], y[i + 1]});
	}
	return segment_function(std::move(segs));
}

/// The indicator of one point: its level sets are the empty [p, p).
inline MeasurableFunction point_indicator(const Rational &p) {
	Universe u = Universe::real_line();
	return MeasurableFunction(
	    u,
	    [p](const Point &q) -> ExtReal {
		    const auto *t = std::get_if<Rational>(&q);
		    return (t && *t == p) ? ExtReal(1) : ExtReal(0);
	    },
	    [p](const Rational &c) {
		    if (c < 0) {
			    throw DomainError("level set below 0 is unbounded");
		    }
		    return RingSet::interval(p, p);
	    },
	    [p](const Rational &c) {
		    if (c > 0) {
			    throw DomainError("level set above 0 is unbounded");
		    }
		    return RingSet::interval(p, p);
	    },
	    true);
}

/// Exact length engine on interval unions.
inline MeasureEngine length_engine() { return MeasureEngine::from_premeasure(PreMeasure::length()); }

/// Lengths recovered from the ramp integrals at the given depth: each
/// component [a,b) gets the bracket [∫f_depth, ∫f_depth + (b-a)/(2 depth)].
inline MeasureEngine lebesgue_engine(int depth = 1000) {
	if (depth < 1) {
		throw DomainError("depth must be >= 1");
	}
	return MeasureEngine("lebesgue", Universe::real_line(), [depth](const RingSet &e) {
		ExtReal lo = 0, hi = 0;
		for (const auto &piece : e.intervals().pieces()) {
			if (!piece.lo.is_finite() || !piece.hi.is_finite()) {
				throw DomainError("unbounded interval has no ramp sequence");
			}
			const Rational a = piece.lo.value();
			const Rational b = piece.hi.value();
			Rational v = riemann_integral(ramp_sequence(a, b, depth));
			lo += v;
			hi += v + (b - a) / (2 * depth);
		}
		return Bracket{lo, hi};
	}, false);
}

} // namespace daniell::lebesgue

namespace daniell {

template <>
struct T0Traits<lebesgue::PiecewiseLinear> {
	using F = lebesgue::PiecewiseLinear;
	static F add(const F &x, const F &y) { return x + y; }
	static F scale(const Rational &c, const F &x) { return c * x; }
	static F abs(const F &x) { return lebesgue::abs(x); }
	static F positive_part(const F &x) { return lebesgue::positive_part(x); }

	static std::optional<std::string> le_violation(const F &x, const F &y) {
		auto t = lebesgue::le_violation(x, y);
		if (!t) {
			return std::nullopt;
		}
		return "t=" + to_string(*t);
	}

	static std::optional<std::string> negative_point(const F &x) {
		return le_violation(F{}, x);
	}

	static std::string show(const F &x) { return lebesgue::to_string(x); }
};

} // namespace daniell

#endif // DANIELL_LEBESGUE_HPP
