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

#ifndef DANIELL_EXTENSION_HPP
#define DANIELL_EXTENSION_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "daniell/functional.hpp"

namespace daniell {

/// Certified enclosure of a nonnegative quantity.
struct Bracket {
	ExtReal lower;
	ExtReal upper;

	friend bool operator==(const Bracket &, const Bracket &) = default;
};

/// Supplies measures of ring sets to the extension engine. Exact engines
/// return lower == upper; the Lebesgue engine obtains them as monotone
/// limits of Riemann integrals.
class MeasureEngine {
public:
	using Rule = std::function<Bracket(const RingSet &)>;

	MeasureEngine(std::string name, Universe u, Rule rule, bool exact)
	    : name_(std::move(name)), universe_(std::move(u)), rule_(std::move(rule)), exact_(exact) {}

	static MeasureEngine from_premeasure(const PreMeasure &mu) {
		if (mu.kind() != PreMeasure::Kind::PointWeights && mu.kind() != PreMeasure::Kind::Length) {
			throw DomainError("engine needs an exact nonnegative pre-measure");
		}
		return MeasureEngine(mu.name(), mu.universe(), [mu](const RingSet &e) {
			ExtReal m = mu(e);
			return Bracket{m, m};
		}, true);
	}

	const std::string &name() const noexcept { return name_; }
	const Universe &universe() const noexcept { return universe_; }
	bool exact() const noexcept { return exact_; }

	Bracket measure(const RingSet &e) const {
		require_same_universe(universe_, e.universe());
		return rule_(e);
	}

private:
	std::string name_;
	Universe universe_;
	Rule rule_;
	bool exact_;
};

/// Depths and thresholds of the extension algorithms. All of them are echoed
/// in results so runs reproduce exactly.
struct EngineConfig {
	int n_max = 16;             // dyadic refinement levels
	Rational tol = 0;           // early stop when |S_n - S_{n-1}| < tol
	Rational ceiling = 1000000000;
	int sequence_depth = 1000;  // default depth for monotone limits
};

/// A value with a certified bracket lower <= value <= upper.
struct IntegralResult {
	ExtReal value;
	ExtReal lower;
	ExtReal upper;
	int depth = 0;
	bool converged = false;
	bool certified = true; // false when the upper bound is only an observed tail
	std::vector<Rational> partial_sums;

	bool contains(const ExtReal &v) const { return lower <= v && v <= upper; }
};

/// A function given by its values and its strict level sets.
///
/// above(c) = {t : x(t) > c}, below(c) = {t : x(t) < c}. The dyadic level
/// sets are E_{k,n} = above(k 2^-n); they must nest: E_{k,n} ⊇ E_{k',n} for
/// k <= k' and E_{j,n} ⊆ E_{2j,n+1}. Violations found during integration
/// raise InvariantError.
class MeasurableFunction {
public:
	using Evaluator = std::function<ExtReal(const Point &)>;
	using Oracle = std::function<RingSet(const Rational &)>;
	using DyadicOracle = std::function<RingSet(const Integer &k, int n)>;

	MeasurableFunction(Universe u, Evaluator eval, Oracle above, Oracle below, bool nonnegative)
	    : universe_(std::move(u)), eval_(std::move(eval)), above_(std::move(above)), below_(std::move(below)),
	      nonnegative_(nonnegative) {}

	/// A nonnegative function described only through its dyadic level sets.
	static MeasurableFunction from_dyadic_oracle(Universe u, Evaluator eval, DyadicOracle oracle) {
		auto above = [oracle](const Rational &c) {
			Integer den = denominator(c);
			int n = 0;
			while (den > 1 && (den & 1) == 0) {
				den >>= 1;
				++n;
			}
			if (den != 1 || c < 0) {
				throw DomainError("dyadic oracle queried at non-dyadic level " + to_string(c));
			}
			return oracle(numerator(c), n);
		};
		Universe uu = u;
		auto below = [uu](const Rational &c) -> RingSet {
			if (c <= 0) {
				return RingSet::empty(uu);
			}
			throw DomainError("dyadic oracle has no lower level sets");
		};
		return MeasurableFunction(std::move(u), std::move(eval), std::move(above), std::move(below), true);
	}

	static MeasurableFunction from_simple(const SimpleFunction &x) {
		auto canon = canonicalize(x);
		const Universe u = canon.universe();
		auto level = [canon, u](const Rational &c, bool upper) {
			RingSet out = RingSet::empty(u);
			for (const auto &t : canon.terms()) {
				if (upper ? t.coeff > c : t.coeff < c) {
					out = out | t.set;
				}
			}
			// zero outside the support
			if (upper ? Rational(0) > c : Rational(0) < c) {
				out = out | (RingSet::full(u) - canon.support());
			}
			return out;
		};
		bool nonneg = !find_negative(canon).has_value();
		MeasurableFunction f(
		    u, [canon](const Point &t) { return canon.eval(t); },
		    [level](const Rational &c) { return level(c, true); },
		    [level](const Rational &c) { return level(c, false); }, nonneg);
		f.simple_ = canon;
		return f;
	}

	/// A function on a finite universe given by its values on the atoms.
	static MeasurableFunction from_values(const Universe &u, std::vector<ExtReal> values) {
		if (!u.is_finite() || values.size() != u.size()) {
			throw DomainError("from_values needs one value per atom of a finite universe");
		}
		auto level = [u, values](const ExtReal &c, bool upper) {
			std::vector<std::size_t> idx;
			for (std::size_t a = 0; a < values.size(); ++a) {
				if (upper ? values[a] > c : values[a] < c) {
					idx.push_back(a);
				}
			}
			return RingSet::points(u, idx);
		};
		bool nonneg = std::all_of(values.begin(), values.end(), [](const ExtReal &v) { return v >= ExtReal(0); });
		return MeasurableFunction(
		    u,
		    [values](const Point &t) {
			    const auto *i = std::get_if<std::size_t>(&t);
			    if (!i || *i >= values.size()) {
				    throw DomainError("point outside the finite universe");
			    }
			    return values[*i];
		    },
		    [level](const Rational &c) { return level(c, true); }, [level](const Rational &c) { return level(c, false); },
		    nonneg);
	}

	const Universe &universe() const noexcept { return universe_; }
	bool nonnegative() const noexcept { return nonnegative_; }
	const std::optional<SimpleFunction> &simple() const noexcept { return simple_; }

	ExtReal operator()(const Point &t) const { return eval_(t); }
	RingSet above(const Rational &c) const { return above_(c); }
	RingSet below(const Rational &c) const { return below_(c); }

	/// E_{k,n} = {t : x(t) > k 2^-n}.
	RingSet level_set(const Integer &k, int n) const { return above_(Rational(k) * pow2(-n)); }

	friend MeasurableFunction operator-(const MeasurableFunction &x) {
		MeasurableFunction f(
		    x.universe_, [e = x.eval_](const Point &t) { return -e(t); },
		    [b = x.below_](const Rational &c) { return b(Rational(-c)); },
		    [a = x.above_](const Rational &c) { return a(Rational(-c)); }, false);
		if (x.simple_) {
			f.simple_ = -*x.simple_;
		}
		return f;
	}

	/// x ∧ y, level sets {x > c} ∩ {y > c} and {x < c} ∪ {y < c}.
	friend MeasurableFunction meet(const MeasurableFunction &x, const MeasurableFunction &y) {
		require_same_universe(x.universe_, y.universe_);
		MeasurableFunction f(
		    x.universe_, [ex = x.eval_, ey = y.eval_](const Point &t) { return min(ex(t), ey(t)); },
		    [ax = x.above_, ay = y.above_](const Rational &c) { return ax(c) & ay(c); },
		    [bx = x.below_, by = y.below_](const Rational &c) { return bx(c) | by(c); },
		    x.nonnegative_ && y.nonnegative_);
		if (x.simple_ && y.simple_) {
			f.simple_ = meet(*x.simple_, *y.simple_);
		}
		return f;
	}

	/// x ∨ 0; level sets are only defined for c >= 0.
	friend MeasurableFunction positive_part(const MeasurableFunction &x) {
		const Universe u = x.universe_;
		MeasurableFunction f(
		    u, [e = x.eval_](const Point &t) { return max(e(t), ExtReal(0)); },
		    [a = x.above_](const Rational &c) {
			    if (c < 0) {
				    throw DomainError("positive part queried below 0");
			    }
			    return a(c);
		    },
		    [u](const Rational &c) -> RingSet {
			    if (c <= 0) {
				    return RingSet::empty(u);
			    }
			    throw DomainError("positive part has no ring-valued lower level set above 0");
		    },
		    true);
		if (x.simple_) {
			f.simple_ = positive_part(*x.simple_);
		}
		return f;
	}

	/// |x|, level sets {x > c} ∪ {x < -c} for c >= 0.
	friend MeasurableFunction abs(const MeasurableFunction &x) {
		const Universe u = x.universe_;
		MeasurableFunction f(
		    u,
		    [e = x.eval_](const Point &t) {
			    ExtReal v = e(t);
			    return v < ExtReal(0) ? -v : v;
		    },
		    [a = x.above_, b = x.below_](const Rational &c) {
			    if (c < 0) {
				    throw DomainError("|x| queried below 0");
			    }
			    return a(c) | b(Rational(-c));
		    },
		    [u](const Rational &c) -> RingSet {
			    if (c <= 0) {
				    return RingSet::empty(u);
			    }
			    throw DomainError("|x| has no ring-valued lower level set above 0");
		    },
		    true);
		if (x.simple_) {
			f.simple_ = abs(*x.simple_);
		}
		return f;
	}

private:
	Universe universe_;
	Evaluator eval_;
	Oracle above_;
	Oracle below_;
	bool nonnegative_;
	std::optional<SimpleFunction> simple_;
};

/// The dyadic level sets E_{1,n}, ..., E_{4^n,n} of a nonnegative function,
/// evaluated on demand (there are 4^n of them).
class DyadicLevels {
public:
	DyadicLevels(MeasurableFunction x, int n) : x_(std::move(x)), n_(n) {}

	int n() const noexcept { return n_; }
	Integer size() const { return Integer(1) << (2 * n_); }

	/// E_{k,n} for 1 <= k <= 4^n.
	RingSet operator[](const Integer &k) const {
		if (k < 1 || k > size()) {
			throw DomainError("dyadic level index out of range");
		}
		return x_.level_set(k, n_);
	}

	/// All levels; only sensible for small n.
	std::vector<RingSet> materialize() const {
		std::vector<RingSet> out;
		for (Integer k = 1; k <= size(); ++k) {
			out.push_back((*this)[k]);
		}
		return out;
	}

	/// phi_n(t) = 2^-n #{k : t in E_{k,n}}, counted by bisection since
	/// membership is monotone in k.
	Rational phi_at(const Point &t) const {
		Integer lo = 0;
		Integer hi = size();
		while (lo < hi) {
			Integer mid = (lo + hi + 1) / 2;
			if ((*this)[mid].contains(t)) {
				lo = mid;
			} else {
				hi = mid - 1;
			}
		}
		return Rational(lo) * pow2(-n_);
	}

	/// Checks E_{k+1,n} ⊆ E_{k,n} for every k (exhaustive: 4^n levels).
	void verify_nesting() const {
		RingSet prev = (*this)[1];
		for (Integer k = 2; k <= size(); ++k) {
			RingSet cur = (*this)[k];
			if (!subset_of(cur, prev)) {
				throw InvariantError("level sets do not nest: E_{" + k.str() + "," + std::to_string(n_) +
				                     "} is not inside E_{" + Integer(k - 1).str() + "," + std::to_string(n_) + "}");
			}
			prev = std::move(cur);
		}
	}

private:
	MeasurableFunction x_;
	int n_;
};

inline DyadicLevels dyadic_levels(const MeasurableFunction &x, int n, int max_n = 16) {
	if (!x.nonnegative()) {
		throw DomainError("dyadic levels need a nonnegative function");
	}
	if (n < 1 || n > max_n) {
		throw DomainError("dyadic level n=" + std::to_string(n) + " outside [1, " + std::to_string(max_n) + "]");
	}
	return DyadicLevels(x, n);
}

namespace detail {

inline void require_nested(const RingSet &inner, const RingSet &outer, const std::string &what) {
	if (!subset_of(inner, outer)) {
		throw InvariantError("level sets do not nest: " + what);
	}
}

/// sum_{k=1}^{K} mu(E_k) for nested E_k, walking runs of equal measure with
/// galloping search. Returns the bracket of the sum.
inline Bracket nested_level_sum(const DyadicLevels &levels, const MeasureEngine &engine) {
	const Integer K = levels.size();
	const int n = levels.n();
	ExtReal lo = 0;
	ExtReal hi = 0;
	Integer k = 1;
	RingSet set_k = levels[k];
	Bracket m_k = engine.measure(set_k);
	auto label = [n](const Integer &i) { return "E_{" + i.str() + "," + std::to_string(n) + "}"; };
	while (true) {
		if (m_k.upper == ExtReal(0)) {
			break; // every later level is inside a null set
		}
		if (k == K) {
			lo += m_k.lower;
			hi += m_k.upper;
			break;
		}
		Integer j = k + 1;
		RingSet set_j = levels[j];
		require_nested(set_j, set_k, label(j) + " vs " + label(k));
		Bracket m_j = engine.measure(set_j);
		if (!(m_j == m_k)) {
			lo += m_k.lower;
			hi += m_k.upper;
			k = j;
			set_k = std::move(set_j);
			m_k = m_j;
			continue;
		}
		// gallop: find the last index with the same measure as E_k
		Integer good = j;
		Integer step = 2;
		Integer bad = K + 1;
		while (true) {
			Integer probe = k + step;
			if (probe > K) {
				break;
			}
			RingSet s = levels[probe];
			require_nested(s, set_k, label(probe) + " vs " + label(k));
			if (engine.measure(s) == m_k) {
				good = probe;
				step *= 2;
			} else {
				bad = probe;
				break;
			}
		}
		while (bad - good > 1) {
			Integer mid = (good + bad) / 2;
			if (engine.measure(levels[mid]) == m_k) {
				good = mid;
			} else {
				bad = mid;
			}
		}
		Rational count(good - k + 1);
		lo += count * m_k.lower;
		hi += count * m_k.upper;
		if (good == K) {
			break;
		}
		k = good + 1;
		RingSet next = levels[k];
		require_nested(next, set_k, label(k) + " vs " + label(good));
		set_k = std::move(next);
		m_k = engine.measure(set_k);
	}
	return Bracket{lo, hi};
}

/// Exact integral of a nonnegative function on a finite universe by the
/// layer-cake sum over its distinct values:
///   sum_i (v_i - v_{i-1}) mu({x > v_{i-1}}),  v_0 = 0.
inline ExtReal finite_layer_cake(const MeasurableFunction &x, const MeasureEngine &engine) {
	const Universe &u = x.universe();
	std::set<ExtReal> values;
	for (std::size_t a = 0; a < u.size(); ++a) {
		ExtReal v = x(Point{a});
		if (v > ExtReal(0)) {
			values.insert(v);
		}
	}
	ExtReal total = 0;
	ExtReal prev = 0;
	for (const auto &v : values) {
		std::vector<std::size_t> idx;
		for (std::size_t a = 0; a < u.size(); ++a) {
			if (x(Point{a}) > prev) {
				idx.push_back(a);
			}
		}
		ExtReal m = engine.measure(RingSet::points(u, idx)).upper;
		if (v.is_pos_inf()) {
			total += (m > ExtReal(0)) ? ExtReal::pos_inf() : ExtReal(0);
		} else {
			total += (v - prev).value() * m;
		}
		prev = v;
	}
	return total;
}

} // namespace detail

/// The Daniell-Stone level-set algorithm:
///   S_n = 2^-n sum_{k=1}^{4^n} mu(E_{k,n}),
/// for n = 1..n_max with bracket [S_n, S_n + 2^-n mu({x > 0})]; the upper
/// end is +inf while {x > 2^n} has positive measure. Stops early once
/// |S_n - S_{n-1}| < tol. Values beyond the ceiling without Cauchy
/// stabilization are reported as +inf. On finite universes with an exact
/// engine the bracket closes at the exact layer-cake value.
inline IntegralResult level_set_integral(const MeasurableFunction &x, const MeasureEngine &engine,
                                         const EngineConfig &cfg = {}) {
	if (!x.nonnegative()) {
		throw DomainError("level-set integration needs a nonnegative function");
	}
	require_same_universe(x.universe(), engine.universe());
	IntegralResult r;
	std::optional<RingSet> prev_first;
	for (int n = 1; n <= cfg.n_max; ++n) {
		auto levels = dyadic_levels(x, n, cfg.n_max);
		RingSet first = levels[1];
		if (prev_first) {
			// E_{1,n-1} ⊆ E_{2,n}
			detail::require_nested(*prev_first, levels[2],
			                       "E_{1," + std::to_string(n - 1) + "} vs E_{2," + std::to_string(n) + "}");
		}
		prev_first = first;
		Bracket sum = detail::nested_level_sum(levels, engine);
		const Rational step = pow2(-n);
		ExtReal s_n = step * sum.lower;
		ExtReal top = engine.measure(x.level_set(Integer(1) << n, 0)).upper;
		ExtReal upper = top > ExtReal(0) ? ExtReal::pos_inf()
		                                 : step * sum.upper + step * engine.measure(x.above(Rational(0))).upper;
		bool cauchy = false;
		if (!r.partial_sums.empty() && s_n.is_finite()) {
			cauchy = abs(Rational(s_n.value() - r.partial_sums.back())) < cfg.tol;
		}
		r.value = s_n;
		r.lower = s_n;
		r.upper = upper;
		r.depth = n;
		r.converged = cauchy;
		if (!s_n.is_finite()) {
			r.value = r.upper = ExtReal::pos_inf();
			r.converged = false;
			break;
		}
		r.partial_sums.push_back(s_n.value());
		if (s_n > ExtReal(cfg.ceiling) && !cauchy) {
			r.value = r.upper = ExtReal::pos_inf();
			r.converged = false;
			break;
		}
		if (cauchy) {
			break;
		}
	}
	if (engine.exact() && x.universe().is_finite()) {
		ExtReal exact = detail::finite_layer_cake(x, engine);
		r.value = r.lower = r.upper = exact;
		r.converged = exact.is_finite();
	}
	return r;
}

/// Signed integral bracket from the positive and negative parts:
/// [lo(x+) - hi(x-), hi(x+) - lo(x-)].
inline IntegralResult integral_bracket(const MeasurableFunction &x, const MeasureEngine &engine,
                                       const EngineConfig &cfg = {}) {
	if (x.nonnegative()) {
		return level_set_integral(x, engine, cfg);
	}
	auto p = level_set_integral(positive_part(x), engine, cfg);
	auto m = level_set_integral(positive_part(-x), engine, cfg);
	IntegralResult r;
	r.lower = p.lower - m.upper;
	r.upper = p.upper - m.lower;
	r.value = p.value - m.value;
	r.depth = std::max(p.depth, m.depth);
	r.converged = p.converged && m.converged;
	return r;
}

/// I1(lim x_n) for an increasing sequence: returns I(x_depth) with bracket
/// [I(x_depth), I(x_depth) + gap]. The gap is the sequence's certified tail
/// bound when it has one, else the last observed increment (certified =
/// false). Past the ceiling without Cauchy stabilization the value is +inf.
template <class F, class I>
IntegralResult i1_limit(const I &integral, const MonotoneSequence<F> &seq, int depth, const Rational &cauchy_tol,
                        const Rational &ceiling = Rational(1000000000)) {
	if (seq.direction() != Direction::Increasing) {
		throw DomainError("I1 limit needs an increasing sequence");
	}
	if (depth < 1) {
		throw DomainError("depth must be >= 1");
	}
	seq.certify(depth);
	IntegralResult r;
	for (int n = 1; n <= depth; ++n) {
		r.partial_sums.push_back(integral(seq(n)));
	}
	const Rational &last = r.partial_sums.back();
	Rational increment = depth > 1 ? Rational(last - r.partial_sums[depth - 2]) : Rational(0);
	r.depth = depth;
	r.converged = depth > 1 ? increment < cauchy_tol : seq.has_tail_bound();
	r.value = last;
	r.lower = last;
	if (seq.has_tail_bound()) {
		r.upper = last + seq.tail_bound(depth);
		r.certified = true;
	} else {
		r.upper = last + increment;
		r.certified = false;
	}
	if (last > ceiling && !r.converged) {
		r.value = r.upper = ExtReal::pos_inf();
	}
	return r;
}

/// Checks that chi_e is Daniell measurable on the given probes, then returns
/// mu(e) = ∫chi_e from the level-set algorithm; +inf when the integral does
/// not converge to a finite value.
struct MeasurabilityReport;
inline MeasurabilityReport is_daniell_measurable(const MeasurableFunction &x, const std::vector<MeasurableFunction> &probes,
                                                 const MeasureEngine &engine, const EngineConfig &cfg);

struct ProbeResult {
	std::size_t index = 0;
	IntegralResult positive; // (phi ∧ x) ∨ 0
	IntegralResult negative; // (-(phi ∧ x)) ∨ 0
	bool pass = false;
};

struct MeasurabilityReport {
	std::vector<ProbeResult> probes;

	bool pass() const {
		return std::all_of(probes.begin(), probes.end(), [](const ProbeResult &p) { return p.pass; });
	}

	std::vector<std::size_t> failures() const {
		std::vector<std::size_t> out;
		for (const auto &p : probes) {
			if (!p.pass) {
				out.push_back(p.index);
			}
		}
		return out;
	}
};

/// For each probe phi in T0, certifies phi ∧ x ∈ L by finite brackets for
/// both parts of phi ∧ x. Probes must be integrable.
inline MeasurabilityReport is_daniell_measurable(const MeasurableFunction &x, const std::vector<MeasurableFunction> &probes,
                                                 const MeasureEngine &engine, const EngineConfig &cfg) {
	if (!x.nonnegative()) {
		throw DomainError("Daniell measurability is defined for nonnegative functions");
	}
	MeasurabilityReport rep;
	for (std::size_t i = 0; i < probes.size(); ++i) {
		auto m = meet(probes[i], x);
		ProbeResult pr;
		pr.index = i;
		pr.positive = level_set_integral(positive_part(m), engine, cfg);
		pr.negative = level_set_integral(positive_part(-m), engine, cfg);
		pr.pass = pr.positive.upper.is_finite() && pr.negative.upper.is_finite();
		rep.probes.push_back(std::move(pr));
	}
	return rep;
}

inline IntegralResult measure_from_integral(const MeasureEngine &engine, const RingSet &e,
                                            const std::vector<MeasurableFunction> &probes, const EngineConfig &cfg = {}) {
	auto chi = MeasurableFunction::from_simple(SimpleFunction::indicator(e));
	auto rep = is_daniell_measurable(chi, probes, engine, cfg);
	if (!rep.pass()) {
		throw PreconditionError("indicator of " + to_string(e) + " failed a measurability probe",
		                        "probe " + std::to_string(rep.failures().front()));
	}
	auto r = level_set_integral(chi, engine, cfg);
	if (!r.upper.is_finite() && !r.converged) {
		r.value = ExtReal::pos_inf();
	}
	return r;
}

inline IntegralResult measure_from_integral(const MeasureEngine &engine, const RingSet &e, const EngineConfig &cfg = {}) {
	std::vector<MeasurableFunction> probes;
	if (engine.measure(e).upper.is_finite()) {
		probes.push_back(MeasurableFunction::from_simple(SimpleFunction::indicator(e)));
	}
	return measure_from_integral(engine, e, probes, cfg);
}

struct NullCertificate {
	bool null = false;
	IntegralResult integral_abs;
};

/// x is null when the certified upper bound of ∫|x| is below tol; on exact
/// finite engines the test is ∫|x| == 0 exactly.
inline NullCertificate null_test(const MeasurableFunction &x, const MeasureEngine &engine, const Rational &tol,
                                 const EngineConfig &cfg = {}) {
	NullCertificate c;
	c.integral_abs = level_set_integral(abs(x), engine, cfg);
	if (engine.exact() && x.universe().is_finite()) {
		c.null = c.integral_abs.value == ExtReal(0);
	} else {
		c.null = c.integral_abs.upper < ExtReal(tol);
	}
	return c;
}

struct Approximation {
	SimpleFunction phi;
	int n = 0;                // dyadic level used; 0 when x was already simple
	ExtReal distance_bound;   // certified upper bound of ∫|x - phi|
};

/// A member of T0 within eps of x in the integral seminorm: x itself when x
/// is simple, else the dyadic approximant phi_n with the smallest n whose
/// bound 2^-n mu({x > 0}) is below eps (and {x > 2^n} null).
inline Approximation approximate_in_t0(const MeasurableFunction &x, const MeasureEngine &engine, const Rational &eps,
                                       const EngineConfig &cfg = {}) {
	if (x.simple()) {
		return Approximation{*x.simple(), 0, ExtReal(0)};
	}
	if (!x.nonnegative()) {
		throw DomainError("dyadic approximation needs a nonnegative function");
	}
	ExtReal support = engine.measure(x.above(Rational(0))).upper;
	ExtReal best = ExtReal::pos_inf();
	for (int n = 1; n <= cfg.n_max; ++n) {
		if (engine.measure(x.level_set(Integer(1) << n, 0)).upper > ExtReal(0)) {
			continue;
		}
		ExtReal bound = pow2(-n) * support;
		best = bound;
		if (bound < ExtReal(eps)) {
			auto levels = dyadic_levels(x, n, cfg.n_max);
			std::vector<Term> terms;
			for (Integer k = 1; k <= levels.size(); ++k) {
				RingSet e = levels[k];
				if (e.empty()) {
					break;
				}
				terms.push_back(Term{pow2(-n), std::move(e)});
			}
			return Approximation{canonicalize(SimpleFunction(x.universe(), std::move(terms))), n, bound};
		}
	}
	throw ToleranceError("eps=" + to_string(eps) + " not reachable with n_max=" + std::to_string(cfg.n_max) +
	                         "; best bound " + to_string(best),
	                     best.to_double());
}

/// Outcome of a convergence-theorem check on a finite universe.
struct ConvergenceReport {
	ExtReal integral_of_limit;  // ∫ lim x_n (or ∫ liminf x_n) via the level-set engine
	ExtReal limit_of_integrals; // lim I(x_n) (or liminf I(x_n)) via the elementary integral
	int stabilized_at = 0;
	bool strict = false;
	bool pass = false;
};

namespace detail {

inline void require_finite_universe(const Universe &u, const char *what) {
	if (!u.is_finite()) {
		throw DomainError(std::string(what) + " is checked exactly on finite universes only");
	}
}

inline int stabilization_index(const MonotoneSequence<SimpleFunction> &seq, int depth) {
	if (!(seq(depth) == seq(depth - 1))) {
		throw PreconditionError("sequence '" + seq.name() + "' has not stabilized by depth " + std::to_string(depth),
		                        "n=" + std::to_string(depth));
	}
	int n = depth - 1;
	while (n > 1 && seq(n - 1) == seq(depth)) {
		--n;
	}
	return n;
}

} // namespace detail

/// Monotone convergence: for an increasing, eventually constant sequence of
/// nonnegative simple functions, ∫ lim x_n == lim ∫ x_n exactly.
inline ConvergenceReport check_monotone_convergence(const ElementaryIntegral &integral, const MeasureEngine &engine,
                                                    const MonotoneSequence<SimpleFunction> &seq, int depth) {
	detail::require_finite_universe(integral.universe(), "monotone convergence");
	if (seq.direction() != Direction::Increasing) {
		throw DomainError("monotone convergence needs an increasing sequence");
	}
	seq.certify(depth);
	ConvergenceReport r;
	r.stabilized_at = detail::stabilization_index(seq, depth);
	auto limit = seq(depth);
	r.integral_of_limit = level_set_integral(MeasurableFunction::from_simple(positive_part(limit)), engine).value -
	                      level_set_integral(MeasurableFunction::from_simple(positive_part(-limit)), engine).value;
	r.limit_of_integrals = integral(limit);
	r.pass = r.integral_of_limit == r.limit_of_integrals;
	return r;
}

/// Fatou: for nonnegative x_n = prefix..., then period repeated forever,
/// ∫ liminf x_n <= liminf ∫ x_n. liminf over an eventually periodic
/// sequence is the minimum over one period.
inline ConvergenceReport check_fatou(const ElementaryIntegral &integral, const MeasureEngine &engine,
                                     const std::vector<SimpleFunction> &period) {
	detail::require_finite_universe(integral.universe(), "Fatou's lemma");
	if (period.empty()) {
		throw DomainError("empty period");
	}
	for (std::size_t i = 0; i < period.size(); ++i) {
		if (auto p = find_negative(period[i])) {
			throw PreconditionError("Fatou needs nonnegative functions", describe(integral.universe(), *p));
		}
	}
	SimpleFunction liminf = period.front();
	Rational liminf_integrals = integral(period.front());
	for (std::size_t i = 1; i < period.size(); ++i) {
		liminf = meet(liminf, period[i]);
		liminf_integrals = min(liminf_integrals, integral(period[i]));
	}
	ConvergenceReport r;
	r.integral_of_limit = level_set_integral(MeasurableFunction::from_simple(liminf), engine).value;
	r.limit_of_integrals = liminf_integrals;
	r.pass = r.integral_of_limit <= r.limit_of_integrals;
	r.strict = r.integral_of_limit < r.limit_of_integrals;
	return r;
}

/// Dominated convergence: |x_n| <= z for n <= depth and the sequence is
/// eventually constant; then lim ∫ x_n == ∫ lim x_n.
inline ConvergenceReport check_dominated_convergence(const ElementaryIntegral &integral, const MeasureEngine &engine,
                                                     const std::function<SimpleFunction(int)> &seq,
                                                     const SimpleFunction &dominator, int depth) {
	detail::require_finite_universe(integral.universe(), "dominated convergence");
	for (int n = 1; n <= depth; ++n) {
		auto x = seq(n);
		if (auto p = find_violation(abs(x), dominator, [](const Rational &a, const Rational &b) { return a <= b; })) {
			throw PreconditionError("|x_n| exceeds the dominating function",
			                        "n=" + std::to_string(n) + ", " + describe(integral.universe(), *p));
		}
	}
	MonotoneSequence<SimpleFunction> wrapped(seq, Direction::Increasing, "dominated");
	ConvergenceReport r;
	r.stabilized_at = detail::stabilization_index(wrapped, depth);
	auto limit = seq(depth);
	r.integral_of_limit = level_set_integral(MeasurableFunction::from_simple(positive_part(limit)), engine).value -
	                      level_set_integral(MeasurableFunction::from_simple(positive_part(-limit)), engine).value;
	Rational lim = integral(seq(r.stabilized_at));
	for (int n = r.stabilized_at; n <= depth; ++n) {
		if (integral(seq(n)) != lim) {
			throw InvariantError("integrals of a stabilized sequence differ");
		}
	}
	r.limit_of_integrals = lim;
	r.pass = r.integral_of_limit == r.limit_of_integrals;
	return r;
}

/// Subsets of a finite universe whose indicators pass the measurability
/// probes.
inline std::vector<RingSet> measurable_subsets(const MeasureEngine &engine, const std::vector<MeasurableFunction> &probes,
                                               const EngineConfig &cfg = {}) {
	const Universe &u = engine.universe();
	detail::require_finite_universe(u, "subset enumeration");
	if (u.size() > 12) {
		throw DomainError("subset enumeration is limited to 12 atoms");
	}
	std::vector<RingSet> out;
	for (std::size_t mask = 0; mask < (std::size_t{1} << u.size()); ++mask) {
		std::vector<std::size_t> idx;
		for (std::size_t a = 0; a < u.size(); ++a) {
			if (mask >> a & 1) {
				idx.push_back(a);
			}
		}
		auto e = RingSet::points(u, idx);
		auto chi = MeasurableFunction::from_simple(SimpleFunction::indicator(e));
		if (is_daniell_measurable(chi, probes, engine, cfg).pass()) {
			out.push_back(std::move(e));
		}
	}
	return out;
}

} // namespace daniell

#endif // DANIELL_EXTENSION_HPP
