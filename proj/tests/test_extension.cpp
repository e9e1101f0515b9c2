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

#include <gtest/gtest.h>

#include "daniell/extension.hpp"
#include "daniell/lebesgue.hpp"
#include "fuzz.hpp"

using namespace daniell;
using daniell::testing::Fuzz;

namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

SimpleFunction chi(const RingSet &s, const Rational &c = 1) { return SimpleFunction::indicator(s, c); }

MeasureEngine weights_engine(const Universe &u, std::vector<ExtReal> w) {
	return MeasureEngine::from_premeasure(PreMeasure::point_weights(u, std::move(w)));
}

EngineConfig shallow(int n = 3) {
	EngineConfig c;
	c.n_max = n;
	return c;
}

// exact integral on a finite universe, computed atom by atom
ExtReal atom_sum(const std::vector<ExtReal> &w, const std::vector<ExtReal> &x) {
	ExtReal s = 0;
	for (std::size_t a = 0; a < w.size(); ++a) {
		if (x[a] == ExtReal(0) || w[a] == ExtReal(0)) {
			continue;
		}
		if (!x[a].is_finite() || !w[a].is_finite()) {
			s += ExtReal::pos_inf();
		} else {
			s += x[a].value() * w[a].value();
		}
	}
	return s;
}

std::vector<ExtReal> values_of(const SimpleFunction &x) {
	std::vector<ExtReal> v;
	for (std::size_t a = 0; a < x.universe().size(); ++a) {
		v.push_back(x.eval(Point{a}));
	}
	return v;
}

} // namespace

TEST(DyadicLevels, ConstantOneOnFiniteSet) {
	auto u = Universe::finite({"a"});
	auto x = MeasurableFunction::from_values(u, {ExtReal(1)});
	auto levels = dyadic_levels(x, 1);
	ASSERT_EQ(levels.size(), 4);
	EXPECT_EQ(levels[1], RingSet::full(u));
	for (int k = 2; k <= 4; ++k) {
		EXPECT_TRUE(levels[k].empty()) << k;
	}
}

TEST(DyadicLevels, IdentityOnUnit) {
	auto x = lebesgue::identity_on_unit();
	auto levels = dyadic_levels(x, 1);
	EXPECT_EQ(levels[1], RingSet::interval(q(1, 2), 1));
	EXPECT_EQ(PreMeasure::length()(levels[1]), ExtReal(q(1, 2)));
	for (int k = 2; k <= 4; ++k) {
		EXPECT_TRUE(levels[k].empty());
	}
	levels.verify_nesting();
	EXPECT_EQ(dyadic_levels(x, 3).phi_at(Point{q(7, 10)}), q(5, 8));
}

TEST(DyadicLevels, InfiniteValueReachesTopLevel) {
	auto u = Universe::finite({"inf", "one"});
	auto x = MeasurableFunction::from_values(u, {ExtReal::pos_inf(), ExtReal(1)});
	for (int n = 1; n <= 5; ++n) {
		auto levels = dyadic_levels(x, n);
		EXPECT_EQ(levels.phi_at(Point{std::size_t{0}}), pow2(n)) << n;
		EXPECT_EQ(levels.phi_at(Point{std::size_t{1}}), 1 - pow2(-n)) << n;
	}
}

TEST(DyadicLevels, Preconditions) {
	auto u = Universe::finite(2);
	EXPECT_THROW(dyadic_levels(MeasurableFunction::from_values(u, {ExtReal(-1), ExtReal(1)}), 1), DomainError);
	EXPECT_THROW(dyadic_levels(lebesgue::identity_on_unit(), 17), DomainError);
	EXPECT_THROW(dyadic_levels(lebesgue::identity_on_unit(), 0), DomainError);
}

TEST(DyadicLevels, NonNestingOracleIsRejected) {
	// E_{k,n} grows with k: violates the nesting invariant
	auto bad = MeasurableFunction::from_dyadic_oracle(
	    Universe::real_line(), [](const Point &) { return ExtReal(0); },
	    [](const Integer &k, int) { return RingSet::interval(0, Rational(k)); });
	EXPECT_THROW(dyadic_levels(bad, 1).verify_nesting(), InvariantError);
	EXPECT_THROW(level_set_integral(bad, lebesgue::length_engine()), InvariantError);
}

TEST(LevelSetIntegral, IdentityPartialSums) {
	auto r = level_set_integral(lebesgue::identity_on_unit(), lebesgue::length_engine());
	ASSERT_EQ(r.partial_sums.size(), 16u);
	EXPECT_EQ(r.partial_sums[0], q(1, 4));
	EXPECT_EQ(r.partial_sums[1], q(3, 8));
	for (int n = 1; n <= 16; ++n) {
		const Rational &s = r.partial_sums[n - 1];
		EXPECT_LT(abs(Rational(s - q(1, 2))), pow2(-n)) << n;
		// closed form: 1/2 - 2^-(n+1)
		EXPECT_EQ(s, q(1, 2) - pow2(-n - 1)) << n;
	}
	EXPECT_TRUE(r.contains(ExtReal(q(1, 2))));
	EXPECT_EQ(r.depth, 16);
}

TEST(LevelSetIntegral, EarlyStopOnTolerance) {
	EngineConfig cfg;
	cfg.tol = q(1, 100);
	auto r = level_set_integral(lebesgue::identity_on_unit(), lebesgue::length_engine(), cfg);
	EXPECT_TRUE(r.converged);
	// |S_n - S_{n-1}| = 2^-(n+1) < 1/100 first at n = 6
	EXPECT_EQ(r.depth, 6);
}

TEST(LevelSetIntegral, ConstantOneOnFiniteUniverse) {
	auto u = Universe::finite({"a"});
	auto r = level_set_integral(MeasurableFunction::from_values(u, {ExtReal(1)}), weights_engine(u, {ExtReal(1)}));
	EXPECT_EQ(r.value, ExtReal(1));
	EXPECT_EQ(r.lower, ExtReal(1));
	EXPECT_EQ(r.upper, ExtReal(1));
	// strict level sets leave the top dyadic layer out of every S_n
	for (std::size_t n = 1; n <= r.partial_sums.size(); ++n) {
		EXPECT_EQ(r.partial_sums[n - 1], 1 - pow2(-static_cast<int>(n)));
	}
}

TEST(LevelSetIntegral, ScaledIndicator) {
	auto x = MeasurableFunction::from_simple(chi(RingSet::interval(0, 3), 2));
	auto r = level_set_integral(x, lebesgue::length_engine());
	EXPECT_TRUE(r.contains(ExtReal(6)));
	EXPECT_LE(r.upper - r.lower, ExtReal(3 * pow2(-r.depth)));
}

TEST(LevelSetIntegral, InfiniteValueOnPositiveMass) {
	auto u = Universe::finite(2);
	auto x = MeasurableFunction::from_values(u, {ExtReal::pos_inf(), ExtReal(1)});
	auto r = level_set_integral(x, weights_engine(u, {ExtReal(1), ExtReal(1)}), shallow(4));
	EXPECT_TRUE(r.value.is_pos_inf());
	EXPECT_FALSE(r.converged);
	// the same function on a null atom integrates to 1
	auto z = level_set_integral(x, weights_engine(u, {ExtReal(0), ExtReal(1)}), shallow(4));
	EXPECT_EQ(z.value, ExtReal(1));
}

TEST(LevelSetIntegral, CeilingDeclaresDivergence) {
	// 2^k on [k, k+1) for k < 40 along the line: integral ~ 2^40
	std::vector<lebesgue::Segment> segs;
	for (int k = 0; k < 40; ++k) {
		segs.push_back({k, k + 1, pow2(k), pow2(k)});
	}
	EngineConfig cfg;
	cfg.n_max = 6;
	cfg.ceiling = 1000;
	auto r = level_set_integral(lebesgue::segment_function(segs), lebesgue::length_engine(), cfg);
	EXPECT_TRUE(r.value.is_pos_inf());
	EXPECT_FALSE(r.converged);
}

TEST(LevelSetIntegral, BracketContainsExactValue) {
	Fuzz fz(5);
	ElementaryIntegral len(PreMeasure::length());
	for (int c = 0; c < 60; ++c) {
		auto x = positive_part(fz.simple_on_line(3));
		auto r = level_set_integral(MeasurableFunction::from_simple(x), lebesgue::length_engine(), shallow(6));
		ASSERT_TRUE(r.contains(ExtReal(len(x)))) << to_string(x);
	}
	for (int c = 0; c < 200; ++c) {
		auto u = Universe::finite(static_cast<std::size_t>(fz.integer(1, 5)));
		std::vector<ExtReal> w;
		for (std::size_t a = 0; a < u.size(); ++a) {
			w.emplace_back(fz.rational(0, 3));
		}
		auto x = fz.nonnegative_on(u);
		auto r = level_set_integral(MeasurableFunction::from_simple(x), weights_engine(u, w), shallow(4));
		ASSERT_EQ(r.value, atom_sum(w, values_of(x)));
		ASSERT_FALSE(r.partial_sums.empty());
		ASSERT_LE(ExtReal(r.partial_sums.back()), r.value);
	}
}

TEST(LevelSetIntegral, UpperBoundProperties) {
	// On finite universes the bracket is exact, so upper bounds inherit
	// subadditivity, monotonicity and the join/meet inequality.
	Fuzz fz(8);
	for (int c = 0; c < 300; ++c) {
		auto u = Universe::finite(static_cast<std::size_t>(fz.integer(1, 5)));
		std::vector<ExtReal> w;
		for (std::size_t a = 0; a < u.size(); ++a) {
			w.emplace_back(fz.rational(0, 3));
		}
		auto e = weights_engine(u, w);
		auto up = [&](const SimpleFunction &f) {
			return level_set_integral(MeasurableFunction::from_simple(f), e, shallow(2)).upper;
		};
		auto x = fz.nonnegative_on(u);
		auto y = fz.nonnegative_on(u);
		ASSERT_LE(up(x + y), up(x) + up(y));
		ASSERT_LE(up(meet(x, y)), up(x));
		ASSERT_LE(up(join(x, y)) + up(meet(x, y)), up(x) + up(y));
	}
	// dyadic coefficients on the line: the bracket is exact from n = 2 on
	for (int c = 0; c < 40; ++c) {
		SimpleFunction x(Universe::real_line(), {Term{q(fz.integer(0, 8), 4), fz.interval_set(2)}});
		SimpleFunction y(Universe::real_line(), {Term{q(fz.integer(0, 8), 4), fz.interval_set(2)}});
		auto up = [](const SimpleFunction &f) {
			return level_set_integral(MeasurableFunction::from_simple(f), lebesgue::length_engine(), shallow(3)).upper;
		};
		ASSERT_LE(up(x + y), up(x) + up(y));
		ASSERT_LE(up(join(x, y)) + up(meet(x, y)), up(x) + up(y));
	}
}

TEST(I1Limit, ConstantSequence) {
	ElementaryIntegral len(PreMeasure::length());
	auto x = chi(RingSet::interval(0, 2), 3);
	MonotoneSequence<SimpleFunction> seq([x](int) { return x; }, Direction::Increasing, "const",
	                                     [](int) { return Rational(0); });
	auto r = i1_limit(len, seq, 10, q(1, 1000));
	EXPECT_EQ(r.value, ExtReal(6));
	EXPECT_EQ(r.lower, r.upper);
	EXPECT_TRUE(r.converged);
}

TEST(I1Limit, ScaledIndicatorsIncreaseToOne) {
	ElementaryIntegral len(PreMeasure::length());
	MonotoneSequence<SimpleFunction> seq([](int n) { return chi(RingSet::interval(0, 1), 1 - q(1, n)); },
	                                     Direction::Increasing, "(1-1/n)chi", [](int n) { return q(1, n); });
	auto r = i1_limit(len, seq, 200, q(1, 1000));
	EXPECT_EQ(r.value, ExtReal(1 - q(1, 200)));
	EXPECT_TRUE(r.contains(ExtReal(1)));
	EXPECT_TRUE(r.certified);
}

TEST(I1Limit, ObservedGapIsUncertified) {
	ElementaryIntegral len(PreMeasure::length());
	MonotoneSequence<SimpleFunction> seq([](int n) { return chi(RingSet::interval(0, 1), 1 - q(1, n)); },
	                                     Direction::Increasing, "(1-1/n)chi");
	auto r = i1_limit(len, seq, 20, q(1, 10));
	EXPECT_FALSE(r.certified);
	EXPECT_EQ(r.upper - r.lower, ExtReal(q(1, 19) - q(1, 20)));
}

TEST(I1Limit, DivergentSequenceReportsInfinity) {
	ElementaryIntegral len(PreMeasure::length());
	MonotoneSequence<SimpleFunction> seq([](int n) { return chi(RingSet::interval(0, n)); }, Direction::Increasing,
	                                     "chi[0,n)");
	auto r = i1_limit(len, seq, 50, q(1, 1000), Rational(10));
	EXPECT_TRUE(r.value.is_pos_inf());
}

TEST(I1Limit, RejectsNonMonotone) {
	ElementaryIntegral len(PreMeasure::length());
	MonotoneSequence<SimpleFunction> seq([](int n) { return chi(RingSet::interval(0, 1), n % 2 ? 1 : 0); },
	                                     Direction::Increasing, "flip");
	try {
		i1_limit(len, seq, 5, q(1, 10));
		FAIL();
	} catch (const PreconditionError &e) {
		EXPECT_NE(e.witness().find("n=1"), std::string::npos) << e.witness();
	}
}

TEST(MeasureFromIntegral, LebesgueUnitInterval) {
	auto r = measure_from_integral(lebesgue::lebesgue_engine(), RingSet::interval(0, 1));
	EXPECT_TRUE(r.contains(ExtReal(1)));
	EXPECT_LE(r.upper - r.lower, ExtReal(q(1, 2000) + pow2(-16)));
}

TEST(MeasureFromIntegral, EmptySet) {
	auto r = measure_from_integral(lebesgue::length_engine(), RingSet::empty(Universe::real_line()));
	EXPECT_EQ(r.value, ExtReal(0));
	EXPECT_EQ(r.upper, ExtReal(0));
}

TEST(MeasureFromIntegral, FiniteUniverseExhaustive) {
	auto u = Universe::finite(5);
	std::vector<ExtReal> w{ExtReal(q(1, 2)), ExtReal(0), ExtReal(3), ExtReal::pos_inf(), ExtReal(q(7, 3))};
	auto e = weights_engine(u, w);
	for (std::size_t mask = 0; mask < 32; ++mask) {
		std::vector<std::size_t> idx;
		ExtReal expected = 0;
		for (std::size_t a = 0; a < 5; ++a) {
			if (mask >> a & 1) {
				idx.push_back(a);
				expected += w[a];
			}
		}
		auto r = measure_from_integral(e, RingSet::points(u, idx), shallow(3));
		ASSERT_EQ(r.value, expected) << mask;
	}
}

TEST(IsDaniellMeasurable, InfiniteFunctionOnFiniteUniverse) {
	auto u = Universe::finite(3);
	auto e = weights_engine(u, {ExtReal(1), ExtReal(2), ExtReal(q(1, 2))});
	auto x = MeasurableFunction::from_values(u, {ExtReal::pos_inf(), ExtReal::pos_inf(), ExtReal::pos_inf()});
	std::vector<MeasurableFunction> probes{MeasurableFunction::from_simple(chi(RingSet::full(u))),
	                                       MeasurableFunction::from_simple(chi(RingSet::points(u, {1}), 5))};
	auto rep = is_daniell_measurable(x, probes, e, shallow(3));
	EXPECT_TRUE(rep.pass());
	// phi ∧ x = phi
	EXPECT_EQ(rep.probes[0].positive.value, ExtReal(q(7, 2)));
	EXPECT_EQ(rep.probes[1].positive.value, ExtReal(10));
}

TEST(IsDaniellMeasurable, IntervalIndicatorWithRampProbes) {
	auto x = MeasurableFunction::from_simple(chi(RingSet::interval(0, 1)));
	std::vector<MeasurableFunction> probes;
	for (int n = 1; n <= 4; ++n) {
		probes.push_back(lebesgue::as_measurable(lebesgue::ramp_sequence(q(-1, 2), q(3, 2), n)));
	}
	probes.push_back(lebesgue::as_measurable(lebesgue::PiecewiseLinear::hat(q(1, 2), 2, 3, 4)));
	auto rep = is_daniell_measurable(x, probes, lebesgue::lebesgue_engine(200), shallow(6));
	EXPECT_TRUE(rep.pass());
	EXPECT_TRUE(rep.failures().empty());
	// ramp_4 on [-1/2, 3/2) is 1 on [0, 1): phi ∧ x = chi_[0,1)
	EXPECT_TRUE(rep.probes[3].positive.contains(ExtReal(1)));
}

TEST(NullTest, Examples) {
	auto zero = MeasurableFunction::from_simple(SimpleFunction(Universe::real_line()));
	EXPECT_TRUE(null_test(zero, lebesgue::length_engine(), q(1, 1000000)).null);
	EXPECT_TRUE(null_test(lebesgue::point_indicator(q(1, 3)), lebesgue::lebesgue_engine(), q(1, 1000000)).null);
	auto c = null_test(MeasurableFunction::from_simple(chi(RingSet::interval(0, 1))), lebesgue::length_engine(),
	                   q(1, 1000000));
	EXPECT_FALSE(c.null);
	EXPECT_TRUE(c.integral_abs.contains(ExtReal(1)));
}

TEST(NullTest, DominationOnFiniteUniverses) {
	// every x, y with values in {-1, 0, 1, +inf} on 3 atoms, weights in {0, 1}
	const std::vector<ExtReal> vals{ExtReal(-1), ExtReal(0), ExtReal(1), ExtReal::pos_inf()};
	auto u = Universe::finite(3);
	auto absval = [](const ExtReal &v) { return v < ExtReal(0) ? -v : v; };
	int checked = 0;
	for (int wm = 0; wm < 8; ++wm) {
		std::vector<ExtReal> w;
		for (int a = 0; a < 3; ++a) {
			w.emplace_back(wm >> a & 1);
		}
		auto e = weights_engine(u, w);
		for (int xi = 0; xi < 64; ++xi) {
			std::vector<ExtReal> xv{vals[xi % 4], vals[xi / 4 % 4], vals[xi / 16]};
			auto x = MeasurableFunction::from_values(u, xv);
			if (!null_test(x, e, 0, shallow(2)).null) {
				continue;
			}
			for (int yi = 0; yi < 64; ++yi) {
				std::vector<ExtReal> yv{vals[yi % 4], vals[yi / 4 % 4], vals[yi / 16]};
				bool dominated = true;
				for (int a = 0; a < 3; ++a) {
					dominated = dominated && absval(yv[a]) <= absval(xv[a]);
				}
				if (!dominated) {
					continue;
				}
				ASSERT_TRUE(null_test(MeasurableFunction::from_values(u, yv), e, 0, shallow(2)).null);
				++checked;
			}
		}
	}
	EXPECT_GT(checked, 100);
}

TEST(ApproximateInT0, Examples) {
	auto len = lebesgue::length_engine();
	auto s = chi(RingSet::interval(0, 2), 3);
	auto a = approximate_in_t0(MeasurableFunction::from_simple(s), len, q(1, 100));
	EXPECT_EQ(a.phi, s);
	EXPECT_EQ(a.distance_bound, ExtReal(0));

	auto b = approximate_in_t0(lebesgue::identity_on_unit(), len, q(1, 8));
	EXPECT_EQ(b.n, 4);
	EXPECT_EQ(b.distance_bound, ExtReal(q(1, 16)));
	// ∫|x - phi_4| = 1/2 - S_4 = 1/32
	ElementaryIntegral li(PreMeasure::length());
	EXPECT_EQ(q(1, 2) - li(b.phi), q(1, 32));

	auto u = Universe::finite({"a"});
	auto one = approximate_in_t0(MeasurableFunction::from_simple(chi(RingSet::full(u))), weights_engine(u, {ExtReal(1)}),
	                             q(1, 8));
	EXPECT_EQ(one.distance_bound, ExtReal(0));

	try {
		approximate_in_t0(lebesgue::identity_on_unit(), len, pow2(-20));
		FAIL();
	} catch (const ToleranceError &e) {
		EXPECT_DOUBLE_EQ(e.achieved(), std::ldexp(1.0, -16));
	}
}

TEST(ConvergenceTheorems, MonotoneFuzz) {
	Fuzz fz(11);
	for (int c = 0; c < 1000; ++c) {
		auto u = Universe::finite(static_cast<std::size_t>(fz.integer(1, 4)));
		std::vector<ExtReal> w;
		for (std::size_t a = 0; a < u.size(); ++a) {
			w.emplace_back(fz.rational(0, 3));
		}
		ElementaryIntegral I(PreMeasure::point_weights(u, w));
		std::vector<SimpleFunction> steps;
		for (int k = 0; k < 3; ++k) {
			steps.push_back(fz.nonnegative_on(u, 2));
		}
		auto start = fz.simple_on(u, 2);
		MonotoneSequence<SimpleFunction> seq(
		    [start, steps](int n) {
			    SimpleFunction x = start;
			    for (int k = 0; k < std::min<int>(n - 1, static_cast<int>(steps.size())); ++k) {
				    x = x + steps[k];
			    }
			    return x;
		    },
		    Direction::Increasing, "partial sums");
		auto r = check_monotone_convergence(I, MeasureEngine::from_premeasure(I.premeasure()), seq, 6);
		ASSERT_TRUE(r.pass) << c;
		ASSERT_LE(r.stabilized_at, 4);
	}
}

TEST(ConvergenceTheorems, FatouFuzzAndStrictWitness) {
	Fuzz fz(12);
	for (int c = 0; c < 1000; ++c) {
		auto u = Universe::finite(static_cast<std::size_t>(fz.integer(1, 4)));
		std::vector<ExtReal> w;
		for (std::size_t a = 0; a < u.size(); ++a) {
			w.emplace_back(fz.rational(0, 3));
		}
		ElementaryIntegral I(PreMeasure::point_weights(u, w));
		std::vector<SimpleFunction> period;
		for (int k = fz.integer(1, 3); k > 0; --k) {
			period.push_back(fz.nonnegative_on(u));
		}
		ASSERT_TRUE(check_fatou(I, MeasureEngine::from_premeasure(I.premeasure()), period).pass) << c;
	}
	auto u = Universe::finite({"a", "b"});
	ElementaryIntegral I(PreMeasure::counting(u));
	auto r = check_fatou(I, MeasureEngine::from_premeasure(I.premeasure()),
	                     {chi(RingSet::labeled(u, {"a"})), chi(RingSet::labeled(u, {"b"}))});
	EXPECT_TRUE(r.pass);
	EXPECT_TRUE(r.strict);
	EXPECT_EQ(r.integral_of_limit, ExtReal(0));
	EXPECT_EQ(r.limit_of_integrals, ExtReal(1));
}

TEST(ConvergenceTheorems, DominatedFuzz) {
	Fuzz fz(13);
	for (int c = 0; c < 1000; ++c) {
		auto u = Universe::finite(static_cast<std::size_t>(fz.integer(1, 4)));
		std::vector<ExtReal> w;
		for (std::size_t a = 0; a < u.size(); ++a) {
			w.emplace_back(fz.rational(0, 3));
		}
		ElementaryIntegral I(PreMeasure::point_weights(u, w));
		auto z = fz.nonnegative_on(u, 3);
		auto limit = meet(join(fz.simple_on(u), -z), z);
		std::vector<SimpleFunction> early;
		for (int k = 0; k < 3; ++k) {
			early.push_back(meet(join(fz.simple_on(u), -z), z));
		}
		auto seq = [early, limit](int n) { return n <= 3 ? early[n - 1] : limit; };
		auto r = check_dominated_convergence(I, MeasureEngine::from_premeasure(I.premeasure()), seq, z, 6);
		ASSERT_TRUE(r.pass) << c;
	}
}

TEST(ConvergenceTheorems, Preconditions) {
	auto u = Universe::finite(2);
	ElementaryIntegral I(PreMeasure::counting(u));
	auto e = MeasureEngine::from_premeasure(I.premeasure());
	auto z = chi(RingSet::full(u));
	EXPECT_THROW(check_dominated_convergence(I, e, [&](int) { return chi(RingSet::full(u), 2); }, z, 3),
	             PreconditionError);
	MonotoneSequence<SimpleFunction> growing([&](int n) { return chi(RingSet::full(u), n); }, Direction::Increasing);
	EXPECT_THROW(check_monotone_convergence(I, e, growing, 4), PreconditionError);
	ElementaryIntegral len(PreMeasure::length());
	EXPECT_THROW(check_fatou(len, lebesgue::length_engine(), {chi(RingSet::interval(0, 1))}), DomainError);
}

TEST(MeasurableSets, SigmaRingClosureAndCompleteness) {
	const std::vector<ExtReal> choices{ExtReal(0), ExtReal(1), ExtReal(q(5, 2)), ExtReal::pos_inf()};
	Fuzz fz(21);
	for (std::size_t n = 1; n <= 5; ++n) {
		auto u = Universe::finite(n);
		for (int rep = 0; rep < 6; ++rep) {
			std::vector<ExtReal> w;
			for (std::size_t a = 0; a < n; ++a) {
				w.push_back(choices[static_cast<std::size_t>(fz.integer(0, 3))]);
			}
			auto e = weights_engine(u, w);
			std::vector<MeasurableFunction> probes;
			for (std::size_t a = 0; a < n; ++a) {
				if (w[a].is_finite()) {
					probes.push_back(MeasurableFunction::from_simple(chi(RingSet::points(u, {a}))));
				}
			}
			auto sets = measurable_subsets(e, probes, shallow(2));
			auto member = [&](const RingSet &s) { return std::find(sets.begin(), sets.end(), s) != sets.end(); };
			for (const auto &a : sets) {
				for (const auto &b : sets) {
					ASSERT_TRUE(member(a | b));
					ASSERT_TRUE(member(a - b));
				}
			}
			// completeness: subsets of null measurable sets are measurable and null
			for (const auto &s : sets) {
				if (measure_from_integral(e, s, probes, shallow(2)).value != ExtReal(0)) {
					continue;
				}
				for (const auto &t : sets) {
					if (subset_of(t, s)) {
						ASSERT_EQ(measure_from_integral(e, t, probes, shallow(2)).value, ExtReal(0));
					}
				}
				ASSERT_EQ(std::count_if(sets.begin(), sets.end(), [&](const RingSet &t) { return subset_of(t, s); }),
				          1 << s.atoms().size());
			}
		}
	}
}
