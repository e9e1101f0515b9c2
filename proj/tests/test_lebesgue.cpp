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

#include "daniell/lebesgue.hpp"
#include "fuzz.hpp"

using namespace daniell;
using namespace daniell::lebesgue;
using daniell::testing::Fuzz;

namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

PiecewiseLinear random_pl(Fuzz &fz, int max_inner = 4) {
	int inner = fz.integer(0, max_inner);
	if (inner == 0) {
		return {};
	}
	std::vector<Rational> xs;
	Rational x = fz.rational(-4, 0);
	for (int i = 0; i < inner + 2; ++i) {
		xs.push_back(x);
		x += fz.rational(1, 3) / fz.integer(1, 3);
	}
	std::vector<Rational> ys{0};
	for (int i = 0; i < inner; ++i) {
		ys.push_back(fz.rational(-3, 3));
	}
	ys.push_back(0);
	return PiecewiseLinear(xs, ys);
}

std::vector<Rational> probes(Fuzz &fz, int count) {
	std::vector<Rational> out;
	for (int i = 0; i < count; ++i) {
		out.push_back(make_rational(fz.integer(-600, 600), fz.integer(1, 97)));
	}
	return out;
}

} // namespace

TEST(RiemannIntegral, Examples) {
	EXPECT_EQ(riemann_integral(PiecewiseLinear::hat(0, 1, 2)), 1);
	EXPECT_EQ(riemann_integral(PiecewiseLinear{}), 0);
	EXPECT_EQ(riemann_integral(ramp_sequence(0, 1, 1)), q(1, 2));
}

TEST(PiecewiseLinear, Validation) {
	EXPECT_THROW(PiecewiseLinear({0, 1}, {0}), DomainError);
	EXPECT_THROW(PiecewiseLinear({0, 0, 1}, {0, 1, 0}), DomainError);
	EXPECT_THROW(PiecewiseLinear({0, 1}, {1, 0}), DomainError);
	EXPECT_THROW(PiecewiseLinear({0}, {0}), DomainError);
	// collinear points and zero runs are simplified away
	PiecewiseLinear f({-1, 0, 1, 2, 3}, {0, 0, 1, 0, 0});
	EXPECT_EQ(f, PiecewiseLinear::hat(0, 1, 2));
	EXPECT_TRUE(PiecewiseLinear({0, 1, 2}, {0, 0, 0}).is_zero());
}

TEST(RampSequence, Shape) {
	auto f1 = ramp_sequence(0, 1, 1);
	// the rise and fall each span (b-a)/2n; at n = 1 the plateau is a point
	EXPECT_EQ(f1.breakpoints(), (std::vector<Rational>{0, q(1, 2), 1}));
	auto f2 = ramp_sequence(0, 1, 2);
	EXPECT_EQ(f2.breakpoints(), (std::vector<Rational>{0, q(1, 4), q(3, 4), 1}));
	EXPECT_EQ(f2(q(1, 2)), 1);
	EXPECT_THROW(ramp_sequence(1, 1, 1), DomainError);
	EXPECT_THROW(ramp_sequence(2, 1, 1), DomainError);
	EXPECT_THROW(ramp_sequence(0, 1, 0), DomainError);
}

TEST(RampSequence, IntegralClosedFormAndMonotone) {
	Fuzz fz(41);
	for (int c = 0; c < 50; ++c) {
		Rational a = fz.rational(-5, 5);
		Rational b = a + fz.rational(1, 6);
		for (int n = 1; n <= 40; ++n) {
			ASSERT_EQ(riemann_integral(ramp_sequence(a, b, n)), (b - a) * (1 - Rational(1) / (2 * n)));
		}
	}
	auto f1 = ramp_sequence(0, 1, 1);
	auto f2 = ramp_sequence(0, 1, 2);
	for (int k = -10; k <= 110; ++k) {
		Rational t = q(k, 100);
		ASSERT_LE(f1(t), f2(t));
		ASSERT_LE(f2(t), (t > 0 && t < 1) ? Rational(1) : Rational(0));
	}
	ramps(0, 1).certify(60);
}

TEST(PlLatticeOp, MeetOfCrossingLinesAddsCrossing) {
	auto up = PiecewiseLinear({0, 2, 3}, {0, 2, 0});
	auto down = PiecewiseLinear({0, 1, 3}, {0, 2, 0});
	// on [1, 2] up = t and down = 3 - t cross at t = 3/2
	auto m = meet(up, down);
	EXPECT_EQ(m, PiecewiseLinear({0, q(3, 2), 3}, {0, q(3, 2), 0})) << to_string(m);
	for (int k = -5; k <= 35; ++k) {
		Rational t = q(k, 10);
		ASSERT_EQ(m(t), min(up(t), down(t)));
	}
	EXPECT_TRUE(PiecewiseLinear({0, 2}, {0, 0}).is_zero());
}

TEST(PlLatticeOp, Identities) {
	Fuzz fz(42);
	for (int c = 0; c < 100; ++c) {
		auto f = random_pl(fz);
		ASSERT_EQ(join(f, f), f);
		ASSERT_EQ(f + PiecewiseLinear{}, f);
		ASSERT_EQ(pl_lattice_op(LatticeOp::Plus, f, PiecewiseLinear{}), f);
		ASSERT_EQ(positive_part(f) - positive_part(-f), f);
		ASSERT_EQ(abs(f), positive_part(f) + positive_part(-f));
	}
}

TEST(PlLatticeOp, AgreesWithPointwiseOracle) {
	Fuzz fz(43);
	for (int c = 0; c < 40; ++c) {
		auto f = random_pl(fz);
		auto g = random_pl(fz);
		Rational s = fz.rational(-3, 3);
		auto mn = meet(f, g);
		auto mx = join(f, g);
		auto sum = f + g;
		auto sc = s * f;
		auto ab = abs(f);
		for (const auto &t : probes(fz, 1000)) {
			Rational ft = f(t), gt = g(t);
			ASSERT_EQ(mn(t), min(ft, gt));
			ASSERT_EQ(mx(t), max(ft, gt));
			ASSERT_EQ(sum(t), ft + gt);
			ASSERT_EQ(sc(t), s * ft);
			ASSERT_EQ(ab(t), abs(ft));
		}
	}
}

TEST(IntervalLengthViaDaniell, Examples) {
	auto r = interval_length_via_daniell(0, 1, 100);
	EXPECT_EQ(r.value, ExtReal(1 - q(1, 200)));
	EXPECT_TRUE(r.contains(ExtReal(1)));
	EXPECT_EQ(r.upper, ExtReal(1));
	auto s = interval_length_via_daniell(2, 5, 100);
	EXPECT_TRUE(s.contains(ExtReal(3)));
	EXPECT_EQ(s.upper - s.lower, ExtReal(q(3, 200)));
	EXPECT_THROW(interval_length_via_daniell(1, 1, 10), DomainError);
}

TEST(IntervalLengthViaDaniell, FuzzedBracketsContainLength) {
	Fuzz fz(44);
	for (int c = 0; c < 50; ++c) {
		Rational a = fz.rational(-10, 10);
		Rational b = a + fz.rational(1, 8);
		auto r = interval_length_via_daniell(a, b, 64);
		ASSERT_TRUE(r.contains(ExtReal(b - a)));
		ASSERT_EQ(r.upper, ExtReal(b - a));
	}
}

TEST(RiemannAxioms, IIntegralOnPiecewiseLinear) {
	Fuzz fz(45);
	std::vector<PiecewiseLinear> samples;
	for (int i = 0; i < 20; ++i) {
		samples.push_back(random_pl(fz));
	}
	// hats of height 1/n over [0, 2]: sup norm 1/n, integral bounded by 2/n
	std::vector<MonotoneSequence<PiecewiseLinear>> seqs{
	    {[](int n) { return PiecewiseLinear::hat(0, 1, 2, Rational(1) / n); }, Direction::Decreasing, "hat/n"},
	    {[](int n) { return Rational(1) / n * ramp_sequence(0, 3, 1); }, Direction::Decreasing, "ramp/n"}};
	auto rep = verify_i_axioms<PiecewiseLinear>(Riemann{}, seqs, 200, q(1, 50), samples);
	ASSERT_TRUE(rep.pass());
	EXPECT_EQ(rep.records[1].achieved, q(1, 200));
	EXPECT_EQ(rep.records[2].achieved, q(3, 400));
}

TEST(LengthAgreement, MeasureFromIntegralMatchesLengths) {
	Fuzz fz(46);
	for (int c = 0; c < 15; ++c) {
		auto e = fz.interval_set(3);
		auto len = PreMeasure::length()(e);
		EngineConfig cfg;
		cfg.n_max = 8;
		auto r = measure_from_integral(lebesgue_engine(500), e, cfg);
		ASSERT_TRUE(r.contains(len)) << to_string(e);
		ASSERT_LE(r.upper - r.lower, Rational(q(1, 1000) + pow2(-8)) * len);
	}
}

TEST(SegmentFunction, StrictLevelSetsAndEvaluation) {
	auto x = segment_function({Segment{0, 1, 1, 0}, Segment{2, 3, 2, 2}});
	EXPECT_EQ(x(Point{q(1, 4)}), ExtReal(q(3, 4)));
	EXPECT_EQ(x(Point{Rational(5)}), ExtReal(0));
	// {x > 1/2} = [0, 1/2) ∪ [2, 3)
	EXPECT_EQ(x.above(q(1, 2)), RingSet::intervals(IntervalUnion({Interval{0, q(1, 2)}, Interval{2, 3}})));
	EXPECT_TRUE(x.above(2).empty());
	EXPECT_THROW(x.above(-1), DomainError);
	EXPECT_THROW(segment_function({Segment{0, 2, 1, 1}, Segment{1, 3, 1, 1}}), DomainError);
}
