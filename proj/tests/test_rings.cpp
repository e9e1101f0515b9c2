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

#include "daniell/rings.hpp"
#include "fuzz.hpp"

using namespace daniell;
using daniell::testing::Fuzz;
using daniell::testing::probe_grid;

namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

RingSet iv(long long a, long long b) { return RingSet::interval(q(a), q(b)); }

// Membership oracle: compare a combined set with the boolean of memberships
// on a grid fine enough to hit every endpoint.
void expect_pointwise(SetOp op, const RingSet &a, const RingSet &b, const RingSet &result) {
	for (const auto &t : probe_grid(-1, 8, 12)) {
		bool x = a.contains(Point{t});
		bool y = b.contains(Point{t});
		bool want = op == SetOp::Union ? (x || y) : op == SetOp::Intersect ? (x && y) : (x && !y);
		ASSERT_EQ(result.contains(Point{t}), want) << "t=" << to_string(t);
	}
}

} // namespace

TEST(BooleanCombine, UnionMergesOverlappingIntervals) {
	auto u = boolean_combine(SetOp::Union, iv(0, 2), iv(1, 3));
	EXPECT_EQ(u, iv(0, 3));
	ASSERT_EQ(u.intervals().pieces().size(), 1u);
}

TEST(BooleanCombine, DifferenceSplitsInterval) {
	auto d = boolean_combine(SetOp::Difference, iv(0, 3), iv(1, 2));
	expect_pointwise(SetOp::Difference, iv(0, 3), iv(1, 2), d);
	ASSERT_EQ(d.intervals().pieces().size(), 2u);
	EXPECT_EQ(d, iv(0, 1) | iv(2, 3));
}

TEST(BooleanCombine, IntersectWithEmptyIsEmpty) {
	auto e = RingSet::empty(Universe::real_line());
	EXPECT_TRUE(boolean_combine(SetOp::Intersect, iv(0, 5), e).empty());
	auto u = Universe::finite(4);
	EXPECT_TRUE((RingSet::points(u, {0, 2}) & RingSet::empty(u)).empty());
}

TEST(BooleanCombine, AdjacentIntervalsMerge) {
	auto u = iv(0, 1) | iv(1, 2);
	ASSERT_EQ(u.intervals().pieces().size(), 1u);
	EXPECT_EQ(u, iv(0, 2));
}

TEST(BooleanCombine, UniverseMismatchIsDomainError) {
	auto u = Universe::finite(3);
	EXPECT_THROW((void)(RingSet::points(u, {0}) | iv(0, 1)), DomainError);
	EXPECT_THROW((void)(RingSet::points(u, {0}) | RingSet::points(Universe::finite(4), {0})), DomainError);
}

TEST(BooleanCombine, RealLineRejectsUnboundedSets) {
	EXPECT_THROW(RingSet::intervals(IntervalUnion::interval(ExtReal(0), ExtReal::pos_inf())), DomainError);
	EXPECT_THROW(RingSet::full(Universe::real_line()), DomainError);
}

TEST(BooleanCombine, FiniteAgreesWithExhaustiveMembership) {
	for (std::size_t n = 0; n <= 6; ++n) {
		auto u = Universe::finite(n);
		const std::size_t subsets = std::size_t{1} << n;
		for (std::size_t ma = 0; ma < subsets; ++ma) {
			for (std::size_t mb = 0; mb < subsets; ++mb) {
				std::vector<std::size_t> ia, ib;
				for (std::size_t i = 0; i < n; ++i) {
					if (ma >> i & 1) ia.push_back(i);
					if (mb >> i & 1) ib.push_back(i);
				}
				auto a = RingSet::points(u, ia);
				auto b = RingSet::points(u, ib);
				for (auto op : {SetOp::Union, SetOp::Intersect, SetOp::Difference}) {
					auto r = boolean_combine(op, a, b);
					for (std::size_t i = 0; i < n; ++i) {
						bool x = ma >> i & 1, y = mb >> i & 1;
						bool want = op == SetOp::Union ? (x || y) : op == SetOp::Intersect ? (x && y) : (x && !y);
						ASSERT_EQ(r.contains(Point{i}), want);
					}
				}
			}
		}
	}
}

TEST(BooleanCombine, FuzzedIntervalUnionsMatchMembership) {
	Fuzz fz(11);
	for (int c = 0; c < 300; ++c) {
		auto a = fz.interval_set(4);
		auto b = fz.interval_set(4);
		for (auto op : {SetOp::Union, SetOp::Intersect, SetOp::Difference}) {
			expect_pointwise(op, a, b, boolean_combine(op, a, b));
		}
	}
}

TEST(Canonical, FormIsUniqueAndIdempotent) {
	Fuzz fz(12);
	for (int c = 0; c < 300; ++c) {
		auto a = fz.interval_set(4);
		// rebuilding from the canonical pieces changes nothing
		auto again = RingSet::intervals(IntervalUnion(a.intervals().pieces()));
		EXPECT_EQ(again, a);
		// an equal membership function from a different construction
		auto via_ops = (a | a) - RingSet::empty(Universe::real_line());
		EXPECT_EQ(via_ops, a);
		const auto &p = a.intervals().pieces();
		for (std::size_t i = 0; i < p.size(); ++i) {
			EXPECT_LT(p[i].lo, p[i].hi);
			if (i > 0) {
				EXPECT_LT(p[i - 1].hi, p[i].lo);
			}
		}
	}
}

TEST(PreMeasure, LengthAndCounting) {
	EXPECT_EQ(premeasure_eval(PreMeasure::length(), iv(0, 1) | iv(2, 4)), ExtReal(3));
	EXPECT_EQ(premeasure_eval(PreMeasure::length(), RingSet::empty(Universe::real_line())), ExtReal(0));
	auto u = Universe::finite(3);
	EXPECT_EQ(premeasure_eval(PreMeasure::counting(u), RingSet::points(u, {0, 2})), ExtReal(2));
	EXPECT_EQ(premeasure_eval(PreMeasure::counting(u), RingSet::empty(u)), ExtReal(0));
}

TEST(PreMeasure, InfiniteWeightIsTagged) {
	auto u = Universe::finite(2);
	auto mu = PreMeasure::point_weights(u, {ExtReal(1), ExtReal::pos_inf()});
	EXPECT_TRUE(mu(RingSet::points(u, {0, 1})).is_pos_inf());
	EXPECT_THROW(PreMeasure::point_weights(u, {ExtReal(1), ExtReal(-1)}), DomainError);
}

TEST(PreMeasure, SignedVariation) {
	auto u = Universe::finite(2);
	auto nu = PreMeasure::signed_weights(u, {q(2), q(-1)});
	auto all = RingSet::full(u);
	EXPECT_EQ(nu(all), ExtReal(1));
	EXPECT_EQ(nu.variation(all), ExtReal(3));
}

TEST(Additivity, AdjacentIntervals) {
	auto r = check_additivity(PreMeasure::length(), {iv(0, 1), iv(1, 2)});
	EXPECT_TRUE(r.pass);
	EXPECT_EQ(*r.exact_lhs, ExtReal(2));
	EXPECT_EQ(*r.exact_rhs, ExtReal(2));
}

TEST(Additivity, OverlapReportsWitness) {
	try {
		check_additivity(PreMeasure::length(), {iv(0, 2), iv(1, 3)});
		FAIL() << "expected a precondition error";
	} catch (const PreconditionError &e) {
		EXPECT_EQ(e.witness(), "t=1");
	}
}

namespace {

// Enumerates set partitions of {0..n-1} as block labels (restricted growth strings).
void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t> &)> &fn) {
	std::vector<std::size_t> label(n, 0);
	std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
		if (i == n) {
			fn(label);
			return;
		}
		for (std::size_t b = 0; b <= blocks; ++b) {
			label[i] = b;
			rec(i + 1, std::max(blocks, b + 1));
		}
	};
	rec(0, 0);
}

} // namespace

TEST(Additivity, CountingExhaustiveOverFivePointPartitions) {
	auto u = Universe::finite(5);
	auto mu = PreMeasure::counting(u);
	std::size_t count = 0;
	for_each_partition(5, [&](const std::vector<std::size_t> &label) {
		std::size_t blocks = *std::max_element(label.begin(), label.end()) + 1;
		std::vector<std::vector<std::size_t>> idx(blocks);
		for (std::size_t i = 0; i < label.size(); ++i) {
			idx[label[i]].push_back(i);
		}
		std::vector<RingSet> parts;
		for (auto &b : idx) {
			parts.push_back(RingSet::points(u, b));
		}
		auto r = check_additivity(mu, parts);
		ASSERT_TRUE(r.pass);
		ASSERT_EQ(*r.exact_lhs, ExtReal(5));
		++count;
	});
	EXPECT_EQ(count, 52u); // Bell number B5
}

TEST(Additivity, FuzzedDisjointIntervalFamilies) {
	Fuzz fz(13);
	for (int c = 0; c < 200; ++c) {
		std::vector<RingSet> parts;
		RingSet used = RingSet::empty(Universe::real_line());
		int n = fz.integer(1, 5);
		for (int i = 0; i < n; ++i) {
			auto s = fz.interval_set(3) - used;
			used = used | s;
			parts.push_back(s);
		}
		auto r = check_additivity(PreMeasure::length(), parts);
		ASSERT_TRUE(r.pass);
	}
}

TEST(Additivity, NumericPreMeasureUsesTolerance) {
	auto mu = PreMeasure::numeric(
	    Universe::real_line(), [](const RingSet &s) { return s.intervals().length().to_double() * (1 + 1e-12); },
	    1e-9, "perturbed_length");
	auto r = check_additivity(mu, {iv(0, 1), iv(1, 2)});
	EXPECT_TRUE(r.pass);
	EXPECT_FALSE(r.exact_lhs.has_value());
}
