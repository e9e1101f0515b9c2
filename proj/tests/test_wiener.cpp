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

#include <cmath>

#include "daniell/wiener.hpp"
#include "fuzz.hpp"
#include "oracles.hpp"

using namespace daniell;
using namespace daniell::wiener;
using daniell::testing::Fuzz;
using daniell::testing::orthant_probability;

namespace {

Rational q(long long n, long long d = 1) { return make_rational(n, d); }

const ExtReal inf = ExtReal::pos_inf();
const ExtReal ninf = ExtReal::neg_inf();

IntervalUnion ray_up(const Rational &a) { return IntervalUnion::interval(a, inf); }
IntervalUnion line() { return IntervalUnion::whole_line(); }

Cylinder orthant() { return Cylinder({0, q(1, 2), 1}, {ray_up(0), ray_up(0)}); }

// random cylinder on a random partition with 1..3 times
Cylinder random_cylinder(Fuzz &fz) {
	std::vector<Rational> times{0};
	int n = fz.integer(1, 3);
	std::vector<Rational> inner;
	for (int i = 1; i < n; ++i) {
		inner.push_back(make_rational(fz.integer(1, 11), 12));
	}
	std::sort(inner.begin(), inner.end());
	inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
	times.insert(times.end(), inner.begin(), inner.end());
	times.push_back(1);
	std::vector<IntervalUnion> sets;
	for (std::size_t i = 1; i < times.size(); ++i) {
		switch (fz.integer(0, 3)) {
		case 0:
			sets.push_back(line());
			break;
		case 1:
			sets.push_back(IntervalUnion::interval(ninf, fz.rational(-1, 1)));
			break;
		case 2:
			sets.push_back(ray_up(fz.rational(-1, 1)));
			break;
		default: {
			Rational a = fz.rational(-2, 1);
			sets.push_back(IntervalUnion::interval(a, a + fz.rational(1, 2)));
		}
		}
	}
	return Cylinder(times, sets);
}

std::vector<Path> paths_on(const std::vector<Rational> &grid, std::uint64_t count, std::uint64_t seed) {
	std::vector<Rational> times(grid.begin() + 1, grid.end());
	auto m = sample_paths(times, count, seed);
	std::vector<Path> out;
	for (Eigen::Index r = 0; r < m.rows(); ++r) {
		Path p{grid, {0.0}};
		for (Eigen::Index c = 0; c < m.cols(); ++c) {
			p.values.push_back(m(r, c));
		}
		out.push_back(std::move(p));
	}
	return out;
}

} // namespace

TEST(WienerPremeasure, Normalization) {
	EXPECT_NEAR(quadrature(Cylinder::whole()).value, 1.0, 1e-8);
	EXPECT_NEAR(quadrature(Cylinder({0, 1}, {ray_up(0)})).value, 0.5, 1e-8);
	// X written on a finer partition still has measure 1
	EXPECT_NEAR(quadrature(Cylinder({0, q(1, 3), 1}, {line(), line()})).value, 1.0, 1e-8);
}

TEST(WienerPremeasure, OrthantMatchesBivariateNormal) {
	double oracle = orthant_probability(std::sqrt(0.5));
	EXPECT_NEAR(oracle, 0.375, 1e-15);
	auto e = quadrature(orthant());
	EXPECT_NEAR(e.value, oracle, 1e-8);
	EXPECT_LT(e.error, 1e-8);
	// three times (1/4, 1/2, 1): orthant for a trivariate normal with
	// correlations sqrt(s/t); closed form 1/8 + (asin r12 + asin r13 + asin r23)/(4 pi)
	auto d3 = Cylinder({0, q(1, 4), q(1, 2), 1}, {ray_up(0), ray_up(0), ray_up(0)});
	double r12 = std::sqrt(0.5), r13 = 0.5, r23 = std::sqrt(0.5);
	double tri = 0.125 + (std::asin(r12) + std::asin(r13) + std::asin(r23)) / (4 * M_PI);
	EXPECT_NEAR(quadrature(d3).value, tri, 1e-7);
}

TEST(WienerPremeasure, GaussianIntervalOracle) {
	// single time t: P(W_t in [a,b)) from the normal CDF
	Fuzz fz(60);
	for (int c = 0; c < 20; ++c) {
		Rational t = make_rational(fz.integer(1, 11), 12);
		Rational a = fz.rational(-2, 1);
		Rational b = a + fz.rational(1, 2);
		Cylinder d({0, t, 1}, {IntervalUnion::interval(a, b), line()});
		double sd = std::sqrt(to_double(t));
		double oracle = 0.5 * (std::erf(to_double(b) / (sd * std::sqrt(2.0))) - std::erf(to_double(a) / (sd * std::sqrt(2.0))));
		ASSERT_NEAR(quadrature(d).value, oracle, 1e-10);
	}
}

TEST(WienerPremeasure, UnnormalizedKernelVariant) {
	EXPECT_NEAR(quadrature(Cylinder::whole(), Kernel::Paper).value, 1.0 / std::sqrt(2.0), 1e-8);
	// and it depends on how many slots a cylinder lists
	EXPECT_NEAR(quadrature(Cylinder({0, q(1, 2), 1}, {line(), line()}), Kernel::Paper).value, 0.5, 1e-8);
	auto mc = monte_carlo(Cylinder::whole(), 1000, 3, Kernel::Paper);
	EXPECT_NEAR(mc.value, 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(WienerPremeasure, Validation) {
	EXPECT_THROW(wiener_premeasure(orthant(), Method::Quadrature, 0.0), DomainError);
	EXPECT_THROW(quadrature(orthant(), Kernel::Standard, QuadratureConfig{1e-300, 2}), ToleranceError);
	EXPECT_EQ(quadrature(Cylinder({0, 1}, {IntervalUnion{}})).value, 0.0);
	EXPECT_THROW(sample_paths({q(1, 2)}, 0, 1), DomainError);
}

TEST(WienerPremeasure, FiniteAdditivityOnSamePartition) {
	Fuzz fz(61);
	auto mu = premeasure();
	for (int c = 0; c < 15; ++c) {
		std::vector<Rational> times{0, make_rational(fz.integer(1, 5), 6), 1};
		// cut both coordinates into pieces; products of pieces are disjoint
		auto cuts = [&]() {
			std::vector<ExtReal> pts{ninf};
			Rational x = fz.rational(-2, -1);
			for (int i = fz.integer(1, 3); i > 0; --i) {
				pts.emplace_back(x);
				x += fz.rational(1, 2);
			}
			pts.push_back(inf);
			return pts;
		};
		auto p1 = cuts();
		auto p2 = cuts();
		std::vector<RingSet> parts;
		std::vector<Cylinder> members;
		for (std::size_t i = 0; i + 1 < p1.size(); ++i) {
			for (std::size_t j = 0; j + 1 < p2.size(); ++j) {
				if (fz.integer(0, 2) == 0) {
					continue;
				}
				Cylinder d(times, {IntervalUnion::interval(p1[i], p1[i + 1]), IntervalUnion::interval(p2[j], p2[j + 1])});
				members.push_back(d);
				parts.push_back(RingSet::cylinders(CylinderFamily(d)));
			}
		}
		if (parts.empty()) {
			continue;
		}
		auto rep = check_additivity(mu, parts);
		ASSERT_TRUE(rep.pass) << rep.lhs << " vs " << rep.rhs;
		ASSERT_NEAR(mu.approx(RingSet::cylinders(CylinderFamily::from_disjoint(members))), rep.rhs, 1e-9);
	}
	// the full grid of pieces sums to 1
	std::vector<RingSet> all;
	for (const auto &[a, b] : std::vector<std::pair<ExtReal, ExtReal>>{{ninf, ExtReal(-1)}, {ExtReal(-1), ExtReal(q(1, 2))}, {ExtReal(q(1, 2)), inf}}) {
		for (const auto &[c, d] : std::vector<std::pair<ExtReal, ExtReal>>{{ninf, ExtReal(0)}, {ExtReal(0), inf}}) {
			all.push_back(RingSet::cylinders(
			    CylinderFamily(Cylinder({0, q(1, 3), 1}, {IntervalUnion::interval(a, b), IntervalUnion::interval(c, d)}))));
		}
	}
	double total = 0;
	for (const auto &s : all) {
		total += mu.approx(s);
	}
	EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(CylinderCombine, MembershipOracleOnSampledPaths) {
	Fuzz fz(62);
	for (int c = 0; c < 20; ++c) {
		auto d1 = random_cylinder(fz);
		auto d2 = random_cylinder(fz);
		auto grid = merge_partitions(d1.times(), d2.times());
		auto inter = intersect(d1, d2);
		auto diff = CylinderFamily::from_disjoint(difference(d1, d2));
		auto uni = CylinderFamily(d1) | CylinderFamily(d2);
		EXPECT_EQ(inter.times(), grid);
		for (const auto &p : paths_on(grid, 10000, 100 + c)) {
			bool a = d1.contains(p), b = d2.contains(p);
			ASSERT_EQ(inter.contains(p), a && b);
			ASSERT_EQ(diff.contains(p), a && !b);
			ASSERT_EQ(uni.contains(p), a || b);
		}
	}
	auto d = orthant();
	EXPECT_TRUE((CylinderFamily(d) - CylinderFamily(d)).empty());
}

TEST(CylinderCombine, MergedPartitionExample) {
	Cylinder d1({0, q(1, 2), 1}, {ray_up(0), line()});
	Cylinder d2({0, q(1, 3), 1}, {ray_up(1), line()});
	auto i = intersect(d1, d2);
	EXPECT_EQ(i.times(), (std::vector<Rational>{0, q(1, 3), q(1, 2), 1}));
	EXPECT_EQ(i.sets()[0], ray_up(1));
	EXPECT_EQ(i.sets()[1], ray_up(0));
	EXPECT_EQ(i.sets()[2], line());
}

TEST(MonteCarlo, AgreesWithQuadrature) {
	Fuzz fz(63);
	for (int c = 0; c < 20; ++c) {
		auto d = random_cylinder(fz);
		auto qv = quadrature(d);
		auto mc = monte_carlo(d, 200000, 500 + c);
		ASSERT_LE(std::abs(qv.value - mc.value), 3 * mc.error + qv.error) << to_string(d);
	}
}

TEST(MonteCarlo, DeterministicForSeed) {
	auto a = monte_carlo(orthant(), 100000, 9);
	auto b = monte_carlo(orthant(), 100000, 9);
	EXPECT_EQ(a.value, b.value);
	EXPECT_NE(a.value, monte_carlo(orthant(), 100000, 10).value);
}

TEST(SamplePaths, MomentsAndDeterminism) {
	const std::uint64_t n = 1000000;
	auto m = sample_paths({q(1, 2), 1}, n, 42);
	ASSERT_EQ(m.rows(), static_cast<Eigen::Index>(n));
	Eigen::VectorXd w1 = m.col(1);
	double mean = w1.mean();
	EXPECT_LT(std::abs(mean), 4.0 / std::sqrt(static_cast<double>(n)));
	double var = (w1.array() - mean).square().sum() / static_cast<double>(n - 1);
	// standard error of the sample variance of a N(0,1) sample is sqrt(2/(n-1))
	EXPECT_LT(std::abs(var - 1.0), 4 * std::sqrt(2.0 / static_cast<double>(n - 1)));
	// increments W_1 - W_{1/2} have variance 1/2
	Eigen::VectorXd inc = m.col(1) - m.col(0);
	double vinc = inc.squaredNorm() / static_cast<double>(n);
	EXPECT_LT(std::abs(vinc - 0.5), 4 * 0.5 * std::sqrt(2.0 / static_cast<double>(n)));
	auto again = sample_paths({q(1, 2), 1}, 1000, 42);
	EXPECT_TRUE(again == m.topRows(1000));
}
