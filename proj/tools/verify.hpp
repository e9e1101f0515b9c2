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

#ifndef DANIELL_TOOLS_VERIFY_HPP
#define DANIELL_TOOLS_VERIFY_HPP

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "daniell/dirichlet.hpp"
#include "daniell/extension.hpp"
#include "daniell/functional.hpp"
#include "daniell/lebesgue.hpp"
#include "daniell/wiener.hpp"

namespace daniell::verify {

struct Row {
	std::string module;
	std::string check;
	bool pass = false;
	std::string detail;
};

namespace detail {

class Gen {
public:
	explicit Gen(std::uint64_t seed) : rng_(seed) {}

	int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
	double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
	Rational rational(int lo, int hi) {
		int d = integer(1, 4);
		return make_rational(integer(lo * d, hi * d), d);
	}

	RingSet subset(const Universe &u) {
		std::vector<std::size_t> idx;
		for (std::size_t i = 0; i < u.size(); ++i) {
			if (integer(0, 1)) {
				idx.push_back(i);
			}
		}
		return RingSet::points(u, idx);
	}

	RingSet intervals(int pieces = 3) {
		std::vector<Interval> ivs;
		for (int i = integer(0, pieces); i > 0; --i) {
			Rational a = rational(0, 6), b = rational(0, 6);
			if (b < a) {
				std::swap(a, b);
			}
			ivs.push_back(Interval{a, b});
		}
		return RingSet::intervals(IntervalUnion(std::move(ivs)));
	}

	SimpleFunction simple(const Universe &u, int lo = -3, int hi = 3) {
		std::vector<Term> ts;
		for (int i = integer(0, 3); i > 0; --i) {
			ts.push_back(Term{rational(lo, hi), subset(u)});
		}
		return SimpleFunction(u, std::move(ts));
	}

private:
	std::mt19937_64 rng_;
};

inline std::string str(double v) {
	std::ostringstream os;
	os.precision(10);
	os << v;
	return os.str();
}

} // namespace detail

/// Runs every module's invariant suite. `quick` shrinks sample counts and
/// depths; all checks are deterministic for a given seed.
inline std::vector<Row> verify_all(bool quick, std::uint64_t seed) {
	using detail::Gen;
	std::vector<Row> rows;
	auto run = [&](const std::string &module, const std::string &check, const std::function<Row()> &fn) {
		Row r;
		try {
			r = fn();
		} catch (const std::exception &e) {
			r.pass = false;
			r.detail = std::string("exception: ") + e.what();
		}
		r.module = module;
		r.check = check;
		rows.push_back(std::move(r));
	};
	const int cases = quick ? 50 : 300;

	run("rings", "boolean_ops_vs_membership", [&] {
		Gen g(seed ^ 0x11);
		for (int c = 0; c < cases; ++c) {
			auto a = g.intervals(), b = g.intervals();
			auto u = a | b, i = a & b, d = a - b;
			for (int k = -2; k <= 26; ++k) {
				Point p{make_rational(k, 4)};
				bool ia = a.contains(p), ib = b.contains(p);
				if (u.contains(p) != (ia || ib) || i.contains(p) != (ia && ib) || d.contains(p) != (ia && !ib)) {
					return Row{"", "", false, to_string(a) + " vs " + to_string(b)};
				}
			}
		}
		return Row{"", "", true, std::to_string(cases) + " pairs"};
	});

	run("rings", "additivity_5_point_partitions", [&] {
		Gen g(seed ^ 0x12);
		auto u = Universe::finite(5);
		std::vector<ExtReal> w;
		for (int i = 0; i < 5; ++i) {
			w.emplace_back(g.rational(0, 4));
		}
		auto mu = PreMeasure::point_weights(u, w);
		// restricted growth strings enumerate every set partition (52)
		int count = 0;
		std::vector<int> rgs(5, 0);
		while (true) {
			int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
			std::vector<std::vector<std::size_t>> parts(static_cast<std::size_t>(blocks));
			for (std::size_t a = 0; a < 5; ++a) {
				parts[static_cast<std::size_t>(rgs[a])].push_back(a);
			}
			std::vector<RingSet> sets;
			for (auto &p : parts) {
				sets.push_back(RingSet::points(u, p));
			}
			if (!check_additivity(mu, sets).pass) {
				return Row{"", "", false, "partition " + std::to_string(count)};
			}
			++count;
			int i = 4;
			while (i > 0) {
				int mx = *std::max_element(rgs.begin(), rgs.begin() + i);
				if (rgs[static_cast<std::size_t>(i)] <= mx) {
					++rgs[static_cast<std::size_t>(i)];
					std::fill(rgs.begin() + i + 1, rgs.end(), 0);
					break;
				}
				--i;
			}
			if (i == 0) {
				break;
			}
		}
		return Row{"", "", count == 52, std::to_string(count) + " partitions"};
	});

	run("lattice", "canonicalize_pointwise", [&] {
		Gen g(seed ^ 0x21);
		for (int c = 0; c < cases; ++c) {
			auto u = Universe::finite(static_cast<std::size_t>(g.integer(1, 6)));
			auto x = g.simple(u);
			auto cx = canonicalize(x);
			for (std::size_t a = 0; a < u.size(); ++a) {
				if (cx.eval(Point{a}) != x.eval(Point{a})) {
					return Row{"", "", false, to_string(x)};
				}
			}
			if (!(canonicalize(cx).terms().size() == cx.terms().size())) {
				return Row{"", "", false, "not idempotent: " + to_string(x)};
			}
		}
		return Row{"", "", true, std::to_string(cases) + " functions"};
	});

	run("lattice", "operations_pointwise", [&] {
		Gen g(seed ^ 0x22);
		auto u = Universe::finite(5);
		for (int c = 0; c < cases; ++c) {
			auto x = g.simple(u), y = g.simple(u);
			auto mn = meet(x, y), mx = join(x, y), s = x + y, ab = abs(x);
			for (std::size_t a = 0; a < 5; ++a) {
				Point p{a};
				ExtReal xv = x.eval(p), yv = y.eval(p);
				if (mn.eval(p) != min(xv, yv) || mx.eval(p) != max(xv, yv) || s.eval(p) != xv + yv ||
				    ab.eval(p) != max(xv, -xv)) {
					return Row{"", "", false, to_string(x) + " and " + to_string(y)};
				}
			}
		}
		return Row{"", "", true, std::to_string(cases) + " pairs"};
	});

	run("functional", "i_axioms", [&] {
		Gen g(seed ^ 0x31);
		auto u = Universe::finite(4);
		std::vector<ExtReal> w;
		for (int i = 0; i < 4; ++i) {
			w.emplace_back(g.rational(0, 3));
		}
		ElementaryIntegral I(PreMeasure::point_weights(u, w));
		std::vector<SimpleFunction> samples;
		for (int i = 0; i < 20; ++i) {
			samples.push_back(g.simple(u));
		}
		auto x = SimpleFunction::indicator(RingSet::full(u));
		std::vector<MonotoneSequence<SimpleFunction>> seqs{
		    {[x](int n) { return Rational(1, n) * x; }, Direction::Decreasing, "1/n"}};
		auto rep = verify_i_axioms<SimpleFunction>(I, seqs, 1000, Rational(1, 50), samples);
		return Row{"", "", rep.pass(), std::to_string(rep.records.size()) + " records"};
	});

	run("functional", "jordan_vs_brute_force", [&] {
		Gen g(seed ^ 0x32);
		for (int c = 0; c < cases; ++c) {
			std::size_t n = static_cast<std::size_t>(g.integer(1, quick ? 6 : 8));
			auto u = Universe::finite(n);
			std::vector<Rational> nu, xv;
			std::vector<Term> terms;
			for (std::size_t a = 0; a < n; ++a) {
				nu.emplace_back(g.integer(-5, 5));
				xv.push_back(g.rational(0, 3));
				terms.push_back(Term{xv.back(), RingSet::points(u, {a})});
			}
			SignedFunctional s(u, nu);
			SimpleFunction x(u, terms);
			Rational best = 0;
			for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
				Rational v = 0;
				for (std::size_t a = 0; a < n; ++a) {
					if (mask >> a & 1) {
						v += nu[a] * xv[a];
					}
				}
				best = max(best, v);
			}
			auto d = jordan_decompose(s);
			if (s.positive_part(x) != best || s(x) != d.plus(x) - d.minus(x) || d.abs(x) != d.plus(x) + d.minus(x)) {
				return Row{"", "", false, "case " + std::to_string(c)};
			}
		}
		return Row{"", "", true, std::to_string(cases) + " universes"};
	});

	run("extension", "dyadic_partial_sums", [&] {
		EngineConfig cfg;
		cfg.n_max = quick ? 10 : 16;
		auto r = level_set_integral(lebesgue::identity_on_unit(), lebesgue::length_engine(), cfg);
		bool ok = r.partial_sums.size() >= 2 && r.partial_sums[0] == Rational(1, 4) && r.partial_sums[1] == Rational(3, 8);
		for (std::size_t n = 1; n <= r.partial_sums.size(); ++n) {
			ok = ok && abs(Rational(r.partial_sums[n - 1] - Rational(1, 2))) < pow2(-static_cast<int>(n));
		}
		ok = ok && r.contains(ExtReal(Rational(1, 2)));
		return Row{"", "", ok, "S_" + std::to_string(r.depth) + " = " + to_string(r.value)};
	});

	run("extension", "finite_layer_cake", [&] {
		Gen g(seed ^ 0x41);
		for (int c = 0; c < cases; ++c) {
			auto u = Universe::finite(static_cast<std::size_t>(g.integer(1, 6)));
			std::vector<ExtReal> w, v;
			Rational expect = 0;
			for (std::size_t a = 0; a < u.size(); ++a) {
				Rational wa = g.rational(0, 3), va = g.rational(0, 5);
				w.emplace_back(wa);
				v.emplace_back(va);
				expect += wa * va;
			}
			auto engine = MeasureEngine::from_premeasure(PreMeasure::point_weights(u, w));
			auto r = level_set_integral(MeasurableFunction::from_values(u, v), engine);
			if (r.value != ExtReal(expect) || !r.contains(ExtReal(expect))) {
				return Row{"", "", false, "case " + std::to_string(c)};
			}
		}
		return Row{"", "", true, std::to_string(cases) + " functions"};
	});

	run("extension", "monotone_convergence", [&] {
		Gen g(seed ^ 0x42);
		auto u = Universe::finite(4);
		std::vector<ExtReal> w;
		for (int i = 0; i < 4; ++i) {
			w.emplace_back(g.rational(0, 3));
		}
		auto mu = PreMeasure::point_weights(u, w);
		ElementaryIntegral I(mu);
		auto engine = MeasureEngine::from_premeasure(mu);
		int n = quick ? 20 : 100;
		for (int c = 0; c < n; ++c) {
			auto target = g.simple(u, 0, 3);
			int stop = g.integer(1, 6);
			MonotoneSequence<SimpleFunction> seq(
			    [target, stop](int k) { return Rational(std::min(k, stop), stop) * target; }, Direction::Increasing);
			if (!check_monotone_convergence(I, engine, seq, 8).pass) {
				return Row{"", "", false, "case " + std::to_string(c)};
			}
		}
		return Row{"", "", true, std::to_string(n) + " sequences"};
	});

	run("lebesgue", "interval_length_brackets", [&] {
		Gen g(seed ^ 0x51);
		for (int c = 0; c < 50; ++c) {
			Rational a = g.rational(-10, 10);
			Rational b = a + g.rational(1, 8);
			auto r = lebesgue::interval_length_via_daniell(a, b, quick ? 64 : 1000);
			if (!r.contains(ExtReal(b - a))) {
				return Row{"", "", false, to_string(a) + " " + to_string(b)};
			}
		}
		return Row{"", "", true, "50 intervals"};
	});

	run("lebesgue", "ramp_closed_form", [&] {
		Gen g(seed ^ 0x52);
		for (int c = 0; c < 20; ++c) {
			Rational a = g.rational(-5, 5);
			Rational b = a + g.rational(1, 6);
			for (int n = 1; n <= 40; ++n) {
				if (lebesgue::riemann_integral(lebesgue::ramp_sequence(a, b, n)) != (b - a) * (1 - Rational(1, 2 * n))) {
					return Row{"", "", false, "n=" + std::to_string(n)};
				}
			}
		}
		return Row{"", "", true, "800 ramps"};
	});

	using wiener::Cylinder;
	const auto half_up = IntervalUnion::interval(0, ExtReal::pos_inf());
	run("wiener", "normalization", [&] {
		double v = wiener::quadrature(Cylinder::whole()).value;
		double h = wiener::quadrature(Cylinder({0, 1}, {half_up})).value;
		return Row{"", "", std::abs(v - 1) < 1e-8 && std::abs(h - 0.5) < 1e-8, detail::str(v) + ", " + detail::str(h)};
	});

	const Cylinder orthant({0, Rational(1, 2), 1}, {half_up, half_up});
	run("wiener", "orthant_quadrature", [&] {
		double v = wiener::quadrature(orthant).value;
		return Row{"", "", std::abs(v - 0.375) < 1e-4, detail::str(v)};
	});

	run("wiener", "orthant_monte_carlo", [&] {
		auto e = wiener::monte_carlo(orthant, quick ? 100000 : 1000000, seed);
		return Row{"", "", std::abs(e.value - 0.375) <= 3 * e.error,
		           detail::str(e.value) + " +- " + detail::str(e.error)};
	});

	run("wiener", "unnormalized_kernel_mass", [&] {
		double v = wiener::quadrature(Cylinder::whole(), wiener::Kernel::Paper).value;
		return Row{"", "", std::abs(v - 1 / std::sqrt(2.0)) < 1e-8, detail::str(v)};
	});

	using namespace dirichlet;
	const Domain disk = Domain::disk(quick ? 1.0 / 64 : 1.0 / 128);
	run("dirichlet", "constant_data", [&] {
		Gen g(seed ^ 0x71);
		double worst = 0;
		for (int i = 0; i < 10; ++i) {
			double r = 0.99 * std::sqrt(g.real(0, 1)), a = g.real(0, 2 * M_PI);
			worst = std::max(worst, std::abs(ix_eval(disk, {r * std::cos(a), r * std::sin(a)},
			                                         BoundaryFunction::constant(1)).value - 1));
		}
		return Row{"", "", worst < 1e-6, "max error " + detail::str(worst)};
	});

	run("dirichlet", "arc_fraction_at_centre", [&] {
		const double lo = 0, hi = M_PI / 3;
		auto r = extend_boundary(disk, {0, 0}, arc_ramps_below(lo, hi, 2 * M_PI), arc_ramps_above(lo, hi, 2 * M_PI),
		                         1024, 1e-2);
		return Row{"", "", std::abs(r.value - 1.0 / 6) < 1e-3, detail::str(r.value)};
	});

	run("dirichlet", "maximum_principle", [&] {
		Gen g(seed ^ 0x72);
		int n = quick ? 10 : 50;
		for (int c = 0; c < n; ++c) {
			double a1 = g.real(-1, 1), b2 = g.real(-1, 1), c0 = g.real(-1, 1);
			BoundaryFunction bf([=](double t) { return c0 + a1 * std::cos(t) + b2 * std::sin(2 * t); }, "trig");
			auto f = solve_dirichlet(disk, bf);
			if (f.interior_max() > f.boundary_max + 1e-8 || f.interior_min() < f.boundary_min - 1e-8) {
				return Row{"", "", false, "case " + std::to_string(c)};
			}
		}
		return Row{"", "", true, std::to_string(n) + " boundary functions"};
	});

	return rows;
}

} // namespace daniell::verify

#endif // DANIELL_TOOLS_VERIFY_HPP
