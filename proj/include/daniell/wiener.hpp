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

#ifndef DANIELL_WIENER_HPP
#define DANIELL_WIENER_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "daniell/random.hpp"
#include "daniell/rings.hpp"

namespace daniell::wiener {

/// Transition kernel. Standard: exp(-dx^2/(2 dt))/sqrt(2 pi dt), a
/// probability density. Paper: exp(-dx^2/dt)/sqrt(2 pi dt), which integrates
/// to 1/sqrt(2) per time step.
enum class Kernel { Standard, Paper };

enum class Method { Quadrature, MonteCarlo };

inline std::string to_string(Kernel k) { return k == Kernel::Standard ? "standard" : "paper"; }
inline std::string to_string(Method m) { return m == Method::Quadrature ? "quadrature" : "mc"; }

struct Estimate {
	double value = 0;
	double error = 0;          // quadrature error bound or Monte-Carlo standard error
	Method method = Method::Quadrature;
	std::uint64_t paths = 0;   // Monte-Carlo sample size
};

struct QuadratureConfig {
	double tol = 1e-10;
	unsigned max_depth = 15;
};

namespace detail {

inline double variance_scale(Kernel k) { return k == Kernel::Standard ? 1.0 : 0.5; }

/// Per-time prefactor of Kernel::Paper relative to the Gaussian with
/// variance dt/2.
inline double kernel_mass(Kernel k, std::size_t times) {
	return k == Kernel::Standard ? 1.0 : std::pow(std::sqrt(0.5), static_cast<double>(times));
}

inline double upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

/// P(a <= X < b) for X ~ N(mean, var), stable in both tails.
inline double normal_mass(double a, double b, double mean, double var) {
	double sd = std::sqrt(var);
	double za = (a - mean) / sd;
	double zb = (b - mean) / sd;
	if (za >= 0) {
		return upper_tail(za) - upper_tail(zb);
	}
	if (zb <= 0) {
		return upper_tail(-zb) - upper_tail(-za);
	}
	return 1.0 - upper_tail(-za) - upper_tail(zb);
}

inline double normal_mass(const IntervalUnion &c, double mean, double var) {
	double total = 0;
	for (const auto &iv : c.pieces()) {
		total += normal_mass(iv.lo.to_double(), iv.hi.to_double(), mean, var);
	}
	return total;
}

inline double normal_density(double x, double var) {
	return std::exp(-x * x / (2 * var)) / std::sqrt(2 * M_PI * var);
}

/// Constrained times and sets after dropping whole-line slots.
struct Constraints {
	std::vector<double> times;
	std::vector<IntervalUnion> sets;
};

inline Constraints effective(const Cylinder &d) {
	Constraints c;
	const IntervalUnion whole = IntervalUnion::whole_line();
	for (std::size_t i = 0; i < d.size(); ++i) {
		if (!(d.sets()[i] == whole)) {
			c.times.push_back(to_double(d.times()[i + 1]));
			c.sets.push_back(d.sets()[i]);
		}
	}
	return c;
}

/// Nested quadrature over the constrained times, innermost variable first.
class Nested {
public:
	Nested(Constraints c, double scale, const QuadratureConfig &cfg) : c_(std::move(c)), scale_(scale), cfg_(cfg) {}

	double value() {
		const std::size_t m = c_.times.size();
		if (m == 0) {
			return 1.0;
		}
		if (m == 1) {
			return normal_mass(c_.sets[0], 0.0, scale_ * c_.times[0]);
		}
		return integrate_over(m - 1, [this, m](double x) { return g(m - 1, x); }, std::nullopt);
	}

	double error() const { return outer_error_ + inner_error_; }

private:
	// g(k, y): joint density of the constrained prefix with x_k = y (0-based k >= 1)
	double g(std::size_t k, double y) {
		const double sk = c_.times[k];
		const double dk = sk - c_.times[k - 1];
		if (k == 1) {
			const double s1 = c_.times[0];
			return normal_density(y, scale_ * sk) * normal_mass(c_.sets[0], s1 / sk * y, scale_ * s1 * dk / sk);
		}
		const double var = scale_ * dk;
		return integrate_over(k - 1, [this, k, y, var](double x) { return g(k - 1, x) * normal_density(y - x, var); }, y);
	}

	template <class F>
	double integrate_over(std::size_t k, F f, std::optional<double> centre) {
		using boost::math::quadrature::gauss_kronrod;
		const double sd = std::sqrt(scale_ * c_.times[k]);
		std::vector<double> cuts;
		for (double m : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
			cuts.push_back(m * sd);
			if (centre) {
				cuts.push_back(*centre + m * std::sqrt(scale_ * (c_.times[k + 1] - c_.times[k])));
			}
		}
		std::sort(cuts.begin(), cuts.end());
		double total = 0;
		double err_total = 0;
		for (const auto &iv : c_.sets[k].pieces()) {
			std::vector<double> pts{iv.lo.to_double()};
			for (double p : cuts) {
				if (p > pts.front() && p < iv.hi.to_double()) {
					pts.push_back(p);
				}
			}
			pts.push_back(iv.hi.to_double());
			for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
				double err = 0;
				total += gauss_kronrod<double, 15>::integrate(f, pts[i], pts[i + 1], cfg_.max_depth, cfg_.tol * 1e-2,
				                                              &err);
				err_total += err;
			}
		}
		if (k + 1 == c_.times.size()) {
			outer_error_ += err_total;
		} else {
			inner_error_ = std::max(inner_error_, err_total);
		}
		return total;
	}

	Constraints c_;
	double scale_;
	QuadratureConfig cfg_;
	double outer_error_ = 0;
	double inner_error_ = 0;
};

} // namespace detail

/// Probability that a Brownian path lies in d, by iterated quadrature.
/// Whole-line slots are integrated out exactly (Chapman-Kolmogorov); the
/// earliest constrained time is integrated in closed form.
inline Estimate quadrature(const Cylinder &d, Kernel kernel = Kernel::Standard, const QuadratureConfig &cfg = {}) {
	if (!(cfg.tol > 0)) {
		throw DomainError("quadrature tolerance must be positive");
	}
	if (d.empty()) {
		return Estimate{0, 0, Method::Quadrature, 0};
	}
	detail::Nested nested(detail::effective(d), detail::variance_scale(kernel), cfg);
	const double mass = detail::kernel_mass(kernel, d.size());
	double v = nested.value();
	// rounding puts a floor under any certified error
	double err = std::max(nested.error(), 4 * std::numeric_limits<double>::epsilon());
	if (err > cfg.tol) {
		std::ostringstream msg;
		msg << "quadrature error " << err << " above tolerance " << cfg.tol;
		throw ToleranceError(msg.str(), err);
	}
	return Estimate{mass * v, mass * err, Method::Quadrature, 0};
}

/// count x n matrix of (W_{t_1}, ..., W_{t_n}) for the given times (t_0 = 0
/// excluded). Increments have variance dt (dt/2 for Kernel::Paper).
inline Eigen::MatrixXd sample_paths(const std::vector<Rational> &times, std::uint64_t count, std::uint64_t seed,
                                    Kernel kernel = Kernel::Standard) {
	if (count < 1) {
		throw DomainError("sample_paths needs count >= 1");
	}
	std::vector<double> sd;
	double prev = 0;
	for (const auto &t : times) {
		double x = to_double(t);
		if (!(x > prev)) {
			throw DomainError("sample times must increase strictly from 0");
		}
		sd.push_back(std::sqrt(detail::variance_scale(kernel) * (x - prev)));
		prev = x;
	}
	Eigen::MatrixXd out(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(times.size()));
	daniell::detail::for_batches(count, seed, [&](std::uint64_t b, std::mt19937_64 &rng, std::uint64_t rows) {
		std::normal_distribution<double> z;
		for (std::uint64_t r = 0; r < rows; ++r) {
			auto row = static_cast<Eigen::Index>(b * daniell::detail::kBatch + r);
			double w = 0;
			for (std::size_t j = 0; j < sd.size(); ++j) {
				w += sd[j] * z(rng);
				out(row, static_cast<Eigen::Index>(j)) = w;
			}
		}
	});
	return out;
}

/// Monte-Carlo estimate of the measure of a disjoint cylinder family; the
/// paths are simulated on the union of all partitions.
inline Estimate monte_carlo(const CylinderFamily &fam, std::uint64_t paths, std::uint64_t seed,
                            Kernel kernel = Kernel::Standard) {
	if (paths < 2) {
		throw DomainError("Monte Carlo needs at least 2 paths");
	}
	std::vector<Rational> grid{Rational(0), Rational(1)};
	for (const auto &d : fam.members()) {
		grid = merge_partitions(grid, d.times());
	}
	// members as per-slot lists of [lo, hi) in double precision
	using Slots = std::vector<std::vector<std::pair<double, double>>>;
	std::vector<Slots> refined;
	for (const auto &d : fam.members()) {
		Slots slots;
		const Cylinder r = d.refine(grid);
		for (const auto &set : r.sets()) {
			std::vector<std::pair<double, double>> ivs;
			for (const auto &iv : set.pieces()) {
				ivs.emplace_back(iv.lo.to_double(), iv.hi.to_double());
			}
			slots.push_back(std::move(ivs));
		}
		refined.push_back(std::move(slots));
	}
	auto in_slot = [](const std::vector<std::pair<double, double>> &ivs, double x) {
		for (const auto &[lo, hi] : ivs) {
			if (lo <= x && x < hi) {
				return true;
			}
		}
		return false;
	};
	std::vector<double> sd;
	for (std::size_t i = 1; i < grid.size(); ++i) {
		sd.push_back(std::sqrt(detail::variance_scale(kernel) * to_double(Rational(grid[i] - grid[i - 1]))));
	}
	const std::uint64_t batches = (paths + daniell::detail::kBatch - 1) / daniell::detail::kBatch;
	std::vector<std::uint64_t> hits(batches, 0);
	daniell::detail::for_batches(paths, seed, [&](std::uint64_t b, std::mt19937_64 &rng, std::uint64_t rows) {
		std::normal_distribution<double> z;
		std::vector<double> w(sd.size());
		std::uint64_t h = 0;
		for (std::uint64_t r = 0; r < rows; ++r) {
			double x = 0;
			for (std::size_t j = 0; j < sd.size(); ++j) {
				x += sd[j] * z(rng);
				w[j] = x;
			}
			for (const auto &d : refined) {
				bool in = true;
				for (std::size_t j = 0; j < w.size() && in; ++j) {
					in = in_slot(d[j], w[j]);
				}
				if (in) {
					++h;
					break; // members are disjoint
				}
			}
		}
		hits[b] = h;
	});
	std::uint64_t total = 0;
	for (auto h : hits) {
		total += h;
	}
	const double n = static_cast<double>(paths);
	const double p = static_cast<double>(total) / n;
	double mass = 1.0;
	if (kernel == Kernel::Paper) {
		// each member carries the prefactor of its own partition size
		if (fam.members().size() > 1) {
			throw DomainError("Monte Carlo with --kernel paper is defined for single cylinders");
		}
		if (!fam.members().empty()) {
			mass = detail::kernel_mass(kernel, fam.members().front().size());
		}
	}
	return Estimate{mass * p, mass * std::sqrt(std::max(p * (1 - p), 1.0 / n) / n), Method::MonteCarlo, paths};
}

inline Estimate monte_carlo(const Cylinder &d, std::uint64_t paths, std::uint64_t seed, Kernel kernel = Kernel::Standard) {
	return monte_carlo(CylinderFamily(d), paths, seed, kernel);
}

/// The Wiener pre-measure of a cylinder by either method.
inline Estimate wiener_premeasure(const Cylinder &d, Method method, double tol, std::uint64_t seed = 0,
                                  std::uint64_t paths = 1000000, Kernel kernel = Kernel::Standard) {
	if (!(tol > 0)) {
		throw DomainError("tolerance must be positive");
	}
	if (method == Method::Quadrature) {
		return quadrature(d, kernel, QuadratureConfig{tol});
	}
	return monte_carlo(d, paths, seed, kernel);
}

/// Sum of member quadratures for a disjoint family.
inline Estimate quadrature(const CylinderFamily &fam, Kernel kernel = Kernel::Standard, const QuadratureConfig &cfg = {}) {
	Estimate e{0, 0, Method::Quadrature, 0};
	for (const auto &d : fam.members()) {
		auto m = quadrature(d, kernel, cfg);
		e.value += m.value;
		e.error += m.error;
	}
	return e;
}

/// The Wiener pre-measure on the cylinder ring as a numeric PreMeasure.
inline PreMeasure premeasure(Kernel kernel = Kernel::Standard, const QuadratureConfig &cfg = {}) {
	return PreMeasure::numeric(
	    Universe::path_space(), [kernel, cfg](const RingSet &e) { return quadrature(e.family(), kernel, cfg).value; },
	    cfg.tol, kernel == Kernel::Standard ? "wiener" : "wiener-paper-kernel");
}

} // namespace daniell::wiener

#endif // DANIELL_WIENER_HPP
