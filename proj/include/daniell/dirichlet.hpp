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

#ifndef DANIELL_DIRICHLET_HPP
#define DANIELL_DIRICHLET_HPP

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "daniell/functional.hpp"
#include "daniell/random.hpp"

namespace daniell::dirichlet {

struct Point2 {
	double x = 0;
	double y = 0;
};

enum class Shape { UnitDisk, UnitSquare };

inline std::string to_string(Shape s) { return s == Shape::UnitDisk ? "disk" : "square"; }

/// The unit disk centred at the origin or the square [0,1]^2, with grid
/// spacing h. The boundary is parameterized by angle (disk, period 2 pi) or
/// by arc length counter-clockwise from the origin (square, period 4).
class Domain {
public:
	Domain(Shape shape, double h = 1.0 / 128) : shape_(shape), h_(h) {
		if (!(h > 0) || h > 0.25) {
			throw DomainError("grid spacing must lie in (0, 1/4]");
		}
		double n = (shape == Shape::UnitDisk ? 2.0 : 1.0) / h;
		if (std::abs(n - std::round(n)) > 1e-9) {
			throw DomainError("grid spacing must divide the domain width");
		}
	}

	static Domain disk(double h = 1.0 / 128) { return Domain(Shape::UnitDisk, h); }
	static Domain square(double h = 1.0 / 128) { return Domain(Shape::UnitSquare, h); }

	Shape shape() const noexcept { return shape_; }
	double h() const noexcept { return h_; }
	double period() const noexcept { return shape_ == Shape::UnitDisk ? 2 * M_PI : 4.0; }

	bool interior(Point2 p) const {
		if (shape_ == Shape::UnitDisk) {
			return p.x * p.x + p.y * p.y < 1.0;
		}
		return p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1;
	}

	double distance_to_boundary(Point2 p) const {
		if (shape_ == Shape::UnitDisk) {
			return 1.0 - std::hypot(p.x, p.y);
		}
		return std::min({p.x, 1 - p.x, p.y, 1 - p.y});
	}

	double wrap(double t) const {
		double T = period();
		t = std::fmod(t, T);
		return t < 0 ? t + T : t;
	}

	Point2 point_at(double t) const {
		t = wrap(t);
		if (shape_ == Shape::UnitDisk) {
			return {std::cos(t), std::sin(t)};
		}
		if (t < 1) {
			return {t, 0};
		}
		if (t < 2) {
			return {1, t - 1};
		}
		if (t < 3) {
			return {3 - t, 1};
		}
		return {0, 4 - t};
	}

	/// Parameter of the boundary point nearest to p.
	double param_of(Point2 p) const {
		if (shape_ == Shape::UnitDisk) {
			return wrap(std::atan2(p.y, p.x));
		}
		double x = std::clamp(p.x, 0.0, 1.0), y = std::clamp(p.y, 0.0, 1.0);
		double d[4] = {y, 1 - x, 1 - y, x};
		int side = static_cast<int>(std::min_element(d, d + 4) - d);
		switch (side) {
		case 0:
			return x;
		case 1:
			return 1 + y;
		case 2:
			return 3 - x;
		default:
			return wrap(4 - y);
		}
	}

	/// Lower-left grid corner and node count per side.
	double origin() const { return shape_ == Shape::UnitDisk ? -1.0 : 0.0; }
	int nodes_per_side() const {
		return static_cast<int>(std::lround((shape_ == Shape::UnitDisk ? 2.0 : 1.0) / h_)) + 1;
	}

	friend bool operator<(const Domain &a, const Domain &b) {
		return std::tie(a.shape_, a.h_) < std::tie(b.shape_, b.h_);
	}

private:
	Shape shape_;
	double h_;
};

/// Boundary data g: boundary parameter -> R.
class BoundaryFunction {
public:
	enum class Kind { Continuous, ArcIndicator };
	using Rule = std::function<double(double)>;

	BoundaryFunction(Rule rule, std::string name = "g", Kind kind = Kind::Continuous)
	    : rule_(std::move(rule)), name_(std::move(name)), kind_(kind) {}

	static BoundaryFunction constant(double c) {
		return BoundaryFunction([c](double) { return c; }, "const(" + std::to_string(c) + ")");
	}

	/// cos of the parameter (the disk's cos theta).
	static BoundaryFunction cosine(int k = 1) {
		return BoundaryFunction([k](double t) { return std::cos(k * t); }, "cos(" + std::to_string(k) + "t)");
	}

	/// Indicator of the arc [lo, hi) taken modulo the period.
	static BoundaryFunction arc(double lo, double hi, double period) {
		if (!(hi > lo) || hi - lo > period) {
			throw DomainError("arc needs lo < hi <= lo + period");
		}
		BoundaryFunction f(
		    [lo, hi, period](double t) {
			    double s = std::fmod(t - lo, period);
			    if (s < 0) {
				    s += period;
			    }
			    return s < hi - lo ? 1.0 : 0.0;
		    },
		    "arc", Kind::ArcIndicator);
		f.arc_ = std::make_pair(lo, hi);
		return f;
	}

	double operator()(double t) const { return rule_(t); }
	const std::string &name() const noexcept { return name_; }
	Kind kind() const noexcept { return kind_; }
	const std::optional<std::pair<double, double>> &arc_endpoints() const noexcept { return arc_; }
	bool continuous() const noexcept { return kind_ == Kind::Continuous; }

	friend BoundaryFunction operator+(const BoundaryFunction &f, const BoundaryFunction &g) {
		return BoundaryFunction([a = f.rule_, b = g.rule_](double t) { return a(t) + b(t); },
		                        f.name_ + "+" + g.name_, combined(f, g));
	}
	friend BoundaryFunction operator*(double c, const BoundaryFunction &f) {
		return BoundaryFunction([c, a = f.rule_](double t) { return c * a(t); }, std::to_string(c) + "*" + f.name_,
		                        f.kind_);
	}
	friend BoundaryFunction meet(const BoundaryFunction &f, const BoundaryFunction &g) {
		return BoundaryFunction([a = f.rule_, b = g.rule_](double t) { return std::min(a(t), b(t)); },
		                        "min(" + f.name_ + "," + g.name_ + ")", combined(f, g));
	}
	friend BoundaryFunction join(const BoundaryFunction &f, const BoundaryFunction &g) {
		return BoundaryFunction([a = f.rule_, b = g.rule_](double t) { return std::max(a(t), b(t)); },
		                        "max(" + f.name_ + "," + g.name_ + ")", combined(f, g));
	}
	friend BoundaryFunction abs(const BoundaryFunction &f) {
		return BoundaryFunction([a = f.rule_](double t) { return std::abs(a(t)); }, "|" + f.name_ + "|", f.kind_);
	}

private:
	static Kind combined(const BoundaryFunction &f, const BoundaryFunction &g) {
		return f.continuous() && g.continuous() ? Kind::Continuous : Kind::ArcIndicator;
	}

	Rule rule_;
	std::string name_;
	Kind kind_;
	std::optional<std::pair<double, double>> arc_;
};

BoundaryFunction meet(const BoundaryFunction &f, const BoundaryFunction &g);
BoundaryFunction join(const BoundaryFunction &f, const BoundaryFunction &g);
BoundaryFunction abs(const BoundaryFunction &f);

/// Continuous approximants of the indicator of [lo, hi): ramps of width w_n
/// inside the arc (from below) or outside it (from above), with
/// w_n = min(L, period - L) / (2n), L = hi - lo.
inline BoundaryFunction arc_ramp(double lo, double hi, double period, int n, bool from_above) {
	if (n < 1) {
		throw DomainError("ramp index must be >= 1");
	}
	const double L = hi - lo;
	if (!(L > 0) || L >= period) {
		throw DomainError("ramp needs a proper arc");
	}
	const double w = std::min(L, period - L) / (2.0 * n);
	// the distance from t to the arc's edge does not depend on n, so
	// monotonicity in n survives rounding
	return BoundaryFunction(
	    [lo, L, w, period, from_above](double t) {
		    double s = std::fmod(t - lo, period);
		    if (s < 0) {
			    s += period;
		    }
		    if (s <= L) {
			    return from_above ? 1.0 : std::min(1.0, std::min(s, L - s) / w);
		    }
		    return from_above ? std::max(0.0, 1.0 - std::min(s - L, period - s) / w) : 0.0;
	    },
	    std::string(from_above ? "ramp_above" : "ramp_below") + "(" + std::to_string(n) + ")");
}

/// Boundary-probe grid used for pointwise comparisons.
inline std::vector<double> boundary_probes(const Domain &dom, int count = 4096) {
	std::vector<double> t;
	for (int i = 0; i < count; ++i) {
		t.push_back(dom.period() * (i + 0.5) / count);
	}
	return t;
}

} // namespace daniell::dirichlet

namespace daniell {

/// Pointwise comparisons of boundary data are made on a fixed probe grid of
/// the unit-circle parameter (4096 points); the functions are only known
/// through evaluation.
template <>
struct T0Traits<dirichlet::BoundaryFunction> {
	using F = dirichlet::BoundaryFunction;
	static F add(const F &x, const F &y) { return x + y; }
	static F scale(const Rational &c, const F &x) { return to_double(c) * x; }
	static F abs(const F &x) { return dirichlet::abs(x); }
	static F positive_part(const F &x) { return dirichlet::join(x, F::constant(0)); }

	static std::optional<std::string> le_violation(const F &x, const F &y) {
		for (double t : probes()) {
			if (x(t) > y(t) + 1e-15) {
				return "theta=" + std::to_string(t);
			}
		}
		return std::nullopt;
	}
	static std::optional<std::string> negative_point(const F &x) { return le_violation(F::constant(0), x); }
	static std::string show(const F &x) { return x.name(); }

	static const std::vector<double> &probes() {
		static const std::vector<double> p = [] {
			std::vector<double> t;
			for (int i = 0; i < 4096; ++i) {
				t.push_back(2 * M_PI * i / 4096.0);
			}
			return t;
		}();
		return p;
	}
};

} // namespace daniell

namespace daniell::dirichlet {

/// Ramps increasing to the arc indicator.
inline MonotoneSequence<BoundaryFunction> arc_ramps_below(double lo, double hi, double period) {
	return MonotoneSequence<BoundaryFunction>([=](int n) { return arc_ramp(lo, hi, period, n, false); },
	                                          Direction::Increasing, "ramp_below");
}

/// Ramps decreasing to the closed-arc indicator.
inline MonotoneSequence<BoundaryFunction> arc_ramps_above(double lo, double hi, double period) {
	return MonotoneSequence<BoundaryFunction>([=](int n) { return arc_ramp(lo, hi, period, n, true); },
	                                          Direction::Decreasing, "ramp_above");
}

/// A grid solution: values at all nodes (boundary-adjacent exterior nodes
/// carry the boundary value of their projection).
struct HarmonicField {
	Domain domain;
	std::vector<double> values; // row-major nodes_per_side^2
	std::vector<char> is_interior;
	double residual = 0;        // max |A u - b| * h^2
	double boundary_min = 0;
	double boundary_max = 0;

	double node(int i, int j) const {
		return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(domain.nodes_per_side()) +
		              static_cast<std::size_t>(i)];
	}

	/// Bilinear interpolation of the node values.
	double at(Point2 p) const {
		const double h = domain.h();
		const int n = domain.nodes_per_side();
		double fx = (p.x - domain.origin()) / h;
		double fy = (p.y - domain.origin()) / h;
		int i = std::clamp(static_cast<int>(std::floor(fx)), 0, n - 2);
		int j = std::clamp(static_cast<int>(std::floor(fy)), 0, n - 2);
		double sx = fx - i, sy = fy - j;
		return (1 - sx) * (1 - sy) * node(i, j) + sx * (1 - sy) * node(i + 1, j) + (1 - sx) * sy * node(i, j + 1) +
		       sx * sy * node(i + 1, j + 1);
	}

	double interior_max() const { return extreme(true); }
	double interior_min() const { return extreme(false); }

private:
	double extreme(bool want_max) const {
		double best = want_max ? -HUGE_VAL : HUGE_VAL;
		for (std::size_t k = 0; k < values.size(); ++k) {
			if (is_interior[k]) {
				best = want_max ? std::max(best, values[k]) : std::min(best, values[k]);
			}
		}
		return best;
	}
};

/// The 5-point Laplacian with Shortley-Weller arms at the curved boundary,
/// factored once. Boundary values are averages of g over a window of
/// half-width h/2 in the boundary parameter (composite Simpson), so steep
/// continuous data is seen at the resolution of the grid.
class GridSolver {
public:
	explicit GridSolver(Domain dom) : dom_(dom) { assemble(); }

	/// Shared, factored solver per (shape, h).
	static std::shared_ptr<const GridSolver> shared(const Domain &dom) {
		static std::mutex mu;
		static std::map<Domain, std::shared_ptr<const GridSolver>> cache;
		std::lock_guard<std::mutex> lock(mu);
		auto it = cache.find(dom);
		if (it == cache.end()) {
			it = cache.emplace(dom, std::make_shared<GridSolver>(dom)).first;
		}
		return it->second;
	}

	const Domain &domain() const noexcept { return dom_; }
	std::size_t unknowns() const noexcept { return index_.size(); }

	HarmonicField solve(const BoundaryFunction &g, double tol = 1e-8) const {
		std::vector<double> bvals(arms_.size());
		double bmin = HUGE_VAL, bmax = -HUGE_VAL;
		for (std::size_t k = 0; k < arms_.size(); ++k) {
			bvals[k] = window_average(g, arms_[k].param);
			bmin = std::min(bmin, bvals[k]);
			bmax = std::max(bmax, bvals[k]);
		}
		Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(index_.size()));
		for (std::size_t k = 0; k < arms_.size(); ++k) {
			rhs(arms_[k].row) -= arms_[k].coeff * bvals[k];
		}
		Eigen::VectorXd u = lu_.solve(rhs);
		if (lu_.info() != Eigen::Success) {
			throw InvariantError("sparse LU solve failed");
		}
		HarmonicField f{dom_, {}, {}, 0, bmin, bmax};
		const double h2 = dom_.h() * dom_.h();
		f.residual = ((A_ * u - rhs).cwiseAbs().maxCoeff()) * h2;
		if (!(f.residual < tol)) {
			throw ToleranceError("grid residual above tolerance", f.residual);
		}
		f.values.assign(node_row_.size(), 0.0);
		f.is_interior.assign(f.values.size(), 0);
		for (std::size_t k = 0; k < node_row_.size(); ++k) {
			if (node_row_[k] >= 0) {
				f.values[k] = u(node_row_[k]);
				f.is_interior[k] = 1;
			}
		}
		for (const auto &[k, t] : halo_) {
			f.values[k] = window_average(g, t);
		}
		return f;
	}

private:
	struct Arm {
		Eigen::Index row;
		double coeff;
		double param;
	};

	Point2 node_point(int i, int j) const { return {dom_.origin() + i * dom_.h(), dom_.origin() + j * dom_.h()}; }

	double window_average(const BoundaryFunction &g, double t) const {
		constexpr int m = 8; // Simpson subintervals
		const double half = dom_.h() / 2;
		const double step = 2 * half / m;
		double s = 0;
		for (int k = 0; k <= m; ++k) {
			double w = (k == 0 || k == m) ? 1 : (k % 2 ? 4 : 2);
			s += w * g(dom_.wrap(t - half + k * step));
		}
		return s * step / 3 / (2 * half);
	}

	// distance along +-x or +-y from p to the boundary, capped at h
	double arm_length(Point2 p, int dx, int dy) const {
		const double h = dom_.h();
		Point2 q{p.x + dx * h, p.y + dy * h};
		if (dom_.interior(q)) {
			return h;
		}
		if (dom_.shape() == Shape::UnitSquare) {
			return h; // grid lines hit the square's sides at nodes
		}
		if (dx != 0) {
			double xb = std::sqrt(std::max(0.0, 1 - p.y * p.y));
			return std::min(h, dx > 0 ? xb - p.x : p.x + xb);
		}
		double yb = std::sqrt(std::max(0.0, 1 - p.x * p.x));
		return std::min(h, dy > 0 ? yb - p.y : p.y + yb);
	}

	void assemble() {
		const int n = dom_.nodes_per_side();
		const double h = dom_.h();
		node_row_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
		for (int j = 0; j < n; ++j) {
			for (int i = 0; i < n; ++i) {
				Point2 p = node_point(i, j);
				// nodes within 1e-3 h of the circle are treated as boundary
				if (dom_.interior(p) && dom_.distance_to_boundary(p) > 1e-3 * h) {
					node_row_[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
					    static_cast<Eigen::Index>(index_.size());
					index_.push_back({i, j});
				}
			}
		}
		std::vector<Eigen::Triplet<double>> trip;
		const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
		for (std::size_t r = 0; r < index_.size(); ++r) {
			auto [i, j] = index_[r];
			Point2 p = node_point(i, j);
			double len[4];
			for (int d = 0; d < 4; ++d) {
				len[d] = arm_length(p, dirs[d][0], dirs[d][1]);
			}
			double centre = 0;
			for (int d = 0; d < 4; ++d) {
				double other = len[d ^ 1];
				double c = 2.0 / (len[d] * (len[d] + other));
				centre -= c;
				int ni = i + dirs[d][0], nj = j + dirs[d][1];
				Eigen::Index nb = -1;
				if (len[d] == h && ni >= 0 && nj >= 0 && ni < n && nj < n) {
					nb = node_row_[static_cast<std::size_t>(nj) * static_cast<std::size_t>(n) + static_cast<std::size_t>(ni)];
				}
				if (nb >= 0) {
					trip.emplace_back(static_cast<Eigen::Index>(r), nb, c);
				} else {
					Point2 b{p.x + dirs[d][0] * len[d], p.y + dirs[d][1] * len[d]};
					arms_.push_back(Arm{static_cast<Eigen::Index>(r), c, dom_.param_of(b)});
				}
			}
			trip.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r), centre);
		}
		// exterior nodes next to the domain carry g at their projection, for
		// interpolation near the boundary; nodes further out stay 0
		for (int j = 0; j < n; ++j) {
			for (int i = 0; i < n; ++i) {
				const auto k = static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
				if (node_row_[k] >= 0) {
					continue;
				}
				bool near = false;
				for (int dj = -1; dj <= 1; ++dj) {
					for (int di = -1; di <= 1; ++di) {
						int a = i + di, b = j + dj;
						near = near || (a >= 0 && b >= 0 && a < n && b < n &&
						                node_row_[static_cast<std::size_t>(b) * static_cast<std::size_t>(n) +
						                          static_cast<std::size_t>(a)] >= 0);
					}
				}
				if (near) {
					halo_.emplace_back(k, dom_.param_of(node_point(i, j)));
				}
			}
		}
		const auto m = static_cast<Eigen::Index>(index_.size());
		A_.resize(m, m);
		A_.setFromTriplets(trip.begin(), trip.end());
		A_.makeCompressed();
		lu_.analyzePattern(A_);
		lu_.factorize(A_);
		if (lu_.info() != Eigen::Success) {
			throw InvariantError("sparse LU factorization failed");
		}
	}

	Domain dom_;
	std::vector<std::pair<int, int>> index_;
	std::vector<Eigen::Index> node_row_;
	std::vector<Arm> arms_;
	std::vector<std::pair<std::size_t, double>> halo_;
	Eigen::SparseMatrix<double> A_;
	Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
};

/// Boundary exit points of independent walks on spheres from x. Any boundary
/// function is then estimated on the same walks (common random numbers).
class WalkOnSpheres {
public:
	WalkOnSpheres(const Domain &dom, Point2 x, std::uint64_t walks, std::uint64_t seed, double eps = 1e-6)
	    : dom_(dom), x_(x), seed_(seed), eps_(eps) {
		if (!dom.interior(x)) {
			throw DomainError("walks must start strictly inside the domain");
		}
		if (walks < 2) {
			throw DomainError("need at least 2 walks");
		}
		exits_.resize(walks);
		daniell::detail::for_batches(walks, seed, [&](std::uint64_t b, std::mt19937_64 &rng, std::uint64_t rows) {
			std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
			for (std::uint64_t r = 0; r < rows; ++r) {
				Point2 p = x_;
				for (int step = 0; step < 100000; ++step) {
					double d = dom_.distance_to_boundary(p);
					if (d < eps_) {
						break;
					}
					double a = angle(rng);
					p = {p.x + d * std::cos(a), p.y + d * std::sin(a)};
				}
				exits_[b * daniell::detail::kBatch + r] = dom_.param_of(p);
			}
		});
	}

	std::uint64_t walks() const noexcept { return exits_.size(); }
	std::uint64_t seed() const noexcept { return seed_; }
	double eps() const noexcept { return eps_; }
	const std::vector<double> &exits() const noexcept { return exits_; }

	/// Sample mean of g at the exit points and its standard error.
	std::pair<double, double> estimate(const BoundaryFunction &g) const {
		double mean = 0, m2 = 0;
		std::uint64_t k = 0;
		for (double t : exits_) {
			double v = g(t);
			++k;
			double d = v - mean;
			mean += d / static_cast<double>(k);
			m2 += d * (v - mean);
		}
		double var = m2 / static_cast<double>(k - 1);
		return {mean, std::sqrt(var / static_cast<double>(k))};
	}

private:
	Domain dom_;
	Point2 x_;
	std::uint64_t seed_;
	double eps_;
	std::vector<double> exits_;
};

enum class Solver { Grid, WalkOnSpheres };

inline std::string to_string(Solver s) { return s == Solver::Grid ? "grid" : "wos"; }

struct SolverConfig {
	Solver solver = Solver::Grid;
	double tol = 1e-8;           // grid residual bound
	std::uint64_t walks = 100000;
	std::uint64_t seed = 0;
	double eps = 1e-6;
};

struct IxResult {
	double value = 0;
	double stderr_ = 0;   // walk-on-spheres standard error
	double residual = 0;  // grid residual
	Solver solver = Solver::Grid;
};

/// Solves the Dirichlet problem for continuous g on the grid.
inline HarmonicField solve_dirichlet(const Domain &dom, const BoundaryFunction &g, double tol = 1e-8) {
	if (!g.continuous()) {
		throw DomainError("discontinuous boundary data must go through extend_boundary");
	}
	return GridSolver::shared(dom)->solve(g, tol);
}

/// I_x(g) = u_g(x).
inline IxResult ix_eval(const Domain &dom, Point2 x, const BoundaryFunction &g, const SolverConfig &cfg = {}) {
	if (!dom.interior(x)) {
		throw DomainError("I_x needs an interior point");
	}
	if (!g.continuous()) {
		throw DomainError("discontinuous boundary data must go through extend_boundary");
	}
	if (cfg.solver == Solver::Grid) {
		auto f = solve_dirichlet(dom, g, cfg.tol);
		return IxResult{f.at(x), 0, f.residual, Solver::Grid};
	}
	WalkOnSpheres w(dom, x, cfg.walks, cfg.seed, cfg.eps);
	auto [v, se] = w.estimate(g);
	return IxResult{v, se, 0, Solver::WalkOnSpheres};
}

struct ExtensionResult {
	double value = 0;        // I_x(f_depth) from below
	double lower = 0;
	double upper = 0;
	double harnack_gap = 0;  // upper - lower at x
	int depth = 0;
	bool certified = false;  // upper comes from a sequence above
	std::vector<int> schedule;
	std::vector<double> below;
	std::vector<double> above;
};

namespace detail {

inline std::vector<int> geometric_schedule(int depth) {
	std::vector<int> s;
	for (int n = 1; n < depth; n *= 2) {
		s.push_back(n);
	}
	s.push_back(depth);
	return s;
}

inline void certify_on(const MonotoneSequence<BoundaryFunction> &seq, const std::vector<int> &schedule) {
	for (std::size_t k = 1; k < schedule.size(); ++k) {
		auto prev = seq(schedule[k - 1]);
		auto cur = seq(schedule[k]);
		auto bad = seq.direction() == Direction::Increasing ? T0Traits<BoundaryFunction>::le_violation(prev, cur)
		                                                    : T0Traits<BoundaryFunction>::le_violation(cur, prev);
		if (bad) {
			throw PreconditionError("sequence '" + seq.name() + "' is not monotone",
			                        "n=" + std::to_string(schedule[k - 1]) + ", " + *bad);
		}
	}
}

} // namespace detail

/// v_f(x) as the limit of I_x(f_n) for continuous f_n increasing to f,
/// evaluated on the schedule 1, 2, 4, ..., depth. With a decreasing sequence
/// from above the bracket [I_x(below_depth), I_x(above_depth)] is certified
/// by positivity; without one, the last observed increment stands in.
/// Throws ToleranceError when the bracket is wider than tol.
inline ExtensionResult extend_boundary(const Domain &dom, Point2 x, const MonotoneSequence<BoundaryFunction> &below,
                                       const std::optional<MonotoneSequence<BoundaryFunction>> &above, int depth,
                                       double tol, const SolverConfig &cfg = {}) {
	if (below.direction() != Direction::Increasing) {
		throw DomainError("extension needs an increasing sequence from below");
	}
	if (above && above->direction() != Direction::Decreasing) {
		throw DomainError("the sequence from above must decrease");
	}
	if (depth < 1) {
		throw DomainError("depth must be >= 1");
	}
	ExtensionResult r;
	r.depth = depth;
	r.schedule = detail::geometric_schedule(depth);
	detail::certify_on(below, r.schedule);
	if (above) {
		detail::certify_on(*above, r.schedule);
	}
	std::optional<WalkOnSpheres> walks;
	if (cfg.solver == Solver::WalkOnSpheres) {
		walks.emplace(dom, x, cfg.walks, cfg.seed, cfg.eps);
	}
	auto eval = [&](const BoundaryFunction &g) {
		if (walks) {
			return walks->estimate(g).first;
		}
		return ix_eval(dom, x, g, cfg).value;
	};
	for (int n : r.schedule) {
		r.below.push_back(eval(below(n)));
		if (above) {
			r.above.push_back(eval((*above)(n)));
		}
	}
	r.value = r.lower = r.below.back();
	if (above) {
		r.upper = r.above.back();
		r.certified = true;
	} else {
		double inc = r.below.size() > 1 ? r.below.back() - r.below[r.below.size() - 2] : 0.0;
		r.upper = r.lower + std::abs(inc);
	}
	r.harnack_gap = r.upper - r.lower;
	if (r.harnack_gap > tol) {
		throw ToleranceError("extension bracket wider than tolerance at depth " + std::to_string(depth),
		                     r.harnack_gap);
	}
	return r;
}

/// Harnack comparison for the nonnegative harmonic gap u = I(above) - I(below):
/// empirical C = max over the ball |y - c| <= r of u(y) / u(c) against the
/// analytic disk bound (1 + r) / (1 - r).
struct HarnackReport {
	double gap_at_centre = 0;
	double max_gap = 0;
	double min_gap = 0;
	double empirical_c = 0;
	double analytic_c = 0;
	bool pass = false;
};

inline HarnackReport harnack_check(const Domain &dom, const BoundaryFunction &upper, const BoundaryFunction &lower,
                                   double radius, int probes = 64) {
	if (dom.shape() != Shape::UnitDisk || !(radius > 0 && radius < 1)) {
		throw DomainError("Harnack check is set up on a ball inside the unit disk");
	}
	auto gu = solve_dirichlet(dom, upper);
	auto gl = solve_dirichlet(dom, lower);
	HarnackReport rep;
	rep.gap_at_centre = gu.at({0, 0}) - gl.at({0, 0});
	rep.max_gap = rep.gap_at_centre;
	rep.min_gap = rep.gap_at_centre;
	for (int k = 0; k < probes; ++k) {
		for (double rr : {radius / 2, radius}) {
			double a = 2 * M_PI * k / probes;
			Point2 y{rr * std::cos(a), rr * std::sin(a)};
			double gap = gu.at(y) - gl.at(y);
			rep.max_gap = std::max(rep.max_gap, gap);
			rep.min_gap = std::min(rep.min_gap, gap);
		}
	}
	rep.empirical_c = rep.gap_at_centre > 0 ? rep.max_gap / rep.gap_at_centre : HUGE_VAL;
	rep.analytic_c = (1 + radius) / (1 - radius);
	rep.pass = rep.min_gap >= 0 && rep.empirical_c <= rep.analytic_c;
	return rep;
}

/// Axiom checks for I_x on boundary data: linearity on consecutive sample
/// pairs within 2 tol, positivity on |g| and g v 0, and (D2): along each
/// decreasing sequence, values nonincreasing (within tol) and bounded by
/// max g_n on the boundary probes.
inline AxiomReport verify_ix_axioms(const Domain &dom, Point2 x, std::span<const BoundaryFunction> samples,
                                    std::span<const MonotoneSequence<BoundaryFunction>> seqs, int depth, double tol,
                                    const SolverConfig &cfg = {}) {
	AxiomReport rep;
	auto I = [&](const BoundaryFunction &g) { return ix_eval(dom, x, g, cfg).value; };
	AxiomRecord lin{"D1"};
	double worst = 0;
	for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
		double a = to_double(daniell::detail::linearity_coefficients(i).first);
		double b = to_double(daniell::detail::linearity_coefficients(i).second);
		double res = std::abs(I(a * samples[i] + b * samples[i + 1]) - a * I(samples[i]) - b * I(samples[i + 1]));
		if (res > worst) {
			worst = res;
			lin.witness = "pair " + std::to_string(i);
		}
	}
	lin.achieved = from_double(worst);
	lin.tol = from_double(2 * tol);
	lin.pass = worst <= 2 * tol;
	rep.records.push_back(lin);
	for (const auto &seq : seqs) {
		if (seq.direction() != Direction::Decreasing) {
			throw DomainError("continuity check needs a decreasing sequence");
		}
		AxiomRecord d2{"D2", depth};
		d2.sequence = seq.name();
		d2.pass = true;
		double prev = HUGE_VAL;
		for (int n : detail::geometric_schedule(depth)) {
			auto g = seq(n);
			double v = I(g);
			double gmax = -HUGE_VAL;
			for (double t : boundary_probes(dom)) {
				gmax = std::max(gmax, g(t));
			}
			if (v > prev + tol || v < -tol || v > gmax + tol) {
				d2.pass = false;
				d2.witness = "n=" + std::to_string(n);
			}
			prev = v;
		}
		d2.achieved = from_double(prev);
		d2.tol = from_double(tol);
		rep.records.push_back(d2);
	}
	AxiomRecord pos{"D3"};
	pos.pass = true;
	for (std::size_t i = 0; i < samples.size(); ++i) {
		for (const auto &g : {abs(samples[i]), join(samples[i], BoundaryFunction::constant(0))}) {
			double v = I(g);
			if (v < -tol) {
				pos.pass = false;
				pos.achieved = from_double(v);
				pos.witness = "sample " + std::to_string(i);
			}
		}
	}
	rep.records.push_back(pos);
	return rep;
}

/// Arc endpoints written as rational multiples of pi, e.g. "pi/3", "2pi/3",
/// "0", "pi", "-pi/2".
inline Rational parse_pi_multiple(const std::string &text) {
	std::string s = text;
	auto pos = s.find("pi");
	if (pos == std::string::npos) {
		Rational v = parse_rational(s);
		if (v != 0) {
			throw ParseError("arc endpoint '" + text + "' must be a multiple of pi");
		}
		return v;
	}
	std::string coeff = s.substr(0, pos);
	std::string rest = s.substr(pos + 2);
	Rational c = coeff.empty() || coeff == "+" ? Rational(1) : coeff == "-" ? Rational(-1) : parse_rational(coeff);
	if (!rest.empty()) {
		if (rest[0] != '/') {
			throw ParseError("malformed arc endpoint '" + text + "'");
		}
		c /= parse_rational(rest.substr(1));
	}
	return c;
}

} // namespace daniell::dirichlet

#endif // DANIELL_DIRICHLET_HPP
