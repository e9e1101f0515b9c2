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

#ifndef DANIELL_RINGS_HPP
#define DANIELL_RINGS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "daniell/cylinder.hpp"
#include "daniell/interval_union.hpp"

namespace daniell {

/// The set X on which functions live: finitely many labeled points, the
/// real line, or the path space of continuous f on [0,1] with f(0) = 0.
class Universe {
public:
	enum class Kind { Finite, RealLine, PathSpace };

	static Universe finite(std::vector<std::string> labels) {
		std::set<std::string> seen(labels.begin(), labels.end());
		if (seen.size() != labels.size()) {
			throw DomainError("finite universe labels must be distinct");
		}
		return Universe(Kind::Finite, std::make_shared<const std::vector<std::string>>(std::move(labels)));
	}

	/// Points labeled p1..pn.
	static Universe finite(std::size_t n) {
		std::vector<std::string> labels;
		for (std::size_t i = 1; i <= n; ++i) {
			labels.push_back("p" + std::to_string(i));
		}
		return finite(std::move(labels));
	}

	static Universe real_line() { return Universe(Kind::RealLine, nullptr); }
	static Universe path_space() { return Universe(Kind::PathSpace, nullptr); }

	Kind kind() const noexcept { return kind_; }
	bool is_finite() const noexcept { return kind_ == Kind::Finite; }

	const std::vector<std::string> &labels() const {
		static const std::vector<std::string> none;
		return labels_ ? *labels_ : none;
	}

	std::size_t size() const { return labels().size(); }

	std::optional<std::size_t> index_of(const std::string &label) const {
		const auto &l = labels();
		auto it = std::find(l.begin(), l.end(), label);
		if (it == l.end()) {
			return std::nullopt;
		}
		return static_cast<std::size_t>(it - l.begin());
	}

	friend bool operator==(const Universe &a, const Universe &b) {
		if (a.kind_ != b.kind_) {
			return false;
		}
		return a.labels_ == b.labels_ || a.labels() == b.labels();
	}

private:
	Universe(Kind k, std::shared_ptr<const std::vector<std::string>> labels) : kind_(k), labels_(std::move(labels)) {}

	Kind kind_;
	std::shared_ptr<const std::vector<std::string>> labels_;
};

inline std::string to_string(Universe::Kind k) {
	switch (k) {
	case Universe::Kind::Finite:
		return "finite";
	case Universe::Kind::RealLine:
		return "real_line";
	default:
		return "path_space";
	}
}

/// A point of some universe: an atom index, a rational, or a sampled path.
using Point = std::variant<std::size_t, Rational, wiener::Path>;

inline std::string describe(const Universe &u, const Point &p) {
	if (const auto *i = std::get_if<std::size_t>(&p)) {
		return *i < u.size() ? u.labels()[*i] : "#" + std::to_string(*i);
	}
	if (const auto *t = std::get_if<Rational>(&p)) {
		return "t=" + to_string(*t);
	}
	const auto &path = std::get<wiener::Path>(p);
	std::string s = "path(";
	for (std::size_t i = 1; i < path.times.size(); ++i) {
		s += (i > 1 ? ", " : "") + to_string(path.times[i]) + ":" + std::to_string(path.values[i]);
	}
	return s + ")";
}

enum class SetOp { Union, Intersect, Difference };

/// An element of the set ring over a universe, in canonical form.
///
/// Finite: sorted duplicate-free atom indices (all subsets form the ring).
/// RealLine: bounded finite unions of rational half-open intervals.
/// PathSpace: a disjoint family of cylinders; algebra is delegated to
/// daniell::wiener.
class RingSet {
public:
	using Body = std::variant<std::vector<std::size_t>, IntervalUnion, wiener::CylinderFamily>;

	static RingSet empty(const Universe &u) {
		switch (u.kind()) {
		case Universe::Kind::Finite:
			return RingSet(u, std::vector<std::size_t>{});
		case Universe::Kind::RealLine:
			return RingSet(u, IntervalUnion{});
		default:
			return RingSet(u, wiener::CylinderFamily{});
		}
	}

	static RingSet points(const Universe &u, std::vector<std::size_t> idx) {
		if (!u.is_finite()) {
			throw DomainError("point sets need a finite universe");
		}
		std::sort(idx.begin(), idx.end());
		idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
		if (!idx.empty() && idx.back() >= u.size()) {
			throw DomainError("atom index " + std::to_string(idx.back()) + " outside universe");
		}
		return RingSet(u, std::move(idx));
	}

	static RingSet labeled(const Universe &u, const std::vector<std::string> &labels) {
		std::vector<std::size_t> idx;
		for (const auto &l : labels) {
			auto i = u.index_of(l);
			if (!i) {
				throw DomainError("unknown point label '" + l + "'");
			}
			idx.push_back(*i);
		}
		return points(u, std::move(idx));
	}

	/// The whole universe; only finite universes and path space have one in
	/// the ring.
	static RingSet full(const Universe &u) {
		if (u.is_finite()) {
			std::vector<std::size_t> idx(u.size());
			for (std::size_t i = 0; i < idx.size(); ++i) {
				idx[i] = i;
			}
			return RingSet(u, std::move(idx));
		}
		if (u.kind() == Universe::Kind::PathSpace) {
			return cylinders(wiener::CylinderFamily(wiener::Cylinder::whole()));
		}
		throw DomainError("the real line is not an element of the interval ring");
	}

	/// [a, b) on the real line; empty when a >= b.
	static RingSet interval(const Rational &a, const Rational &b) {
		return intervals(IntervalUnion::interval(a, b));
	}

	static RingSet intervals(IntervalUnion u) {
		if (!u.is_bounded()) {
			throw DomainError("interval ring elements must be bounded: " + to_string(u));
		}
		return RingSet(Universe::real_line(), std::move(u));
	}

	static RingSet cylinders(wiener::CylinderFamily f) { return RingSet(Universe::path_space(), std::move(f)); }

	const Universe &universe() const noexcept { return universe_; }
	const Body &body() const noexcept { return body_; }

	const std::vector<std::size_t> &atoms() const { return std::get<std::vector<std::size_t>>(body_); }
	const IntervalUnion &intervals() const { return std::get<IntervalUnion>(body_); }
	const wiener::CylinderFamily &family() const { return std::get<wiener::CylinderFamily>(body_); }

	bool empty() const {
		return std::visit([](const auto &b) { return b.empty(); }, body_);
	}

	bool contains(const Point &p) const {
		switch (universe_.kind()) {
		case Universe::Kind::Finite: {
			const auto *i = std::get_if<std::size_t>(&p);
			if (!i || *i >= universe_.size()) {
				throw DomainError("point outside the finite universe");
			}
			return std::binary_search(atoms().begin(), atoms().end(), *i);
		}
		case Universe::Kind::RealLine: {
			const auto *t = std::get_if<Rational>(&p);
			if (!t) {
				throw DomainError("point outside the real line");
			}
			return intervals().contains(*t);
		}
		default: {
			const auto *f = std::get_if<wiener::Path>(&p);
			if (!f) {
				throw DomainError("point outside path space");
			}
			return family().contains(*f);
		}
		}
	}

	/// A point of the set, if any.
	std::optional<Point> witness() const {
		if (empty()) {
			return std::nullopt;
		}
		switch (universe_.kind()) {
		case Universe::Kind::Finite:
			return Point{atoms().front()};
		case Universe::Kind::RealLine:
			return Point{*intervals().some_point()};
		default:
			return Point{family().members().front().witness()};
		}
	}

	friend bool operator==(const RingSet &a, const RingSet &b) {
		return a.universe_ == b.universe_ && a.body_ == b.body_;
	}

private:
	RingSet(Universe u, Body b) : universe_(std::move(u)), body_(std::move(b)) {}

	friend RingSet boolean_combine(SetOp, const RingSet &, const RingSet &);

	Universe universe_;
	Body body_;
};

inline void require_same_universe(const Universe &a, const Universe &b) {
	if (!(a == b)) {
		throw DomainError("universe mismatch: " + to_string(a.kind()) + " vs " + to_string(b.kind()));
	}
}

/// Union, intersection or difference of two ring sets; the result is canonical.
inline RingSet boolean_combine(SetOp op, const RingSet &a, const RingSet &b) {
	require_same_universe(a.universe(), b.universe());
	switch (a.universe().kind()) {
	case Universe::Kind::Finite: {
		const auto &x = a.atoms();
		const auto &y = b.atoms();
		std::vector<std::size_t> out;
		switch (op) {
		case SetOp::Union:
			std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
			break;
		case SetOp::Intersect:
			std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
			break;
		case SetOp::Difference:
			std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
			break;
		}
		return RingSet(a.universe(), std::move(out));
	}
	case Universe::Kind::RealLine: {
		const auto &x = a.intervals();
		const auto &y = b.intervals();
		switch (op) {
		case SetOp::Union:
			return RingSet(a.universe(), x | y);
		case SetOp::Intersect:
			return RingSet(a.universe(), x & y);
		default:
			return RingSet(a.universe(), x - y);
		}
	}
	default: {
		const auto &x = a.family();
		const auto &y = b.family();
		switch (op) {
		case SetOp::Union:
			return RingSet(a.universe(), x | y);
		case SetOp::Intersect:
			return RingSet(a.universe(), x & y);
		default:
			return RingSet(a.universe(), x - y);
		}
	}
	}
}

inline RingSet operator|(const RingSet &a, const RingSet &b) { return boolean_combine(SetOp::Union, a, b); }
inline RingSet operator&(const RingSet &a, const RingSet &b) { return boolean_combine(SetOp::Intersect, a, b); }
inline RingSet operator-(const RingSet &a, const RingSet &b) { return boolean_combine(SetOp::Difference, a, b); }

inline bool subset_of(const RingSet &a, const RingSet &b) {
	if (a.universe().kind() == Universe::Kind::RealLine && b.universe().kind() == Universe::Kind::RealLine) {
		return a.intervals().subset_of(b.intervals());
	}
	return (a - b).empty();
}

inline std::string to_string(const RingSet &s) {
	switch (s.universe().kind()) {
	case Universe::Kind::Finite: {
		std::string out = "{";
		for (std::size_t i = 0; i < s.atoms().size(); ++i) {
			out += (i ? "," : "") + s.universe().labels()[s.atoms()[i]];
		}
		return out + "}";
	}
	case Universe::Kind::RealLine:
		return to_string(s.intervals());
	default: {
		if (s.empty()) {
			return "{}";
		}
		std::string out;
		for (const auto &d : s.family().members()) {
			out += (out.empty() ? "" : " u ") + wiener::to_string(d);
		}
		return out;
	}
	}
}

/// A set function on a ring: nonnegative point weights or length (exact),
/// signed point weights (exact, finite universes only), or a numeric rule
/// with a stated tolerance.
class PreMeasure {
public:
	enum class Kind { PointWeights, Length, SignedPointWeights, Numeric };
	using NumericRule = std::function<double(const RingSet &)>;

	static PreMeasure counting(const Universe &u) {
		return point_weights(u, std::vector<ExtReal>(u.size(), ExtReal(1)));
	}

	static PreMeasure point_weights(const Universe &u, std::vector<ExtReal> w) {
		if (!u.is_finite() || w.size() != u.size()) {
			throw DomainError("point weights need one weight per atom of a finite universe");
		}
		for (std::size_t i = 0; i < w.size(); ++i) {
			if (w[i] < ExtReal(0)) {
				throw DomainError("negative weight at " + u.labels()[i] + "; use signed_weights");
			}
		}
		PreMeasure m(Kind::PointWeights, u);
		m.weights_ = std::move(w);
		return m;
	}

	static PreMeasure length() { return PreMeasure(Kind::Length, Universe::real_line()); }

	static PreMeasure signed_weights(const Universe &u, const std::vector<Rational> &w) {
		if (!u.is_finite() || w.size() != u.size()) {
			throw DomainError("signed weights need one weight per atom of a finite universe");
		}
		PreMeasure m(Kind::SignedPointWeights, u);
		m.weights_.assign(w.begin(), w.end());
		return m;
	}

	static PreMeasure numeric(const Universe &u, NumericRule rule, double tolerance, std::string name) {
		PreMeasure m(Kind::Numeric, u);
		m.rule_ = std::move(rule);
		m.tolerance_ = tolerance;
		m.name_ = std::move(name);
		return m;
	}

	Kind kind() const noexcept { return kind_; }
	const Universe &universe() const noexcept { return universe_; }
	bool exact() const noexcept { return kind_ != Kind::Numeric; }
	double tolerance() const noexcept { return tolerance_; }
	const std::vector<ExtReal> &weights() const noexcept { return weights_; }

	std::string name() const {
		switch (kind_) {
		case Kind::PointWeights:
			return "point_weights";
		case Kind::Length:
			return "length";
		case Kind::SignedPointWeights:
			return "signed_weights";
		default:
			return name_;
		}
	}

	/// Exact value; throws for numeric pre-measures.
	ExtReal operator()(const RingSet &e) const {
		require_same_universe(universe_, e.universe());
		switch (kind_) {
		case Kind::PointWeights:
		case Kind::SignedPointWeights: {
			ExtReal total = 0;
			for (auto i : e.atoms()) {
				total += weights_[i];
			}
			return total;
		}
		case Kind::Length:
			return e.intervals().length();
		default:
			throw DomainError("pre-measure '" + name_ + "' is numeric; use approx()");
		}
	}

	double approx(const RingSet &e) const {
		if (kind_ == Kind::Numeric) {
			require_same_universe(universe_, e.universe());
			return rule_(e);
		}
		return (*this)(e).to_double();
	}

	/// Total variation |nu|(e) for signed weights; the value itself otherwise.
	ExtReal variation(const RingSet &e) const {
		if (kind_ != Kind::SignedPointWeights) {
			return (*this)(e);
		}
		require_same_universe(universe_, e.universe());
		ExtReal total = 0;
		for (auto i : e.atoms()) {
			total += ExtReal(abs(weights_[i].value()));
		}
		return total;
	}

private:
	PreMeasure(Kind k, Universe u) : kind_(k), universe_(std::move(u)) {}

	Kind kind_;
	Universe universe_;
	std::vector<ExtReal> weights_;
	NumericRule rule_;
	double tolerance_ = 0.0;
	std::string name_;
};

inline ExtReal premeasure_eval(const PreMeasure &mu, const RingSet &e) { return mu(e); }

struct AdditivityReport {
	double lhs = 0.0;
	double rhs = 0.0;
	std::optional<ExtReal> exact_lhs; // set for exact pre-measures
	std::optional<ExtReal> exact_rhs;
	double tolerance = 0.0;
	bool pass = false;
};

/// Compares mu(union of parts) with the sum of mu(part). Parts must be
/// pairwise disjoint; an overlap is reported with a point of it.
inline AdditivityReport check_additivity(const PreMeasure &mu, const std::vector<RingSet> &parts) {
	RingSet all = RingSet::empty(mu.universe());
	for (std::size_t i = 0; i < parts.size(); ++i) {
		require_same_universe(mu.universe(), parts[i].universe());
		for (std::size_t j = 0; j < i; ++j) {
			auto overlap = parts[i] & parts[j];
			if (!overlap.empty()) {
				throw PreconditionError("additivity parts " + std::to_string(j) + " and " + std::to_string(i) +
				                            " overlap",
				                        describe(mu.universe(), *overlap.witness()));
			}
		}
		all = all | parts[i];
	}
	AdditivityReport r;
	if (mu.exact()) {
		ExtReal sum = 0;
		for (const auto &p : parts) {
			sum += mu(p);
		}
		r.exact_lhs = mu(all);
		r.exact_rhs = sum;
		r.lhs = r.exact_lhs->to_double();
		r.rhs = sum.to_double();
		r.pass = (*r.exact_lhs == sum);
		return r;
	}
	r.lhs = mu.approx(all);
	r.rhs = 0.0;
	for (const auto &p : parts) {
		r.rhs += mu.approx(p);
	}
	r.tolerance = mu.tolerance() * static_cast<double>(parts.size() + 1);
	r.pass = std::abs(r.lhs - r.rhs) <= r.tolerance;
	return r;
}

} // namespace daniell

#endif // DANIELL_RINGS_HPP
