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

#ifndef DANIELL_CYLINDER_HPP
#define DANIELL_CYLINDER_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "daniell/interval_union.hpp"

namespace daniell::wiener {

/// A path f: [0,1] -> R with f(0) = 0, known at finitely many times and
/// linearly interpolated in between.
struct Path {
	std::vector<Rational> times; // strictly increasing, times.front() == 0
	std::vector<double> values;  // values.front() == 0

	double at(const Rational &t) const {
		auto it = std::lower_bound(times.begin(), times.end(), t);
		if (it == times.end()) {
			return values.back();
		}
		auto i = static_cast<std::size_t>(it - times.begin());
		if (*it == t || i == 0) {
			return values[i];
		}
		double w = to_double(Rational((t - times[i - 1]) / (times[i] - times[i - 1])));
		return values[i - 1] + w * (values[i] - values[i - 1]);
	}
};

/// The cylinder D(P, B) = { f : f(t_i) in B_i, i = 1..n } for a partition
/// 0 = t_0 < t_1 < ... < t_n = 1 and Borel sets B_i given as interval unions.
class Cylinder {
public:
	/// `times` is the full partition including t_0 = 0; `sets` has one entry
	/// per t_1..t_n.
	Cylinder(std::vector<Rational> times, std::vector<IntervalUnion> sets)
	    : times_(std::move(times)), sets_(std::move(sets)) {
		if (times_.size() < 2 || times_.front() != 0 || times_.back() != 1) {
			throw DomainError("cylinder partition must start at 0 and end at 1");
		}
		for (std::size_t i = 1; i < times_.size(); ++i) {
			if (!(times_[i - 1] < times_[i])) {
				throw DomainError("cylinder partition must be strictly increasing");
			}
		}
		if (sets_.size() + 1 != times_.size()) {
			throw DomainError("cylinder needs one Borel set per partition time after 0");
		}
	}

	/// The whole path space, D({0,1}, (R)).
	static Cylinder whole() { return Cylinder({Rational(0), Rational(1)}, {IntervalUnion::whole_line()}); }

	const std::vector<Rational> &times() const noexcept { return times_; }
	const std::vector<IntervalUnion> &sets() const noexcept { return sets_; }
	std::size_t size() const noexcept { return sets_.size(); }

	bool empty() const {
		return std::any_of(sets_.begin(), sets_.end(), [](const IntervalUnion &b) { return b.empty(); });
	}

	/// Constraint at time t; the whole line where the cylinder does not look.
	IntervalUnion set_at(const Rational &t) const {
		auto it = std::lower_bound(times_.begin() + 1, times_.end(), t);
		if (it != times_.end() && *it == t) {
			return sets_[static_cast<std::size_t>(it - times_.begin()) - 1];
		}
		return IntervalUnion::whole_line();
	}

	bool contains(const Path &f) const {
		for (std::size_t i = 0; i < sets_.size(); ++i) {
			if (!sets_[i].contains(f.at(times_[i + 1]))) {
				return false;
			}
		}
		return true;
	}

	/// A path lying in the cylinder (requires non-empty).
	Path witness() const {
		Path p{{Rational(0)}, {0.0}};
		for (std::size_t i = 0; i < sets_.size(); ++i) {
			auto pt = sets_[i].some_point();
			if (!pt) {
				throw DomainError("witness of an empty cylinder");
			}
			// an interior point of the first piece survives the double rounding
			const auto &iv = sets_[i].pieces().front();
			Rational x = *pt;
			if (iv.lo.is_finite() && iv.hi.is_finite()) {
				x = (iv.lo.value() + iv.hi.value()) / 2;
			}
			p.times.push_back(times_[i + 1]);
			p.values.push_back(to_double(x));
		}
		return p;
	}

	/// Rewrites the cylinder on a finer partition (which must contain ours),
	/// filling new slots with the whole line.
	Cylinder refine(const std::vector<Rational> &partition) const {
		std::vector<IntervalUnion> sets;
		for (std::size_t i = 1; i < partition.size(); ++i) {
			sets.push_back(set_at(partition[i]));
		}
		return Cylinder(partition, std::move(sets));
	}

	friend bool operator==(const Cylinder &, const Cylinder &) = default;

private:
	std::vector<Rational> times_;
	std::vector<IntervalUnion> sets_;
};

inline std::vector<Rational> merge_partitions(const std::vector<Rational> &p, const std::vector<Rational> &q) {
	std::vector<Rational> out;
	std::set_union(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(out));
	return out;
}

/// D1 ∩ D2 on the merged partition: B_j, C_k, or B_j ∩ C_k per slot.
inline Cylinder intersect(const Cylinder &d1, const Cylinder &d2) {
	auto part = merge_partitions(d1.times(), d2.times());
	std::vector<IntervalUnion> sets;
	for (std::size_t i = 1; i < part.size(); ++i) {
		sets.push_back(d1.set_at(part[i]) & d2.set_at(part[i]));
	}
	return Cylinder(std::move(part), std::move(sets));
}

/// D1 \ D2 as a pairwise disjoint list of non-empty cylinders. Piece k keeps
/// the first k-1 constraints of D2 and violates the k-th.
inline std::vector<Cylinder> difference(const Cylinder &d1, const Cylinder &d2) {
	auto part = merge_partitions(d1.times(), d2.times());
	std::vector<Cylinder> out;
	std::vector<IntervalUnion> prefix;
	for (std::size_t i = 1; i < part.size(); ++i) {
		prefix.push_back(d1.set_at(part[i]));
	}
	for (std::size_t k = 1; k < part.size(); ++k) {
		IntervalUnion c = d2.set_at(part[k]);
		if (c == IntervalUnion::whole_line()) {
			continue;
		}
		auto sets = prefix;
		sets[k - 1] = sets[k - 1] - c;
		Cylinder piece(part, std::move(sets));
		if (!piece.empty()) {
			out.push_back(std::move(piece));
		}
		prefix[k - 1] = prefix[k - 1] & c;
	}
	return out;
}

inline bool disjoint(const Cylinder &d1, const Cylinder &d2) { return intersect(d1, d2).empty(); }

/// A finite union of pairwise disjoint non-empty cylinders: an element of the
/// cylinder ring.
class CylinderFamily {
public:
	CylinderFamily() = default;

	explicit CylinderFamily(Cylinder d) {
		if (!d.empty()) {
			members_.push_back(std::move(d));
		}
	}

	/// Builds a family from cylinders that are already pairwise disjoint.
	/// Throws if two members overlap.
	static CylinderFamily from_disjoint(std::vector<Cylinder> members) {
		CylinderFamily f;
		for (auto &d : members) {
			if (d.empty()) {
				continue;
			}
			for (const auto &e : f.members_) {
				if (!disjoint(d, e)) {
					throw DomainError("cylinder family members overlap");
				}
			}
			f.members_.push_back(std::move(d));
		}
		return f;
	}

	const std::vector<Cylinder> &members() const noexcept { return members_; }
	bool empty() const noexcept { return members_.empty(); }

	bool contains(const Path &f) const {
		return std::any_of(members_.begin(), members_.end(), [&](const Cylinder &d) { return d.contains(f); });
	}

	friend CylinderFamily operator&(const CylinderFamily &a, const CylinderFamily &b) {
		CylinderFamily out;
		for (const auto &x : a.members_) {
			for (const auto &y : b.members_) {
				auto z = intersect(x, y);
				if (!z.empty()) {
					out.members_.push_back(std::move(z));
				}
			}
		}
		return out;
	}

	friend CylinderFamily operator-(const CylinderFamily &a, const CylinderFamily &b) {
		CylinderFamily out;
		for (const auto &x : a.members_) {
			std::vector<Cylinder> rest{x};
			for (const auto &y : b.members_) {
				std::vector<Cylinder> next;
				for (const auto &r : rest) {
					auto pieces = difference(r, y);
					next.insert(next.end(), pieces.begin(), pieces.end());
				}
				rest = std::move(next);
			}
			out.members_.insert(out.members_.end(), rest.begin(), rest.end());
		}
		return out;
	}

	friend CylinderFamily operator|(const CylinderFamily &a, const CylinderFamily &b) {
		CylinderFamily out = a;
		auto extra = b - a;
		out.members_.insert(out.members_.end(), extra.members_.begin(), extra.members_.end());
		return out;
	}

	friend bool operator==(const CylinderFamily &, const CylinderFamily &) = default;

private:
	std::vector<Cylinder> members_;
};

inline std::string to_string(const Cylinder &d) {
	std::string s = "D(";
	for (std::size_t i = 0; i < d.size(); ++i) {
		if (i) {
			s += "; ";
		}
		s += "t=" + daniell::to_string(d.times()[i + 1]) + ":" + daniell::to_string(d.sets()[i]);
	}
	return s + ")";
}

} // namespace daniell::wiener

#endif // DANIELL_CYLINDER_HPP
