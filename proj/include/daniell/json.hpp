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

#ifndef DANIELL_JSON_HPP
#define DANIELL_JSON_HPP

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

#include "daniell/extension.hpp"
#include "daniell/functional.hpp"
#include "daniell/wiener.hpp"

namespace daniell::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json integer_json(const Integer &v) {
	if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
		return v.convert_to<long long>();
	}
	return v.str();
}

inline Integer integer_from(const Json &j) {
	if (j.is_number_integer()) {
		return Integer(j.get<long long>());
	}
	if (j.is_string()) {
		try {
			return Integer(j.get<std::string>());
		} catch (const std::exception &) {
		}
	}
	throw ParseError("expected an integer, got " + j.dump());
}

inline bool is_infinity(const Json &j) {
	return j.is_string() && (j.get<std::string>() == "+inf" || j.get<std::string>() == "-inf" ||
	                         j.get<std::string>() == "inf");
}

} // namespace detail

/// [num, den]; integers outside 64 bits are written as decimal strings.
inline Json to_json(const Rational &q) {
	return Json::array({detail::integer_json(numerator(q)), detail::integer_json(denominator(q))});
}

/// Accepts [num, den], an integer, or a string such as "3/4" or "0.25".
inline Rational rational_from_json(const Json &j) {
	if (j.is_array()) {
		if (j.size() != 2) {
			throw ParseError("a rational is [num, den], got " + j.dump());
		}
		Integer d = detail::integer_from(j[1]);
		if (d == 0) {
			throw ParseError("zero denominator in " + j.dump());
		}
		return Rational(detail::integer_from(j[0]), d);
	}
	if (j.is_number_integer()) {
		return Rational(j.get<long long>());
	}
	if (j.is_string()) {
		return parse_rational(j.get<std::string>());
	}
	throw ParseError("expected a rational, got " + j.dump());
}

inline Json to_json(const ExtReal &x) {
	if (x.is_finite()) {
		return to_json(x.value());
	}
	return x.is_pos_inf() ? "+inf" : "-inf";
}

inline ExtReal ext_from_json(const Json &j) {
	if (detail::is_infinity(j)) {
		return j.get<std::string>() == "-inf" ? ExtReal::neg_inf() : ExtReal::pos_inf();
	}
	return ExtReal(rational_from_json(j));
}

inline Json to_json(const Universe &u) {
	switch (u.kind()) {
	case Universe::Kind::RealLine:
		return "real_line";
	case Universe::Kind::PathSpace:
		return "path_space";
	default:
		return Json{{"finite", u.labels()}};
	}
}

inline Universe universe_from_json(const Json &j) {
	if (j == "real_line") {
		return Universe::real_line();
	}
	if (j == "path_space") {
		return Universe::path_space();
	}
	if (j.is_object() && j.contains("finite")) {
		const auto &f = j["finite"];
		if (f.is_number_unsigned()) {
			return Universe::finite(f.get<std::size_t>());
		}
		if (f.is_array() && std::all_of(f.begin(), f.end(), [](const Json &l) { return l.is_string(); })) {
			return Universe::finite(f.get<std::vector<std::string>>());
		}
	}
	throw ParseError("unknown universe " + j.dump());
}

/// Interval pieces are [a_num, a_den, b_num, b_den]; an infinite endpoint
/// takes a single "-inf" / "+inf" slot in place of its pair.
inline Json to_json(const IntervalUnion &u) {
	Json out = Json::array();
	for (const auto &iv : u.pieces()) {
		Json piece = Json::array();
		for (const ExtReal *e : {&iv.lo, &iv.hi}) {
			if (e->is_finite()) {
				piece.push_back(detail::integer_json(numerator(e->value())));
				piece.push_back(detail::integer_json(denominator(e->value())));
			} else {
				piece.push_back(to_json(*e));
			}
		}
		out.push_back(std::move(piece));
	}
	return out;
}

inline IntervalUnion interval_union_from_json(const Json &j) {
	if (!j.is_array()) {
		throw ParseError("expected a list of intervals, got " + j.dump());
	}
	std::vector<Interval> pieces;
	for (const auto &p : j) {
		if (!p.is_array()) {
			throw ParseError("malformed interval " + p.dump());
		}
		std::vector<ExtReal> ends;
		std::size_t k = 0;
		while (k < p.size()) {
			if (detail::is_infinity(p[k])) {
				ends.push_back(ext_from_json(p[k]));
				k += 1;
			} else if (k + 1 < p.size()) {
				ends.emplace_back(rational_from_json(Json::array({p[k], p[k + 1]})));
				k += 2;
			} else {
				throw ParseError("malformed interval " + p.dump());
			}
		}
		if (ends.size() != 2) {
			throw ParseError("an interval has two endpoints: " + p.dump());
		}
		pieces.push_back(Interval{ends[0], ends[1]});
	}
	return IntervalUnion(std::move(pieces));
}

/// One cylinder slot: [lo, hi] for a single interval, {"union": [[lo, hi], ...]}
/// otherwise. Endpoints are rationals or "-inf" / "+inf".
inline Json slot_json(const IntervalUnion &u) {
	auto piece = [](const Interval &iv) { return Json::array({to_json(iv.lo), to_json(iv.hi)}); };
	if (u.pieces().size() == 1) {
		return piece(u.pieces()[0]);
	}
	Json list = Json::array();
	for (const auto &iv : u.pieces()) {
		list.push_back(piece(iv));
	}
	return Json{{"union", list}};
}

inline IntervalUnion slot_from_json(const Json &j) {
	auto piece = [](const Json &p) {
		if (!p.is_array() || p.size() != 2) {
			throw ParseError("a cylinder slot is [lo, hi], got " + p.dump());
		}
		ExtReal lo = ext_from_json(p[0]);
		ExtReal hi = ext_from_json(p[1]);
		if (hi < lo) {
			throw ParseError("slot with hi < lo: " + p.dump());
		}
		return Interval{lo, hi};
	};
	if (j.is_object() && j.contains("union") && j["union"].is_array()) {
		std::vector<Interval> pieces;
		for (const auto &p : j["union"]) {
			pieces.push_back(piece(p));
		}
		return IntervalUnion(std::move(pieces));
	}
	return IntervalUnion({piece(j)});
}

inline Json to_json(const wiener::Cylinder &d) {
	Json times = Json::array(), sets = Json::array();
	for (const auto &t : d.times()) {
		times.push_back(to_json(t));
	}
	for (const auto &s : d.sets()) {
		sets.push_back(slot_json(s));
	}
	return Json{{"times", times}, {"sets", sets}};
}

inline wiener::Cylinder cylinder_from_json(const Json &j) {
	if (!j.is_object() || !j.contains("times") || !j.contains("sets") || !j["times"].is_array() ||
	    !j["sets"].is_array()) {
		throw ParseError("a cylinder is {\"times\": [...], \"sets\": [...]}");
	}
	std::vector<Rational> times;
	for (const auto &t : j["times"]) {
		times.push_back(rational_from_json(t));
	}
	// the leading 0 may be omitted
	if (times.empty() || times.front() != 0) {
		times.insert(times.begin(), Rational(0));
	}
	std::vector<IntervalUnion> sets;
	for (const auto &s : j["sets"]) {
		sets.push_back(slot_from_json(s));
	}
	return wiener::Cylinder(std::move(times), std::move(sets));
}

inline Json to_json(const RingSet &s) {
	Json out{{"universe", to_json(s.universe())}};
	switch (s.universe().kind()) {
	case Universe::Kind::Finite:
		out["atoms"] = s.atoms();
		break;
	case Universe::Kind::RealLine:
		out["intervals"] = to_json(s.intervals());
		break;
	case Universe::Kind::PathSpace: {
		Json list = Json::array();
		for (const auto &d : s.family().members()) {
			list.push_back(to_json(d));
		}
		out["cylinders"] = list;
	}
	}
	return out;
}

inline RingSet ring_set_from_json(const Json &j) {
	if (!j.is_object() || !j.contains("universe")) {
		throw ParseError("a ring set needs a universe: " + j.dump());
	}
	Universe u = universe_from_json(j["universe"]);
	switch (u.kind()) {
	case Universe::Kind::Finite: {
		if (!j.contains("atoms") || !j["atoms"].is_array()) {
			throw ParseError("a finite ring set lists its atoms");
		}
		std::vector<std::size_t> idx;
		for (const auto &a : j["atoms"]) {
			if (!a.is_number_unsigned()) {
				throw ParseError("atom indices are nonnegative integers, got " + a.dump());
			}
			idx.push_back(a.get<std::size_t>());
		}
		return RingSet::points(u, std::move(idx));
	}
	case Universe::Kind::RealLine:
		if (!j.contains("intervals")) {
			throw ParseError("a ring set on the line lists its intervals");
		}
		return RingSet::intervals(interval_union_from_json(j["intervals"]));
	default: {
		if (!j.contains("cylinders") || !j["cylinders"].is_array()) {
			throw ParseError("a path-space ring set lists its cylinders");
		}
		wiener::CylinderFamily f;
		for (const auto &c : j["cylinders"]) {
			f = f | wiener::CylinderFamily(cylinder_from_json(c));
		}
		return RingSet::cylinders(std::move(f));
	}
	}
}

inline Json to_json(const SimpleFunction &x) {
	Json terms = Json::array();
	for (const auto &t : x.terms()) {
		Json set = to_json(t.set);
		set.erase("universe");
		terms.push_back(Json{{"coeff", to_json(t.coeff)}, {"set", set}});
	}
	return Json{{"universe", to_json(x.universe())}, {"terms", terms}};
}

/// Term sets may omit their universe; they inherit the function's.
inline SimpleFunction simple_function_from_json(const Json &j) {
	if (!j.is_object() || !j.contains("universe") || !j.contains("terms") || !j["terms"].is_array()) {
		throw ParseError("a simple function is {\"universe\": ..., \"terms\": [...]}");
	}
	Universe u = universe_from_json(j["universe"]);
	std::vector<Term> terms;
	for (const auto &t : j["terms"]) {
		if (!t.is_object() || !t.contains("coeff") || !t.contains("set")) {
			throw ParseError("a term is {\"coeff\": ..., \"set\": ...}, got " + t.dump());
		}
		Json set = t["set"];
		if (set.is_object() && !set.contains("universe")) {
			set["universe"] = j["universe"];
		}
		RingSet s = ring_set_from_json(set);
		if (!(s.universe() == u)) {
			throw ParseError("term set lives in a different universe");
		}
		terms.push_back(Term{rational_from_json(t["coeff"]), std::move(s)});
	}
	return SimpleFunction(std::move(u), std::move(terms));
}

inline double approx(const ExtReal &x) {
	if (x.is_finite()) {
		return to_double(x.value());
	}
	return x.is_pos_inf() ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

inline Json approx_json(const ExtReal &x) {
	if (!x.is_finite()) {
		return to_json(x);
	}
	return approx(x);
}

inline Json to_json(const IntegralResult &r) {
	return Json{{"value", to_json(r.value)},
	            {"lower", to_json(r.lower)},
	            {"upper", to_json(r.upper)},
	            {"depth", r.depth},
	            {"converged", r.converged},
	            {"certified", r.certified},
	            {"value_approx", approx_json(r.value)}};
}

inline Json to_json(const AxiomRecord &r) {
	Json out{{"axiom", r.axiom},
	         {"depth", r.depth},
	         {"achieved", to_json(r.achieved)},
	         {"tol", to_json(r.tol)},
	         {"pass", r.pass}};
	if (r.witness) {
		out["witness"] = *r.witness;
	}
	if (r.sequence) {
		out["sequence"] = *r.sequence;
	}
	return out;
}

inline Json to_json(const AxiomReport &r) {
	Json recs = Json::array();
	for (const auto &rec : r.records) {
		recs.push_back(to_json(rec));
	}
	return Json{{"pass", r.pass()}, {"records", recs}};
}

inline Json to_json(const wiener::Estimate &e) {
	Json out{{"value", e.value}, {"method", wiener::to_string(e.method)}};
	if (e.method == wiener::Method::MonteCarlo) {
		out["stderr"] = e.error;
		out["paths"] = e.paths;
	} else {
		out["quad_error"] = e.error;
	}
	return out;
}

/// Parses text as JSON, mapping syntax errors to ParseError.
inline Json parse(const std::string &text) {
	try {
		return Json::parse(text);
	} catch (const nlohmann::json::parse_error &e) {
		throw ParseError(std::string("malformed JSON: ") + e.what());
	}
}

} // namespace daniell::io

#endif // DANIELL_JSON_HPP
