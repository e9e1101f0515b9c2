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

#ifndef DANIELL_TOOLS_CLI_HPP
#define DANIELL_TOOLS_CLI_HPP

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "daniell/dirichlet.hpp"
#include "daniell/json.hpp"
#include "daniell/lebesgue.hpp"
#include "daniell/wiener.hpp"
#include "verify.hpp"

namespace daniell::cli {

using io::Json;

enum Exit : int { Ok = 0, CheckFailed = 1, Usage = 2, MalformedInput = 3, Tolerance = 4, OutOfDomain = 5 };

/// Every flag of every command. Unset optionals take per-command defaults,
/// which are resolved before running and echoed in the output.
struct RunConfig {
	std::string command;
	std::optional<int> depth;
	std::optional<std::string> tol;
	std::string ceiling = "1000000000";
	std::optional<std::uint64_t> seed;
	std::string seed_source = "default";
	std::string kernel = "standard";
	std::string solver = "grid";
	std::string output = "-";
	std::string format = "json";
	std::string engine = "length";
	std::uint64_t walks = 100000;
	std::uint64_t paths = 1000000;
	std::string method = "quad";
	std::vector<std::string> interval;
	std::optional<std::string> function;
	std::optional<std::string> weights;
	std::optional<std::string> cylinder;
	std::string domain = "disk";
	std::string spacing = "1/128";
	std::optional<std::string> g;
	std::string x = "0,0";
	std::string op = "union";
	std::optional<std::string> a;
	std::optional<std::string> b;
	std::optional<std::string> c;
	bool quick = false;
};

namespace detail {

inline std::vector<std::string> split(const std::string &s, char sep) {
	std::vector<std::string> out;
	std::string cur;
	std::istringstream in(s);
	while (std::getline(in, cur, sep)) {
		out.push_back(cur);
	}
	if (!s.empty() && s.back() == sep) {
		out.emplace_back();
	}
	return out;
}

inline ExtReal parse_ext(const std::string &s) {
	if (s == "inf" || s == "+inf") {
		return ExtReal::pos_inf();
	}
	if (s == "-inf") {
		return ExtReal::neg_inf();
	}
	return ExtReal(parse_rational(s));
}

inline std::vector<ExtReal> parse_ext_list(const std::string &s) {
	std::vector<ExtReal> out;
	for (const auto &p : split(s, ',')) {
		out.push_back(parse_ext(p));
	}
	if (out.empty()) {
		throw ParseError("empty list");
	}
	return out;
}

inline std::vector<Rational> parse_rational_list(const std::string &s) {
	std::vector<Rational> out;
	for (const auto &p : split(s, ',')) {
		out.push_back(parse_rational(p));
	}
	if (out.empty()) {
		throw ParseError("empty list");
	}
	return out;
}

inline double parse_real(const std::string &s) {
	try {
		std::size_t used = 0;
		double v = std::stod(s, &used);
		if (used == s.size()) {
			return v;
		}
	} catch (const std::exception &) {
	}
	return to_double(parse_rational(s));
}

/// Inline JSON, or the path of a file holding it.
inline Json load_json(const std::string &arg) {
	auto first = arg.find_first_not_of(" \t\n");
	if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
		return io::parse(arg);
	}
	std::ifstream in(arg);
	if (!in) {
		throw ParseError("cannot read '" + arg + "'");
	}
	std::stringstream buf;
	buf << in.rdbuf();
	return io::parse(buf.str());
}

inline std::uint64_t resolve_seed(RunConfig &cfg) {
	if (cfg.seed) {
		cfg.seed_source = "flag";
		return *cfg.seed;
	}
	if (const char *env = std::getenv("DANIELL_SEED")) {
		try {
			std::size_t used = 0;
			cfg.seed = std::stoull(env, &used);
			if (used == std::string(env).size()) {
				cfg.seed_source = "DANIELL_SEED";
				return *cfg.seed;
			}
		} catch (const std::exception &) {
		}
		throw ParseError("DANIELL_SEED must be an unsigned integer");
	}
	cfg.seed = 0;
	return 0;
}

inline Json config_json(const RunConfig &c) {
	Json j;
	j["command"] = c.command;
	j["depth"] = c.depth ? Json(*c.depth) : Json(nullptr);
	j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
	j["ceiling"] = c.ceiling;
	j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
	j["seed_source"] = c.seed_source;
	j["kernel"] = c.kernel;
	j["solver"] = c.solver;
	j["output"] = c.output;
	j["format"] = c.format;
	j["engine"] = c.engine;
	j["walks"] = c.walks;
	j["paths"] = c.paths;
	j["method"] = c.method;
	j["interval"] = c.interval;
	j["function"] = c.function ? Json(*c.function) : Json(nullptr);
	j["weights"] = c.weights ? Json(*c.weights) : Json(nullptr);
	j["cylinder"] = c.cylinder ? Json(*c.cylinder) : Json(nullptr);
	j["domain"] = c.domain;
	j["spacing"] = c.spacing;
	j["g"] = c.g ? Json(*c.g) : Json(nullptr);
	j["x"] = c.x;
	j["op"] = c.op;
	j["a"] = c.a ? Json(*c.a) : Json(nullptr);
	j["b"] = c.b ? Json(*c.b) : Json(nullptr);
	j["c"] = c.c ? Json(*c.c) : Json(nullptr);
	j["quick"] = c.quick;
	return j;
}

struct Outcome {
	Json result;
	Json checks = Json::array();

	void check(const std::string &name, bool pass, const std::string &detail = "") {
		Json c{{"check", name}, {"pass", pass}};
		if (!detail.empty()) {
			c["detail"] = detail;
		}
		checks.push_back(std::move(c));
	}

	bool pass() const {
		return std::all_of(checks.begin(), checks.end(), [](const Json &c) { return c["pass"].get<bool>(); });
	}
};

/// Sets on the line: a ring-set object, or [[lo, hi], ...]. Finite sets: a
/// ring-set object, or comma-separated atom indices of the universe given
/// by --weights.
inline RingSet parse_set(const std::string &arg, const std::optional<Universe> &finite) {
	if (finite && arg.find_first_of("[{") == std::string::npos) {
		std::vector<std::size_t> idx;
		for (const auto &p : split(arg, ',')) {
			if (p.empty()) {
				continue;
			}
			try {
				std::size_t used = 0;
				idx.push_back(std::stoul(p, &used));
				if (used != p.size()) {
					throw ParseError("bad atom index '" + p + "'");
				}
			} catch (const std::logic_error &) {
				throw ParseError("bad atom index '" + p + "'");
			}
		}
		return RingSet::points(*finite, std::move(idx));
	}
	Json j = load_json(arg);
	if (j.is_object()) {
		return io::ring_set_from_json(j);
	}
	if (!j.is_array()) {
		throw ParseError("expected a set, got " + j.dump());
	}
	std::vector<Interval> pieces;
	for (const auto &p : j) {
		if (!p.is_array() || p.size() != 2) {
			throw ParseError("an interval is [lo, hi], got " + p.dump());
		}
		pieces.push_back(Interval{ExtReal(io::rational_from_json(p[0])), ExtReal(io::rational_from_json(p[1]))});
	}
	return RingSet::intervals(IntervalUnion(std::move(pieces)));
}

inline std::optional<Universe> finite_universe(const RunConfig &cfg) {
	if (!cfg.weights) {
		return std::nullopt;
	}
	return Universe::finite(parse_ext_list(*cfg.weights).size());
}

inline PreMeasure measure_for(const RunConfig &cfg, const std::optional<Universe> &u) {
	if (u) {
		return PreMeasure::point_weights(*u, parse_ext_list(*cfg.weights));
	}
	return PreMeasure::length();
}

inline Outcome run_rings(RunConfig &cfg) {
	if (!cfg.a || !cfg.b) {
		throw CLI::ValidationError("rings needs --a and --b");
	}
	auto u = finite_universe(cfg);
	RingSet a = parse_set(*cfg.a, u), b = parse_set(*cfg.b, u);
	SetOp op = cfg.op == "union" ? SetOp::Union : cfg.op == "intersect" ? SetOp::Intersect : SetOp::Difference;
	RingSet r = boolean_combine(op, a, b);
	PreMeasure mu = measure_for(cfg, u);
	Outcome out;
	out.result = Json{{"set", io::to_json(r)},
	                  {"measure", io::to_json(mu(r))},
	                  {"measure_a", io::to_json(mu(a))},
	                  {"measure_b", io::to_json(mu(b))}};
	// mu(a u b) + mu(a n b) = mu(a) + mu(b) and mu(a) = mu(a - b) + mu(a n b)
	out.check("inclusion_exclusion", mu(a | b) + mu(a & b) == mu(a) + mu(b));
	auto add = check_additivity(mu, {a - b, a & b});
	out.check("additivity", add.pass);
	out.check("closure", subset_of(a & b, a) && subset_of(a, a | b) && (a - b & b).empty());
	return out;
}

inline SimpleFunction parse_function(const std::string &arg) {
	if (arg.find('{') != std::string::npos) {
		return io::simple_function_from_json(load_json(arg));
	}
	auto vals = parse_rational_list(arg);
	Universe u = Universe::finite(vals.size());
	std::vector<Term> terms;
	for (std::size_t i = 0; i < vals.size(); ++i) {
		terms.push_back(Term{vals[i], RingSet::points(u, {i})});
	}
	return SimpleFunction(u, std::move(terms));
}

inline Outcome run_lattice(RunConfig &cfg) {
	if (!cfg.a) {
		throw CLI::ValidationError("lattice needs --a (and --b for binary operations)");
	}
	SimpleFunction x = parse_function(*cfg.a);
	static const std::map<std::string, LatticeOp> ops{{"plus", LatticeOp::Plus},
	                                                  {"scale", LatticeOp::Scale},
	                                                  {"meet", LatticeOp::Meet},
	                                                  {"join", LatticeOp::Join},
	                                                  {"abs", LatticeOp::Abs}};
	auto it = ops.find(cfg.op);
	if (it == ops.end()) {
		throw CLI::ValidationError("lattice --op must be plus, scale, meet, join or abs");
	}
	std::optional<SimpleFunction> y;
	if (cfg.b) {
		y = parse_function(*cfg.b);
	}
	std::optional<Rational> c;
	if (cfg.c) {
		c = parse_rational(*cfg.c);
	}
	SimpleFunction r = lattice_op(it->second, x, y, c);
	Outcome out;
	out.result = Json{{"function", io::to_json(r)}, {"canonical_input", io::to_json(canonicalize(x))}};
	if (x.universe().is_finite()) {
		Json values = Json::array();
		bool ok = true;
		for (std::size_t i = 0; i < x.universe().size(); ++i) {
			Point p{i};
			ExtReal v = r.eval(p);
			values.push_back(io::to_json(v));
			ExtReal xv = x.eval(p), yv = y ? y->eval(p) : ExtReal(0);
			ExtReal expect = it->second == LatticeOp::Plus    ? xv + yv
			                 : it->second == LatticeOp::Scale ? c.value_or(Rational(1)) * xv
			                 : it->second == LatticeOp::Meet  ? min(xv, yv)
			                 : it->second == LatticeOp::Join  ? max(xv, yv)
			                                                  : max(xv, -xv);
			ok = ok && v == expect;
		}
		out.result["values"] = values;
		out.check("pointwise", ok);
	}
	out.check("canonical", r == canonicalize(r) && canonicalize(x) == x);
	return out;
}

inline Outcome run_decompose(RunConfig &cfg) {
	if (!cfg.weights) {
		throw CLI::ValidationError("decompose needs --weights");
	}
	auto w = parse_rational_list(*cfg.weights);
	Universe u = Universe::finite(w.size());
	SignedFunctional s(u, w);
	auto d = jordan_decompose(s);
	auto weights = [](const ElementaryIntegral &i) {
		Json arr = Json::array();
		for (std::size_t a = 0; a < i.universe().size(); ++a) {
			arr.push_back(io::to_json(i.premeasure()(RingSet::points(i.universe(), {a}))));
		}
		return arr;
	};
	Outcome out;
	out.result = Json{{"Splus", weights(d.plus)}, {"Sminus", weights(d.minus)}, {"abs", weights(d.abs)}};
	if (cfg.function) {
		SimpleFunction x = parse_function(*cfg.function);
		out.result["S"] = io::to_json(s(x));
		out.result["Splus_x"] = io::to_json(d.plus(x));
		out.result["Sminus_x"] = io::to_json(d.minus(x));
		out.check("S=Splus-Sminus", s(x) == d.plus(x) - d.minus(x));
	}
	// exhaustive over 0/1 indicators for small universes: S+ is the supremum
	// of S over subsets, and S = S+ - S-, |S| = S+ + S- on each indicator
	if (w.size() <= 12) {
		Rational sup = 0;
		bool ok = true;
		for (std::size_t mask = 0; mask < (std::size_t{1} << w.size()); ++mask) {
			std::vector<std::size_t> idx;
			for (std::size_t a = 0; a < w.size(); ++a) {
				if (mask >> a & 1) {
					idx.push_back(a);
				}
			}
			auto chi = SimpleFunction::indicator(RingSet::points(u, idx));
			sup = max(sup, s(chi));
			ok = ok && s(chi) == d.plus(chi) - d.minus(chi) && d.abs(chi) == d.plus(chi) + d.minus(chi);
		}
		auto one = SimpleFunction::indicator(RingSet::full(u));
		out.check("indicator_identities", ok);
		out.check("Splus_is_supremum", d.plus(one) == sup && s.positive_part(one) == sup);
	}
	return out;
}

inline std::pair<Rational, Rational> interval_of(const RunConfig &cfg) {
	if (cfg.interval.size() != 2) {
		throw CLI::ValidationError("--interval takes two endpoints a b");
	}
	return {parse_rational(cfg.interval[0]), parse_rational(cfg.interval[1])};
}

/// Functions on the line: "t" (identity on --interval), a constant,
/// "seg:lo:hi:y0:y1;..." (linear segments) or "pl:x0:y0,x1:y1,..."
/// (piecewise linear, zero at both ends).
inline MeasurableFunction line_function(const RunConfig &cfg) {
	const std::string f = cfg.function.value_or("t");
	if (f.rfind("pl:", 0) == 0) {
		std::vector<Rational> xs, ys;
		for (const auto &pt : split(f.substr(3), ',')) {
			auto xy = split(pt, ':');
			if (xy.size() != 2) {
				throw ParseError("pl points are x:y, got '" + pt + "'");
			}
			xs.push_back(parse_rational(xy[0]));
			ys.push_back(parse_rational(xy[1]));
		}
		return lebesgue::as_measurable(lebesgue::PiecewiseLinear(xs, ys));
	}
	if (f.rfind("seg:", 0) == 0) {
		std::vector<lebesgue::Segment> segs;
		for (const auto &s : split(f.substr(4), ';')) {
			auto p = split(s, ':');
			if (p.size() != 4) {
				throw ParseError("segments are lo:hi:y0:y1, got '" + s + "'");
			}
			segs.push_back({parse_rational(p[0]), parse_rational(p[1]), parse_rational(p[2]), parse_rational(p[3])});
		}
		return lebesgue::segment_function(std::move(segs));
	}
	auto [a, b] = interval_of(cfg);
	if (f == "t") {
		return lebesgue::segment_function({lebesgue::Segment{a, b, a, b}});
	}
	Rational c = parse_rational(f);
	return lebesgue::segment_function({lebesgue::Segment{a, b, c, c}});
}

inline Outcome run_integrate(RunConfig &cfg) {
	if (!cfg.depth) {
		cfg.depth = 16;
	}
	if (!cfg.tol) {
		cfg.tol = "0";
	}
	EngineConfig ec;
	ec.n_max = *cfg.depth;
	ec.tol = parse_rational(*cfg.tol);
	ec.ceiling = parse_rational(cfg.ceiling);
	IntegralResult r;
	if (cfg.weights) {
		auto w = parse_ext_list(*cfg.weights);
		Universe u = Universe::finite(w.size());
		if (!cfg.function) {
			throw CLI::ValidationError("integrate on a finite universe needs --function values");
		}
		auto vals = parse_ext_list(*cfg.function);
		auto engine = MeasureEngine::from_premeasure(PreMeasure::point_weights(u, w));
		r = integral_bracket(MeasurableFunction::from_values(u, vals), engine, ec);
	} else {
		MeasureEngine engine = cfg.engine == "lebesgue" ? lebesgue::lebesgue_engine() : lebesgue::length_engine();
		r = integral_bracket(line_function(cfg), engine, ec);
	}
	Outcome out;
	out.result = io::to_json(r);
	out.check("bracket", r.lower <= r.value && r.value <= r.upper);
	return out;
}

inline Outcome run_lebesgue(RunConfig &cfg) {
	if (!cfg.depth) {
		cfg.depth = 1000;
	}
	if (!cfg.tol) {
		cfg.tol = "1/1000";
	}
	auto [a, b] = interval_of(cfg);
	auto r = lebesgue::interval_length_via_daniell(a, b, *cfg.depth, parse_rational(*cfg.tol));
	Outcome out;
	out.result = io::to_json(r);
	out.result["length"] = io::to_json(Rational(b - a));
	out.check("contains_length", r.contains(ExtReal(b - a)));
	return out;
}

inline wiener::Kernel kernel_of(const RunConfig &cfg) {
	return cfg.kernel == "paper" ? wiener::Kernel::Paper : wiener::Kernel::Standard;
}

inline Outcome run_wiener(RunConfig &cfg) {
	if (!cfg.cylinder) {
		throw CLI::ValidationError("wiener needs --cylinder");
	}
	if (!cfg.tol) {
		cfg.tol = "1e-8";
	}
	auto d = io::cylinder_from_json(load_json(*cfg.cylinder));
	bool mc = cfg.method == "mc";
	std::uint64_t seed = mc ? resolve_seed(cfg) : 0;
	double tol = parse_real(*cfg.tol);
	auto e = wiener::wiener_premeasure(d, mc ? wiener::Method::MonteCarlo : wiener::Method::Quadrature, tol, seed,
	                                   cfg.paths, kernel_of(cfg));
	Outcome out;
	out.result = io::to_json(e);
	out.result["cylinder"] = io::to_json(d);
	out.result["kernel"] = wiener::to_string(kernel_of(cfg));
	out.check("in_unit_interval", e.value >= 0 && e.value <= 1);
	if (!mc) {
		out.check("quad_error_within_tol", e.error <= tol);
	}
	return out;
}

inline dirichlet::Point2 parse_point(const std::string &s) {
	auto p = split(s, ',');
	if (p.size() != 2) {
		throw ParseError("a point is x,y, got '" + s + "'");
	}
	return {parse_real(p[0]), parse_real(p[1])};
}

/// Arc endpoints on the disk are multiples of pi ("pi/3"); on the square
/// they are arc-length parameters in [0, 4].
inline double arc_endpoint(const dirichlet::Domain &dom, const std::string &s) {
	if (dom.shape() == dirichlet::Shape::UnitDisk) {
		return to_double(dirichlet::parse_pi_multiple(s)) * M_PI;
	}
	return to_double(parse_rational(s));
}

inline Outcome run_dirichlet(RunConfig &cfg) {
	using namespace dirichlet;
	if (!cfg.g) {
		throw CLI::ValidationError("dirichlet needs --g");
	}
	if (cfg.domain != "disk" && cfg.domain != "square") {
		throw CLI::ValidationError("--domain must be disk or square");
	}
	Domain dom(cfg.domain == "disk" ? Shape::UnitDisk : Shape::UnitSquare, to_double(parse_rational(cfg.spacing)));
	Point2 x = parse_point(cfg.x);
	SolverConfig sc;
	sc.solver = cfg.solver == "wos" ? Solver::WalkOnSpheres : Solver::Grid;
	sc.walks = cfg.walks;
	if (sc.solver == Solver::WalkOnSpheres) {
		sc.seed = resolve_seed(cfg);
	}
	const std::string &g = *cfg.g;
	Outcome out;
	if (g.rfind("arc:", 0) == 0) {
		auto p = split(g.substr(4), ':');
		if (p.size() != 2) {
			throw ParseError("arc boundary data is arc:lo:hi");
		}
		if (!cfg.depth) {
			cfg.depth = 1024;
		}
		if (!cfg.tol) {
			cfg.tol = "1/100";
		}
		double lo = arc_endpoint(dom, p[0]), hi = arc_endpoint(dom, p[1]);
		auto r = extend_boundary(dom, x, arc_ramps_below(lo, hi, dom.period()), arc_ramps_above(lo, hi, dom.period()),
		                         *cfg.depth, parse_real(*cfg.tol), sc);
		double se = 0;
		if (sc.solver == Solver::WalkOnSpheres) {
			// the same walks evaluate the indicator itself
			se = WalkOnSpheres(dom, x, sc.walks, sc.seed, sc.eps).estimate(BoundaryFunction::arc(lo, hi, dom.period())).second;
		}
		out.result = Json{{"value", r.value},     {"stderr", se},       {"harnack_gap", r.harnack_gap},
		                  {"lower", r.lower},     {"upper", r.upper},   {"certified", r.certified},
		                  {"depth", r.depth},     {"schedule", r.schedule}};
		out.check("bracket_ordered", r.lower <= r.upper);
		return out;
	}
	BoundaryFunction bf = BoundaryFunction::constant(0);
	if (g.rfind("cos", 0) == 0 || g.rfind("sin", 0) == 0) {
		int k = g.size() > 4 && g[3] == ':' ? std::stoi(g.substr(4)) : 1;
		bool sine = g[0] == 's';
		bf = BoundaryFunction([k, sine](double t) { return sine ? std::sin(k * t) : std::cos(k * t); }, g);
	} else {
		bf = BoundaryFunction::constant(parse_real(g.rfind("const:", 0) == 0 ? g.substr(6) : g));
	}
	if (!cfg.tol) {
		cfg.tol = "1e-8";
	}
	sc.tol = parse_real(*cfg.tol);
	auto r = ix_eval(dom, x, bf, sc);
	out.result = Json{{"value", r.value}, {"stderr", r.stderr_}, {"harnack_gap", 0.0}};
	if (sc.solver == Solver::Grid) {
		out.result["residual"] = r.residual;
		out.check("residual_within_tol", r.residual < sc.tol);
	}
	return out;
}

inline Outcome run_verify_all(RunConfig &cfg) {
	std::uint64_t seed = resolve_seed(cfg);
	Outcome out;
	Json rows = Json::array();
	for (const auto &row : verify::verify_all(cfg.quick, seed)) {
		rows.push_back(Json{{"module", row.module}, {"check", row.check}, {"pass", row.pass}, {"detail", row.detail}});
		out.check(row.module + "/" + row.check, row.pass);
	}
	out.result = Json{{"rows", rows}};
	return out;
}

inline std::string csv_cell(const Json &v) {
	std::string s = v.is_string() ? v.get<std::string>() : v.dump();
	if (s.find_first_of(",\"\n") != std::string::npos) {
		std::string q = "\"";
		for (char ch : s) {
			q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
		}
		return q + "\"";
	}
	return s;
}

/// Table rows when the result has them; otherwise one row of the result's
/// fields, with nested values written as JSON text.
inline std::string to_csv(const Json &record) {
	std::ostringstream os;
	const Json &res = record["result"];
	std::vector<Json> rows;
	if (res.contains("rows")) {
		rows.assign(res["rows"].begin(), res["rows"].end());
	} else {
		Json row = res;
		row["pass"] = record["pass"];
		rows.push_back(row);
	}
	if (rows.empty()) {
		return "";
	}
	bool first = true;
	for (const auto &[k, v] : rows.front().items()) {
		os << (first ? "" : ",") << csv_cell(k);
		first = false;
	}
	os << "\n";
	for (const auto &r : rows) {
		first = true;
		for (const auto &[k, v] : r.items()) {
			os << (first ? "" : ",") << csv_cell(v);
			first = false;
		}
		os << "\n";
	}
	return os.str();
}

} // namespace detail

/// Parses argv, runs one command and writes its record. Returns the exit
/// code: 0 success, 1 a check failed, 2 usage, 3 malformed input, 4
/// tolerance not reached, 5 argument outside the domain.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
	RunConfig cfg;
	CLI::App app{"Daniell integration toolkit", "daniell"};
	app.require_subcommand(1, 1);
	app.set_help_all_flag("--help-all");

	auto common = [&](CLI::App *sub) {
		sub->add_option("--output", cfg.output, "output path, - for standard output");
		sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
	};
	auto engine_flags = [&](CLI::App *sub) {
		sub->add_option("--depth", cfg.depth, "refinement depth")->check(CLI::PositiveNumber);
		sub->add_option("--tol", cfg.tol, "tolerance");
		sub->add_option("--ceiling", cfg.ceiling, "divergence ceiling");
	};

	auto *rings = app.add_subcommand("rings", "boolean combination and pre-measure of ring sets");
	rings->add_option("--a", cfg.a, "first set")->required();
	rings->add_option("--b", cfg.b, "second set")->required();
	rings->add_option("--op", cfg.op)->check(CLI::IsMember({"union", "intersect", "difference"}));
	rings->add_option("--weights", cfg.weights, "point weights of a finite universe");
	common(rings);

	auto *lattice = app.add_subcommand("lattice", "lattice operation on simple functions");
	lattice->add_option("--a", cfg.a, "first function (values per atom or JSON)")->required();
	lattice->add_option("--b", cfg.b, "second function");
	lattice->add_option("--c", cfg.c, "scalar for --op scale");
	lattice->add_option("--op", cfg.op)->required()->check(CLI::IsMember({"plus", "scale", "meet", "join", "abs"}));
	common(lattice);

	auto *decompose = app.add_subcommand("decompose", "S = S+ - S- for signed point weights");
	decompose->add_option("--weights", cfg.weights, "signed weights")->required();
	decompose->add_option("--function", cfg.function, "a function to evaluate on");
	common(decompose);

	auto *integrate = app.add_subcommand("integrate", "dyadic level-set integral");
	integrate->add_option("--function", cfg.function, "t, a constant, seg:..., pl:..., or values per atom");
	integrate->add_option("--interval", cfg.interval, "a b")->expected(2);
	integrate->add_option("--weights", cfg.weights, "point weights of a finite universe");
	integrate->add_option("--engine", cfg.engine)->check(CLI::IsMember({"length", "lebesgue"}));
	engine_flags(integrate);
	common(integrate);

	auto *leb = app.add_subcommand("lebesgue", "interval length as a monotone limit of ramp integrals");
	leb->add_option("--interval", cfg.interval, "a b")->expected(2)->required();
	engine_flags(leb);
	common(leb);

	auto *wien = app.add_subcommand("wiener", "Wiener pre-measure of a cylinder");
	wien->add_option("--cylinder", cfg.cylinder, "cylinder JSON or file")->required();
	wien->add_option("--method", cfg.method)->check(CLI::IsMember({"quad", "mc"}));
	wien->add_option("--paths", cfg.paths)->check(CLI::PositiveNumber);
	wien->add_option("--seed", cfg.seed);
	wien->add_option("--kernel", cfg.kernel)->check(CLI::IsMember({"standard", "paper"}));
	wien->add_option("--tol", cfg.tol);
	common(wien);

	auto *dir = app.add_subcommand("dirichlet", "harmonic extension of boundary data");
	dir->add_option("--domain", cfg.domain)->check(CLI::IsMember({"disk", "square"}));
	dir->add_option("--g", cfg.g, "const:c, cos[:k], sin[:k] or arc:lo:hi")->required();
	dir->add_option("--x", cfg.x, "interior point x,y");
	dir->add_option("--solver", cfg.solver)->check(CLI::IsMember({"grid", "wos"}));
	dir->add_option("--walks", cfg.walks)->check(CLI::PositiveNumber);
	dir->add_option("--seed", cfg.seed);
	dir->add_option("--spacing", cfg.spacing, "grid spacing h");
	dir->add_option("--depth", cfg.depth, "ramp depth for arc data")->check(CLI::PositiveNumber);
	dir->add_option("--tol", cfg.tol);
	common(dir);

	auto *va = app.add_subcommand("verify-all", "every module's invariant suite");
	va->add_flag("--quick", cfg.quick, "smaller sample sizes");
	va->add_option("--seed", cfg.seed);
	common(va);

	std::vector<std::string> argv_store{"daniell"};
	argv_store.insert(argv_store.end(), args.begin(), args.end());
	std::vector<char *> argv;
	for (auto &s : argv_store) {
		argv.push_back(s.data());
	}
	try {
		app.parse(static_cast<int>(argv.size()), argv.data());
	} catch (const CLI::CallForHelp &) {
		out << app.help();
		return Ok;
	} catch (const CLI::CallForAllHelp &) {
		out << app.help("", CLI::AppFormatMode::All);
		return Ok;
	} catch (const CLI::ParseError &e) {
		err << "usage error: " << e.what() << "\n";
		return Usage;
	}
	cfg.command = app.get_subcommands().front()->get_name();

	detail::Outcome outcome;
	try {
		if (cfg.command == "rings") {
			outcome = detail::run_rings(cfg);
		} else if (cfg.command == "lattice") {
			outcome = detail::run_lattice(cfg);
		} else if (cfg.command == "decompose") {
			outcome = detail::run_decompose(cfg);
		} else if (cfg.command == "integrate") {
			outcome = detail::run_integrate(cfg);
		} else if (cfg.command == "lebesgue") {
			outcome = detail::run_lebesgue(cfg);
		} else if (cfg.command == "wiener") {
			outcome = detail::run_wiener(cfg);
		} else if (cfg.command == "dirichlet") {
			outcome = detail::run_dirichlet(cfg);
		} else {
			outcome = detail::run_verify_all(cfg);
		}
	} catch (const CLI::ValidationError &e) {
		err << "usage error: " << e.what() << "\n";
		return Usage;
	} catch (const ParseError &e) {
		err << "malformed input: " << e.what() << "\n";
		return MalformedInput;
	} catch (const nlohmann::json::exception &e) {
		err << "malformed input: " << e.what() << "\n";
		return MalformedInput;
	} catch (const ToleranceError &e) {
		err << "tolerance not reached: " << e.what() << " (achieved " << e.achieved() << ")\n";
		return Tolerance;
	} catch (const DomainError &e) {
		err << "domain error: " << e.what() << "\n";
		return OutOfDomain;
	} catch (const PreconditionError &e) {
		err << "precondition failed: " << e.what() << "\n";
		return OutOfDomain;
	} catch (const std::exception &e) {
		err << "error: " << e.what() << "\n";
		return CheckFailed;
	}

	Json record;
	record["command"] = cfg.command;
	record["config"] = detail::config_json(cfg);
	record["result"] = outcome.result;
	record["checks"] = outcome.checks;
	record["pass"] = outcome.pass();
	std::string text = cfg.format == "csv" ? detail::to_csv(record) : record.dump(2) + "\n";
	if (cfg.output == "-") {
		out << text;
	} else {
		std::ofstream f(cfg.output, std::ios::binary);
		if (!f) {
			err << "cannot write '" << cfg.output << "'\n";
			return Usage;
		}
		f << text;
	}
	return outcome.pass() ? Ok : CheckFailed;
}

} // namespace daniell::cli

#endif // DANIELL_TOOLS_CLI_HPP
