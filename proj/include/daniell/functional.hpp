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

#ifndef DANIELL_FUNCTIONAL_HPP
#define DANIELL_FUNCTIONAL_HPP

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "daniell/sequence.hpp"

namespace daniell {

/// The positive linear functional I(x) = sum c_i mu(R_i) induced on simple
/// functions by a nonnegative pre-measure.
class ElementaryIntegral {
public:
	explicit ElementaryIntegral(PreMeasure mu) : mu_(std::move(mu)) {
		if (mu_.kind() != PreMeasure::Kind::PointWeights && mu_.kind() != PreMeasure::Kind::Length) {
			throw DomainError("an I-integral needs an exact nonnegative pre-measure, got " + mu_.name());
		}
	}

	const PreMeasure &premeasure() const noexcept { return mu_; }
	const Universe &universe() const noexcept { return mu_.universe(); }

	/// I(x) on the canonical form of x.
	Rational operator()(const SimpleFunction &x) const { return sum_terms(canonicalize(x)); }

	/// I(x) summed over x's terms as given, without canonicalizing.
	Rational integrate_raw(const SimpleFunction &x) const { return sum_terms(x); }

private:
	Rational sum_terms(const SimpleFunction &x) const {
		require_same_universe(mu_.universe(), x.universe());
		Rational total = 0;
		for (std::size_t i = 0; i < x.terms().size(); ++i) {
			const auto &t = x.terms()[i];
			if (t.coeff == 0) {
				continue;
			}
			ExtReal m = mu_(t.set);
			if (!m.is_finite()) {
				throw DomainError("term " + std::to_string(i) + " (" + to_string(t.coeff) + "*chi" + to_string(t.set) +
				                  ") has infinite measure");
			}
			total += t.coeff * m.value();
		}
		return total;
	}

	PreMeasure mu_;
};

inline Rational integrate_simple(const ElementaryIntegral &i, const SimpleFunction &x) { return i(x); }

/// A signed functional S(x) = sum_a nu({a}) x(a) on a finite universe, with
/// bound M(x) = sum_a |nu({a})| x(a) on nonnegative x.
class SignedFunctional {
public:
	SignedFunctional(Universe u, std::vector<Rational> weights)
	    : universe_(std::move(u)), weights_(std::move(weights)) {
		if (!universe_.is_finite() || weights_.size() != universe_.size()) {
			throw DomainError("a signed functional needs one weight per atom of a finite universe");
		}
	}

	const Universe &universe() const noexcept { return universe_; }
	const std::vector<Rational> &weights() const noexcept { return weights_; }

	Rational operator()(const SimpleFunction &x) const {
		return weighted(x, [](const Rational &w) { return w; });
	}

	/// M(x) for x >= 0.
	Rational bound(const SimpleFunction &x) const {
		require_nonnegative(x, "bound M");
		return weighted(x, [](const Rational &w) { return abs(w); });
	}

	/// P(x) = sup { S(phi) : 0 <= phi <= x, phi simple } for x >= 0. On atoms
	/// the feasible set is a box and S is linear, so the supremum puts
	/// phi(a) = x(a) where nu({a}) > 0 and 0 elsewhere.
	Rational positive_part(const SimpleFunction &x) const {
		require_nonnegative(x, "positive part P");
		return weighted(x, [](const Rational &w) { return max(w, Rational(0)); });
	}

	/// S+(x) = P(x v 0) - P((-x) v 0) for any simple x.
	Rational splus(const SimpleFunction &x) const {
		return positive_part(daniell::positive_part(x)) - positive_part(daniell::positive_part(-x));
	}

private:
	template <class Map>
	Rational weighted(const SimpleFunction &x, Map map) const {
		require_same_universe(universe_, x.universe());
		Rational total = 0;
		for (const auto &t : x.terms()) {
			for (auto a : t.set.atoms()) {
				total += t.coeff * map(weights_[a]);
			}
		}
		return total;
	}

	void require_nonnegative(const SimpleFunction &x, const char *what) const {
		require_same_universe(universe_, x.universe());
		if (auto p = find_negative(x)) {
			throw PreconditionError(std::string(what) + " needs a nonnegative argument", describe(universe_, *p));
		}
	}

	Universe universe_;
	std::vector<Rational> weights_;
};

inline Rational positive_part(const SignedFunctional &s, const SimpleFunction &x) { return s.positive_part(x); }

/// S = S+ - S-, |S| = S+ + S-.
struct DecomposedFunctional {
	ElementaryIntegral plus;
	ElementaryIntegral minus;
	ElementaryIntegral abs;
};

/// The decomposition induced by nu+ = max(nu, 0), nu- = max(-nu, 0) and |nu|.
inline DecomposedFunctional jordan_decompose(const SignedFunctional &s) {
	std::vector<ExtReal> plus, minus, total;
	for (const auto &w : s.weights()) {
		plus.emplace_back(max(w, Rational(0)));
		minus.emplace_back(max(Rational(-w), Rational(0)));
		total.emplace_back(abs(w));
	}
	return DecomposedFunctional{
	    ElementaryIntegral(PreMeasure::point_weights(s.universe(), std::move(plus))),
	    ElementaryIntegral(PreMeasure::point_weights(s.universe(), std::move(minus))),
	    ElementaryIntegral(PreMeasure::point_weights(s.universe(), std::move(total))),
	};
}

/// One checked axiom instance.
struct AxiomRecord {
	std::string axiom; // "D1", "D2", "D3", "S1", "S2", "S3"
	int depth = 0;
	Rational achieved = 0;
	Rational tol = 0;
	bool pass = false;
	std::optional<std::string> witness;
	std::optional<std::string> sequence;
};

struct AxiomReport {
	std::vector<AxiomRecord> records;

	bool pass() const {
		return std::all_of(records.begin(), records.end(), [](const AxiomRecord &r) { return r.pass; });
	}
};

namespace detail {

inline const std::pair<Rational, Rational> &linearity_coefficients(std::size_t i) {
	static const std::pair<Rational, Rational> table[] = {
	    {Rational(2), Rational(3)},
	    {Rational(-1), Rational(1, 2)},
	    {Rational(5, 3), Rational(-2)},
	    {Rational(0), Rational(7)},
	};
	return table[i % 4];
}

/// Largest |L(a x + b y) - a L(x) - b L(y)| over consecutive sample pairs.
template <class F, class L>
AxiomRecord linearity(const char *axiom, const L &functional, std::span<const F> samples) {
	using Tr = T0Traits<F>;
	AxiomRecord r{axiom};
	for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
		const auto &[a, b] = linearity_coefficients(i);
		const F &x = samples[i];
		const F &y = samples[i + 1];
		Rational residual = functional(Tr::add(Tr::scale(a, x), Tr::scale(b, y))) - a * functional(x) - b * functional(y);
		if (abs(residual) > r.achieved) {
			r.achieved = abs(residual);
			r.witness = "pair " + std::to_string(i);
		}
	}
	r.pass = (r.achieved == 0);
	return r;
}

/// Continuity along sequences decreasing to 0: |L(x_depth)| < tol.
template <class F, class L>
std::vector<AxiomRecord> continuity(const char *axiom, const L &functional,
                                    std::span<const MonotoneSequence<F>> seqs, int depth, const Rational &tol) {
	std::vector<AxiomRecord> out;
	for (const auto &seq : seqs) {
		if (seq.direction() != Direction::Decreasing) {
			throw DomainError("continuity check needs a decreasing sequence, got '" + seq.name() + "'");
		}
		seq.certify(depth);
		if (auto neg = T0Traits<F>::negative_point(seq(depth))) {
			throw PreconditionError("sequence '" + seq.name() + "' must stay nonnegative",
			                        "n=" + std::to_string(depth) + ", " + *neg);
		}
		AxiomRecord r{axiom, depth};
		r.achieved = abs(functional(seq(depth)));
		r.tol = tol;
		r.pass = r.achieved < tol;
		r.sequence = seq.name();
		out.push_back(std::move(r));
	}
	return out;
}

} // namespace detail

/// Checks (D1) exact linearity on consecutive sample pairs, (D3) positivity
/// on |x| and x v 0 of every sample, and (D2) I(x_depth) < tol for each
/// decreasing sequence. (D2) is finite-depth evidence: the record states the
/// achieved value, not the limit.
template <class F, class I>
AxiomReport verify_i_axioms(const I &integral, std::span<const MonotoneSequence<F>> seqs, int depth,
                            const Rational &tol, std::span<const F> samples) {
	using Tr = T0Traits<F>;
	AxiomReport rep;
	rep.records.push_back(detail::linearity<F>("D1", integral, samples));
	for (auto &r : detail::continuity<F>("D2", integral, seqs, depth, tol)) {
		rep.records.push_back(std::move(r));
	}
	AxiomRecord pos{"D3"};
	pos.pass = true;
	for (std::size_t i = 0; i < samples.size(); ++i) {
		for (const F &x : {Tr::abs(samples[i]), Tr::positive_part(samples[i])}) {
			Rational v = integral(x);
			if (v < 0) {
				pos.pass = false;
				pos.achieved = v;
				pos.witness = "sample " + std::to_string(i) + ": " + Tr::show(x);
			}
		}
	}
	rep.records.push_back(std::move(pos));
	return rep;
}

/// (S1) linearity, (S2) continuity along decreasing sequences and (S3)
/// |S(x)| <= M(|x|) on every sample. `achieved` for S3 is the smallest slack.
template <class F, class S, class M>
AxiomReport verify_s_axioms(const S &functional, const M &bound, std::span<const MonotoneSequence<F>> seqs,
                            int depth, const Rational &tol, std::span<const F> samples) {
	using Tr = T0Traits<F>;
	AxiomReport rep;
	rep.records.push_back(detail::linearity<F>("S1", functional, samples));
	for (auto &r : detail::continuity<F>("S2", functional, seqs, depth, tol)) {
		rep.records.push_back(std::move(r));
	}
	AxiomRecord b{"S3"};
	b.pass = true;
	std::optional<Rational> slack;
	for (std::size_t i = 0; i < samples.size(); ++i) {
		Rational s = bound(Tr::abs(samples[i])) - abs(functional(samples[i]));
		if (!slack || s < *slack) {
			slack = s;
		}
		if (s < 0 && b.pass) {
			b.pass = false;
			b.witness = "sample " + std::to_string(i) + ": " + Tr::show(samples[i]);
		}
	}
	b.achieved = slack.value_or(Rational(0));
	rep.records.push_back(std::move(b));
	return rep;
}

} // namespace daniell

#endif // DANIELL_FUNCTIONAL_HPP
