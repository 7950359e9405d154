/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/heights.hpp"
#include "effsub/hilbert_bounds.hpp"
#include "effsub/numbers.hpp"
#include "effsub/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace effsub {

/// b(m, n, M) = (4m)^(n+1) + (5(n+1)Delta)^((n+1)M(M-1)/2 + M 2^M).
inline Z b_const(long m, long n, long big_m, long delta)
{
	require(n >= 0 && big_m >= 1 && delta >= 1, ErrorKind::PreconditionViolated, "b_const: invalid shape");
	require(m >= std::max(3L, (n + 1) * delta), ErrorKind::PreconditionViolated,
	        "b_const: m >= max{3, (n+1) Delta}");
	long e = (n + 1) * big_m * (big_m - 1) / 2 + big_m * (1L << big_m);
	return ipow(Z(4 * m), static_cast<unsigned long>(n + 1)) +
	       ipow(Z(5 * (n + 1) * delta), static_cast<unsigned long>(e));
}

/// (6 max{(N+1) Delta, d})^((n+1)(M^2+M)).
inline Z lemma37_power(long n, long big_m, long big_n, long delta, long d)
{
	return ipow(Z(6 * std::max((big_n + 1) * delta, d)), static_cast<unsigned long>((n + 1) * (big_m * big_m + big_m)));
}

inline Q lemma37_const(long n, long big_m, long big_n, long delta, long d, const Q &h_fx, const Q &h_q_family)
{
	return Q(lemma37_power(n, big_m, big_n, delta, d)) * (h_fx + h_q_family);
}

/// d (floor(a_eps / d) + 1), raised to the least multiple of d that is >= lower.
inline long choose_m(const Z &a_eps, long d, long lower = 0)
{
	require(a_eps >= 1 && d >= 1, ErrorKind::PreconditionViolated, "choose_m: a_eps, d >= 1");
	Z m = d * (floor_div(a_eps, Z(d)) + 1);
	if (m < lower)
		m = d * ((lower + d - 1) / d);
	require(m.fits_slong_p(), ErrorKind::PreconditionViolated, "choose_m: degree too large");
	return m.get_si();
}

struct ConstantInputs {
	long n = 1;
	long delta = 1;
	long big_m = 1;
	long big_n = 1;
	long q = 1;
	std::vector<long> d_i;
	Q eps = 1;
	long s_card = 0;
	long s_degree = 0;
	Q h_fx = 0;
	/// Height of the normalized family (Q_i / a_i)^(d/d_i).
	Q h_q_family = 0;
	/// h(Q_i) of the original divisors.
	std::vector<Q> h_q_i;
	/// sum_{p in S} e_p(Q_1, ..., Q_q) deg p.
	Q e_s_term = 0;
	Q c1 = 0;
	Q c1_prime = 0;
	/// Overrides the degree picked from a_eps.
	std::optional<long> m;

	long d() const
	{
		long l = 1;
		for (long x : d_i)
			l = std::lcm(l, x);
		return l;
	}
};

struct EffectiveConstants {
	Z b;
	Z lemma37_power;
	Q lemma37_a;
	Q b1;
	Q b2;
	Q b3;
	Z a_eps;
	long m = 0;
	long d = 1;
	Z h_m;
	Z S_sum;
	Q c_eps;
	Q c_tilde_prime_eps;
	Q c_prime_eps;
	/// True when a missing table entry was replaced by a Hilbert function bound.
	bool used_bound_fallback = false;
};

/// Every constant of the main inequality, exactly.
inline EffectiveConstants assemble_constants(const ConstantInputs &in, const HTable &h, bool allow_bound_fallback = false)
{
	require(in.n >= 1 && in.big_n >= in.n, ErrorKind::PreconditionViolated, "constants: N >= n >= 1");
	require(in.q >= in.n + 1, ErrorKind::PreconditionViolated, "constants: q >= n + 1");
	require(static_cast<long>(in.d_i.size()) == in.q && static_cast<long>(in.h_q_i.size()) == in.q,
	        ErrorKind::PreconditionViolated, "constants: one degree and height per divisor");
	require(std::all_of(in.d_i.begin(), in.d_i.end(), [](long x) { return x >= 1; }),
	        ErrorKind::PreconditionViolated, "constants: divisor degrees >= 1");
	require(in.eps > 0 && in.h_fx >= 0 && in.h_q_family >= 0, ErrorKind::PreconditionViolated,
	        "constants: eps > 0 and heights >= 0");
	require(in.s_card >= 0, ErrorKind::PreconditionViolated, "constants: |S| >= 0");

	EffectiveConstants c;
	c.d = in.d();
	const long lower = std::max(3L, (in.n + 1) * in.delta);
	c.a_eps = threshold_a_eps(in.n, in.delta, c.d, in.eps / Q(in.big_n));
	c.m = in.m ? *in.m : choose_m(c.a_eps, c.d, lower);
	require(c.m >= lower && c.m % c.d == 0, ErrorKind::PreconditionViolated,
	        "constants: m >= max{3, (n+1) Delta} and d | m");

	auto lookup = [&](long k, bool upper) -> Z {
		if (auto v = h(k))
			return *v;
		if (!allow_bound_fallback)
			throw Error(ErrorKind::MissingTableEntry, "H(" + std::to_string(k) + ") missing");
		c.used_bound_fallback = true;
		return upper ? chardin_upper(k, in.n, in.delta) : sombra_lower(k, in.n, in.delta);
	};
	c.h_m = lookup(c.m, true);
	for (long i = 1; i <= c.m / c.d - 1; ++i)
		c.S_sum += lookup(i * c.d, false);
	require(c.S_sum > 0, ErrorKind::PreconditionViolated, "constants: S(m/d - 1) = 0");

	const Q big_n(in.big_n), q(in.q), s(in.s_card), d(c.d), m(c.m);
	c.b = b_const(c.m, in.n, in.big_m, in.delta);
	c.lemma37_power = lemma37_power(in.n, in.big_m, in.big_n, in.delta, c.d);
	c.lemma37_a = Q(c.lemma37_power) * (in.h_fx + in.h_q_family);
	c.b1 = (m + 1) * Q(c.h_m) * Q(c.b) * (in.h_fx + in.h_q_family);
	c.b2 = s * c.b1;
	c.b3 = c.lemma37_a * (q - big_n) * s - q * in.e_s_term;
	c.c_eps = (in.c1 + Q(in.big_m + 2) * Q(c.b) * in.h_fx) / m;

	const Q den = d * Q(c.S_sum);
	c.c_tilde_prime_eps = Q(c.lemma37_power) * (in.h_fx + in.h_q_family) * (q - big_n) * s / d +
	                      q / d * in.h_q_family + big_n * (c.b2 + in.c1_prime) / den;

	Q weighted = 0, scaled = 0;
	for (std::size_t i = 0; i < in.d_i.size(); ++i) {
		weighted += in.h_q_i[i] / Q(in.d_i[i]);
		scaled += d / Q(in.d_i[i]) * in.h_q_i[i];
	}
	c.c_prime_eps = Q(c.lemma37_power) * (in.h_fx / d + weighted) * (q - big_n) * s + q * weighted +
	                big_n * (s * (m + 1) * Q(c.h_m) * Q(c.b) * (in.h_fx + scaled) + in.c1_prime) / den;

	for (Q *x : {&c.lemma37_a, &c.b1, &c.b2, &c.b3, &c.c_eps, &c.c_tilde_prime_eps, &c.c_prime_eps})
		x->canonicalize();
	return c;
}

/// (Q_i / a_i)^(d/d_i) with a_i the coefficient of the grlex-largest monomial of Q_i.
struct LcmReduction {
	long d = 1;
	std::vector<HomogeneousPoly> normalized;
	std::vector<K> a;
	std::vector<long> exponents;
};

inline LcmReduction lcm_reduction(const std::vector<HomogeneousPoly> &qs)
{
	LcmReduction r;
	for (const auto &q : qs) {
		require(!q.is_zero(), ErrorKind::ZeroPolynomial, "lcm_reduction: zero divisor");
		r.d = std::lcm(r.d, static_cast<long>(q.degree()));
	}
	for (const auto &q : qs) {
		K a = q.terms().begin()->second;
		long e = r.d / q.degree();
		r.a.push_back(a);
		r.exponents.push_back(e);
		r.normalized.push_back((a.inverse() * q).pow(static_cast<unsigned>(e)));
	}
	return r;
}

/// lambda_{p, (Q_i/a_i)^(d/d_i)}(x) == (d/d_i) lambda_{p, Q_i}(x).
inline bool weil_scaling_holds(const LcmReduction &r, const std::vector<HomogeneousPoly> &qs, std::size_t i,
                               const Place &p, const ProjectivePoint &x)
{
	return weil(p, r.normalized.at(i), x) == Q(r.exponents.at(i)) * weil(p, qs.at(i), x);
}

} // namespace effsub
