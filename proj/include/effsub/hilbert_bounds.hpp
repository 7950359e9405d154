/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/numbers.hpp"
#include "effsub/upoly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace effsub {

/// Upper bound Delta * C(m+n, n) on H_X(m).
inline Z chardin_upper(long m, long n, long delta)
{
	require(m >= 1, ErrorKind::PreconditionViolated, "chardin_upper: m >= 1");
	return delta * binom(m + n, n);
}

/// Lower bound C(m+n+1, n+1) - C(m-Delta+n+1, n+1) on H_X(m).
inline Z sombra_lower(long m, long n, long delta)
{
	require(m >= 1, ErrorKind::PreconditionViolated, "sombra_lower: m >= 1");
	return binom(m + n + 1, n + 1) - binom(m - delta + n + 1, n + 1);
}

/// 1^k + ... + l^k.
inline Z power_sum(long k, long l)
{
	Z s = 0;
	for (long i = 1; i <= l; ++i)
		s += ipow(Z(i), static_cast<unsigned long>(k));
	return s;
}

/// Lower and upper bounds of the power sum; the sandwich is checked.
inline std::pair<Q, Q> power_sum_bounds(long k, long l)
{
	require(k >= 1 && l >= 1, ErrorKind::PreconditionViolated, "power_sum_bounds: k, l >= 1");
	Q upper = Q(ipow(Z(l + 1), static_cast<unsigned long>(k + 1))) / Q(k + 1);
	Q lower = upper - Q(ipow(Z(l + 1), static_cast<unsigned long>(k))) / 2;
	lower.canonicalize();
	upper.canonicalize();
	Z s = power_sum(k, l);
	require(lower <= s && s <= upper, ErrorKind::InvariantViolated, "power sum bounds failed");
	return {lower, upper};
}

inline Z G_value(long z, long n, long delta) { return sombra_lower(z, n, delta); }

/// T(t) = sum_{i=1}^t G(i d).
inline Z T_value(long t, long n, long delta, long d)
{
	Z s = 0;
	for (long i = 1; i <= t; ++i)
		s += G_value(i * d, n, delta);
	return s;
}

namespace detail {

/// Coefficients (low to high) of the polynomial lower bound for d T(m/d - 1).
inline UPoly t_lower_bound_poly(long n, long delta, long d)
{
	std::vector<Q> c(static_cast<std::size_t>(n + 2));
	c[n + 1] = Q(delta) / Q(factorial(n + 1));
	c[n] = -Q(delta * d + delta * std::labs(n + 2 - delta)) / Q(2 * factorial(n));
	c[n - 1] -= Q(ipow(Z(n + 1), 3) * ipow(Z(2 * delta), static_cast<unsigned long>(n + 1)));
	for (auto &x : c)
		x.canonicalize();
	return UPoly(std::move(c));
}

/// m * (Delta (m+n)^n / n! + 1), an upper bound for m (H_X(m) + 1).
inline UPoly ratio_numerator_poly(long n, long delta)
{
	UPoly p = UPoly{Q(n), Q(1)}.pow(static_cast<unsigned>(n)) * UPoly(Q(delta) / Q(factorial(n)));
	return UPoly::t() * (p + UPoly(1));
}

/// Cauchy bound: every real root is below 1 + max |a_i / a_lead|.
inline Q cauchy_root_bound(const UPoly &p)
{
	Q best = 0;
	const Q lead = p.lead();
	for (long i = 0; i < p.degree(); ++i)
		best = std::max(best, Q(abs(p.coeff(static_cast<std::size_t>(i)) / lead)));
	return 1 + best;
}

} // namespace detail

inline Q T_lower_bound(long m, long n, long delta, long d)
{
	require(d >= 1 && m >= d && m % d == 0, ErrorKind::PreconditionViolated, "T_lower_bound: d | m, m >= d");
	return detail::t_lower_bound_poly(n, delta, d).eval(Q(m));
}

/// Degree from which the ratio bound holds for every X with invariants (n, Delta).
inline Z threshold_a_eps(long n, long delta, long d, const Q &eps)
{
	require(n >= 1 && delta >= 1 && d >= 1 && eps > 0, ErrorKind::PreconditionViolated,
	        "threshold_a_eps: n, Delta, d >= 1 and eps > 0");
	UPoly tlb = detail::t_lower_bound_poly(n, delta, d);
	UPoly gap = tlb * UPoly(Q(n + 1) + eps) - detail::ratio_numerator_poly(n, delta);
	Q b = std::max(detail::cauchy_root_bound(gap), detail::cauchy_root_bound(tlb));
	Z steps = floor_q(b) + 1;
	return d * ceil_q(Q(steps, Z(d)));
}

/// H table lookup; an empty result means the entry is missing.
using HTable = std::function<std::optional<Z>(long)>;

inline HTable table_from_map(std::map<long, Z> values)
{
	return [v = std::move(values)](long m) -> std::optional<Z> {
		auto it = v.find(m);
		if (it == v.end())
			return std::nullopt;
		return it->second;
	};
}

/// H of a degree-Delta hypersurface of dimension n (equality case of the lower bound).
inline HTable hypersurface_table(long n, long delta)
{
	return [n, delta](long m) -> std::optional<Z> {
		if (m < 0)
			return std::nullopt;
		return binom(m + n + 1, n + 1) - binom(m - delta + n + 1, n + 1);
	};
}

struct RatioResult {
	Q lhs;
	Q rhs;
	bool ok = false;
};

namespace detail {
inline Z table_at(const HTable &h, long m)
{
	auto v = h(m);
	if (!v)
		throw Error(ErrorKind::MissingTableEntry, "H(" + std::to_string(m) + ") missing");
	return *v;
}
} // namespace detail

/// m (H(m) + 1) / sum_{i=1}^{m/d-1} H(i d) against d (n + 1 + eps).
inline RatioResult ratio_check(const HTable &h, long m, long d, long n, const Q &eps)
{
	require(d >= 1 && m % d == 0 && m >= 2 * d, ErrorKind::PreconditionViolated, "ratio_check: d | m and m >= 2d");
	Z den = 0;
	for (long i = 1; i <= m / d - 1; ++i)
		den += detail::table_at(h, i * d);
	require(den > 0, ErrorKind::PreconditionViolated, "ratio_check: vanishing denominator sum");
	RatioResult r;
	r.lhs = Q(m * (detail::table_at(h, m) + 1), den);
	r.lhs.canonicalize();
	r.rhs = d * (Q(n + 1) + eps);
	r.ok = r.lhs <= r.rhs;
	return r;
}

/// First multiple of d in [from, to] where the ratio bound fails; running sums keep the scan linear.
inline std::optional<long> ratio_scan(const HTable &h, long n, long d, const Q &eps, long from, long to)
{
	require(d >= 1 && from >= 2 * d, ErrorKind::PreconditionViolated, "ratio_scan: from >= 2d");
	long m = ((from + d - 1) / d) * d;
	Z den = 0;
	for (long i = 1; i <= m / d - 1; ++i)
		den += detail::table_at(h, i * d);
	const Q rhs = d * (Q(n + 1) + eps);
	for (; m <= to; m += d) {
		require(den > 0, ErrorKind::PreconditionViolated, "ratio_scan: vanishing denominator sum");
		Q lhs(m * (detail::table_at(h, m) + 1), den);
		lhs.canonicalize();
		if (lhs > rhs)
			return m;
		den += detail::table_at(h, m);
	}
	return std::nullopt;
}

} // namespace effsub
