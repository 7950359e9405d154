/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/polynomial.hpp"
#include "effsub/rational_function.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace effsub {

/// Point of P^M(K) given by coordinates, not all zero.
class ProjectivePoint {
public:
	ProjectivePoint() = default;
	explicit ProjectivePoint(std::vector<K> coords) : x_(std::move(coords))
	{
		require(std::any_of(x_.begin(), x_.end(), [](const K &c) { return !c.is_zero(); }),
		        ErrorKind::ZeroElement, "projective point with all coordinates zero");
	}
	ProjectivePoint(std::initializer_list<K> coords) : ProjectivePoint(std::vector<K>(coords)) {}

	std::size_t size() const noexcept { return x_.size(); }
	const K &operator[](std::size_t i) const { return x_[i]; }
	const std::vector<K> &coords() const noexcept { return x_; }
	std::span<const K> span() const noexcept { return x_; }

	ProjectivePoint scaled(const K &a) const
	{
		std::vector<K> y;
		y.reserve(x_.size());
		for (const auto &c : x_)
			y.push_back(a * c);
		return ProjectivePoint(std::move(y));
	}

	std::string str() const
	{
		std::string s = "[";
		for (std::size_t i = 0; i < x_.size(); ++i)
			s += (i ? " : " : "") + x_[i].str();
		return s + "]";
	}

	friend bool operator==(const ProjectivePoint &, const ProjectivePoint &) = default;

private:
	std::vector<K> x_;
};

/// Finite set of places without duplicates.
class PlaceSet {
public:
	PlaceSet() = default;
	explicit PlaceSet(const std::vector<Place> &ps)
	{
		for (const auto &p : ps)
			require(set_.insert(p).second, ErrorKind::PreconditionViolated, "duplicate place " + p.str());
	}
	std::size_t cardinality() const noexcept { return set_.size(); }
	long degree() const
	{
		long d = 0;
		for (const auto &p : set_)
			d += p.degree();
		return d;
	}
	auto begin() const { return set_.begin(); }
	auto end() const { return set_.end(); }

private:
	std::set<Place> set_;
};

/// min of ord_p over the nonzero entries; LONG_MAX when all entries are zero.
inline long min_order(const Place &p, std::span<const K> values)
{
	long e = LONG_MAX;
	for (const auto &v : values)
		if (!v.is_zero())
			e = std::min(e, order_at(v, p));
	return e;
}

/// -sum_p min_i ord_p(v_i) deg p over all places, for a list with a nonzero entry.
inline Q height_of_values(std::span<const K> values)
{
	std::vector<Divisor> divs;
	std::set<Place> places;
	for (const auto &v : values) {
		if (v.is_zero())
			continue;
		divs.push_back(divisor(v));
		for (const auto &[p, e] : divs.back())
			places.insert(p);
	}
	long h = 0;
	for (const auto &p : places) {
		long e = LONG_MAX;
		for (const auto &d : divs) {
			auto it = d.find(p);
			e = std::min(e, it == d.end() ? 0L : it->second);
		}
		h -= e * p.degree();
	}
	return Q(h);
}

/// e_p(x); depends on the chosen coordinates.
inline long gauss_order_point(const Place &p, const ProjectivePoint &x)
{
	return min_order(p, x.span());
}

namespace detail {
inline std::vector<K> coefficient_family(std::span<const HomogeneousPoly> qs)
{
	require(!qs.empty(), ErrorKind::ZeroPolynomial, "empty polynomial family");
	std::vector<K> cs;
	for (const auto &q : qs) {
		require(!q.is_zero(), ErrorKind::ZeroPolynomial, "zero polynomial in family");
		for (const auto &[m, c] : q.terms())
			cs.push_back(c);
	}
	return cs;
}
} // namespace detail

/// e_p(Q_1, ..., Q_q): min of ord_p over all coefficients.
inline long gauss_order_poly(const Place &p, std::span<const HomogeneousPoly> qs)
{
	return min_order(p, detail::coefficient_family(qs));
}
inline long gauss_order_poly(const Place &p, const HomogeneousPoly &q)
{
	return gauss_order_poly(p, std::span<const HomogeneousPoly>(&q, 1));
}

inline Q height_point(const ProjectivePoint &x) { return height_of_values(x.span()); }

inline Q height_poly_family(std::span<const HomogeneousPoly> qs)
{
	return height_of_values(detail::coefficient_family(qs));
}
inline Q height_poly(const HomogeneousPoly &q)
{
	return height_poly_family(std::span<const HomogeneousPoly>(&q, 1));
}

/// lambda_{p,Q}(x); throws PointOnDivisor when Q(x) = 0.
inline Q weil(const Place &p, const HomogeneousPoly &q, const ProjectivePoint &x)
{
	require(q.nvars() == x.size(), ErrorKind::VarCountMismatch, "weil: point and form sizes differ");
	K v = q.evaluate(x.span());
	require(!v.is_zero(), ErrorKind::PointOnDivisor, "Q(x) = 0 for Q = " + q.str() + ", x = " + x.str());
	long val = order_at(v, p) - q.degree() * gauss_order_point(p, x) - gauss_order_poly(p, q);
	return Q(val * p.degree());
}

} // namespace effsub
