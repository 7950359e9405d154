/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/factor.hpp"
#include "effsub/upoly.hpp"

#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <utility>

namespace effsub {

/// Element of K = Q(t) in canonical form: monic denominator, gcd(num, den) = 1.
class RationalFunction {
public:
	RationalFunction() : den_(1) {}
	RationalFunction(long c) : num_(c), den_(1) {}
	RationalFunction(const Q &c) : num_(c), den_(1) {}
	RationalFunction(UPoly p) : num_(std::move(p)), den_(1) {}
	RationalFunction(UPoly num, UPoly den)
	{
		require(!den.is_zero(), ErrorKind::ZeroElement, "zero denominator");
		if (num.is_zero()) {
			den_ = UPoly(1);
			return;
		}
		UPoly g = gcd(num, den);
		if (!g.is_one()) {
			num = exact_div(num, g);
			den = exact_div(den, g);
		}
		Q l = den.lead();
		num_ = num / l;
		den_ = den / l;
	}

	static RationalFunction t() { return RationalFunction(UPoly::t()); }

	const UPoly &num() const noexcept { return num_; }
	const UPoly &den() const noexcept { return den_; }
	bool is_zero() const noexcept { return num_.is_zero(); }
	bool is_polynomial() const { return den_.is_one(); }
	bool is_constant() const { return den_.is_one() && num_.is_constant(); }
	bool is_one() const { return den_.is_one() && num_.is_one(); }

	RationalFunction operator-() const { return raw(-num_, den_); }

	friend RationalFunction operator+(const RationalFunction &a, const RationalFunction &b)
	{
		if (a.is_zero())
			return b;
		if (b.is_zero())
			return a;
		if (a.den_.is_one() && b.den_.is_one())
			return raw(a.num_ + b.num_, a.den_);
		if (a.den_ == b.den_)
			return RationalFunction(a.num_ + b.num_, a.den_);
		return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
	}
	friend RationalFunction operator-(const RationalFunction &a, const RationalFunction &b)
	{
		return a + (-b);
	}
	friend RationalFunction operator*(const RationalFunction &a, const RationalFunction &b)
	{
		if (a.is_zero() || b.is_zero())
			return {};
		if (a.den_.is_one() && b.den_.is_one())
			return raw(a.num_ * b.num_, a.den_);
		if (a.is_constant())
			return raw(b.num_ * a.num_, b.den_);
		if (b.is_constant())
			return raw(a.num_ * b.num_, a.den_);
		return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
	}
	friend RationalFunction operator/(const RationalFunction &a, const RationalFunction &b)
	{
		require(!b.is_zero(), ErrorKind::ZeroElement, "division by zero in K");
		if (a.is_zero())
			return {};
		if (b.is_constant())
			return raw(a.num_ / b.num_.lead(), a.den_);
		return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
	}
	RationalFunction &operator+=(const RationalFunction &o) { return *this = *this + o; }
	RationalFunction &operator-=(const RationalFunction &o) { return *this = *this - o; }
	RationalFunction &operator*=(const RationalFunction &o) { return *this = *this * o; }
	RationalFunction &operator/=(const RationalFunction &o) { return *this = *this / o; }

	RationalFunction inverse() const { return RationalFunction(1) / *this; }

	/// Integer power; negative exponents invert.
	RationalFunction pow(long e) const
	{
		if (e < 0)
			return inverse().pow(-e);
		return raw(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
	}

	friend bool operator==(const RationalFunction &a, const RationalFunction &b)
	{
		return a.num_ == b.num_ && a.den_ == b.den_;
	}
	friend std::strong_ordering operator<=>(const RationalFunction &a, const RationalFunction &b)
	{
		if (auto c = a.num_ <=> b.num_; c != 0)
			return c;
		return a.den_ <=> b.den_;
	}

	std::string str() const
	{
		if (den_.is_one()) {
			return num_.str();
		}
		std::string n = num_.str(), d = den_.str();
		long nterms = 0;
		for (const auto &c : num_.coeffs())
			nterms += (c != 0);
		bool nsimple = nterms <= 1;
		bool dsimple = den_.degree() <= 0;
		return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
	}
	friend std::ostream &operator<<(std::ostream &os, const RationalFunction &f) { return os << f.str(); }

private:
	// trusted constructor: inputs are already canonical
	static RationalFunction raw(UPoly n, UPoly d)
	{
		RationalFunction r;
		if (n.is_zero())
			return r;
		r.num_ = std::move(n);
		r.den_ = std::move(d);
		return r;
	}

	UPoly num_;
	UPoly den_;
};

using K = RationalFunction;

/// A place of Q(t): a monic irreducible polynomial, or the point at infinity.
class Place {
public:
	/// The place at infinity.
	Place() : inf_(true) {}

	/// Finite place; throws PreconditionViolated unless p is monic irreducible.
	explicit Place(UPoly p) : poly_(std::move(p)), inf_(false)
	{
		require(poly_.degree() >= 1 && poly_.is_monic(), ErrorKind::PreconditionViolated,
		        "place polynomial must be monic of positive degree: " + poly_.str());
		require(is_irreducible(poly_), ErrorKind::PreconditionViolated,
		        "place polynomial must be irreducible over Q: " + poly_.str());
	}

	static Place infinity() { return Place(); }
	static Place trusted(UPoly p)
	{
		Place pl;
		pl.poly_ = std::move(p);
		pl.inf_ = false;
		return pl;
	}

	bool is_infinity() const noexcept { return inf_; }
	const UPoly &poly() const noexcept { return poly_; }
	long degree() const noexcept { return inf_ ? 1 : poly_.degree(); }

	std::string str() const { return inf_ ? "inf" : poly_.str(); }

	friend bool operator==(const Place &a, const Place &b)
	{
		return a.inf_ == b.inf_ && a.poly_ == b.poly_;
	}
	/// Finite places ordered by polynomial, infinity last.
	friend std::strong_ordering operator<=>(const Place &a, const Place &b)
	{
		if (a.inf_ != b.inf_)
			return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
		return a.poly_ <=> b.poly_;
	}
	friend std::ostream &operator<<(std::ostream &os, const Place &p) { return os << p.str(); }

private:
	UPoly poly_;
	bool inf_;
};

/// ord_p(f) for f != 0.
inline long order_at(const K &f, const Place &p)
{
	require(!f.is_zero(), ErrorKind::ZeroElement, "order of zero element");
	if (p.is_infinity())
		return f.den().degree() - f.num().degree();
	return multiplicity(f.num(), p.poly()) - multiplicity(f.den(), p.poly());
}

using Divisor = std::map<Place, long>;

/// Principal divisor of a nonzero element. The sum formula is checked.
inline Divisor divisor(const K &f)
{
	require(!f.is_zero(), ErrorKind::ZeroElement, "divisor of zero element");
	Divisor d;
	for (const auto &[p, e] : factor(f.num()))
		d[Place::trusted(p)] += e;
	for (const auto &[p, e] : factor(f.den()))
		d[Place::trusted(p)] -= e;
	long inf = f.den().degree() - f.num().degree();
	if (inf != 0)
		d[Place::infinity()] = inf;
	long total = 0;
	for (auto it = d.begin(); it != d.end();) {
		total += it->second * it->first.degree();
		if (it->second == 0)
			it = d.erase(it);
		else
			++it;
	}
	require(total == 0, ErrorKind::InvariantViolated, "sum formula failed for " + f.str());
	return d;
}

/// Places where f has nonzero order, in canonical order.
inline std::vector<Place> support(const K &f)
{
	std::vector<Place> out;
	for (const auto &[p, e] : divisor(f))
		out.push_back(p);
	return out;
}

/// h(f) = sum of max(0, ord_p f) deg p; the pole-side sum is checked to agree.
inline Q height_elem(const K &f)
{
	long zeros = 0, poles = 0;
	for (const auto &[p, e] : divisor(f)) {
		if (e > 0)
			zeros += e * p.degree();
		else
			poles -= e * p.degree();
	}
	require(zeros == poles, ErrorKind::InvariantViolated, "height_elem: zero and pole sums differ");
	return Q(zeros);
}

} // namespace effsub
