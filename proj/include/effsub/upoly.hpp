/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/numbers.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace effsub {

/// Dense univariate polynomial in t over Q, coefficients stored low to high.
/// The zero polynomial has no coefficients; otherwise the top one is nonzero.
class UPoly {
public:
	UPoly() = default;
	UPoly(long c) { if (c != 0) c_.emplace_back(c); }
	UPoly(const Q &c) { if (c != 0) c_.push_back(c); }
	UPoly(std::initializer_list<Q> low_to_high) : c_(low_to_high) { trim(); }
	explicit UPoly(std::vector<Q> low_to_high) : c_(std::move(low_to_high)) { trim(); }

	static UPoly t() { return UPoly{Q(0), Q(1)}; }
	static UPoly monomial(const Q &c, std::size_t e)
	{
		if (c == 0)
			return {};
		std::vector<Q> v(e + 1);
		v[e] = c;
		return UPoly(std::move(v));
	}

	bool is_zero() const noexcept { return c_.empty(); }
	bool is_constant() const noexcept { return c_.size() <= 1; }
	/// Degree; -1 for the zero polynomial.
	long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
	const Q &coeff_ref(std::size_t i) const { return c_[i]; }
	Q coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Q(0); }
	Q lead() const { return c_.empty() ? Q(0) : c_.back(); }
	const std::vector<Q> &coeffs() const noexcept { return c_; }
	bool is_monic() const { return !c_.empty() && c_.back() == 1; }
	bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

	UPoly monic() const
	{
		if (is_zero() || is_monic())
			return *this;
		return *this / lead();
	}

	UPoly operator-() const
	{
		UPoly r = *this;
		for (auto &x : r.c_)
			x = -x;
		return r;
	}

	UPoly &operator+=(const UPoly &o)
	{
		if (o.c_.size() > c_.size())
			c_.resize(o.c_.size());
		for (std::size_t i = 0; i < o.c_.size(); ++i)
			c_[i] += o.c_[i];
		trim();
		return *this;
	}
	UPoly &operator-=(const UPoly &o)
	{
		if (o.c_.size() > c_.size())
			c_.resize(o.c_.size());
		for (std::size_t i = 0; i < o.c_.size(); ++i)
			c_[i] -= o.c_[i];
		trim();
		return *this;
	}
	friend UPoly operator+(UPoly a, const UPoly &b) { return a += b; }
	friend UPoly operator-(UPoly a, const UPoly &b) { return a -= b; }

	friend UPoly operator*(const UPoly &a, const UPoly &b)
	{
		if (a.is_zero() || b.is_zero())
			return {};
		std::vector<Q> r(a.c_.size() + b.c_.size() - 1);
		for (std::size_t i = 0; i < a.c_.size(); ++i) {
			if (a.c_[i] == 0)
				continue;
			for (std::size_t j = 0; j < b.c_.size(); ++j)
				r[i + j] += a.c_[i] * b.c_[j];
		}
		return UPoly(std::move(r));
	}
	UPoly &operator*=(const UPoly &o) { return *this = *this * o; }

	friend UPoly operator/(UPoly a, const Q &s)
	{
		for (auto &x : a.c_)
			x /= s;
		return a;
	}

	/// Euclidean division; throws on division by zero.
	friend std::pair<UPoly, UPoly> divmod(const UPoly &a, const UPoly &b)
	{
		require(!b.is_zero(), ErrorKind::ZeroElement, "polynomial division by zero");
		if (a.degree() < b.degree())
			return {UPoly(), a};
		std::vector<Q> rem = a.c_;
		std::vector<Q> quo(a.c_.size() - b.c_.size() + 1);
		const Q &lb = b.c_.back();
		const std::size_t db = b.c_.size() - 1;
		for (std::size_t k = quo.size(); k-- > 0;) {
			Q q = rem[k + db] / lb;
			quo[k] = q;
			if (q == 0)
				continue;
			for (std::size_t j = 0; j <= db; ++j)
				rem[k + j] -= q * b.c_[j];
		}
		rem.resize(db);
		return {UPoly(std::move(quo)), UPoly(std::move(rem))};
	}
	friend UPoly operator/(const UPoly &a, const UPoly &b) { return divmod(a, b).first; }
	friend UPoly operator%(const UPoly &a, const UPoly &b) { return divmod(a, b).second; }

	/// Exact quotient; throws if b does not divide a.
	friend UPoly exact_div(const UPoly &a, const UPoly &b)
	{
		auto [q, r] = divmod(a, b);
		require(r.is_zero(), ErrorKind::InvariantViolated, "inexact polynomial division");
		return q;
	}

	UPoly pow(unsigned e) const
	{
		UPoly r(1), b = *this;
		while (e) {
			if (e & 1)
				r *= b;
			e >>= 1;
			if (e)
				b *= b;
		}
		return r;
	}

	UPoly derivative() const
	{
		if (c_.size() <= 1)
			return {};
		std::vector<Q> r(c_.size() - 1);
		for (std::size_t i = 1; i < c_.size(); ++i)
			r[i - 1] = c_[i] * static_cast<unsigned long>(i);
		return UPoly(std::move(r));
	}

	Q eval(const Q &x) const
	{
		Q r = 0;
		for (std::size_t i = c_.size(); i-- > 0;)
			r = r * x + c_[i];
		return r;
	}

	/// Common denominator of the coefficients (positive).
	Z denominator_lcm() const
	{
		Z l = 1;
		for (const auto &x : c_)
			mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
		return l;
	}

	friend bool operator==(const UPoly &a, const UPoly &b) { return a.c_ == b.c_; }

	/// Deterministic total order: by degree, then coefficients from the top.
	friend std::strong_ordering operator<=>(const UPoly &a, const UPoly &b)
	{
		if (a.c_.size() != b.c_.size())
			return a.c_.size() <=> b.c_.size();
		for (std::size_t i = a.c_.size(); i-- > 0;) {
			int c = cmp(a.c_[i], b.c_[i]);
			if (c != 0)
				return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
		}
		return std::strong_ordering::equal;
	}

	std::string str(const char *var = "t") const
	{
		if (is_zero())
			return "0";
		std::ostringstream os;
		bool first = true;
		for (std::size_t i = c_.size(); i-- > 0;) {
			const Q &c = c_[i];
			if (c == 0)
				continue;
			Q a = abs(c);
			if (first)
				os << (c < 0 ? "-" : "");
			else
				os << (c < 0 ? " - " : " + ");
			first = false;
			bool unit = (a == 1);
			if (i == 0 || !unit) {
				if (a.get_den() != 1 && i > 0)
					os << "(" << a.get_str() << ")";
				else
					os << a.get_str();
			}
			if (i > 0) {
				if (!unit)
					os << "*";
				os << var;
				if (i > 1)
					os << "^" << i;
			}
		}
		return os.str();
	}

	friend std::ostream &operator<<(std::ostream &os, const UPoly &p) { return os << p.str(); }

private:
	void trim()
	{
		while (!c_.empty() && c_.back() == 0)
			c_.pop_back();
	}

	std::vector<Q> c_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
namespace detail {

using ZPoly = std::vector<Z>;

/// Primitive integer multiple with positive leading coefficient.
inline ZPoly primitive_part(const UPoly &p)
{
	Z l = 1;
	for (const auto &c : p.coeffs())
		l = lcm(l, Z(c.get_den()));
	ZPoly out;
	Z g = 0;
	for (const auto &c : p.coeffs()) {
		out.push_back(Z(c * l));
		g = gcd(g, out.back());
	}
	if (out.back() < 0)
		g = -g;
	for (auto &c : out)
		c /= g;
	return out;
}

inline void make_primitive(ZPoly &p)
{
	while (!p.empty() && p.back() == 0)
		p.pop_back();
	if (p.empty())
		return;
	Z g = 0;
	for (const auto &c : p)
		g = gcd(g, c);
	if (p.back() < 0)
		g = -g;
	for (auto &c : p)
		c /= g;
}

constexpr std::uint64_t gcd_prime = 2147483647;

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e)
{
	std::uint64_t r = 1;
	for (; e; e >>= 1, b = b * b % gcd_prime)
		if (e & 1)
			r = r * b % gcd_prime;
	return r;
}

/// True when the images modulo a prime are coprime, which certifies coprimality over Q.
inline bool coprime_mod_p(const ZPoly &a, const ZPoly &b)
{
	auto reduce = [](const ZPoly &p) {
		std::vector<std::uint64_t> r;
		for (const auto &c : p)
			r.push_back(mpz_fdiv_ui(c.get_mpz_t(), gcd_prime));
		return r;
	};
	auto x = reduce(a), y = reduce(b);
	if (x.back() == 0 || y.back() == 0)
		return false;
	auto trim = [](std::vector<std::uint64_t> &p) {
		while (!p.empty() && p.back() == 0)
			p.pop_back();
	};
	if (x.size() < y.size())
		std::swap(x, y);
	while (!y.empty()) {
		std::uint64_t inv = powmod(y.back(), gcd_prime - 2);
		while (x.size() >= y.size()) {
			std::uint64_t f = x.back() * inv % gcd_prime;
			std::size_t shift = x.size() - y.size();
			for (std::size_t i = 0; i < y.size(); ++i)
				x[i + shift] = (x[i + shift] + gcd_prime - f * y[i] % gcd_prime) % gcd_prime;
			trim(x);
			if (x.empty())
				break;
		}
		std::swap(x, y);
	}
	return x.size() == 1;
}

} // namespace detail

/// Monic gcd; primitive remainder sequence over Z with a modular coprimality shortcut.
inline UPoly gcd(const UPoly &a, const UPoly &b)
{
	if (a.is_zero())
		return b.monic();
	if (b.is_zero())
		return a.monic();
	if (a.is_constant() || b.is_constant())
		return UPoly(1);
	detail::ZPoly x = detail::primitive_part(a), y = detail::primitive_part(b);
	if (x.size() < y.size())
		std::swap(x, y);
	if (detail::coprime_mod_p(x, y))
		return UPoly(1);
	while (!y.empty()) {
		const Z ly = y.back();
		while (x.size() >= y.size()) {
			Z lx = x.back();
			std::size_t shift = x.size() - y.size();
			for (auto &c : x)
				c *= ly;
			for (std::size_t i = 0; i < y.size(); ++i)
				x[i + shift] -= lx * y[i];
			detail::make_primitive(x);
			if (x.empty())
				break;
		}
		std::swap(x, y);
	}
	std::vector<Q> c;
	for (const auto &v : x)
		c.emplace_back(v);
	return UPoly(std::move(c)).monic();
}

/// Multiplicity of the nonconstant polynomial p in the nonzero polynomial f.
inline long multiplicity(UPoly f, const UPoly &p)
{
	long k = 0;
	while (f.degree() >= p.degree()) {
		auto [q, r] = divmod(f, p);
		if (!r.is_zero())
			break;
		f = std::move(q);
		++k;
	}
	return k;
}

} // namespace effsub
