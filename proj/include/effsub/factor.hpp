/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

// Factorization in Q[t]: Yun's squarefree decomposition, then Zassenhaus
// (Berlekamp modulo a small prime, quadratic Hensel lifting, and exhaustive
// recombination of the lifted factors). Everything is deterministic.

#include "effsub/numbers.hpp"
#include "effsub/upoly.hpp"

#include <algorithm>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

namespace effsub {

namespace detail {

using ZPoly = std::vector<Z>; // low to high, trimmed
using FpPoly = std::vector<long>;

inline void trim(ZPoly &a)
{
	while (!a.empty() && a.back() == 0)
		a.pop_back();
}
inline void trim(FpPoly &a)
{
	while (!a.empty() && a.back() == 0)
		a.pop_back();
}

inline long modp(long a, long p)
{
	a %= p;
	return a < 0 ? a + p : a;
}

inline long inv_mod(long a, long p)
{
	long t = 0, nt = 1, r = p, nr = modp(a, p);
	while (nr != 0) {
		long q = r / nr;
		std::tie(t, nt) = std::make_pair(nt, t - q * nt);
		std::tie(r, nr) = std::make_pair(nr, r - q * nr);
	}
	return modp(t, p);
}

// ---- F_p[x] -----------------------------------------------------------------

inline FpPoly fp_from(const ZPoly &a, long p)
{
	FpPoly r(a.size());
	for (std::size_t i = 0; i < a.size(); ++i) {
		Z m = a[i] % p;
		r[i] = modp(m.get_si(), p);
	}
	trim(r);
	return r;
}

inline FpPoly fp_sub(const FpPoly &a, const FpPoly &b, long p)
{
	FpPoly r(std::max(a.size(), b.size()), 0);
	for (std::size_t i = 0; i < a.size(); ++i)
		r[i] = a[i];
	for (std::size_t i = 0; i < b.size(); ++i)
		r[i] = modp(r[i] - b[i], p);
	trim(r);
	return r;
}

inline FpPoly fp_mul(const FpPoly &a, const FpPoly &b, long p)
{
	if (a.empty() || b.empty())
		return {};
	FpPoly r(a.size() + b.size() - 1, 0);
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j)
			r[i + j] = (r[i + j] + a[i] * b[j]) % p;
	trim(r);
	return r;
}

inline std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly &a, const FpPoly &b, long p)
{
	if (a.size() < b.size())
		return {{}, a};
	FpPoly rem = a, quo(a.size() - b.size() + 1, 0);
	long il = inv_mod(b.back(), p);
	std::size_t db = b.size() - 1;
	for (std::size_t k = quo.size(); k-- > 0;) {
		long q = rem[k + db] * il % p;
		quo[k] = q;
		if (!q)
			continue;
		for (std::size_t j = 0; j <= db; ++j)
			rem[k + j] = modp(rem[k + j] - q * b[j], p);
	}
	rem.resize(db);
	trim(rem);
	trim(quo);
	return {quo, rem};
}

inline FpPoly fp_monic(FpPoly a, long p)
{
	if (a.empty())
		return a;
	long il = inv_mod(a.back(), p);
	for (auto &x : a)
		x = x * il % p;
	return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, long p)
{
	while (!b.empty()) {
		FpPoly r = fp_divmod(a, b, p).second;
		a = std::move(b);
		b = std::move(r);
	}
	return fp_monic(a, p);
}

inline FpPoly fp_derivative(const FpPoly &a, long p)
{
	if (a.size() <= 1)
		return {};
	FpPoly r(a.size() - 1);
	for (std::size_t i = 1; i < a.size(); ++i)
		r[i - 1] = a[i] * static_cast<long>(i % p) % p;
	trim(r);
	return r;
}

/// s, t with s*a + t*b = 1 (a, b coprime).
inline std::pair<FpPoly, FpPoly> fp_ext_gcd(const FpPoly &a, const FpPoly &b, long p)
{
	FpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
	while (!r1.empty()) {
		auto [q, r] = fp_divmod(r0, r1, p);
		FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
		FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
		r0 = std::move(r1);
		r1 = std::move(r);
		s0 = std::move(s1);
		s1 = std::move(s2);
		t0 = std::move(t1);
		t1 = std::move(t2);
	}
	// r0 is a nonzero constant
	long il = inv_mod(r0[0], p);
	for (auto &x : s0)
		x = x * il % p;
	for (auto &x : t0)
		x = x * il % p;
	return {s0, t0};
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
inline std::vector<FpPoly> berlekamp(const FpPoly &f, long p)
{
	const std::size_t n = f.size() - 1;
	if (n <= 1)
		return {f};
	// rows: x^{ip} mod f
	std::vector<std::vector<long>> qm(n, std::vector<long>(n, 0));
	FpPoly xp{1};
	FpPoly xpow_p;
	{
		// x^p mod f by repeated squaring
		FpPoly base{0, 1}, acc{1};
		long e = p;
		while (e) {
			if (e & 1)
				acc = fp_divmod(fp_mul(acc, base, p), f, p).second;
			e >>= 1;
			if (e)
				base = fp_divmod(fp_mul(base, base, p), f, p).second;
		}
		xpow_p = acc;
	}
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = 0; j < xp.size(); ++j)
			qm[i][j] = xp[j];
		xp = fp_divmod(fp_mul(xp, xpow_p, p), f, p).second;
	}
	// kernel of (Q - I)^T: A[j][i] = Q[i][j] - delta
	std::vector<std::vector<long>> a(n, std::vector<long>(n));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			a[j][i] = modp(qm[i][j] - (i == j ? 1 : 0), p);
	std::vector<long> pivcol;
	std::size_t rank = 0;
	for (std::size_t c = 0; c < n && rank < n; ++c) {
		std::size_t r = rank;
		while (r < n && a[r][c] == 0)
			++r;
		if (r == n)
			continue;
		std::swap(a[r], a[rank]);
		long il = inv_mod(a[rank][c], p);
		for (auto &x : a[rank])
			x = x * il % p;
		for (std::size_t i = 0; i < n; ++i) {
			if (i == rank || a[i][c] == 0)
				continue;
			long m = a[i][c];
			for (std::size_t j = 0; j < n; ++j)
				a[i][j] = modp(a[i][j] - m * a[rank][j], p);
		}
		pivcol.push_back(static_cast<long>(c));
		++rank;
	}
	std::vector<FpPoly> kernel;
	std::vector<bool> is_piv(n, false);
	for (long c : pivcol)
		is_piv[c] = true;
	for (std::size_t free = 0; free < n; ++free) {
		if (is_piv[free])
			continue;
		FpPoly v(n, 0);
		v[free] = 1;
		for (std::size_t r = 0; r < rank; ++r)
			v[pivcol[r]] = modp(-a[r][free], p);
		trim(v);
		kernel.push_back(v);
	}
	const std::size_t r = kernel.size();
	std::vector<FpPoly> factors{f};
	for (const auto &v : kernel) {
		if (factors.size() == r)
			break;
		if (v.size() <= 1)
			continue;
		std::vector<FpPoly> next;
		for (const auto &u : factors) {
			if (u.size() <= 2) {
				next.push_back(u);
				continue;
			}
			FpPoly rest = u;
			for (long s = 0; s < p && rest.size() > 2; ++s) {
				FpPoly vs = v;
				vs[0] = modp(vs[0] - s, p);
				trim(vs);
				FpPoly g = fp_gcd(rest, vs, p);
				if (g.size() > 1 && g.size() < rest.size()) {
					next.push_back(g);
					rest = fp_divmod(rest, g, p).first;
					rest = fp_monic(rest, p);
				}
			}
			next.push_back(rest);
		}
		factors = std::move(next);
	}
	return factors;
}

// ---- Z[x] mod m -------------------------------------------------------------

inline ZPoly z_mod(ZPoly a, const Z &m)
{
	for (auto &x : a) {
		x %= m;
		if (x < 0)
			x += m;
	}
	trim(a);
	return a;
}

inline ZPoly z_add(const ZPoly &a, const ZPoly &b)
{
	ZPoly r(std::max(a.size(), b.size()));
	for (std::size_t i = 0; i < a.size(); ++i)
		r[i] += a[i];
	for (std::size_t i = 0; i < b.size(); ++i)
		r[i] += b[i];
	trim(r);
	return r;
}

inline ZPoly z_sub(const ZPoly &a, const ZPoly &b)
{
	ZPoly r(std::max(a.size(), b.size()));
	for (std::size_t i = 0; i < a.size(); ++i)
		r[i] += a[i];
	for (std::size_t i = 0; i < b.size(); ++i)
		r[i] -= b[i];
	trim(r);
	return r;
}

inline ZPoly z_mul(const ZPoly &a, const ZPoly &b)
{
	if (a.empty() || b.empty())
		return {};
	ZPoly r(a.size() + b.size() - 1);
	for (std::size_t i = 0; i < a.size(); ++i)
		for (std::size_t j = 0; j < b.size(); ++j)
			r[i + j] += a[i] * b[j];
	trim(r);
	return r;
}

/// Division by a polynomial that is monic modulo m (leading coefficient 1).
inline std::pair<ZPoly, ZPoly> z_divmod_monic(const ZPoly &a, const ZPoly &b, const Z &m)
{
	ZPoly rem = z_mod(a, m);
	if (rem.size() < b.size())
		return {{}, rem};
	ZPoly quo(rem.size() - b.size() + 1);
	std::size_t db = b.size() - 1;
	for (std::size_t k = quo.size(); k-- > 0;) {
		Z q = rem[k + db] % m;
		if (q < 0)
			q += m;
		quo[k] = q;
		if (q == 0)
			continue;
		for (std::size_t j = 0; j <= db; ++j)
			rem[k + j] = (rem[k + j] - q * b[j]) % m;
	}
	rem.resize(db);
	return {z_mod(quo, m), z_mod(rem, m)};
}

inline ZPoly z_from_fp(const FpPoly &a)
{
	ZPoly r(a.begin(), a.end());
	trim(r);
	return r;
}

inline ZPoly z_scale(ZPoly a, const Z &c)
{
	for (auto &x : a)
		x *= c;
	trim(a);
	return a;
}

/// One quadratic Hensel step (von zur Gathen & Gerhard, Alg. 15.10): from
/// f = g h, s g + t h = 1 mod m to the same relations mod m^2. h monic.
inline void hensel_step(const ZPoly &f, ZPoly &g, ZPoly &h, ZPoly &s, ZPoly &t, const Z &m)
{
	Z m2 = m * m;
	ZPoly e = z_mod(z_sub(f, z_mul(g, h)), m2);
	auto [q, r] = z_divmod_monic(z_mul(s, e), h, m2);
	ZPoly g2 = z_mod(z_add(g, z_add(z_mul(t, e), z_mul(q, g))), m2);
	ZPoly h2 = z_mod(z_add(h, r), m2);
	ZPoly b = z_mod(z_sub(z_add(z_mul(s, g2), z_mul(t, h2)), ZPoly{Z(1)}), m2);
	auto [c, d] = z_divmod_monic(z_mul(s, b), h2, m2);
	ZPoly s2 = z_mod(z_sub(s, d), m2);
	ZPoly t2 = z_mod(z_sub(t, z_add(z_mul(t, b), z_mul(c, g2))), m2);
	g = std::move(g2);
	h = std::move(h2);
	s = std::move(s2);
	t = std::move(t2);
}

inline ZPoly symmetric(ZPoly a, const Z &m)
{
	Z half = m / 2;
	for (auto &x : a) {
		x %= m;
		if (x < 0)
			x += m;
		if (x > half)
			x -= m;
	}
	trim(a);
	return a;
}

inline Z content(const ZPoly &a)
{
	Z g = 0;
	for (const auto &x : a)
		mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
	return g;
}

inline ZPoly primitive_part(ZPoly a)
{
	if (a.empty())
		return a;
	Z c = content(a);
	if (a.back() < 0)
		c = -c;
	for (auto &x : a)
		x /= c;
	return a;
}

inline UPoly to_upoly(const ZPoly &a)
{
	std::vector<Q> v(a.begin(), a.end());
	return UPoly(std::move(v));
}

inline ZPoly to_primitive_zpoly(const UPoly &a)
{
	Z l = a.denominator_lcm();
	ZPoly r;
	for (const auto &c : a.coeffs()) {
		Q x = c * l;
		r.push_back(x.get_num());
	}
	trim(r);
	return primitive_part(r);
}

/// Trial division over Z; returns the quotient when b | a exactly.
inline std::optional<ZPoly> z_exact_div(const ZPoly &a, const ZPoly &b)
{
	if (a.size() < b.size())
		return std::nullopt;
	ZPoly rem = a, quo(a.size() - b.size() + 1);
	std::size_t db = b.size() - 1;
	for (std::size_t k = quo.size(); k-- > 0;) {
		if (!mpz_divisible_p(rem[k + db].get_mpz_t(), b.back().get_mpz_t()))
			return std::nullopt;
		Z q = rem[k + db] / b.back();
		quo[k] = q;
		if (q == 0)
			continue;
		for (std::size_t j = 0; j <= db; ++j)
			rem[k + j] -= q * b[j];
	}
	for (std::size_t i = 0; i < db; ++i)
		if (rem[i] != 0)
			return std::nullopt;
	trim(quo);
	return quo;
}

inline const std::vector<long> &small_primes()
{
	static const std::vector<long> ps = [] {
		std::vector<long> v;
		for (long n = 3; n < 2000; n += 2) {
			bool pr = true;
			for (long d = 3; d * d <= n; d += 2)
				if (n % d == 0) {
					pr = false;
					break;
				}
			if (pr)
				v.push_back(n);
		}
		return v;
	}();
	return ps;
}

/// Irreducible factors of a primitive squarefree f in Z[x] of positive degree.
inline std::vector<ZPoly> zassenhaus(const ZPoly &f)
{
	const std::size_t n = f.size() - 1;
	if (n <= 1)
		return {f};
	const Z lc = f.back();

	// pick among the first few admissible primes the one with fewest factors
	long best_p = 0;
	std::vector<FpPoly> best;
	int tried = 0;
	for (long p : small_primes()) {
		if (mpz_divisible_ui_p(lc.get_mpz_t(), static_cast<unsigned long>(p)))
			continue;
		FpPoly fp = fp_from(f, p);
		if (fp_gcd(fp, fp_derivative(fp, p), p).size() != 1)
			continue;
		auto fac = berlekamp(fp_monic(fp, p), p);
		if (best_p == 0 || fac.size() < best.size()) {
			best_p = p;
			best = std::move(fac);
		}
		if (best.size() == 1 || ++tried == 5)
			break;
	}
	if (best.size() <= 1)
		return {f};
	const long p = best_p;

	// Mignotte-style coefficient bound for lc * (any factor)
	Z maxc = 0;
	for (const auto &c : f)
		if (abs(c) > maxc)
			maxc = abs(c);
	Z bound = 2 * abs(lc) * ipow(Z(2), n) * Z(static_cast<unsigned long>(n + 1)) * maxc;
	Z pk = p;
	unsigned steps = 0;
	while (pk <= bound) {
		pk *= pk;
		++steps;
	}

	// sequential two-factor lifting
	std::vector<ZPoly> lifted;
	ZPoly cur = f;
	for (std::size_t i = 0; i + 1 < best.size(); ++i) {
		FpPoly hp = best[i];
		FpPoly gp{modp(Z(lc % p).get_si(), p)};
		for (std::size_t j = i + 1; j < best.size(); ++j)
			gp = fp_mul(gp, best[j], p);
		auto [sp, tp] = fp_ext_gcd(gp, hp, p);
		ZPoly g = z_from_fp(gp), h = z_from_fp(hp), s = z_from_fp(sp), t = z_from_fp(tp);
		Z m = p;
		for (unsigned k = 0; k < steps; ++k) {
			hensel_step(cur, g, h, s, t, m);
			m *= m;
		}
		lifted.push_back(h);
		cur = g;
	}
	{
		Z ilc;
		Z lcm = lc % pk;
		if (lcm < 0)
			lcm += pk;
		mpz_invert(ilc.get_mpz_t(), lcm.get_mpz_t(), pk.get_mpz_t());
		lifted.push_back(z_mod(z_scale(cur, ilc), pk));
	}

	// recombination
	std::vector<ZPoly> result;
	std::vector<std::size_t> idx(lifted.size());
	for (std::size_t i = 0; i < idx.size(); ++i)
		idx[i] = i;
	ZPoly fstar = f;
	std::size_t s = 1;
	while (2 * s <= idx.size()) {
		bool found = false;
		std::vector<std::size_t> sel(s);
		for (std::size_t i = 0; i < s; ++i)
			sel[i] = i;
		while (true) {
			Z l = fstar.back();
			ZPoly g{l};
			for (std::size_t k : sel)
				g = z_mod(z_mul(g, lifted[idx[k]]), pk);
			g = primitive_part(symmetric(g, pk));
			if (auto q = z_exact_div(fstar, g)) {
				result.push_back(g);
				fstar = primitive_part(*q);
				std::vector<std::size_t> rest;
				for (std::size_t k = 0; k < idx.size(); ++k)
					if (std::find(sel.begin(), sel.end(), k) == sel.end())
						rest.push_back(idx[k]);
				idx = std::move(rest);
				found = true;
				break;
			}
			// next combination
			std::size_t i = s;
			while (i > 0 && sel[i - 1] == idx.size() - s + i - 1)
				--i;
			if (i == 0)
				break;
			++sel[i - 1];
			for (std::size_t j = i; j < s; ++j)
				sel[j] = sel[j - 1] + 1;
		}
		if (!found)
			++s;
	}
	if (fstar.size() > 1)
		result.push_back(fstar);
	return result;
}

} // namespace detail

/// Squarefree decomposition of a nonzero polynomial: pairs (monic a_i, i)
/// with f = lc * prod a_i^i and the a_i pairwise coprime and squarefree.
inline std::vector<std::pair<UPoly, long>> squarefree_decomposition(const UPoly &f)
{
	std::vector<std::pair<UPoly, long>> out;
	if (f.degree() <= 0)
		return out;
	UPoly fm = f.monic();
	UPoly d = fm.derivative();
	UPoly a0 = gcd(fm, d);
	UPoly b = exact_div(fm, a0);
	UPoly c = exact_div(d, a0);
	UPoly dd = c - b.derivative();
	long i = 1;
	while (b.degree() > 0) {
		UPoly a = gcd(b, dd);
		if (a.degree() > 0)
			out.emplace_back(a.monic(), i);
		b = exact_div(b, a);
		c = exact_div(dd, a);
		dd = c - b.derivative();
		++i;
	}
	return out;
}

/// Factorization into monic irreducibles over Q with multiplicities, sorted by
/// the UPoly total order.
inline std::vector<std::pair<UPoly, long>> factor(const UPoly &f)
{
	std::vector<std::pair<UPoly, long>> out;
	for (const auto &[part, mult] : squarefree_decomposition(f)) {
		for (const auto &z : detail::zassenhaus(detail::to_primitive_zpoly(part)))
			out.emplace_back(detail::to_upoly(z).monic(), mult);
	}
	std::sort(out.begin(), out.end());
	return out;
}

inline bool is_irreducible(const UPoly &f)
{
	if (f.degree() <= 0)
		return false;
	auto fac = factor(f);
	return fac.size() == 1 && fac[0].second == 1;
}

} // namespace effsub
