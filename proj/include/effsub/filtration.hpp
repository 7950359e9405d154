/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/graded_ideal.hpp"
#include "effsub/heights.hpp"
#include "effsub/linalg.hpp"
#include "effsub/numbers.hpp"
#include "effsub/polynomial.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace effsub {

/// Renumbering l_1..l_q with ord_p(Q_{l_1}(x)) >= ... >= ord_p(Q_{l_q}(x)).
struct VanishingOrderPermutation {
	Place place;
	ProjectivePoint point;
	std::vector<std::size_t> order;
	std::vector<long> ords;
};

inline VanishingOrderPermutation order_by_vanishing(const Place &p, const std::vector<HomogeneousPoly> &qs,
                                                    const ProjectivePoint &x)
{
	VanishingOrderPermutation r{p, x, {}, {}};
	for (std::size_t i = 0; i < qs.size(); ++i) {
		K v = qs[i].evaluate(x.span());
		require(!v.is_zero(), ErrorKind::PointOnDivisor, "Q_" + std::to_string(i) + "(x) = 0 at x = " + x.str());
		r.ords.push_back(order_at(v, p));
	}
	r.order.resize(qs.size());
	std::iota(r.order.begin(), r.order.end(), std::size_t{0});
	std::stable_sort(r.order.begin(), r.order.end(),
	                 [&](std::size_t a, std::size_t b) { return r.ords[a] > r.ords[b]; });
	return r;
}

/// psi_j = Q^{i_j} g_j.
struct FiltrationEntry {
	int i = 0;
	Monomial g;
};

/// Basis of K[X]_m / (I_X)_m compatible with W_i = image of Q^i K[X]_{m-id}.
struct FiltrationBasis {
	int m = 0;
	int d = 0;
	HomogeneousPoly q;
	std::vector<FiltrationEntry> entries;
	/// dim W_0, ..., dim W_{m/d}.
	std::vector<long> level_dims;

	std::size_t size() const noexcept { return entries.size(); }

	HomogeneousPoly psi(std::size_t j) const
	{
		const auto &e = entries.at(j);
		return q.pow(static_cast<unsigned>(e.i)) * HomogeneousPoly::monomial(e.g);
	}

	/// S(m/d - 1) = sum_{i=1}^{m/d-1} H(i d), read off the levels since dim W_i = H(m - id).
	Z s_value() const
	{
		Z s = 0;
		for (std::size_t i = 1; i + 1 < level_dims.size(); ++i)
			s += level_dims[i];
		return s;
	}

	/// Number of entries with i_j = i.
	long count_at(int i) const
	{
		return std::count_if(entries.begin(), entries.end(), [i](const FiltrationEntry &e) { return e.i == i; });
	}
};

/// Greedy top-down: at level i keep the monomials g of degree m - id (grlex order) whose Q^i g is new.
inline FiltrationBasis build_filtration(const IdealGenerators &gens, int m, const HomogeneousPoly &q, int d)
{
	require(q.nvars() == gens.nvars(), ErrorKind::VarCountMismatch, "build_filtration: variable count");
	require(d >= 1 && q.degree() == d && m >= 0 && m % d == 0, ErrorKind::DegreeMismatch,
	        "build_filtration: need deg Q = d and d | m");
	require(!q.is_zero() && !graded_piece(gens, d).contains(q), ErrorKind::DivisorInIdeal,
	        "Q = " + q.str() + " lies in the ideal");

	FiltrationBasis fb{m, d, q, {}, {}};
	auto piece = graded_piece(gens, m);
	IncrementalEchelon ech(piece.dim());
	for (const auto &row : piece.rref)
		ech.add(row);
	const std::size_t base = ech.rank();

	const int top = m / d;
	fb.level_dims.assign(static_cast<std::size_t>(top + 1), 0);
	for (int i = top; i >= 0; --i) {
		HomogeneousPoly qi = q.pow(static_cast<unsigned>(i));
		for (const auto &g : monomial_basis(gens.nvars(), m - d * i))
			if (ech.add(piece.vector_of(qi * HomogeneousPoly::monomial(g))))
				fb.entries.push_back({i, g});
		long dim = static_cast<long>(ech.rank() - base);
		fb.level_dims[static_cast<std::size_t>(i)] = dim;
		require(dim == hilbert_function(gens, m - d * i), ErrorKind::InvariantViolated,
		        "dim W_" + std::to_string(i) + " != H(" + std::to_string(m - d * i) + ")");
	}
	return fb;
}

/// sum_{i=1}^t H(i d).
inline Z S_value(const IdealGenerators &gens, long t, int d)
{
	Z s = 0;
	for (long i = 1; i <= t; ++i)
		s += hilbert_function(gens, static_cast<int>(i * d));
	return s;
}

struct ExponentSumReport {
	Z sum;
	/// sum_{i=1}^{m/d} H(m - id).
	Z exact;
	/// S(m/d - 1) as stated for the exponent sum.
	Z stated;
	Z difference;
};

inline ExponentSumReport exponent_sum(const FiltrationBasis &basis, const IdealGenerators &gens)
{
	ExponentSumReport r;
	for (const auto &e : basis.entries)
		r.sum += e.i;
	for (int i = 1; i <= basis.m / basis.d; ++i)
		r.exact += hilbert_function(gens, basis.m - i * basis.d);
	require(r.sum == r.exact, ErrorKind::InvariantViolated, "exponent sum differs from sum of H(m - id)");
	r.stated = S_value(gens, basis.m / basis.d - 1, basis.d);
	r.difference = r.sum - r.stated;
	return r;
}

struct FiltrationCheck {
	/// Empty when some psi_j(x) = 0, i.e. the left side is +infinity.
	std::optional<long> lhs;
	Z rhs;
	bool ok = false;
};

/// sum_j (ord_p psi_j(x) - m e_p(x)) >= S(m/d - 1) (ord_p Q(x) - d e_p(x)).
inline FiltrationCheck filtration_inequality_check(const Place &p, const ProjectivePoint &x,
                                                   const FiltrationBasis &basis)
{
	require(x.size() == basis.q.nvars(), ErrorKind::VarCountMismatch, "filtration check: point size");
	K qx = basis.q.evaluate(x.span());
	require(!qx.is_zero(), ErrorKind::PointOnDivisor, "Q(x) = 0 at x = " + x.str());
	const long ex = gauss_order_point(p, x);
	FiltrationCheck r;
	long lhs = 0;
	bool finite = true;
	std::vector<K> qpow{K(1)};
	for (std::size_t j = 0; j < basis.size() && finite; ++j) {
		const auto &e = basis.entries[j];
		while (static_cast<int>(qpow.size()) <= e.i)
			qpow.push_back(qpow.back() * qx);
		K v = qpow[static_cast<std::size_t>(e.i)] * HomogeneousPoly::monomial(e.g).evaluate(x.span());
		if (v.is_zero())
			finite = false;
		else
			lhs += order_at(v, p) - basis.m * ex;
	}
	r.rhs = basis.s_value() * (order_at(qx, p) - basis.d * ex);
	if (finite)
		r.lhs = lhs;
	r.ok = !finite || Z(lhs) >= r.rhs;
	return r;
}

/// Phi(x) = [phi_1(x) : ... : phi_H(x)] for a quotient monomial basis.
inline ProjectivePoint phi_map(const QuotientBasis &basis, const ProjectivePoint &x)
{
	std::vector<K> c;
	bool any = false;
	for (const auto &mono : basis.monomials) {
		require(mono.nvars() == x.size(), ErrorKind::VarCountMismatch, "phi_map: point size");
		K v = HomogeneousPoly::monomial(mono).evaluate(x.span());
		any = any || !v.is_zero();
		c.push_back(std::move(v));
	}
	require(any, ErrorKind::BaseLocusPoint, "every phi_j vanishes at x = " + x.str());
	return ProjectivePoint(std::move(c));
}

struct LemmaCPlace {
	Place place;
	/// m e_p(x) deg p.
	long lower;
	/// e_p(Phi(x)) deg p.
	long value;
	/// m e_p(x) deg p + b h(F_X).
	Q upper;
	bool ok = false;
};

struct LemmaCReport {
	ProjectivePoint phi;
	Q h_x;
	Q h_phi;
	/// m h(x) - (M+2) b h(F_X).
	Q lower;
	/// m h(x).
	Q upper;
	std::vector<LemmaCPlace> places;
	bool ok = false;
};

/// Local and global height sandwich for Phi(x) given b = b(m, n, M) and h(F_X).
inline LemmaCReport lemma_c_check(const QuotientBasis &basis, const ProjectivePoint &x, const Z &b, const Q &h_fx)
{
	LemmaCReport r{phi_map(basis, x), height_point(x), {}, {}, {}, {}, true};
	r.h_phi = height_point(r.phi);
	const long big_m = static_cast<long>(x.size()) - 1;
	r.upper = basis.m * r.h_x;
	r.lower = r.upper - Q(big_m + 2) * Q(b) * h_fx;
	r.ok = r.lower <= r.h_phi && r.h_phi <= r.upper;

	std::set<Place> places{Place()};
	for (const auto &c : x.coords())
		if (!c.is_zero())
			for (const auto &[p, e] : divisor(c))
				places.insert(p);
	for (const auto &p : places) {
		LemmaCPlace row{p, basis.m * gauss_order_point(p, x) * p.degree(),
		                gauss_order_point(p, r.phi) * p.degree(), {}, false};
		row.upper = Q(row.lower) + Q(b) * h_fx;
		row.ok = row.lower <= row.value && Q(row.value) <= row.upper;
		r.ok = r.ok && row.ok;
		r.places.push_back(std::move(row));
	}
	return r;
}

} // namespace effsub
