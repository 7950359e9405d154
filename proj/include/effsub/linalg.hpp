/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/rational_function.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace effsub {

using Row = std::vector<K>;
using Matrix = std::vector<Row>;

/// Row echelon data: nonzero rows over Q[t] and their pivot columns (strictly increasing).
struct Echelon {
	std::vector<std::vector<UPoly>> rows;
	std::vector<std::size_t> pivots;
	std::size_t cols = 0;

	std::size_t rank() const noexcept { return pivots.size(); }
};

namespace detail {

inline UPoly lcm(const UPoly &a, const UPoly &b)
{
	if (a.is_one())
		return b;
	if (b.is_one())
		return a;
	return (exact_div(a, gcd(a, b)) * b).monic();
}

/// Clears denominators of a row: returns entries in Q[t] spanning the same line.
inline std::vector<UPoly> clear_row(const Row &r)
{
	UPoly l(1);
	for (const auto &x : r)
		if (!x.is_zero())
			l = lcm(l, x.den());
	std::vector<UPoly> out;
	out.reserve(r.size());
	for (const auto &x : r)
		out.push_back(x.is_zero() ? UPoly() : x.num() * exact_div(l, x.den()));
	return out;
}

inline bool is_zero(const UPoly &x) { return x.is_zero(); }
inline bool is_zero(const Z &x) { return x == 0; }
inline bool is_one(const UPoly &x) { return x.is_one(); }
inline bool is_one(const Z &x) { return x == 1; }
inline UPoly divexact(const UPoly &a, const UPoly &b) { return exact_div(a, b); }
inline Z divexact(const Z &a, const Z &b)
{
	Z r;
	mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
	return r;
}

/// Fraction-free (Bareiss) elimination over an integral domain R. Pivot choice:
/// columns left to right, first row (in current order) with a nonzero entry.
/// Returns the pivot columns; `a` is left with its nonzero rows first.
template <class R>
std::vector<std::size_t> bareiss_in_place(std::vector<std::vector<R>> &a, std::size_t cols)
{
	std::vector<std::size_t> pivots;
	const std::size_t nrows = a.size();
	R prev(1);
	std::size_t r = 0;
	for (std::size_t c = 0; c < cols && r < nrows; ++c) {
		std::size_t piv = r;
		while (piv < nrows && is_zero(a[piv][c]))
			++piv;
		if (piv == nrows)
			continue;
		std::swap(a[r], a[piv]);
		const R p = a[r][c];
		for (std::size_t i = r + 1; i < nrows; ++i) {
			const R f = a[i][c];
			const bool fz = is_zero(f);
			for (std::size_t j = c + 1; j < cols; ++j) {
				R v = p * a[i][j];
				if (!fz && !is_zero(a[r][j]))
					v -= f * a[r][j];
				a[i][j] = is_one(prev) ? std::move(v) : divexact(v, prev);
			}
			a[i][c] = R(0);
		}
		prev = p;
		pivots.push_back(c);
		++r;
	}
	a.resize(r);
	return pivots;
}

} // namespace detail

inline Echelon bareiss_echelon(std::vector<std::vector<UPoly>> a, std::size_t cols)
{
	Echelon e;
	e.cols = cols;
	bool constant = true;
	for (const auto &r : a)
		for (const auto &x : r)
			constant = constant && x.is_constant();
	if (constant) {
		// integer fast path: scale each row to primitive integers
		std::vector<std::vector<Z>> z(a.size());
		for (std::size_t i = 0; i < a.size(); ++i) {
			Z l = 1;
			for (const auto &x : a[i])
				if (!x.is_zero())
					mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.lead().get_den_mpz_t());
			z[i].reserve(cols);
			for (const auto &x : a[i])
				z[i].push_back(x.is_zero() ? Z(0) : Z(x.lead() * l));
		}
		e.pivots = detail::bareiss_in_place(z, cols);
		e.rows.resize(z.size());
		for (std::size_t i = 0; i < z.size(); ++i) {
			e.rows[i].reserve(cols);
			for (const auto &x : z[i])
				e.rows[i].push_back(UPoly(Q(x)));
		}
		return e;
	}
	e.pivots = detail::bareiss_in_place(a, cols);
	e.rows = std::move(a);
	return e;
}

inline Echelon bareiss_echelon(const Matrix &m, std::size_t cols)
{
	std::vector<std::vector<UPoly>> a;
	a.reserve(m.size());
	for (const auto &r : m) {
		require(r.size() == cols, ErrorKind::DegreeMismatch, "matrix row has wrong length");
		a.push_back(detail::clear_row(r));
	}
	return bareiss_echelon(std::move(a), cols);
}

/// Rank over Q after t -> t0, which never exceeds the rank over K; empty if t0 is a pole of some entry.
inline std::optional<std::size_t> specialized_rank(const Matrix &m, std::size_t cols, const Q &t0)
{
	std::vector<std::vector<UPoly>> a;
	a.reserve(m.size());
	for (const auto &r : m) {
		require(r.size() == cols, ErrorKind::DegreeMismatch, "matrix row has wrong length");
		std::vector<UPoly> row;
		row.reserve(cols);
		for (const auto &x : r) {
			if (x.is_zero()) {
				row.emplace_back();
				continue;
			}
			Q den = x.den().eval(t0);
			if (den == 0)
				return std::nullopt;
			row.emplace_back(x.num().eval(t0) / den);
		}
		a.push_back(std::move(row));
	}
	return bareiss_echelon(std::move(a), cols).rank();
}

inline std::size_t rank(const Matrix &m, std::size_t cols)
{
	bool constant = true;
	for (const auto &r : m)
		for (const auto &x : r)
			constant = constant && (x.is_zero() || (x.num().is_constant() && x.den().is_constant()));
	if (!constant) {
		// a specialization reaching the maximum possible rank certifies it
		const std::size_t most = std::min(m.size(), cols);
		for (const Q &t0 : {Q(17, 5), Q(-23, 7)})
			if (specialized_rank(m, cols, t0) == most)
				return most;
	}
	return bareiss_echelon(m, cols).rank();
}

/// Reduced row echelon form over K of an echelon result.
inline Matrix to_rref(const Echelon &e)
{
	Matrix out(e.rank());
	for (std::size_t i = 0; i < e.rank(); ++i) {
		const UPoly &p = e.rows[i][e.pivots[i]];
		out[i].reserve(e.cols);
		for (const auto &x : e.rows[i])
			out[i].push_back(x.is_zero() ? K() : K(x, p));
	}
	for (std::size_t i = e.rank(); i-- > 0;) {
		const std::size_t c = e.pivots[i];
		for (std::size_t k = 0; k < i; ++k) {
			K f = out[k][c];
			if (f.is_zero())
				continue;
			for (std::size_t j = c; j < e.cols; ++j)
				if (!out[i][j].is_zero())
					out[k][j] -= f * out[i][j];
		}
	}
	return out;
}

/// Some y with A y = b (free variables set to zero), or nothing if inconsistent.
inline std::optional<std::vector<K>> solve(const Matrix &a, std::size_t cols, const std::vector<K> &b)
{
	require(a.size() == b.size(), ErrorKind::DegreeMismatch, "solve: right-hand side length");
	Matrix aug = a;
	for (std::size_t i = 0; i < aug.size(); ++i) {
		require(aug[i].size() == cols, ErrorKind::DegreeMismatch, "solve: row length");
		aug[i].push_back(b[i]);
	}
	Echelon e = bareiss_echelon(aug, cols + 1);
	if (e.rank() > 0 && e.pivots.back() == cols)
		return std::nullopt;
	Matrix r = to_rref(e);
	std::vector<K> y(cols);
	for (std::size_t i = 0; i < r.size(); ++i)
		y[e.pivots[i]] = r[i][cols];
	return y;
}

/// Row space maintained in reduced form, for incremental independence tests.
class IncrementalEchelon {
public:
	explicit IncrementalEchelon(std::size_t cols) : cols_(cols) {}

	std::size_t cols() const noexcept { return cols_; }
	std::size_t rank() const noexcept { return rows_.size(); }

	/// v minus its projection onto the span along pivot columns.
	Row reduce(Row v) const
	{
		require(v.size() == cols_, ErrorKind::DegreeMismatch, "reduce: vector length");
		for (const auto &[c, row] : rows_) {
			K f = v[c];
			if (f.is_zero())
				continue;
			for (std::size_t j = c; j < cols_; ++j)
				if (!row[j].is_zero())
					v[j] -= f * row[j];
		}
		return v;
	}

	bool contains(const Row &v) const
	{
		Row r = reduce(v);
		for (const auto &x : r)
			if (!x.is_zero())
				return false;
		return true;
	}

	/// Adds v if independent; returns whether the rank grew.
	bool add(const Row &v)
	{
		Row r = reduce(v);
		std::size_t c = 0;
		while (c < cols_ && r[c].is_zero())
			++c;
		if (c == cols_)
			return false;
		K inv = r[c].inverse();
		for (std::size_t j = c; j < cols_; ++j)
			if (!r[j].is_zero())
				r[j] *= inv;
		for (auto &[c2, row] : rows_) {
			K f = row[c];
			if (f.is_zero())
				continue;
			for (std::size_t j = c; j < cols_; ++j)
				if (!r[j].is_zero())
					row[j] -= f * r[j];
		}
		rows_.emplace(c, std::move(r));
		return true;
	}

	/// Pivot column to reduced row.
	const std::map<std::size_t, Row> &rows() const noexcept { return rows_; }

private:
	std::size_t cols_;
	std::map<std::size_t, Row> rows_;
};

} // namespace effsub
