/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/linalg.hpp"
#include "effsub/polynomial.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace effsub {

/// Homogeneous generators of an ideal of K[X0..XM].
class IdealGenerators {
public:
	explicit IdealGenerators(std::size_t nvars) : nvars_(nvars) {}
	IdealGenerators(std::size_t nvars, std::vector<HomogeneousPoly> gens) : nvars_(nvars), gens_(std::move(gens))
	{
		for (const auto &g : gens_)
			check(g);
	}

	std::size_t nvars() const noexcept { return nvars_; }
	const std::vector<HomogeneousPoly> &gens() const noexcept { return gens_; }
	bool empty() const noexcept { return gens_.empty(); }

	IdealGenerators with(const HomogeneousPoly &g) const
	{
		IdealGenerators r = *this;
		r.check(g);
		r.gens_.push_back(g);
		return r;
	}

	int max_degree() const
	{
		int d = 0;
		for (const auto &g : gens_)
			d = std::max(d, g.degree());
		return d;
	}

private:
	void check(const HomogeneousPoly &g) const
	{
		require(!g.is_zero(), ErrorKind::ZeroPolynomial, "zero ideal generator");
		require(g.nvars() == nvars_, ErrorKind::VarCountMismatch, "generator " + g.str() + " has wrong variable count");
	}

	std::size_t nvars_;
	std::vector<HomogeneousPoly> gens_;
};

/// Degree-m slice of an ideal as a reduced row echelon matrix over K.
struct GradedPieceBasis {
	int m = 0;
	std::vector<Monomial> monomials;
	Matrix rref;
	std::vector<std::size_t> pivots;

	std::size_t rank() const noexcept { return pivots.size(); }
	std::size_t dim() const noexcept { return monomials.size(); }

	/// Coefficient vector of q against `monomials`.
	Row vector_of(const HomogeneousPoly &q) const
	{
		require(q.degree() == m, ErrorKind::DegreeMismatch,
		        "form of degree " + std::to_string(q.degree()) + " in piece of degree " + std::to_string(m));
		return q.coefficient_vector(MonomialIndex(monomials), monomials.size());
	}

	/// v minus its reduction along pivot rows.
	Row reduce(Row v) const
	{
		for (std::size_t i = 0; i < rref.size(); ++i) {
			K f = v[pivots[i]];
			if (f.is_zero())
				continue;
			for (std::size_t j = pivots[i]; j < v.size(); ++j)
				if (!rref[i][j].is_zero())
					v[j] -= f * rref[i][j];
		}
		return v;
	}

	bool contains(const HomogeneousPoly &q) const
	{
		if (q.is_zero())
			return true;
		Row r = reduce(vector_of(q));
		return std::all_of(r.begin(), r.end(), [](const K &x) { return x.is_zero(); });
	}
};

/// Complementary monomials (non-pivot columns) realizing H(m).
struct QuotientBasis {
	int m = 0;
	std::vector<Monomial> monomials;
	std::vector<std::size_t> columns;

	std::size_t size() const noexcept { return monomials.size(); }
};

/// alpha0 * Q == sum alpha_j phi_j modulo the ideal.
struct ReductionResult {
	K alpha0;
	std::vector<K> alpha;
};

/// a * P0^u == sum A_i P_i.
struct NullstellensatzCertificate {
	unsigned u = 0;
	K a;
	std::vector<HomogeneousPoly> cofactors;
};

/// Rows x^gamma * g_i spanning the degree-m slice, in generator then grlex order.
inline Matrix graded_piece_rows(const IdealGenerators &gens, int m, const std::vector<Monomial> &basis)
{
	MonomialIndex idx(basis);
	Matrix rows;
	for (const auto &g : gens.gens()) {
		if (g.degree() > m)
			continue;
		for (const auto &gamma : monomial_basis(gens.nvars(), m - g.degree())) {
			Row r(basis.size());
			for (const auto &[mono, c] : g.terms())
				r[idx.at(mono * gamma)] = c;
			rows.push_back(std::move(r));
		}
	}
	return rows;
}

inline GradedPieceBasis graded_piece(const IdealGenerators &gens, int m)
{
	require(m >= 0, ErrorKind::PreconditionViolated, "graded_piece: negative degree");
	GradedPieceBasis b;
	b.m = m;
	b.monomials = monomial_basis(gens.nvars(), m);
	Echelon e = bareiss_echelon(graded_piece_rows(gens, m, b.monomials), b.monomials.size());
	b.pivots = e.pivots;
	b.rref = to_rref(e);
	return b;
}

/// Rank of the degree-m slice without forming the reduced matrix.
inline std::size_t graded_piece_rank(const IdealGenerators &gens, int m)
{
	auto basis = monomial_basis(gens.nvars(), m);
	return rank(graded_piece_rows(gens, m, basis), basis.size());
}

inline long hilbert_function(const IdealGenerators &gens, int m)
{
	require(m >= 0, ErrorKind::PreconditionViolated, "hilbert_function: negative degree");
	auto dim = static_cast<long>(monomial_basis(gens.nvars(), m).size());
	return dim - static_cast<long>(graded_piece_rank(gens, m));
}

inline QuotientBasis quotient_monomial_basis(const GradedPieceBasis &piece)
{
	QuotientBasis q;
	q.m = piece.m;
	std::size_t k = 0;
	for (std::size_t c = 0; c < piece.dim(); ++c) {
		if (k < piece.pivots.size() && piece.pivots[k] == c) {
			++k;
			continue;
		}
		q.monomials.push_back(piece.monomials[c]);
		q.columns.push_back(c);
	}
	return q;
}

inline QuotientBasis quotient_monomial_basis(const IdealGenerators &gens, int m)
{
	return quotient_monomial_basis(graded_piece(gens, m));
}

inline ReductionResult reduce_to_quotient_basis(const HomogeneousPoly &q, const GradedPieceBasis &piece,
                                                const QuotientBasis &basis)
{
	require(q.degree() == piece.m && basis.m == piece.m, ErrorKind::DegreeMismatch,
	        "reduce_to_quotient_basis: degree of Q must equal the basis degree");
	Row r = piece.reduce(piece.vector_of(q));
	ReductionResult out{K(1), {}};
	out.alpha.reserve(basis.size());
	for (std::size_t c : basis.columns)
		out.alpha.push_back(r[c]);
	// residual Q - sum alpha_j phi_j must lie in the piece
	Polynomial res = q.poly();
	for (std::size_t j = 0; j < basis.size(); ++j)
		res -= Polynomial(basis.monomials[j], out.alpha[j]);
	require(piece.contains(HomogeneousPoly(res, piece.m)), ErrorKind::InvariantViolated,
	        "quotient reduction residual not in ideal");
	return out;
}

inline ReductionResult reduce_to_quotient_basis(const HomogeneousPoly &q, const IdealGenerators &gens,
                                                const QuotientBasis &basis)
{
	return reduce_to_quotient_basis(q, graded_piece(gens, basis.m), basis);
}

/// The Nullstellensatz exponent bound (4d)^{M+2} with d the largest degree involved, clipped to `limit`.
inline unsigned default_nullstellensatz_cap(const IdealGenerators &gens, int extra_degree, unsigned limit = 12)
{
	Z d = std::max(gens.max_degree(), extra_degree);
	Z bound = ipow(4 * d, gens.nvars() + 1);
	return bound < limit ? static_cast<unsigned>(bound.get_ui()) : limit;
}

/// Least u <= cap with a * P0^u in the ideal (a = 1), found by linear solve in degree u * deg P0.
inline NullstellensatzCertificate nullstellensatz_certificate(const HomogeneousPoly &p0, const IdealGenerators &gens,
                                                              unsigned cap)
{
	require(cap >= 1, ErrorKind::PreconditionViolated, "nullstellensatz cap must be positive");
	require(!p0.is_zero(), ErrorKind::ZeroPolynomial, "P0 is zero");
	require(p0.nvars() == gens.nvars(), ErrorKind::VarCountMismatch, "P0 variable count");
	const std::size_t n = gens.nvars();
	for (unsigned u = 1; u <= cap; ++u) {
		const int D = static_cast<int>(u) * p0.degree();
		auto basis = monomial_basis(n, D);
		MonomialIndex idx(basis);
		// column (i, gamma) holds the coefficients of x^gamma * P_i
		std::vector<std::pair<std::size_t, Monomial>> unknowns;
		for (std::size_t i = 0; i < gens.gens().size(); ++i) {
			int dg = D - gens.gens()[i].degree();
			for (const auto &gamma : monomial_basis(n, dg))
				unknowns.emplace_back(i, gamma);
		}
		if (unknowns.empty())
			continue;
		Matrix a(basis.size(), Row(unknowns.size()));
		for (std::size_t col = 0; col < unknowns.size(); ++col) {
			const auto &[i, gamma] = unknowns[col];
			for (const auto &[mono, c] : gens.gens()[i].terms())
				a[idx.at(mono * gamma)][col] = c;
		}
		HomogeneousPoly target = p0.pow(u);
		auto y = solve(a, unknowns.size(), target.coefficient_vector(idx, basis.size()));
		if (!y)
			continue;
		NullstellensatzCertificate cert;
		cert.u = u;
		cert.a = K(1);
		for (const auto &g : gens.gens())
			cert.cofactors.emplace_back(n, D - g.degree());
		std::vector<Polynomial> acc(gens.gens().size(), Polynomial(n));
		for (std::size_t col = 0; col < unknowns.size(); ++col)
			acc[unknowns[col].first].add_term(unknowns[col].second, (*y)[col]);
		HomogeneousPoly sum(n, D);
		for (std::size_t i = 0; i < acc.size(); ++i) {
			int dg = D - gens.gens()[i].degree();
			cert.cofactors[i] = HomogeneousPoly(std::move(acc[i]), std::max(dg, 0));
			if (dg >= 0)
				sum = sum + cert.cofactors[i] * gens.gens()[i];
		}
		require(cert.a * target == sum, ErrorKind::InvariantViolated, "Nullstellensatz certificate failed to verify");
		return cert;
	}
	throw Error(ErrorKind::NoCertificateWithinCap,
	            "no certificate for " + p0.str() + " with exponent <= " + std::to_string(cap));
}

/// One-sided emptiness verdict: `certified_degree` is set when some piece is full.
struct ZeroVerdict {
	std::optional<int> certified_degree;

	bool empty_certified() const noexcept { return certified_degree.has_value(); }
};

/// Full pieces persist upward, so the piece at `cap` decides and bisection finds the least degree.
inline ZeroVerdict has_common_projective_zero(const IdealGenerators &gens, int cap)
{
	require(cap >= 1, ErrorKind::PreconditionViolated, "degree cap must be positive");
	auto full = [&](int m) {
		return graded_piece_rank(gens, m) == monomial_basis(gens.nvars(), m).size();
	};
	if (!full(cap))
		return {};
	int lo = 1, hi = cap;
	while (lo < hi) {
		int mid = lo + (hi - lo) / 2;
		if (full(mid))
			hi = mid;
		else
			lo = mid + 1;
	}
	return {lo};
}

struct SubsetVerdict {
	std::vector<std::size_t> indices;
	ZeroVerdict verdict;
};

struct PositionReport {
	std::size_t N = 0;
	int cap = 0;
	bool in_position = true;
	std::vector<SubsetVerdict> subsets;

	/// Index sets whose common zero locus on X was not certified empty.
	std::vector<std::vector<std::size_t>> witnesses() const
	{
		std::vector<std::vector<std::size_t>> w;
		for (const auto &s : subsets)
			if (!s.verdict.empty_certified())
				w.push_back(s.indices);
		return w;
	}
};

/// Runs the emptiness test on X plus every (N+1)-subset of the divisors, in lexicographic order.
inline PositionReport check_subgeneral_position(const IdealGenerators &x, const std::vector<HomogeneousPoly> &qs,
                                                std::size_t N, int cap)
{
	require(N >= 1, ErrorKind::PreconditionViolated, "N must be at least 1");
	PositionReport rep;
	rep.N = N;
	rep.cap = cap;
	const std::size_t k = N + 1, q = qs.size();
	if (k > q)
		return rep;
	std::vector<std::size_t> idx(k);
	for (std::size_t i = 0; i < k; ++i)
		idx[i] = i;
	for (;;) {
		IdealGenerators g = x;
		for (std::size_t i : idx)
			g = g.with(qs[i]);
		SubsetVerdict sv{idx, has_common_projective_zero(g, cap)};
		rep.in_position = rep.in_position && sv.verdict.empty_certified();
		rep.subsets.push_back(std::move(sv));
		std::size_t i = k;
		while (i-- > 0 && idx[i] == q - k + i) {}
		if (i == static_cast<std::size_t>(-1))
			break;
		++idx[i];
		for (std::size_t j = i + 1; j < k; ++j)
			idx[j] = idx[j - 1] + 1;
	}
	return rep;
}

} // namespace effsub
