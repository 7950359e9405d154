/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/heights.hpp"
#include "effsub/linalg.hpp"
#include "effsub/numbers.hpp"
#include "effsub/polynomial.hpp"

#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace effsub {

/// Orders block-monomial tuples block by block, each block grlex-descending.
struct BlockKeyLess {
	bool operator()(const std::vector<Monomial> &a, const std::vector<Monomial> &b) const
	{
		for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
			int c = grlex_cmp(a[i], b[i]);
			if (c != 0)
				return c > 0;
		}
		return a.size() < b.size();
	}
};

/// Form in n+1 blocks u_0..u_n of M+1 variables each, of degree Delta in every block.
class MultiHomForm {
public:
	using Key = std::vector<Monomial>;
	using Terms = std::map<Key, K, BlockKeyLess>;

	MultiHomForm() = default;
	MultiHomForm(std::size_t blocks, std::size_t vars_per_block, int block_degree)
	: blocks_(blocks), vars_(vars_per_block), degree_(block_degree)
	{
		require(blocks >= 1 && vars_per_block >= 1 && block_degree >= 1, ErrorKind::PreconditionViolated,
		        "MultiHomForm: empty shape");
	}

	std::size_t blocks() const noexcept { return blocks_; }
	std::size_t vars_per_block() const noexcept { return vars_; }
	int block_degree() const noexcept { return degree_; }
	const Terms &terms() const noexcept { return terms_; }
	bool is_zero() const noexcept { return terms_.empty(); }
	std::size_t size() const noexcept { return terms_.size(); }

	void add_term(const Key &key, const K &c)
	{
		require(key.size() == blocks_, ErrorKind::VarCountMismatch, "block count differs");
		for (const auto &m : key) {
			require(m.nvars() == vars_, ErrorKind::VarCountMismatch, "block variable count differs");
			require(m.degree() == degree_, ErrorKind::DegreeMismatch,
			        "block monomial " + m.str("u") + " has degree " + std::to_string(m.degree()));
		}
		if (c.is_zero())
			return;
		auto [it, inserted] = terms_.try_emplace(key, c);
		if (!inserted) {
			it->second += c;
			if (it->second.is_zero())
				terms_.erase(it);
		}
	}

	K coeff(const Key &key) const
	{
		auto it = terms_.find(key);
		return it == terms_.end() ? K() : it->second;
	}

	std::vector<K> coefficients() const
	{
		std::vector<K> out;
		for (const auto &[k, c] : terms_)
			out.push_back(c);
		return out;
	}

	/// Flat polynomial in the (n+1)(M+1) variables u_{i,a} at index i(M+1)+a.
	Polynomial flatten() const
	{
		Polynomial p(blocks_ * vars_);
		for (const auto &[key, c] : terms_) {
			Monomial m(blocks_ * vars_);
			for (std::size_t i = 0; i < blocks_; ++i)
				for (std::size_t a = 0; a < vars_; ++a)
					m.exps[i * vars_ + a] = key[i].exps[a];
			p.add_term(m, c);
		}
		return p;
	}

	/// Inverse of flatten; throws DegreeMismatch when a term is not of degree Delta in each block.
	static MultiHomForm from_flat(const Polynomial &p, std::size_t blocks, std::size_t vars_per_block,
	                              int block_degree)
	{
		require(p.nvars() == blocks * vars_per_block, ErrorKind::VarCountMismatch, "from_flat: variable count");
		MultiHomForm f(blocks, vars_per_block, block_degree);
		for (const auto &[m, c] : p.terms()) {
			Key key;
			for (std::size_t i = 0; i < blocks; ++i)
				key.emplace_back(std::vector<int>(m.exps.begin() + static_cast<long>(i * vars_per_block),
				                                  m.exps.begin() + static_cast<long>((i + 1) * vars_per_block)));
			f.add_term(key, c);
		}
		return f;
	}

	K evaluate(const std::vector<std::vector<K>> &u) const
	{
		require(u.size() == blocks_, ErrorKind::VarCountMismatch, "evaluate: block count");
		std::vector<K> flat;
		for (const auto &b : u) {
			require(b.size() == vars_, ErrorKind::VarCountMismatch, "evaluate: block size");
			flat.insert(flat.end(), b.begin(), b.end());
		}
		return flatten().evaluate(flat);
	}

	friend MultiHomForm operator*(const K &s, MultiHomForm f)
	{
		if (s.is_zero()) {
			f.terms_.clear();
			return f;
		}
		for (auto &[k, c] : f.terms_)
			c *= s;
		return f;
	}

	friend bool operator==(const MultiHomForm &a, const MultiHomForm &b)
	{
		return a.blocks_ == b.blocks_ && a.vars_ == b.vars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
	}

	/// Variables print as u<block>_<index>.
	std::string str() const
	{
		if (terms_.empty())
			return "0";
		std::ostringstream os;
		bool first = true;
		for (const auto &[key, c] : terms_) {
			if (!first)
				os << " + ";
			first = false;
			std::string mono;
			for (std::size_t i = 0; i < blocks_; ++i)
				for (std::size_t a = 0; a < vars_; ++a) {
					int e = key[i].exps[a];
					if (e == 0)
						continue;
					if (!mono.empty())
						mono += "*";
					mono += "u" + std::to_string(i) + "_" + std::to_string(a);
					if (e > 1)
						mono += "^" + std::to_string(e);
				}
			if (c == K(1))
				os << mono;
			else
				os << "(" << c.str() << ")*" << mono;
		}
		return os.str();
	}

private:
	std::size_t blocks_ = 0;
	std::size_t vars_ = 0;
	int degree_ = 0;
	Terms terms_;
};

/// True when a = c b for some c in K*.
inline bool proportional(const MultiHomForm &a, const MultiHomForm &b)
{
	if (a.is_zero() || b.is_zero())
		return a.is_zero() && b.is_zero();
	if (a.size() != b.size())
		return false;
	const auto &[k0, c0] = *a.terms().begin();
	K b0 = b.coeff(k0);
	if (b0.is_zero())
		return false;
	const K r = c0 * b0.inverse();
	for (const auto &[k, c] : a.terms()) {
		K other = b.coeff(k);
		if (other.is_zero() || c != r * other)
			return false;
	}
	return true;
}

namespace detail {

inline Polynomial det(std::vector<std::vector<Polynomial>> m, std::size_t nvars)
{
	const std::size_t n = m.size();
	if (n == 0)
		return Polynomial(nvars, K(1));
	if (n == 1)
		return m[0][0];
	Polynomial out(nvars);
	for (std::size_t c = 0; c < n; ++c) {
		if (m[0][c].is_zero())
			continue;
		std::vector<std::vector<Polynomial>> minor;
		for (std::size_t r = 1; r < n; ++r) {
			std::vector<Polynomial> row;
			for (std::size_t k = 0; k < n; ++k)
				if (k != c)
					row.push_back(m[r][k]);
			minor.push_back(std::move(row));
		}
		Polynomial term = m[0][c] * det(std::move(minor), nvars);
		out = c % 2 == 0 ? out + term : out - term;
	}
	return out;
}

} // namespace detail

/// Chow form of the linear span of n+1 points: det(u_i . b_j).
inline MultiHomForm chow_of_linear(std::span<const ProjectivePoint> span_points)
{
	require(!span_points.empty(), ErrorKind::PreconditionViolated, "chow_of_linear: no points");
	const std::size_t blocks = span_points.size();
	const std::size_t vars = span_points[0].size();
	Matrix b;
	for (const auto &p : span_points) {
		require(p.size() == vars, ErrorKind::VarCountMismatch, "chow_of_linear: point sizes differ");
		b.push_back(p.coords());
	}
	require(blocks <= vars && rank(b, vars) == blocks, ErrorKind::DependentSpan,
	        "chow_of_linear: span points are linearly dependent");
	const std::size_t nv = blocks * vars;
	std::vector<std::vector<Polynomial>> m(blocks, std::vector<Polynomial>(blocks, Polynomial(nv)));
	for (std::size_t i = 0; i < blocks; ++i)
		for (std::size_t j = 0; j < blocks; ++j)
			for (std::size_t a = 0; a < vars; ++a)
				m[i][j].add_term(Monomial::var(nv, i * vars + a), b[j][a]);
	return MultiHomForm::from_flat(detail::det(std::move(m), nv), blocks, vars, 1);
}

inline MultiHomForm chow_of_linear(std::initializer_list<ProjectivePoint> pts)
{
	return chow_of_linear(std::span<const ProjectivePoint>(pts.begin(), pts.size()));
}

/// Chow form of {F = 0} in P^M: F at the signed maximal minors of the M x (M+1) matrix (u_0; ...; u_{M-1}).
inline MultiHomForm chow_of_hypersurface(const HomogeneousPoly &f)
{
	const std::size_t vars = f.nvars();
	require(vars >= 3, ErrorKind::PreconditionViolated, "chow_of_hypersurface: M >= 2");
	require(!f.is_zero() && f.degree() >= 1, ErrorKind::PreconditionViolated, "chow_of_hypersurface: deg F >= 1");
	const std::size_t blocks = vars - 1;
	const std::size_t nv = blocks * vars;
	std::vector<Polynomial> w;
	for (std::size_t k = 0; k < vars; ++k) {
		std::vector<std::vector<Polynomial>> minor;
		for (std::size_t i = 0; i < blocks; ++i) {
			std::vector<Polynomial> row;
			for (std::size_t a = 0; a < vars; ++a)
				if (a != k)
					row.push_back(Polynomial::var(nv, i * vars + a));
			minor.push_back(std::move(row));
		}
		Polynomial d = detail::det(std::move(minor), nv);
		w.push_back(k % 2 == 0 ? d : -d);
	}
	Polynomial out(nv);
	for (const auto &[m, c] : f.terms()) {
		Polynomial term(nv, c);
		for (std::size_t k = 0; k < vars; ++k)
			if (m.exps[k] > 0)
				term = term * w[k].pow(static_cast<unsigned>(m.exps[k]));
		out += term;
	}
	return MultiHomForm::from_flat(out, blocks, vars, f.degree());
}

/// Index of s_{jk}, 0 <= j < k <= M, inside one block of M(M+1)/2 skew variables.
inline std::size_t skew_index(std::size_t j, std::size_t k, std::size_t vars)
{
	require(j < k && k < vars, ErrorKind::PreconditionViolated, "skew_index: need j < k <= M");
	return j * vars - j * (j + 1) / 2 + (k - j - 1);
}

/// Coefficients P_sigma of F_X(S^(0) x, ..., S^(n) x) with respect to the skew monomials sigma.
struct SkewExpansion {
	std::size_t blocks = 0;
	std::size_t vars = 0;
	int block_degree = 0;
	std::map<Monomial, HomogeneousPoly, GrlexDesc> entries;

	std::size_t skew_per_block() const { return vars * (vars - 1) / 2; }
	std::size_t skew_count() const { return blocks * skew_per_block(); }

	std::vector<HomogeneousPoly> polys() const
	{
		std::vector<HomogeneousPoly> out;
		for (const auto &[s, p] : entries)
			out.push_back(p);
		return out;
	}

	/// sum_sigma P_sigma(x) sigma(s) with s given block-major in skew_index order.
	K reconstruct(std::span<const K> s, std::span<const K> x) const
	{
		require(s.size() == skew_count(), ErrorKind::VarCountMismatch, "reconstruct: skew value count");
		K total;
		for (const auto &[sigma, p] : entries) {
			K v = p.evaluate(x);
			for (std::size_t i = 0; i < sigma.exps.size(); ++i)
				if (sigma.exps[i] > 0)
					v *= s[i].pow(sigma.exps[i]);
			total += v;
		}
		return total;
	}

	/// True when every P_sigma vanishes at x.
	bool vanishes_at(const ProjectivePoint &x) const
	{
		for (const auto &[sigma, p] : entries)
			if (!p.evaluate(x.span()).is_zero())
				return false;
		return true;
	}

	/// sigma printed with s<block>_<j><k> variables.
	std::string sigma_str(const Monomial &sigma) const
	{
		std::string out;
		const std::size_t per = skew_per_block();
		for (std::size_t i = 0; i < blocks; ++i)
			for (std::size_t j = 0; j < vars; ++j)
				for (std::size_t k = j + 1; k < vars; ++k) {
					int e = sigma.exps[i * per + skew_index(j, k, vars)];
					if (e == 0)
						continue;
					if (!out.empty())
						out += "*";
					out += "s" + std::to_string(i) + "_" + std::to_string(j) + std::to_string(k);
					if (e > 1)
						out += "^" + std::to_string(e);
				}
		return out.empty() ? "1" : out;
	}
};

namespace detail {

inline std::set<Place> coefficient_places(std::span<const K> cs)
{
	std::set<Place> out{Place()};
	for (const auto &c : cs)
		for (const auto &[p, e] : divisor(c))
			out.insert(p);
	return out;
}

} // namespace detail

/// Substitutes u_i = S^(i) x and collects the coefficient of each skew monomial.
inline SkewExpansion expand_skew(const MultiHomForm &fx)
{
	require(!fx.is_zero(), ErrorKind::ZeroPolynomial, "expand_skew: zero form");
	SkewExpansion ex;
	ex.blocks = fx.blocks();
	ex.vars = fx.vars_per_block();
	ex.block_degree = fx.block_degree();
	const std::size_t per = ex.skew_per_block();
	const std::size_t ns = ex.skew_count();
	const std::size_t nv = ns + ex.vars;

	// u_{i,a} = sum_{k>a} s_{ak} x_k - sum_{j<a} s_{ja} x_j
	std::vector<std::vector<Polynomial>> u(ex.blocks, std::vector<Polynomial>(ex.vars, Polynomial(nv)));
	for (std::size_t i = 0; i < ex.blocks; ++i)
		for (std::size_t a = 0; a < ex.vars; ++a)
			for (std::size_t k = 0; k < ex.vars; ++k) {
				if (k == a)
					continue;
				Monomial m(nv);
				m.exps[i * per + skew_index(std::min(a, k), std::max(a, k), ex.vars)] = 1;
				m.exps[ns + k] = 1;
				u[i][a].add_term(m, K(k > a ? 1 : -1));
			}

	std::vector<std::map<Monomial, Polynomial, GrlexDesc>> block_cache(ex.blocks);
	auto block_value = [&](std::size_t i, const Monomial &m) -> const Polynomial & {
		auto it = block_cache[i].find(m);
		if (it != block_cache[i].end())
			return it->second;
		Polynomial v(nv, K(1));
		for (std::size_t a = 0; a < ex.vars; ++a)
			if (m.exps[a] > 0)
				v = v * u[i][a].pow(static_cast<unsigned>(m.exps[a]));
		return block_cache[i].emplace(m, std::move(v)).first->second;
	};

	Polynomial total(nv);
	for (const auto &[key, c] : fx.terms()) {
		Polynomial term(nv, c);
		for (std::size_t i = 0; i < ex.blocks; ++i)
			term = term * block_value(i, key[i]);
		total += term;
	}

	std::map<Monomial, Polynomial, GrlexDesc> collected;
	for (const auto &[m, c] : total.terms()) {
		Monomial sigma(std::vector<int>(m.exps.begin(), m.exps.begin() + static_cast<long>(ns)));
		Monomial xm(std::vector<int>(m.exps.begin() + static_cast<long>(ns), m.exps.end()));
		collected.try_emplace(sigma, Polynomial(ex.vars)).first->second.add_term(xm, c);
	}
	const int xdeg = static_cast<int>(ex.blocks) * ex.block_degree;
	for (auto &[sigma, p] : collected)
		if (!p.is_zero())
			ex.entries.emplace(sigma, HomogeneousPoly(std::move(p), xdeg));

	const auto coeffs = fx.coefficients();
	for (const auto &place : detail::coefficient_places(coeffs)) {
		long e_fx = min_order(place, coeffs);
		for (const auto &[sigma, p] : ex.entries)
			require(gauss_order_poly(place, p) >= e_fx, ErrorKind::InvariantViolated,
			        "e_p(P_sigma) < e_p(F_X) at " + place.str());
	}
	return ex;
}

struct PsigmaCount {
	std::size_t actual = 0;
	Z stated_bound;
	Z monomial_count;
};

/// Number of nonzero P_sigma next to C((n+1)Delta + M(M-1)/2, (n+1)Delta)^(n+1) and the skew monomial count.
inline PsigmaCount psigma_count_report(const SkewExpansion &ex)
{
	const long n1 = static_cast<long>(ex.blocks);
	const long m = static_cast<long>(ex.vars) - 1;
	const long delta = ex.block_degree;
	PsigmaCount r;
	r.actual = ex.entries.size();
	r.stated_bound = ipow(binom(n1 * delta + m * (m - 1) / 2, n1 * delta), static_cast<unsigned long>(n1));
	r.monomial_count = ipow(binom(m * (m + 1) / 2 + delta - 1, delta), static_cast<unsigned long>(n1));
	return r;
}

/// h(X) = h(F_X), the height of the coefficient family.
inline Q chow_height(const MultiHomForm &fx)
{
	require(!fx.is_zero(), ErrorKind::ZeroPolynomial, "chow_height: zero form");
	return height_of_values(fx.coefficients());
}

} // namespace effsub
