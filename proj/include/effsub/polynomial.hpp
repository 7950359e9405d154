/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/rational_function.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace effsub {

/// Exponent vector X0^e0 ... XM^eM.
struct Monomial {
	std::vector<int> exps;

	Monomial() = default;
	explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
	explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

	static Monomial var(std::size_t nvars, std::size_t i, int power = 1)
	{
		Monomial m(nvars);
		m.exps[i] = power;
		return m;
	}

	std::size_t nvars() const noexcept { return exps.size(); }
	int degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

	friend Monomial operator*(const Monomial &a, const Monomial &b)
	{
		Monomial r = a;
		for (std::size_t i = 0; i < r.exps.size(); ++i)
			r.exps[i] += b.exps[i];
		return r;
	}

	/// Graded lexicographic comparison with X0 > X1 > ... ; returns <0, 0, >0.
	friend int grlex_cmp(const Monomial &a, const Monomial &b)
	{
		int da = a.degree(), db = b.degree();
		if (da != db)
			return da < db ? -1 : 1;
		for (std::size_t i = 0; i < a.exps.size(); ++i)
			if (a.exps[i] != b.exps[i])
				return a.exps[i] < b.exps[i] ? -1 : 1;
		return 0;
	}
	friend bool operator==(const Monomial &a, const Monomial &b) { return a.exps == b.exps; }

	std::string str(const char *var = "X") const
	{
		std::ostringstream os;
		bool first = true;
		for (std::size_t i = 0; i < exps.size(); ++i) {
			if (exps[i] == 0)
				continue;
			if (!first)
				os << "*";
			first = false;
			os << var << i;
			if (exps[i] > 1)
				os << "^" << exps[i];
		}
		return first ? "1" : os.str();
	}
};

/// Orders monomials from grlex-largest to grlex-smallest.
struct GrlexDesc {
	bool operator()(const Monomial &a, const Monomial &b) const { return grlex_cmp(a, b) > 0; }
};

/// All monomials of the given degree in `nvars` variables, grlex-descending.
inline std::vector<Monomial> monomial_basis(std::size_t nvars, int degree)
{
	std::vector<Monomial> out;
	if (degree < 0)
		return out;
	if (nvars == 0) {
		if (degree == 0)
			out.emplace_back(0);
		return out;
	}
	Monomial cur(nvars);
	// lexicographically descending enumeration of compositions
	auto rec = [&](auto &&self, std::size_t i, int left) -> void {
		if (i + 1 == nvars) {
			cur.exps[i] = left;
			out.push_back(cur);
			return;
		}
		for (int e = left; e >= 0; --e) {
			cur.exps[i] = e;
			self(self, i + 1, left - e);
		}
	};
	rec(rec, 0, degree);
	return out;
}

/// Index lookup for a monomial basis of fixed degree.
class MonomialIndex {
public:
	explicit MonomialIndex(const std::vector<Monomial> &basis)
	{
		for (std::size_t i = 0; i < basis.size(); ++i)
			index_.emplace(basis[i], i);
	}
	std::size_t at(const Monomial &m) const
	{
		auto it = index_.find(m);
		require(it != index_.end(), ErrorKind::DegreeMismatch, "monomial " + m.str() + " not in basis");
		return it->second;
	}

private:
	std::map<Monomial, std::size_t, GrlexDesc> index_;
};

/// Sparse polynomial over K in a fixed number of variables, canonical (no zero
/// coefficients stored). Not necessarily homogeneous.
class Polynomial {
public:
	using Terms = std::map<Monomial, K, GrlexDesc>;

	Polynomial() = default;
	explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
	Polynomial(std::size_t nvars, const K &c) : nvars_(nvars)
	{
		if (!c.is_zero())
			terms_.emplace(Monomial(nvars), c);
	}
	Polynomial(const Monomial &m, const K &c) : nvars_(m.nvars())
	{
		if (!c.is_zero())
			terms_.emplace(m, c);
	}
	static Polynomial var(std::size_t nvars, std::size_t i)
	{
		return Polynomial(Monomial::var(nvars, i), K(1));
	}

	std::size_t nvars() const noexcept { return nvars_; }
	const Terms &terms() const noexcept { return terms_; }
	bool is_zero() const noexcept { return terms_.empty(); }
	std::size_t size() const noexcept { return terms_.size(); }

	/// Total degree; -1 for zero.
	int degree() const
	{
		return terms_.empty() ? -1 : terms_.begin()->first.degree();
	}
	bool is_homogeneous() const
	{
		if (terms_.empty())
			return true;
		int d = degree();
		return std::all_of(terms_.begin(), terms_.end(),
		                   [d](const auto &kv) { return kv.first.degree() == d; });
	}
	bool is_constant() const { return terms_.empty() || degree() == 0; }

	K coeff(const Monomial &m) const
	{
		auto it = terms_.find(m);
		return it == terms_.end() ? K() : it->second;
	}

	void add_term(const Monomial &m, const K &c)
	{
		if (c.is_zero())
			return;
		auto [it, inserted] = terms_.try_emplace(m, c);
		if (!inserted) {
			it->second += c;
			if (it->second.is_zero())
				terms_.erase(it);
		}
	}

	Polynomial operator-() const
	{
		Polynomial r = *this;
		for (auto &kv : r.terms_)
			kv.second = -kv.second;
		return r;
	}
	Polynomial &operator+=(const Polynomial &o)
	{
		check_vars(o);
		for (const auto &[m, c] : o.terms_)
			add_term(m, c);
		return *this;
	}
	Polynomial &operator-=(const Polynomial &o)
	{
		check_vars(o);
		for (const auto &[m, c] : o.terms_)
			add_term(m, -c);
		return *this;
	}
	friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
	friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
	friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
	{
		a.check_vars(b);
		Polynomial r(a.nvars_);
		for (const auto &[ma, ca] : a.terms_)
			for (const auto &[mb, cb] : b.terms_)
				r.add_term(ma * mb, ca * cb);
		return r;
	}
	Polynomial &operator*=(const Polynomial &o) { return *this = *this * o; }
	friend Polynomial operator*(const K &s, Polynomial p)
	{
		if (s.is_zero())
			return Polynomial(p.nvars_);
		for (auto &kv : p.terms_)
			kv.second = s * kv.second;
		return p;
	}

	Polynomial pow(unsigned e) const
	{
		Polynomial r(nvars_, K(1)), b = *this;
		while (e) {
			if (e & 1)
				r *= b;
			e >>= 1;
			if (e)
				b *= b;
		}
		return r;
	}

	/// Exact substitution X_i -> values[i].
	K evaluate(std::span<const K> values) const
	{
		require(values.size() == nvars_, ErrorKind::VarCountMismatch,
		         "evaluate: expected " + std::to_string(nvars_) + " values, got " + std::to_string(values.size()));
		// cache powers per variable
		std::vector<std::vector<K>> pw(nvars_);
		K acc;
		for (const auto &[m, c] : terms_) {
			K v = c;
			for (std::size_t i = 0; i < nvars_ && !v.is_zero(); ++i) {
				int e = m.exps[i];
				if (e == 0)
					continue;
				auto &p = pw[i];
				if (p.empty())
					p.push_back(K(1));
				while (static_cast<int>(p.size()) <= e)
					p.push_back(p.back() * values[i]);
				v *= p[e];
			}
			acc += v;
		}
		return acc;
	}

	std::string str(const char *var = "X") const
	{
		if (terms_.empty())
			return "0";
		std::ostringstream os;
		bool first = true;
		for (const auto &[m, c] : terms_) {
			bool mono_one = m.degree() == 0;
			std::string cs;
			bool neg = false;
			if (c.is_constant()) {
				Q q = c.num().lead();
				neg = q < 0;
				Q a = abs(q);
				cs = (a == 1 && !mono_one) ? "" : a.get_str();
			} else {
				cs = "(" + c.str() + ")";
			}
			if (first)
				os << (neg ? "-" : "");
			else
				os << (neg ? " - " : " + ");
			first = false;
			os << cs;
			if (!mono_one) {
				if (!cs.empty())
					os << "*";
				os << m.str(var);
			}
		}
		return os.str();
	}

	friend bool operator==(const Polynomial &a, const Polynomial &b)
	{
		return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
	}

private:
	void check_vars(const Polynomial &o) const
	{
		require(nvars_ == o.nvars_, ErrorKind::VarCountMismatch,
		         "variable counts differ: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_));
	}

	std::size_t nvars_ = 0;
	Terms terms_;
};

/// Homogeneous form of fixed degree over K; homogeneity is a checked invariant.
class HomogeneousPoly {
public:
	HomogeneousPoly() = default;
	/// Zero form of the given degree.
	HomogeneousPoly(std::size_t nvars, int degree) : poly_(nvars), degree_(degree) {}
	/// Throws NotHomogeneous when p mixes degrees. A zero p gets `zero_degree`.
	explicit HomogeneousPoly(Polynomial p, int zero_degree = 0) : poly_(std::move(p))
	{
		require(poly_.is_homogeneous(), ErrorKind::NotHomogeneous, "not homogeneous: " + poly_.str());
		degree_ = poly_.is_zero() ? zero_degree : poly_.degree();
	}
	static HomogeneousPoly var(std::size_t nvars, std::size_t i)
	{
		return HomogeneousPoly(Polynomial::var(nvars, i));
	}
	static HomogeneousPoly monomial(const Monomial &m, const K &c = K(1))
	{
		return HomogeneousPoly(Polynomial(m, c), m.degree());
	}

	std::size_t nvars() const noexcept { return poly_.nvars(); }
	int degree() const noexcept { return degree_; }
	bool is_zero() const noexcept { return poly_.is_zero(); }
	const Polynomial &poly() const noexcept { return poly_; }
	const Polynomial::Terms &terms() const noexcept { return poly_.terms(); }
	K coeff(const Monomial &m) const { return poly_.coeff(m); }

	/// Coefficient vector against a degree-matching monomial index.
	std::vector<K> coefficient_vector(const MonomialIndex &idx, std::size_t dim) const
	{
		std::vector<K> v(dim);
		for (const auto &[m, c] : poly_.terms())
			v[idx.at(m)] = c;
		return v;
	}

	friend HomogeneousPoly operator+(const HomogeneousPoly &a, const HomogeneousPoly &b)
	{
		a.check_add(b);
		return HomogeneousPoly(a.poly_ + b.poly_, a.degree_);
	}
	friend HomogeneousPoly operator-(const HomogeneousPoly &a, const HomogeneousPoly &b)
	{
		a.check_add(b);
		return HomogeneousPoly(a.poly_ - b.poly_, a.degree_);
	}
	HomogeneousPoly operator-() const { return HomogeneousPoly(-poly_, degree_); }
	friend HomogeneousPoly operator*(const HomogeneousPoly &a, const HomogeneousPoly &b)
	{
		require(a.nvars() == b.nvars(), ErrorKind::VarCountMismatch, "mul: variable counts differ");
		return HomogeneousPoly(a.poly_ * b.poly_, a.degree_ + b.degree_);
	}
	friend HomogeneousPoly operator*(const K &s, const HomogeneousPoly &a)
	{
		return HomogeneousPoly(s * a.poly_, a.degree_);
	}
	HomogeneousPoly pow(unsigned e) const
	{
		return HomogeneousPoly(poly_.pow(e), degree_ * static_cast<int>(e));
	}

	/// Q(x) at a coordinate vector (possibly zero).
	K evaluate(std::span<const K> x) const { return poly_.evaluate(x); }

	std::string str() const { return poly_.str(); }
	friend std::ostream &operator<<(std::ostream &os, const HomogeneousPoly &p) { return os << p.str(); }
	friend bool operator==(const HomogeneousPoly &a, const HomogeneousPoly &b)
	{
		return a.degree_ == b.degree_ && a.poly_ == b.poly_;
	}

private:
	void check_add(const HomogeneousPoly &b) const
	{
		require(nvars() == b.nvars(), ErrorKind::VarCountMismatch, "add: variable counts differ");
		require(degree_ == b.degree_, ErrorKind::DegreeMismatch,
		        "add: degrees " + std::to_string(degree_) + " and " + std::to_string(b.degree_));
	}

	Polynomial poly_;
	int degree_ = 0;
};

/// Sets X_axis = 1. The result keeps the same variable count.
inline Polynomial dehomogenize(const HomogeneousPoly &q, std::size_t axis)
{
	Polynomial r(q.nvars());
	for (const auto &[m, c] : q.terms()) {
		Monomial mm = m;
		mm.exps.at(axis) = 0;
		r.add_term(mm, c);
	}
	return r;
}

/// Multiplies each term by the least power of X_axis that makes the result
/// homogeneous of the polynomial's total degree.
inline HomogeneousPoly homogenize(const Polynomial &p, std::size_t axis)
{
	int d = p.degree();
	Polynomial r(p.nvars());
	for (const auto &[m, c] : p.terms()) {
		Monomial mm = m;
		mm.exps.at(axis) += d - m.degree();
		r.add_term(mm, c);
	}
	return HomogeneousPoly(std::move(r), std::max(d, 0));
}

} // namespace effsub
