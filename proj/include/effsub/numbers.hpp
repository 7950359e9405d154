/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"

#include <gmpxx.h>

#include <cctype>
#include <string>

namespace effsub {

using Z = mpz_class;
using Q = mpq_class;

/// Binomial coefficient with C(a, b) = 0 whenever a < b or a < 0.
inline Z binom(long a, long b)
{
	if (b < 0 || a < 0 || a < b)
		return 0;
	Z r;
	mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
	return r;
}

inline Z ipow(const Z &base, unsigned long e)
{
	Z r;
	mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
	return r;
}

inline Q qpow(const Q &base, unsigned long e)
{
	Q r(ipow(base.get_num(), e), ipow(base.get_den(), e));
	r.canonicalize();
	return r;
}

inline Z factorial(unsigned long n)
{
	Z r;
	mpz_fac_ui(r.get_mpz_t(), n);
	return r;
}

inline Z floor_div(const Z &a, const Z &b)
{
	Z r;
	mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
	return r;
}

inline Z ceil_q(const Q &x)
{
	Z r;
	mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
	return r;
}

inline Z floor_q(const Q &x)
{
	Z r;
	mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
	return r;
}

/// Serialization used in reports: always "num/den", e.g. "6/1".
inline std::string to_fraction_string(const Q &x)
{
	return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Parses "a", "a/b" or "-a/b"; throws SyntaxError otherwise.
inline Q parse_rational(const std::string &s)
{
	std::size_t i = 0;
	if (i < s.size() && (s[i] == '-' || s[i] == '+'))
		++i;
	auto digits = [&](std::size_t from) {
		std::size_t j = from;
		while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
			++j;
		if (j == from)
			throw SyntaxError(j, "expected digits in rational '" + s + "'");
		return j;
	};
	i = digits(i);
	std::size_t slash = i;
	if (i < s.size() && s[i] == '/')
		i = digits(i + 1);
	if (i != s.size())
		throw SyntaxError(i, "unexpected character in rational '" + s + "'");
	Q r(s[0] == '+' ? s.substr(1) : s, 10);
	if (slash < s.size() && r.get_den() == 0)
		throw SyntaxError(slash, "zero denominator in rational '" + s + "'");
	r.canonicalize();
	return r;
}

} // namespace effsub
