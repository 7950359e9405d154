/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/errors.hpp"
#include "effsub/polynomial.hpp"
#include "effsub/rational_function.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace effsub {

namespace detail {

// Recursive descent over
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := ('+'|'-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 't' | 'X' digits | '(' expr ')'
// Values are polynomials in X with K coefficients; nvars == 0 forbids X.
class Parser {
public:
	Parser(std::string_view text, std::size_t nvars) : s_(text), nvars_(nvars) {}

	Polynomial parse_all()
	{
		Polynomial r = expr();
		skip();
		if (i_ != s_.size())
			throw SyntaxError(i_, std::string("unexpected '") + s_[i_] + "'");
		return r;
	}

private:
	void skip()
	{
		while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
			++i_;
	}
	bool eat(char c)
	{
		skip();
		if (i_ < s_.size() && s_[i_] == c) {
			++i_;
			return true;
		}
		return false;
	}

	Polynomial expr()
	{
		Polynomial r = term();
		for (;;) {
			if (eat('+'))
				r += term();
			else if (eat('-'))
				r -= term();
			else
				return r;
		}
	}

	Polynomial term()
	{
		Polynomial r = unary();
		for (;;) {
			if (eat('*')) {
				r *= unary();
			} else {
				skip();
				std::size_t at = i_;
				if (!eat('/'))
					return r;
				Polynomial d = unary();
				if (!d.is_constant())
					throw SyntaxError(at, "division by an expression containing X");
				if (d.is_zero())
					throw SyntaxError(at, "division by zero");
				r = d.terms().begin()->second.inverse() * r;
			}
		}
	}

	Polynomial unary()
	{
		if (eat('-'))
			return -unary();
		if (eat('+'))
			return unary();
		return power();
	}

	Polynomial power()
	{
		Polynomial base = atom();
		if (!eat('^'))
			return base;
		skip();
		std::size_t at = i_;
		std::string digits = read_digits();
		if (digits.empty())
			throw SyntaxError(at, "expected nonnegative integer exponent");
		if (digits.size() > 6)
			throw SyntaxError(at, "exponent too large");
		return base.pow(static_cast<unsigned>(std::stoul(digits)));
	}

	std::string read_digits()
	{
		std::size_t start = i_;
		while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
			++i_;
		return std::string(s_.substr(start, i_ - start));
	}

	Polynomial atom()
	{
		skip();
		if (i_ >= s_.size())
			throw SyntaxError(i_, "unexpected end of input");
		char c = s_[i_];
		if (c == '(') {
			++i_;
			Polynomial r = expr();
			if (!eat(')'))
				throw SyntaxError(i_, "expected ')'");
			return r;
		}
		if (std::isdigit(static_cast<unsigned char>(c))) {
			Z v(read_digits());
			return Polynomial(nvars_, K(Q(v)));
		}
		if (c == 't') {
			++i_;
			return Polynomial(nvars_, K::t());
		}
		if (c == 'X') {
			std::size_t at = i_++;
			std::string digits = read_digits();
			if (digits.empty())
				throw SyntaxError(at, "expected variable index after 'X'");
			if (digits.size() > 6 || std::stoul(digits) >= nvars_)
				throw SyntaxError(at, "variable X" + digits + " out of range for " +
				                          std::to_string(nvars_) + " variables");
			return Polynomial::var(nvars_, std::stoul(digits));
		}
		throw SyntaxError(i_, std::string("unexpected '") + c + "'");
	}

	std::string_view s_;
	std::size_t nvars_;
	std::size_t i_ = 0;
};

} // namespace detail

/// Parses an element of Q(t), e.g. "(t^2+1)/(t-1)".
inline K parse_k(std::string_view text)
{
	Polynomial p = detail::Parser(text, 0).parse_all();
	return p.is_zero() ? K() : p.terms().begin()->second;
}

/// Parses an arbitrary (possibly inhomogeneous) polynomial in X0..X{nvars-1}.
inline Polynomial parse_polynomial(std::string_view text, std::size_t nvars)
{
	return detail::Parser(text, nvars).parse_all();
}

/// Parses a homogeneous form; throws NotHomogeneous for mixed degrees.
inline HomogeneousPoly parse_poly(std::string_view text, std::size_t nvars)
{
	return HomogeneousPoly(parse_polynomial(text, nvars));
}

/// "inf" or a monic irreducible polynomial in t such as "t-1".
inline Place parse_place(std::string_view text)
{
	std::string s;
	for (char c : text)
		if (!std::isspace(static_cast<unsigned char>(c)))
			s += c;
	if (s == "inf")
		return Place::infinity();
	K f = parse_k(text);
	require(f.is_polynomial(), ErrorKind::PreconditionViolated, "place must be a polynomial: " + std::string(text));
	return Place(f.num());
}

} // namespace effsub
