#include "effsub/heights.hpp"
#include "effsub/parse.hpp"
#include "gen.hpp"

#include <gtest/gtest.h>

using namespace effsub;

namespace {
HomogeneousPoly P(const char *s, std::size_t n = 3) { return parse_poly(s, n); }
} // namespace

TEST(PolyArith, Examples)
{
	EXPECT_EQ(P("X0^2") + P("X1^2"), P("X0^2 + X1^2"));
	EXPECT_EQ(P("X0") * P("X1"), P("X0*X1"));
	EXPECT_EQ(P("X0 + X1").pow(2), P("X0^2 + 2*X0*X1 + X1^2"));
	EXPECT_EQ((P("X0") * P("X1^2")).degree(), 3);
}

TEST(PolyArith, Errors)
{
	try {
		(void)(P("X0") + P("X0^2"));
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
	}
	try {
		(void)(P("X0", 2) * P("X0", 3));
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind(), ErrorKind::VarCountMismatch);
	}
	EXPECT_EQ((P("X0") - P("X0")).degree(), 1);
	EXPECT_TRUE((P("X0") - P("X0")).is_zero());
}

TEST(Evaluate, Examples)
{
	std::vector<K> x{K(1), K::t(), K::t().pow(2)};
	EXPECT_TRUE(P("X0*X2 - X1^2").evaluate(x).is_zero());
	std::vector<K> y{K::t(), K(1)};
	EXPECT_EQ(P("X0 - X1", 2).evaluate(y), parse_k("t-1"));
	EXPECT_EQ(P("X0^2", 2).evaluate(y), parse_k("t^2"));
	try {
		P("X0").evaluate(y);
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind(), ErrorKind::VarCountMismatch);
	}
}

TEST(MonomialBasis, CountsAndOrder)
{
	EXPECT_EQ(monomial_basis(3, 2).size(), 6u);
	EXPECT_EQ(monomial_basis(2, 4).size(), 5u);
	auto b0 = monomial_basis(4, 0);
	ASSERT_EQ(b0.size(), 1u);
	EXPECT_EQ(b0[0].degree(), 0);
	auto b = monomial_basis(3, 2);
	std::vector<std::string> names;
	for (const auto &m : b)
		names.push_back(m.str());
	EXPECT_EQ(names, (std::vector<std::string>{"X0^2", "X0*X1", "X0*X2", "X1^2", "X1*X2", "X2^2"}));
	for (std::size_t i = 1; i < b.size(); ++i)
		EXPECT_GT(grlex_cmp(b[i - 1], b[i]), 0);
	for (int m = 0; m <= 6; ++m)
		for (std::size_t n = 1; n <= 4; ++n)
			EXPECT_EQ(Z(static_cast<unsigned long>(monomial_basis(n, m).size())), binom(m + static_cast<long>(n) - 1, static_cast<long>(n) - 1));
}

TEST(Homogenize, Examples)
{
	Polynomial dh = dehomogenize(P("X0*X2 - X1^2"), 0);
	EXPECT_EQ(dh, parse_polynomial("X2 - X1^2", 3));
	EXPECT_EQ(homogenize(parse_polynomial("X2 - X1^2", 3), 0), P("X0*X2 - X1^2"));
	EXPECT_EQ(dehomogenize(P("X0^3"), 0), parse_polynomial("1", 3));
}

TEST(Homogenize, RoundTrip)
{
	gen::Rng rng(3);
	for (int i = 0; i < 50; ++i) {
		Polynomial p(3);
		for (int j = 0; j < 4; ++j) {
			Monomial m(3);
			m.exps[1] = static_cast<int>(rng.range(0, 3));
			m.exps[2] = static_cast<int>(rng.range(0, 3));
			p.add_term(m, K(Q(rng.range(-4, 4))));
		}
		if (p.is_zero())
			continue;
		EXPECT_EQ(dehomogenize(homogenize(p, 0), 0), p);
	}
}

TEST(Parse, Examples)
{
	auto conic = P("X0*X2 - X1^2");
	EXPECT_EQ(conic.degree(), 2);
	EXPECT_EQ(conic.terms().size(), 2u);
	auto c = P("(t^2+1)*X0^3");
	EXPECT_EQ(c.degree(), 3);
	EXPECT_EQ(c.coeff(Monomial::var(3, 0, 3)), parse_k("t^2+1"));
	try {
		P("X0 + X1^2");
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind(), ErrorKind::NotHomogeneous);
	}
}

TEST(Parse, SyntaxErrorsCarryPosition)
{
	try {
		P("X0 + * X1");
		FAIL();
	} catch (const SyntaxError &e) {
		EXPECT_EQ(e.position(), 5u);
	}
	try {
		P("X0 / X1");
		FAIL();
	} catch (const SyntaxError &e) {
		EXPECT_EQ(e.position(), 3u);
	}
	EXPECT_THROW(P("X3"), SyntaxError);
	EXPECT_THROW(P("(X0"), SyntaxError);
	EXPECT_THROW(P("X0^"), SyntaxError);
	EXPECT_THROW(parse_k("t/0"), SyntaxError);
	EXPECT_EQ(P("X0/2 + X1*(1/(t+1))").coeff(Monomial::var(3, 0)), K(Q(1, 2)));
}

TEST(Parse, FormatRoundTrip)
{
	gen::Rng rng(17);
	for (int i = 0; i < 100; ++i) {
		auto q = rng.form(3, static_cast<int>(rng.range(0, 3)));
		EXPECT_EQ(P(q.str().c_str()), q) << q.str();
	}
}

TEST(MultipolyProperties, RingAxioms)
{
	gen::Rng rng(23);
	for (int i = 0; i < 40; ++i) {
		auto a = rng.form(3, 1), b = rng.form(3, 1), c = rng.form(3, 1);
		auto d = rng.form(3, 2);
		EXPECT_EQ((a * b) * d, a * (b * d));
		EXPECT_EQ(a * (b + c), a * b + a * c);
		EXPECT_EQ(a * b, b * a);
		EXPECT_EQ((a + b) + c, a + (b + c));
	}
}

TEST(MultipolyProperties, EvaluationIsMultiplicativeAndHomogeneous)
{
	gen::Rng rng(29);
	for (int i = 0; i < 40; ++i) {
		auto a = rng.form(3, 1), b = rng.form(3, 2);
		auto x = rng.point(3);
		K lam = rng.structured_element();
		EXPECT_EQ((a * b).evaluate(x.span()), a.evaluate(x.span()) * b.evaluate(x.span()));
		EXPECT_EQ(b.evaluate(x.scaled(lam).span()), lam.pow(2) * b.evaluate(x.span()));
	}
}

TEST(MultipolyProperties, StoredFormsAreHomogeneous)
{
	gen::Rng rng(37);
	for (int i = 0; i < 40; ++i) {
		auto a = rng.form(4, 2);
		auto p = (a * a + a.pow(2)).poly();
		EXPECT_TRUE(p.is_homogeneous());
		for (const auto &[m, c] : p.terms())
			EXPECT_FALSE(c.is_zero());
	}
	EXPECT_THROW(HomogeneousPoly(parse_polynomial("X0 + 1", 2)), Error);
}
