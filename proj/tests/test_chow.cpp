#include "effsub/chow.hpp"
#include "effsub/parse.hpp"
#include "gen.hpp"

#include <gtest/gtest.h>

using namespace effsub;

namespace {

HomogeneousPoly P(const char *s, std::size_t n = 3) { return parse_poly(s, n); }

ProjectivePoint unit(std::size_t n, std::size_t i)
{
	std::vector<K> c(n);
	c[i] = K(1);
	return ProjectivePoint(std::move(c));
}

MultiHomForm flat(const char *s, std::size_t blocks, std::size_t vars, int deg)
{
	// u<i>_<a> is written as X<i*vars+a>
	return MultiHomForm::from_flat(parse_polynomial(s, blocks * vars), blocks, vars, deg);
}

K dot(const std::vector<K> &u, std::span<const K> x)
{
	K s;
	for (std::size_t i = 0; i < u.size(); ++i)
		s += u[i] * x[i];
	return s;
}

// random hyperplane through x, solved for the last nonzero coordinate
std::vector<K> hyperplane_through(gen::Rng &rng, const ProjectivePoint &x)
{
	std::size_t piv = x.size();
	while (x[piv - 1].is_zero())
		--piv;
	--piv;
	std::vector<K> u(x.size());
	for (std::size_t a = 0; a < x.size(); ++a)
		if (a != piv)
			u[a] = K(rng.rational());
	u[piv] = K();
	u[piv] = -dot(u, x.span()) / x[piv];
	return u;
}

std::vector<std::vector<K>> skew_substitution(const SkewExpansion &ex, std::span<const K> s, std::span<const K> x)
{
	std::vector<std::vector<K>> u(ex.blocks, std::vector<K>(ex.vars));
	const std::size_t per = ex.skew_per_block();
	for (std::size_t i = 0; i < ex.blocks; ++i)
		for (std::size_t a = 0; a < ex.vars; ++a)
			for (std::size_t k = 0; k < ex.vars; ++k) {
				if (k > a)
					u[i][a] += s[i * per + skew_index(a, k, ex.vars)] * x[k];
				else if (k < a)
					u[i][a] -= s[i * per + skew_index(k, a, ex.vars)] * x[k];
			}
	return u;
}

const HomogeneousPoly conic = P("X0*X2 - X1^2");

} // namespace

TEST(ChowLinear, Examples)
{
	EXPECT_EQ(chow_of_linear({unit(3, 0)}), flat("X0", 1, 3, 1));
	EXPECT_EQ(chow_of_linear({unit(3, 0), unit(3, 1)}), flat("X0*X4 - X1*X3", 2, 3, 1));
	EXPECT_EQ(chow_of_linear({unit(2, 0), unit(2, 1)}), flat("X0*X3 - X1*X2", 2, 2, 1));
	try {
		chow_of_linear({ProjectivePoint{K(1), K(1), K(0)}, ProjectivePoint{K(2), K(2), K(0)}});
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind(), ErrorKind::DependentSpan);
	}
}

TEST(ChowLinear, VanishesExactlyOnSharedPoints)
{
	gen::Rng rng(101);
	for (int trial = 0; trial < 10; ++trial) {
		std::vector<ProjectivePoint> b{rng.point(4), rng.point(4)};
		MultiHomForm f;
		try {
			f = chow_of_linear(b);
		} catch (const Error &) {
			continue;
		}
		ASSERT_EQ(f.block_degree(), 1);
		// a point of the span
		std::vector<K> y(4);
		K c0 = K(rng.nonzero_rational()), c1 = K(rng.nonzero_rational());
		for (std::size_t a = 0; a < 4; ++a)
			y[a] = c0 * b[0][a] + c1 * b[1][a];
		ProjectivePoint yp(y);
		EXPECT_TRUE(f.evaluate({hyperplane_through(rng, yp), hyperplane_through(rng, yp)}).is_zero());
		std::vector<K> u0(4), u1(4);
		for (std::size_t a = 0; a < 4; ++a) {
			u0[a] = K(rng.rational());
			u1[a] = K(rng.rational());
		}
		K direct = dot(u0, b[0].span()) * dot(u1, b[1].span()) - dot(u0, b[1].span()) * dot(u1, b[0].span());
		EXPECT_EQ(f.evaluate({u0, u1}), direct);
	}
}

TEST(ChowHypersurface, ConicDegreeAndVanishing)
{
	auto f = chow_of_hypersurface(conic);
	EXPECT_EQ(f.blocks(), 2u);
	EXPECT_EQ(f.vars_per_block(), 3u);
	EXPECT_EQ(f.block_degree(), 2);
	for (const auto &[key, c] : f.terms())
		for (const auto &m : key)
			EXPECT_EQ(m.degree(), 2);
	gen::Rng rng(103);
	for (int k = 0; k < 10; ++k) {
		K s = rng.structured_element(2);
		ProjectivePoint x{K(1), s, s * s};
		EXPECT_TRUE(f.evaluate({hyperplane_through(rng, x), hyperplane_through(rng, x)}).is_zero());
	}
}

TEST(ChowHypersurface, LinearAgreesWithDeterminant)
{
	EXPECT_TRUE(proportional(chow_of_hypersurface(P("X0")), chow_of_linear({unit(3, 1), unit(3, 2)})));
	auto plane = chow_of_hypersurface(P("X0", 4));
	EXPECT_EQ(plane.blocks(), 3u);
	EXPECT_EQ(plane.block_degree(), 1);
	EXPECT_TRUE(proportional(plane, chow_of_linear({unit(4, 1), unit(4, 2), unit(4, 3)})));

	gen::Rng rng(107);
	for (std::size_t n = 3; n <= 4; ++n)
		for (int trial = 0; trial < 5; ++trial) {
			std::vector<K> a(n);
			a[0] = rng.nonzero_element(1);
			Polynomial lin(n, K());
			lin.add_term(Monomial::var(n, 0), a[0]);
			for (std::size_t i = 1; i < n; ++i) {
				a[i] = rng.element(1);
				lin.add_term(Monomial::var(n, i), a[i]);
			}
			std::vector<ProjectivePoint> kernel;
			for (std::size_t k = 1; k < n; ++k) {
				std::vector<K> v(n);
				v[0] = -a[k] / a[0];
				v[k] = K(1);
				kernel.emplace_back(std::move(v));
			}
			EXPECT_TRUE(proportional(chow_of_hypersurface(HomogeneousPoly(lin, 1)), chow_of_linear(kernel)));
		}
}

TEST(ExpandSkew, ConicVanishesOnCurveOnly)
{
	auto ex = expand_skew(chow_of_hypersurface(conic));
	ASSERT_FALSE(ex.entries.empty());
	for (const auto &[sigma, p] : ex.entries) {
		EXPECT_FALSE(p.is_zero());
		EXPECT_EQ(p.degree(), 4);
	}
	for (int k = 0; k < 25; ++k) {
		K s = K(UPoly{Q(k), Q(1)});
		EXPECT_TRUE(ex.vanishes_at(ProjectivePoint{K(1), s, s * s})) << k;
	}
	EXPECT_FALSE(ex.vanishes_at(ProjectivePoint{K(1), K(0), K(1)}));

	gen::Rng rng(109);
	for (int i = 0; i < 10; ++i) {
		auto x = rng.point(3);
		if (!conic.evaluate(x.span()).is_zero())
			EXPECT_FALSE(ex.vanishes_at(x)) << x.str();
	}
}

TEST(ExpandSkew, PointInP1RecoversDefiningForm)
{
	auto ex = expand_skew(chow_of_linear({ProjectivePoint{K(1), K(0)}}));
	ASSERT_EQ(ex.entries.size(), 1u);
	EXPECT_EQ(ex.sigma_str(ex.entries.begin()->first), "s0_01");
	EXPECT_EQ(ex.entries.begin()->second, P("X1", 2));
}

TEST(ExpandSkew, Reconstruction)
{
	gen::Rng rng(113);
	std::vector<MultiHomForm> forms{chow_of_hypersurface(conic), chow_of_hypersurface(P("t*X0*X2 - X1^2 + X1*X2")),
	                                chow_of_linear({unit(4, 0), ProjectivePoint{K(0), K(1), K(1), K(2)}}),
	                                chow_of_hypersurface(P("X0 - t*X3", 4))};
	for (const auto &f : forms) {
		auto ex = expand_skew(f);
		for (int i = 0; i < 10; ++i) {
			std::vector<K> s, x;
			for (std::size_t j = 0; j < ex.skew_count(); ++j)
				s.push_back(rng.element(1));
			for (std::size_t j = 0; j < ex.vars; ++j)
				x.push_back(rng.element(1));
			EXPECT_EQ(ex.reconstruct(s, x), f.evaluate(skew_substitution(ex, s, x)));
		}
	}
}

TEST(ExpandSkew, CoefficientOrdersDominateForm)
{
	gen::Rng rng(127);
	for (int i = 0; i < 5; ++i) {
		auto f = chow_of_hypersurface(rng.form(3, 2, 0.7, 0.5));
		auto ex = expand_skew(f);
		auto cs = f.coefficients();
		for (const auto &place : {Place(), Place(UPoly::t()), Place(UPoly{Q(-1), Q(1)}), Place(UPoly{Q(1), Q(1)})}) {
			long e = min_order(place, cs);
			for (const auto &[sigma, p] : ex.entries)
				EXPECT_GE(gauss_order_poly(place, p), e);
		}
	}
}

TEST(PsigmaCount, Examples)
{
	auto r = psigma_count_report(expand_skew(chow_of_hypersurface(conic)));
	EXPECT_EQ(r.stated_bound, 25);
	EXPECT_EQ(r.monomial_count, 36);
	EXPECT_LE(r.actual, 36u);
	EXPECT_GE(r.actual, 1u);
	auto l = psigma_count_report(expand_skew(chow_of_linear({ProjectivePoint{K(1), K(0)}})));
	EXPECT_EQ(l.stated_bound, 1);
	EXPECT_EQ(l.actual, 1u);
}

TEST(ChowHeight, Examples)
{
	EXPECT_EQ(chow_height(chow_of_hypersurface(conic)), 0);
	EXPECT_EQ(chow_height(chow_of_hypersurface(P("t*X0*X2 - X1^2"))), 1);
	gen::Rng rng(131);
	for (int i = 0; i < 10; ++i) {
		auto f = chow_of_hypersurface(rng.form(3, 2, 0.7, 0.4));
		Q h = chow_height(f);
		EXPECT_GE(h, 0);
		EXPECT_EQ(chow_height(rng.nonzero_element(2) * f), h);
	}
}
