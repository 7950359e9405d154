#include "effsub/effective_constants.hpp"
#include "effsub/parse.hpp"
#include "gen.hpp"

#include <gtest/gtest.h>

using namespace effsub;

namespace {

HomogeneousPoly P(const char *s, std::size_t n = 3) { return parse_poly(s, n); }

HTable conic_table()
{
	return [](long m) -> std::optional<Z> {
		if (m < 0)
			return std::nullopt;
		return Z(2 * m + 1);
	};
}

ConstantInputs conic_inputs()
{
	ConstantInputs in;
	in.n = 1;
	in.delta = 2;
	in.big_m = 2;
	in.big_n = 2;
	in.q = 4;
	in.d_i = {1, 1, 1, 1};
	in.h_q_i = {0, 0, 0, 0};
	in.eps = 1;
	in.s_card = 2;
	in.s_degree = 2;
	return in;
}

Q c(long num, long den = 1)
{
	Q r(num, den);
	r.canonicalize();
	return r;
}

} // namespace

TEST(BConst, Examples)
{
	EXPECT_EQ(b_const(4, 1, 2, 2), Z("10240000000256"));
	// 12^2 + 10^(0 + 1*2)
	EXPECT_EQ(b_const(3, 1, 1, 1), 244);
	for (long m = 4; m < 40; ++m)
		EXPECT_GT(b_const(m + 1, 1, 2, 2), b_const(m, 1, 2, 2));
	try {
		b_const(3, 1, 2, 2);
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolated);
	}
}

TEST(PowerFactor, Examples)
{
	EXPECT_EQ(lemma37_const(1, 2, 2, 2, 1, 0, 0), 0);
	EXPECT_EQ(lemma37_power(1, 2, 2, 2, 1), Z("4738381338321616896"));
	Q one = lemma37_const(1, 2, 2, 2, 1, c(1, 3), c(2, 5));
	EXPECT_EQ(lemma37_const(1, 2, 2, 2, 1, c(2, 3), c(4, 5)), 2 * one);
	EXPECT_EQ(lemma37_power(1, 2, 2, 1, 7), ipow(Z(42), 12));
}

TEST(ChooseM, Examples)
{
	EXPECT_EQ(choose_m(3, 1), 4);
	EXPECT_EQ(choose_m(7, 3), 9);
	for (long d = 1; d <= 6; ++d)
		EXPECT_EQ(choose_m(d, d), 2 * d);
	EXPECT_EQ(choose_m(1, 1, 4), 4);
	EXPECT_EQ(choose_m(1, 4, 6), 8);
	for (long a = 1; a <= 40; ++a)
		for (long d = 1; d <= 5; ++d) {
			long m = choose_m(a, d);
			EXPECT_EQ(m % d, 0);
			EXPECT_GT(m, a);
			EXPECT_LE(m, a + d);
		}
}

TEST(Assemble, ZeroHeights)
{
	auto in = conic_inputs();
	in.m = 4;
	auto k = assemble_constants(in, conic_table());
	EXPECT_EQ(k.b1, 0);
	EXPECT_EQ(k.b2, 0);
	EXPECT_EQ(k.b3, 0);
	EXPECT_EQ(k.c_eps, 0);
	EXPECT_EQ(k.c_prime_eps, 0);
	EXPECT_EQ(k.c_tilde_prime_eps, 0);
}

TEST(Assemble, ConicOnlyC1PrimeSurvives)
{
	auto in = conic_inputs();
	in.c1_prime = 7;
	auto k = assemble_constants(in, conic_table());
	EXPECT_EQ(k.a_eps, 642);
	EXPECT_EQ(k.m, 643);
	// sum_{i=1}^{642} (2i + 1) = 643^2 - 1
	EXPECT_EQ(k.S_sum, 643 * 643 - 1);
	EXPECT_EQ(k.c_prime_eps, c(1, 29532));
	EXPECT_EQ(k.c_prime_eps, Q(2 * 7) / Q(k.S_sum));
	in.c1_prime = 70;
	EXPECT_EQ(assemble_constants(in, conic_table()).c_prime_eps, 10 * k.c_prime_eps);
}

TEST(Assemble, MatchesIndependentEvaluation)
{
	auto in = conic_inputs();
	in.m = 4;
	in.h_fx = 1;
	in.h_q_family = 2;
	in.h_q_i = {0, 1, 0, 1};
	in.e_s_term = -1;
	in.c1 = 3;
	in.c1_prime = 5;
	auto k = assemble_constants(in, conic_table());
	EXPECT_EQ(k.b, Z("10240000000256"));
	EXPECT_EQ(k.b1, Q(Z("1382400000034560")));
	EXPECT_EQ(k.b2, 2 * k.b1);
	EXPECT_EQ(k.b3, Q(Z("56860576059859402756")));
	EXPECT_EQ(k.S_sum, 15);
	EXPECT_EQ(k.c_eps, Q(Z("40960000001027"), Z(4)));
	EXPECT_EQ(k.c_tilde_prime_eps, Q(Z("170582834099578235930"), Z(3)));
	EXPECT_EQ(k.c_prime_eps, Q(Z("170582834099578235930"), Z(3)));
	auto again = assemble_constants(in, conic_table());
	EXPECT_EQ(again.c_prime_eps, k.c_prime_eps);
	EXPECT_EQ(again.b3, k.b3);
}

TEST(Assemble, MissingEntriesAndFallback)
{
	auto in = conic_inputs();
	in.m = 4;
	in.h_fx = 1;
	auto sparse = table_from_map({{1, 3}, {2, 5}});
	try {
		assemble_constants(in, sparse);
		FAIL();
	} catch (const Error &e) {
		EXPECT_EQ(e.kind(), ErrorKind::MissingTableEntry);
	}
	auto exact = assemble_constants(in, conic_table());
	auto bounded = assemble_constants(in, sparse, true);
	EXPECT_TRUE(bounded.used_bound_fallback);
	EXPECT_FALSE(exact.used_bound_fallback);
	EXPECT_GE(bounded.c_prime_eps, exact.c_prime_eps);
	EXPECT_EQ(bounded.c_eps, exact.c_eps);
}

TEST(Assemble, Preconditions)
{
	auto in = conic_inputs();
	in.m = 5;
	in.d_i = {1, 1, 1, 2};
	EXPECT_THROW(assemble_constants(in, conic_table()), Error);
	in = conic_inputs();
	in.m = 3;
	EXPECT_THROW(assemble_constants(in, conic_table()), Error);
	in = conic_inputs();
	in.big_n = 0;
	EXPECT_THROW(assemble_constants(in, conic_table()), Error);
}

TEST(Assemble, MonotoneInHeightsAndC1)
{
	auto base = conic_inputs();
	base.m = 6;
	const std::vector<Q> grid{0, c(1, 2), 1, 3};
	auto eval = [](const ConstantInputs &in) { return assemble_constants(in, conic_table()); };
	for (std::size_t a = 0; a + 1 < grid.size(); ++a) {
		for (int which = 0; which < 8; ++which) {
			auto lo = base, hi = base;
			auto set = [&](ConstantInputs &in, const Q &v) {
				switch (which) {
				case 0: in.h_fx = v; break;
				case 1: in.h_q_family = v; break;
				case 2: in.h_q_i[0] = v; break;
				case 3: in.h_q_i[3] = v; break;
				case 4: in.c1 = v; break;
				case 5: in.c1_prime = v; break;
				case 6: in.h_fx = v, in.h_q_i[1] = v; break;
				default: in.h_q_family = v, in.c1_prime = v; break;
				}
			};
			set(lo, grid[a]);
			set(hi, grid[a + 1]);
			auto kl = eval(lo), kh = eval(hi);
			EXPECT_LE(kl.c_eps, kh.c_eps) << which;
			EXPECT_LE(kl.c_prime_eps, kh.c_prime_eps) << which;
			EXPECT_LE(kl.c_tilde_prime_eps, kh.c_tilde_prime_eps) << which;
		}
	}
}

TEST(LcmReduction, Examples)
{
	std::vector<HomogeneousPoly> mixed{P("X0", 2), P("X1^2", 2)};
	auto r = lcm_reduction(mixed);
	EXPECT_EQ(r.d, 2);
	EXPECT_EQ(r.normalized[0], P("X0^2", 2));
	EXPECT_EQ(r.normalized[1], P("X1^2", 2));

	auto s = lcm_reduction({P("t*X0", 2)});
	EXPECT_EQ(s.normalized[0], P("X0", 2));
	EXPECT_EQ(s.a[0], K(UPoly::t()));

	std::vector<HomogeneousPoly> same{P("X0 + t*X1"), P("X1 - X2")};
	auto id = lcm_reduction(same);
	EXPECT_EQ(id.normalized, same);

	EXPECT_THROW(lcm_reduction({HomogeneousPoly(3, 1)}), Error);
}

TEST(LcmReduction, WeilScaling)
{
	gen::Rng rng(307);
	std::vector<HomogeneousPoly> qs{rng.form(3, 1), rng.form(3, 2), rng.form(3, 3, 0.5, 0.5)};
	auto r = lcm_reduction(qs);
	EXPECT_EQ(r.d, 6);
	const std::vector<Place> places{Place(), Place(UPoly::t()), Place(UPoly{Q(-1), Q(1)}), Place(UPoly{Q(1), Q(1)}),
	                                Place(UPoly{Q(1), Q(0), Q(1)})};
	for (std::size_t i = 0; i < qs.size(); ++i) {
		EXPECT_EQ(r.normalized[i].degree(), 6);
		bool unit = false;
		for (const auto &[m, cf] : r.normalized[i].terms())
			unit = unit || cf == K(1);
		EXPECT_TRUE(unit);
		int done = 0;
		while (done < 20) {
			auto x = rng.point(3);
			if (qs[i].evaluate(x.span()).is_zero())
				continue;
			const auto &p = places[static_cast<std::size_t>(rng.range(0, 4))];
			EXPECT_TRUE(weil_scaling_holds(r, qs, i, p, x)) << qs[i].str() << " " << x.str() << " " << p.str();
			++done;
		}
	}
}
