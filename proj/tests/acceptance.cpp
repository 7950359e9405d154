// Acceptance run: one PASS/FAIL line per criterion.

#include "effsub/effsub.hpp"
#include "gen.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace effsub;

namespace {

struct Outcome {
	bool ok = true;
	std::string note;

	void expect(bool cond, const std::string &what)
	{
		if (!cond) {
			if (ok)
				note = what;
			ok = false;
		}
	}
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
	std::ostringstream os;
	os.precision(2);
	os << std::fixed << s << " s";
	return os.str();
}

HomogeneousPoly P(const char *s, std::size_t n = 3) { return parse_poly(s, n); }

const IdealGenerators conic_ideal(3, {parse_poly("X0*X2 - X1^2", 3)});

std::set<Place> places_of(std::initializer_list<std::span<const K>> groups)
{
	std::set<Place> out{Place(), Place(UPoly::t())};
	for (auto g : groups)
		for (const auto &c : g)
			if (!c.is_zero())
				for (const auto &[p, e] : divisor(c))
					out.insert(p);
	return out;
}

Outcome sum_formula()
{
	Outcome o;
	gen::Rng rng(1001);
	auto t0 = Clock::now();
	for (int k = 0; k < 500; ++k) {
		K f = rng.nonzero_element(8);
		long s = 0;
		for (const auto &[p, e] : divisor(f))
			s += e * p.degree();
		o.expect(s == 0, "sum formula fails for " + f.str());
	}
	double secs = seconds_since(t0);
	o.expect(secs < 2.0, "took " + fmt_seconds(secs));
	if (o.ok)
		o.note = "500 elements in " + fmt_seconds(secs);
	return o;
}

Outcome gauge_invariance()
{
	Outcome o;
	gen::Rng rng(1002);
	int done = 0, evals = 0;
	while (done < 100) {
		std::size_t nv = static_cast<std::size_t>(rng.range(2, 4));
		auto x = rng.point(nv);
		auto q = rng.form(nv, static_cast<int>(rng.range(1, 3)));
		K alpha = rng.structured_element(2), beta = rng.structured_element(2);
		if (q.evaluate(x.span()).is_zero())
			continue;
		++done;
		auto ax = x.scaled(alpha);
		auto bq = beta * q;
		o.expect(height_point(ax) == height_point(x), "h(ax) != h(x) for " + x.str());
		o.expect(height_poly(bq) == height_poly(q), "h(bQ) != h(Q) for " + q.str());
		auto cq = detail::coefficient_family(std::span<const HomogeneousPoly>(&q, 1));
		std::vector<K> ab{alpha, beta};
		for (const auto &p : places_of({x.span(), std::span<const K>(cq), std::span<const K>(ab)})) {
			Q w = weil(p, q, x);
			o.expect(weil(p, bq, ax) == w, "weil not gauge invariant at " + p.str());
			o.expect(w >= 0, "negative weil at " + p.str());
			++evals;
		}
	}
	if (o.ok)
		o.note = "100 samples, " + std::to_string(evals) + " local evaluations";
	return o;
}

Outcome hilbert_functions()
{
	Outcome o;
	for (long m = 1; m <= 10; ++m) {
		long h = hilbert_function(conic_ideal, static_cast<int>(m));
		o.expect(h == 2 * m + 1, "conic H(" + std::to_string(m) + ") = " + std::to_string(h));
		o.expect(sombra_lower(m, 1, 2) == h, "lower bound differs at m = " + std::to_string(m));
		o.expect(h <= chardin_upper(m, 1, 2), "upper bound fails at m = " + std::to_string(m));
	}
	gen::Rng rng(1003);
	int cases = 0;
	for (long big_m = 1; big_m <= 3; ++big_m)
		for (int delta = 1; delta <= 3; ++delta) {
			const auto nv = static_cast<std::size_t>(big_m + 1);
			IdealGenerators g(nv, {rng.form(nv, delta, 0.6)});
			for (long m = 0; m <= 8; ++m) {
				Z want = binom(m + big_m, big_m) - binom(m - delta + big_m, big_m);
				o.expect(hilbert_function(g, static_cast<int>(m)) == want,
				         "hypersurface M=" + std::to_string(big_m) + " deg " + std::to_string(delta) + " m=" +
				             std::to_string(m));
				++cases;
			}
		}
	if (o.ok)
		o.note = "conic m <= 10 and " + std::to_string(cases) + " hypersurface values";
	return o;
}

Outcome power_sums()
{
	Outcome o;
	for (long k = 1; k <= 25; ++k)
		for (long l = 1; l <= 25; ++l) {
			auto [lo, hi] = power_sum_bounds(k, l);
			Z s = power_sum(k, l);
			o.expect(lo <= s && s <= hi, "S_" + std::to_string(k) + "(" + std::to_string(l) + ")");
		}
	auto [lo, hi] = power_sum_bounds(2, 3);
	o.expect(power_sum(2, 3) == 14, "S_2(3) != 14");
	o.expect(lo == Q(40, 3) && hi == Q(64, 3), "bounds for S_2(3) are " + lo.get_str() + ", " + hi.get_str());
	o.expect(Q(40, 3) < 14 && 14 < Q(64, 3), "S_2(3) outside (40/3, 64/3)");
	if (o.ok)
		o.note = "625 pairs, S_2(3) = 14 in (40/3, 64/3)";
	return o;
}

Outcome ratio_proposition()
{
	Outcome o;
	Z a = threshold_a_eps(1, 2, 1, 1);
	o.expect(a >= 3, "a_eps = " + a.get_str());
	HTable conic_table = [](long m) -> std::optional<Z> { return m < 0 ? std::nullopt : std::optional<Z>(2 * m + 1); };
	// m(H(m) + 1) / sum_{i<m} H(i) = m(2m + 2) / (m^2 - 1) = 2m / (m - 1)
	long first = 0;
	for (long m = 2; m <= 10 && !first; ++m)
		if (Q(2 * m, m - 1) <= 3)
			first = m;
	o.expect(first == 3, "exact conic ratio first <= 3 at m = " + std::to_string(first));
	for (long m = 2; m <= 10; ++m)
		o.expect(ratio_check(conic_table, m, 1, 1, 1).ok == (m >= first), "ratio_check disagrees at small m");
	const long a0 = a.get_si();
	for (long m = a0; m <= a0 + 100; ++m)
		o.expect(ratio_check(conic_table, m, 1, 1, 1).ok, "ratio_check fails at m = " + std::to_string(m));
	long cases = 0;
	for (long n = 1; n <= 3; ++n)
		for (long delta = 1; delta <= 4; ++delta)
			for (long d = 1; d <= 3; ++d) {
				Z t = 0;
				for (long m = d; m <= 200; m += d) {
					o.expect(Q(d * t) >= T_lower_bound(m, n, delta, d),
					         "T bound fails at n=" + std::to_string(n) + " delta=" + std::to_string(delta) +
					             " d=" + std::to_string(d) + " m=" + std::to_string(m));
					t += sombra_lower(m, n, delta);
					++cases;
				}
			}
	if (o.ok)
		o.note = "a_eps = " + a.get_str() + ", conic ratio holds on [a_eps, a_eps+100], " + std::to_string(cases) +
		         " T cases";
	return o;
}

Outcome chow_machinery()
{
	Outcome o;
	const auto f = P("X0*X2 - X1^2");
	auto fx = chow_of_hypersurface(f);
	o.expect(fx.blocks() == 2 && fx.block_degree() == 2, "block degrees are not (2,2)");
	auto ex = expand_skew(fx);
	gen::Rng rng(1006);
	for (int k = 0; k < 10; ++k) {
		std::vector<K> s, xs;
		for (std::size_t i = 0; i < ex.skew_count(); ++i)
			s.push_back(K(rng.rational()));
		for (std::size_t i = 0; i < 3; ++i)
			xs.push_back(rng.coin() ? K(rng.rational()) : rng.structured_element(1));
		std::vector<std::vector<K>> u(ex.blocks, std::vector<K>(ex.vars));
		const std::size_t per = ex.skew_per_block();
		for (std::size_t i = 0; i < ex.blocks; ++i)
			for (std::size_t a = 0; a < ex.vars; ++a)
				for (std::size_t b = 0; b < ex.vars; ++b) {
					if (b > a)
						u[i][a] += s[i * per + skew_index(a, b, ex.vars)] * xs[b];
					else if (b < a)
						u[i][a] -= s[i * per + skew_index(b, a, ex.vars)] * xs[b];
				}
		o.expect(ex.reconstruct(s, xs) == fx.evaluate(u), "reconstruction differs on substitution " + std::to_string(k));
	}
	for (long k = 0; k < 25; ++k) {
		K sv = k < 13 ? K(Q(k - 6)) : rng.structured_element(2);
		ProjectivePoint x{K(1), sv, sv * sv};
		o.expect(ex.vanishes_at(x), "some P_sigma nonzero at " + x.str());
	}
	o.expect(!ex.vanishes_at(ProjectivePoint{K(1), K(0), K(1)}), "all P_sigma vanish at [1:0:1]");
	auto coeffs = fx.coefficients();
	auto polys = ex.polys();
	for (const auto &p : detail::coefficient_places(coeffs)) {
		long ef = min_order(p, coeffs);
		long ep = gauss_order_poly(p, std::span<const HomogeneousPoly>(polys));
		o.expect(ep >= ef, "coefficient orders fail at " + p.str());
	}
	auto count = psigma_count_report(ex);
	std::cout << "  P_sigma count: " << count.stated_bound << " (stated) vs " << count.monomial_count
	          << " (combinatorial), " << count.actual << " nonzero\n";
	if (o.ok)
		o.note = "10 substitutions, 25 curve points, " + std::to_string(count.actual) + " P_sigma";
	return o;
}

long level_rank(const IdealGenerators &g, int m, const HomogeneousPoly &q, int i)
{
	auto piece = graded_piece(g, m);
	Matrix rows = piece.rref;
	for (const auto &mono : monomial_basis(g.nvars(), m - q.degree() * i))
		rows.push_back(piece.vector_of(q.pow(static_cast<unsigned>(i)) * HomogeneousPoly::monomial(mono)));
	return static_cast<long>(rank(rows, piece.dim()) - piece.rank());
}

Outcome filtration()
{
	Outcome o;
	const IdealGenerators p1(2);
	auto b = build_filtration(p1, 4, P("X0", 2), 1);
	auto sums = exponent_sum(b, p1);
	o.expect(sums.sum == 10 && sums.exact == 10, "sum i_j = " + sums.sum.get_str());
	o.expect(sums.stated == 9 && sums.difference == 1, "stated sum " + sums.stated.get_str());
	std::cout << "  exponent sum " << sums.sum << " vs stated S(3) = " << sums.stated << " (difference "
	          << sums.difference << ")\n";
	auto chk = filtration_inequality_check(Place(UPoly::t()), ProjectivePoint{K(UPoly::t()), K(1)}, b);
	o.expect(chk.lhs && *chk.lhs == 10 && chk.rhs == 9 && chk.ok, "valuation check at (t) differs");
	int cases = 0;
	for (const IdealGenerators *g : {&p1, &conic_ideal}) {
		std::vector<HomogeneousPoly> qs{g->nvars() == 2 ? P("X0", 2) : P("X0 + X1 + X2")};
		if (g->nvars() == 3)
			qs.push_back(P("X1^2 + 2*X2^2"));
		for (const auto &q : qs)
			for (int m = q.degree(); m <= 6; m += q.degree()) {
				auto fb = build_filtration(*g, m, q, q.degree());
				for (int i = 0; i <= m / q.degree(); ++i) {
					long dim = fb.level_dims[static_cast<std::size_t>(i)];
					o.expect(dim == hilbert_function(*g, m - q.degree() * i) && dim == level_rank(*g, m, q, i),
					         "level " + std::to_string(i) + " at m = " + std::to_string(m));
					++cases;
				}
			}
	}
	if (o.ok)
		o.note = "lhs 10 >= rhs 9, " + std::to_string(cases) + " level dimensions";
	return o;
}

Outcome phi_sandwich()
{
	Outcome o;
	const int m = 2;
	const long m_prime = std::max({static_cast<long>(m), 3L, 2L * 2});
	Z b = b_const(m_prime, 1, 2, 2);
	Q h = chow_height(chow_of_hypersurface(P("X0*X2 - X1^2")));
	auto qb = quotient_monomial_basis(conic_ideal, m);
	gen::Rng rng(1008);
	int done = 0;
	while (done < 10) {
		K s = rng.structured_element(2);
		if (s.is_zero())
			continue;
		auto x = ProjectivePoint{K(1), s, s * s}.scaled(rng.structured_element(1));
		auto r = lemma_c_check(qb, x, b, h);
		o.expect(m * r.h_x >= r.h_phi, "upper bound fails at " + x.str());
		o.expect(r.lower <= r.h_phi, "lower bound fails at " + x.str());
		o.expect(r.ok, "local sandwich fails at " + x.str());
		++done;
	}
	if (o.ok)
		o.note = "10 points, b = b_const(" + std::to_string(m_prime) + ", 1, 2, 2), h(F_X) = " + h.get_str();
	return o;
}

Outcome constants()
{
	Outcome o;
	o.expect(b_const(4, 1, 2, 2) == Z("10240000000256"), "b_const(4,1,2,2)");
	o.expect(lemma37_power(1, 2, 2, 2, 1) == Z("4738381338321616896"), "power factor");
	o.expect(lemma37_power(1, 2, 2, 2, 1) == ipow(Z(36), 12), "power factor != 36^12");
	ConstantInputs in;
	in.n = 1;
	in.delta = 2;
	in.big_m = 2;
	in.big_n = 2;
	in.q = 4;
	in.d_i = {1, 1, 1, 1};
	in.h_q_i = {0, 0, 0, 0};
	in.s_card = 2;
	in.s_degree = 2;
	in.c1_prime = 7;
	auto c = assemble_constants(in, hypersurface_table(1, 2));
	o.expect(c.b1 == 0 && c.b2 == 0 && c.b3 == 0 && c.lemma37_a == 0 && c.c_eps == 0, "nonzero height terms");
	Q pass = Q(in.big_n) * in.c1_prime / (Q(c.d) * Q(c.S_sum));
	pass.canonicalize();
	o.expect(c.c_prime_eps == pass && c.c_tilde_prime_eps == pass, "c'_eps = " + c.c_prime_eps.get_str());
	if (o.ok)
		o.note = "c'_eps = " + c.c_prime_eps.get_str() + " with c1' = 7";
	return o;
}

int run_cli(const std::string &args)
{
	int rc = std::system((std::string(EFFSUB_CLI) + " " + args + " > /dev/null").c_str());
	return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string &path)
{
	std::ifstream in(path, std::ios::binary);
	std::stringstream s;
	s << in.rdbuf();
	return s.str();
}

Outcome end_to_end()
{
	Outcome o;
	const std::string file = std::string(EFFSUB_SCENARIO_DIR) + "/conic.json";
	auto t0 = Clock::now();
	auto s = load_scenario(file);
	auto r = run_check(s);
	double secs = seconds_since(t0);
	o.expect(secs < 30.0, "took " + fmt_seconds(secs));
	o.expect(s.divisors.size() == 4 && s.N == 2 && s.places.size() == 2 && s.epsilon == 1 && s.points.size() == 20,
	         "scenario shape");
	o.expect(r.position.in_position, "N = 2 not certified");
	auto n1 = check_subgeneral_position(s.variety.ideal(s.nvars()), s.divisors, 1, r.position.cap);
	auto w = n1.witnesses();
	o.expect(!n1.in_position && std::find(w.begin(), w.end(), std::vector<std::size_t>{0, 1}) != w.end(),
	         "N = 1 not refuted by {X0, X1}");
	o.expect(r.points.size() == 20, "point count");
	if (!r.points.empty()) {
		const auto &p = r.points[0];
		o.expect(p.height == 2 && p.lhs == 6 && p.rhs_main == 10, "k = 1 values");
	}
	for (const auto &p : r.points)
		o.expect(p.height > 0 && p.lhs / p.height <= 5, "lhs/h > 5 at point " + std::to_string(p.index));
	const std::string tmp = std::filesystem::temp_directory_path().string();
	const std::string a = tmp + "/effsub_accept_a.json", b = tmp + "/effsub_accept_b.json";
	int rc1 = run_cli("check " + file + " --format json --report " + a);
	int rc2 = run_cli("check " + file + " --format json --report " + b);
	o.expect(rc1 == 0 && rc2 == 0, "exit codes " + std::to_string(rc1) + ", " + std::to_string(rc2));
	std::string ja = slurp(a), jb = slurp(b);
	o.expect(!ja.empty() && ja == jb, "JSON reports differ");
	std::remove(a.c_str());
	std::remove(b.c_str());
	if (o.ok)
		o.note = "run_check in " + fmt_seconds(secs) + ", exit 0, " + std::to_string(ja.size()) + " stable bytes";
	return o;
}

} // namespace

int main()
{
	const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
	    {"sum formula", sum_formula},
	    {"height and Weil gauge invariance", gauge_invariance},
	    {"Hilbert functions", hilbert_functions},
	    {"power sum bounds", power_sums},
	    {"ratio threshold", ratio_proposition},
	    {"Chow machinery", chow_machinery},
	    {"filtration", filtration},
	    {"Phi height sandwich", phi_sandwich},
	    {"constants", constants},
	    {"end-to-end conic scenario", end_to_end},
	};
	int failed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i) {
		Outcome o;
		try {
			o = criteria[i].second();
		} catch (const std::exception &e) {
			o.ok = false;
			o.note = std::string("exception: ") + e.what();
		}
		std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.note << "\n";
		failed += !o.ok;
	}
	std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
	return failed ? 1 : 0;
}
