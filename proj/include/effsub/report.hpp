/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/effective_constants.hpp"
#include "effsub/filtration.hpp"
#include "effsub/graded_ideal.hpp"
#include "effsub/scenario.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace effsub {

enum class Verdict { InequalityHolds, HeightSmall, OnDivisor, Violation };

inline const char *to_string(Verdict v)
{
	switch (v) {
	case Verdict::InequalityHolds: return "InequalityHolds";
	case Verdict::HeightSmall: return "HeightSmall";
	case Verdict::OnDivisor: return "OnDivisor";
	case Verdict::Violation: return "Violation";
	}
	return "Unknown";
}

struct PointRecord {
	std::size_t index = 0;
	ProjectivePoint x;
	Q height;
	Verdict verdict = Verdict::InequalityHolds;
	/// Divisors with Q_i(x) = 0; nonempty exactly for OnDivisor.
	std::vector<std::size_t> zero_divisors;
	/// weil[place][divisor] = lambda_{p, Q_i}(x).
	std::vector<std::vector<Q>> weil;
	/// Renumbering by decreasing ord_p Q_i(x), one per place.
	std::vector<std::vector<std::size_t>> renumbering;
	Q lhs;
	Q rhs_main;
	Q rhs_full;
};

struct Report {
	std::size_t ambient_dim = 0;
	VarietyKind kind = VarietyKind::ProjectiveSpace;
	long n = 0;
	long delta = 0;
	long N = 0;
	std::vector<HomogeneousPoly> divisors;
	std::vector<Place> places;
	Q epsilon;

	PositionReport position;
	std::string h_table_source;
	ConstantInputs inputs;
	EffectiveConstants constants;

	std::vector<PointRecord> points;
	std::vector<std::string> caveats;
	std::vector<std::string> warnings;

	std::size_t count(Verdict v) const
	{
		return static_cast<std::size_t>(
		    std::count_if(points.begin(), points.end(), [v](const PointRecord &p) { return p.verdict == v; }));
	}
	bool has_violation() const { return count(Verdict::Violation) > 0; }
};

namespace detail {

inline constexpr long kExactHilbertLimit = 12;

/// Exact H for the closed-form kinds; echelon ranks up to a small degree otherwise.
inline std::pair<HTable, std::string> scenario_table(const Scenario &s)
{
	const long n = s.variety.dimension();
	switch (s.variety.kind) {
	case VarietyKind::ProjectiveSpace:
		return {[n](long m) -> std::optional<Z> {
			        if (m < 0)
				        return std::nullopt;
			        return binom(m + n, n);
		        },
		        "closed form C(m+n, n)"};
	case VarietyKind::Hypersurface:
		return {hypersurface_table(n, s.variety.degree()), "closed form for a hypersurface"};
	case VarietyKind::Ideal:
		break;
	}
	auto cache = std::make_shared<std::map<long, Z>>();
	IdealGenerators gens = s.variety.ideal(s.nvars());
	return {[cache, gens](long m) -> std::optional<Z> {
		        if (m < 0 || m > kExactHilbertLimit)
			        return std::nullopt;
		        auto it = cache->find(m);
		        if (it == cache->end())
			        it = cache->emplace(m, Z(hilbert_function(gens, static_cast<int>(m)))).first;
		        return it->second;
	        },
	        "echelon rank up to degree " + std::to_string(kExactHilbertLimit) + ", bounds beyond"};
}

inline std::string join(const std::vector<std::size_t> &v, const char *sep = ",")
{
	std::string s;
	for (std::size_t i = 0; i < v.size(); ++i)
		s += (i ? sep : "") + std::to_string(v[i]);
	return s;
}

} // namespace detail

/// Position check, constants and the per-point inequality, in input order.
inline Report run_check(const Scenario &s)
{
	Report r;
	r.ambient_dim = s.ambient_dim;
	r.kind = s.variety.kind;
	r.n = s.variety.dimension();
	r.delta = s.variety.degree();
	r.N = s.N;
	r.divisors = s.divisors;
	r.places = s.places;
	r.epsilon = s.epsilon;

	const IdealGenerators gens = s.variety.ideal(s.nvars());
	int max_div = 0;
	for (const auto &q : s.divisors)
		max_div = std::max(max_div, q.degree());
	const int cap = s.overrides.nullstellensatz_cap
	                    ? *s.overrides.nullstellensatz_cap
	                    : static_cast<int>(default_nullstellensatz_cap(gens, max_div));
	r.position = check_subgeneral_position(gens, s.divisors, static_cast<std::size_t>(s.N), cap);
	if (!r.position.in_position)
		for (const auto &w : r.position.witnesses())
			r.warnings.push_back("PositionCheckFailed: divisors {" + detail::join(w) +
			                     "} not certified disjoint on X up to degree " + std::to_string(cap));

	auto red = lcm_reduction(s.divisors);
	ConstantInputs &in = r.inputs;
	in.n = r.n;
	in.delta = r.delta;
	in.big_m = static_cast<long>(s.ambient_dim);
	in.big_n = s.N;
	in.q = static_cast<long>(s.divisors.size());
	for (const auto &q : s.divisors) {
		in.d_i.push_back(q.degree());
		in.h_q_i.push_back(height_poly(q));
	}
	in.eps = s.epsilon;
	in.s_card = static_cast<long>(s.places.size());
	for (const auto &p : s.places) {
		in.s_degree += p.degree();
		in.e_s_term += Q(gauss_order_poly(p, std::span<const HomogeneousPoly>(red.normalized)) * p.degree());
	}
	in.h_fx = chow_height(s.variety.chow_form);
	in.h_q_family = height_poly_family(std::span<const HomogeneousPoly>(red.normalized));
	in.c1 = s.overrides.c1.value_or(Q(0));
	in.c1_prime = s.overrides.c1_prime.value_or(Q(0));
	in.m = s.overrides.m;
	if (!s.overrides.c1 || !s.overrides.c1_prime)
		r.caveats.push_back("c1 and c1' are not given in closed form and default to 0; "
		                    "the inequality is then not guaranteed outside the exceptional set");

	auto [table, source] = detail::scenario_table(s);
	r.h_table_source = source;
	r.constants = assemble_constants(in, table, s.variety.kind == VarietyKind::Ideal);
	if (r.constants.used_bound_fallback)
		r.caveats.push_back("Hilbert function values beyond the exact range were replaced by bounds");

	const Q coef = Q(s.N * (r.n + 1)) + s.epsilon;
	for (std::size_t k = 0; k < s.points.size(); ++k) {
		const ProjectivePoint &x = s.points[k];
		bool on = true;
		for (const auto &g : gens.gens())
			on = on && g.evaluate(x.span()).is_zero();
		if (!on) {
			r.warnings.push_back("NotOnVariety: point " + std::to_string(k) + " " + x.str() + " skipped");
			continue;
		}
		PointRecord pr;
		pr.index = k;
		pr.x = x;
		pr.height = height_point(x);
		for (std::size_t i = 0; i < s.divisors.size(); ++i)
			if (s.divisors[i].evaluate(x.span()).is_zero())
				pr.zero_divisors.push_back(i);
		if (!pr.zero_divisors.empty()) {
			pr.verdict = Verdict::OnDivisor;
			r.points.push_back(std::move(pr));
			continue;
		}
		for (const auto &p : s.places) {
			std::vector<Q> row;
			for (const auto &q : s.divisors)
				row.push_back(weil(p, q, x));
			pr.weil.push_back(std::move(row));
			pr.renumbering.push_back(order_by_vanishing(p, s.divisors, x).order);
		}
		Q by_place = 0, by_divisor = 0;
		for (const auto &row : pr.weil)
			for (std::size_t i = 0; i < row.size(); ++i)
				by_place += row[i] / Q(in.d_i[i]);
		for (std::size_t i = 0; i < s.divisors.size(); ++i) {
			Q col = 0;
			for (const auto &row : pr.weil)
				col += row[i];
			by_divisor += col / Q(in.d_i[i]);
		}
		require(by_place == by_divisor, ErrorKind::InvariantViolated, "lhs differs between summation orders");
		pr.lhs = by_place;
		pr.rhs_main = coef * pr.height;
		pr.rhs_full = pr.rhs_main + r.constants.c_prime_eps;
		if (pr.lhs <= pr.rhs_full)
			pr.verdict = Verdict::InequalityHolds;
		else if (pr.height <= r.constants.c_eps)
			pr.verdict = Verdict::HeightSmall;
		else
			pr.verdict = Verdict::Violation;
		r.points.push_back(std::move(pr));
	}
	return r;
}

namespace detail {

inline std::string q_str(const Q &x) { return to_fraction_string(x); }

/// "6/1" -> "6" for text output.
inline std::string plain(const std::string &fraction)
{
	return fraction.size() > 2 && fraction.ends_with("/1") ? fraction.substr(0, fraction.size() - 2) : fraction;
}

inline nlohmann::ordered_json constants_json(const Report &r)
{
	const auto &c = r.constants;
	const auto &in = r.inputs;
	nlohmann::ordered_json j;
	j["m"] = c.m;
	j["d"] = c.d;
	j["a_eps"] = c.a_eps.get_str();
	j["b"] = c.b.get_str();
	j["power_factor"] = c.lemma37_power.get_str();
	j["a"] = q_str(c.lemma37_a);
	j["b1"] = q_str(c.b1);
	j["b2"] = q_str(c.b2);
	j["b3"] = q_str(c.b3);
	j["H_m"] = c.h_m.get_str();
	j["S"] = c.S_sum.get_str();
	j["c_eps"] = q_str(c.c_eps);
	j["c_tilde_prime_eps"] = q_str(c.c_tilde_prime_eps);
	j["c_prime_eps"] = q_str(c.c_prime_eps);
	j["used_bound_fallback"] = c.used_bound_fallback;
	j["h_table"] = r.h_table_source;
	nlohmann::ordered_json ij;
	ij["h_FX"] = q_str(in.h_fx);
	ij["h_Q_family"] = q_str(in.h_q_family);
	auto hq = nlohmann::ordered_json::array();
	for (const auto &h : in.h_q_i)
		hq.push_back(q_str(h));
	ij["h_Q_i"] = std::move(hq);
	ij["e_S"] = q_str(in.e_s_term);
	ij["S_card"] = in.s_card;
	ij["S_degree"] = in.s_degree;
	ij["c1"] = q_str(in.c1);
	ij["c1_prime"] = q_str(in.c1_prime);
	ij["m_override"] = in.m ? nlohmann::ordered_json(*in.m) : nlohmann::ordered_json();
	j["inputs"] = std::move(ij);
	return j;
}

} // namespace detail

inline nlohmann::ordered_json report_json(const Report &r)
{
	using oj = nlohmann::ordered_json;
	oj j;
	oj sc;
	sc["ambient_dim"] = r.ambient_dim;
	sc["variety"] = to_string(r.kind);
	sc["n"] = r.n;
	sc["delta"] = r.delta;
	sc["N"] = r.N;
	auto divs = oj::array();
	for (const auto &q : r.divisors)
		divs.push_back(oj{{"poly", q.str()}, {"degree", q.degree()}});
	sc["divisors"] = std::move(divs);
	auto pl = oj::array();
	for (const auto &p : r.places)
		pl.push_back(p.str());
	sc["places"] = std::move(pl);
	sc["epsilon"] = detail::q_str(r.epsilon);
	j["scenario"] = std::move(sc);

	oj pos;
	pos["N"] = r.position.N;
	pos["cap"] = r.position.cap;
	pos["verdict"] = r.position.in_position ? "InPosition" : "NotCertified";
	auto subs = oj::array();
	for (const auto &s : r.position.subsets) {
		oj e;
		e["indices"] = s.indices;
		if (s.verdict.empty_certified())
			e["verdict"] = "EmptyCertified", e["degree"] = *s.verdict.certified_degree;
		else
			e["verdict"] = "NonemptyAtCap";
		subs.push_back(std::move(e));
	}
	pos["subsets"] = std::move(subs);
	j["position"] = std::move(pos);
	j["constants"] = detail::constants_json(r);

	auto pts = oj::array();
	for (const auto &p : r.points) {
		oj e;
		e["index"] = p.index;
		auto xs = oj::array();
		for (const auto &c : p.x.coords())
			xs.push_back(c.str());
		e["x"] = std::move(xs);
		e["height"] = detail::q_str(p.height);
		e["verdict"] = to_string(p.verdict);
		if (p.verdict == Verdict::OnDivisor) {
			e["zero_divisors"] = p.zero_divisors;
		} else {
			auto w = oj::array();
			for (std::size_t i = 0; i < p.weil.size(); ++i) {
				oj row;
				row["place"] = r.places[i].str();
				auto vals = oj::array();
				for (const auto &v : p.weil[i])
					vals.push_back(detail::q_str(v));
				row["lambda"] = std::move(vals);
				row["renumbering"] = p.renumbering[i];
				w.push_back(std::move(row));
			}
			e["weil"] = std::move(w);
			e["lhs"] = detail::q_str(p.lhs);
			e["rhs_main"] = detail::q_str(p.rhs_main);
			e["rhs_full"] = detail::q_str(p.rhs_full);
		}
		pts.push_back(std::move(e));
	}
	j["points"] = std::move(pts);
	j["caveats"] = r.caveats;
	j["warnings"] = r.warnings;
	oj sum;
	for (Verdict v : {Verdict::InequalityHolds, Verdict::HeightSmall, Verdict::OnDivisor, Verdict::Violation})
		sum[to_string(v)] = r.count(v);
	j["summary"] = std::move(sum);
	return j;
}

/// Column-aligned plain text table.
class TextTable {
public:
	explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

	void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

	std::string str(const std::string &indent = "  ") const
	{
		std::vector<std::size_t> w;
		for (const auto &r : rows_)
			for (std::size_t i = 0; i < r.size(); ++i) {
				if (w.size() <= i)
					w.push_back(0);
				w[i] = std::max(w[i], r[i].size());
			}
		std::string out;
		for (std::size_t k = 0; k < rows_.size(); ++k) {
			std::string line = indent;
			for (std::size_t i = 0; i < rows_[k].size(); ++i) {
				line += rows_[k][i];
				if (i + 1 < rows_[k].size())
					line += std::string(w[i] - rows_[k][i].size() + 2, ' ');
			}
			out += line + "\n";
			if (k == 0) {
				std::size_t total = 0;
				for (std::size_t i = 0; i < w.size(); ++i)
					total += w[i] + (i + 1 < w.size() ? 2 : 0);
				out += indent + std::string(total, '-') + "\n";
			}
		}
		return out;
	}

private:
	std::vector<std::vector<std::string>> rows_;
};

inline std::string report_text(const Report &r)
{
	std::ostringstream os;
	os << "scenario: " << to_string(r.kind) << " in P^" << r.ambient_dim << ", n = " << r.n << ", deg = " << r.delta
	   << ", N = " << r.N << ", epsilon = " << r.epsilon.get_str() << "\n";
	os << "divisors:\n";
	for (std::size_t i = 0; i < r.divisors.size(); ++i)
		os << "  Q" << i << " = " << r.divisors[i].str() << "  (degree " << r.divisors[i].degree() << ")\n";
	os << "places:";
	for (const auto &p : r.places)
		os << " " << p.str();
	os << "\n\nposition (N = " << r.position.N << ", cap " << r.position.cap
	   << "): " << (r.position.in_position ? "in N-subgeneral position" : "NOT certified") << "\n";
	TextTable pt({"subset", "verdict"});
	for (const auto &s : r.position.subsets)
		pt.add({"{" + detail::join(s.indices) + "}",
		        s.verdict.empty_certified() ? "empty at degree " + std::to_string(*s.verdict.certified_degree)
		                                    : "nonempty at cap"});
	os << pt.str();

	const auto j = detail::constants_json(r);
	os << "\nconstants:\n";
	TextTable ct({"name", "value"});
	for (const char *k : {"m", "d", "a_eps", "b", "power_factor", "a", "b1", "b2", "b3", "H_m", "S", "c_eps",
	                      "c_tilde_prime_eps", "c_prime_eps"}) {
		const auto &v = j[k];
		ct.add({k, v.is_string() ? detail::plain(v.get<std::string>()) : v.dump()});
	}
	for (const auto &[k, v] : j["inputs"].items())
		if (!v.is_array())
			ct.add({"input " + k, v.is_string() ? detail::plain(v.get<std::string>()) : v.dump()});
	os << ct.str();
	os << "  H values: " << r.h_table_source << "\n";

	if (r.points.empty())
		os << "\nno points\n";
	for (const auto &p : r.points) {
		os << "\npoint " << p.index << " " << p.x.str() << "\n  h(x) = " << p.height.get_str()
		   << "  verdict: " << to_string(p.verdict) << "\n";
		if (p.verdict == Verdict::OnDivisor) {
			os << "  vanishing divisors: {" << detail::join(p.zero_divisors) << "}\n";
			continue;
		}
		std::vector<std::string> head{"place"};
		for (std::size_t i = 0; i < r.divisors.size(); ++i)
			head.push_back("Q" + std::to_string(i));
		TextTable wt(head);
		for (std::size_t i = 0; i < p.weil.size(); ++i) {
			std::vector<std::string> row{r.places[i].str()};
			for (const auto &v : p.weil[i])
				row.push_back(v.get_str());
			wt.add(std::move(row));
		}
		os << wt.str();
		os << "  lhs = " << p.lhs.get_str() << "  rhs_main = " << p.rhs_main.get_str()
		   << "  rhs_full = " << p.rhs_full.get_str() << "\n";
	}

	if (!r.caveats.empty()) {
		os << "\ncaveats:\n";
		for (const auto &c : r.caveats)
			os << "  " << c << "\n";
	}
	if (!r.warnings.empty()) {
		os << "\nwarnings:\n";
		for (const auto &w : r.warnings)
			os << "  " << w << "\n";
	}
	os << "\nsummary:";
	for (Verdict v : {Verdict::InequalityHolds, Verdict::HeightSmall, Verdict::OnDivisor, Verdict::Violation})
		os << " " << to_string(v) << "=" << r.count(v);
	os << "\n";
	return os.str();
}

enum class ReportFormat { Text, Json };

inline void write_file(const std::string &path, const std::string &text)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw Error(ErrorKind::IoError, "cannot write " + path);
	out << text;
	if (!out)
		throw Error(ErrorKind::IoError, "write failed for " + path);
}

/// Serialized report; also written to `path` when given.
inline std::string emit_report(const Report &r, ReportFormat f, const std::optional<std::string> &path = {})
{
	std::string s = f == ReportFormat::Json ? report_json(r).dump(2) + "\n" : report_text(r);
	if (path)
		write_file(*path, s);
	return s;
}

} // namespace effsub
