/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#include "effsub/effsub.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <regex>

namespace {

using namespace effsub;
using oj = nlohmann::ordered_json;

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct OutputOptions {
	std::string format = "text";
	std::string report;
};

void add_output_options(CLI::App *sub, OutputOptions &o)
{
	sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
	sub->add_option("--report", o.report, "Also write the output to this file");
}

void emit(const OutputOptions &o, const std::string &text)
{
	std::cout << text;
	if (!o.report.empty())
		write_file(o.report, text);
}

bool json_out(const OutputOptions &o) { return o.format == "json"; }

std::string qs(const Q &x) { return to_fraction_string(x); }

/// One more than the largest Xk index mentioned.
std::size_t infer_nvars(const std::vector<std::string> &texts)
{
	static const std::regex var("X([0-9]+)");
	std::size_t n = 0;
	for (const auto &t : texts)
		for (std::sregex_iterator it(t.begin(), t.end(), var), end; it != end; ++it)
			n = std::max(n, static_cast<std::size_t>(std::stoul((*it)[1].str())) + 1);
	return n;
}

std::vector<HomogeneousPoly> parse_forms(const std::vector<std::string> &texts, std::size_t nvars)
{
	std::vector<HomogeneousPoly> out;
	for (const auto &t : texts)
		if (t.find_first_not_of(" \t") != std::string::npos)
			out.push_back(parse_poly(t, nvars));
	return out;
}

std::string monomial_str(const Monomial &m)
{
	return HomogeneousPoly::monomial(m).str();
}

int cmd_check(const std::string &file, const OutputOptions &o)
{
	Report r = run_check(load_scenario(file));
	emit(o, emit_report(r, json_out(o) ? ReportFormat::Json : ReportFormat::Text));
	return r.has_violation() ? kExitViolation : 0;
}

int cmd_hilbert(const std::vector<std::string> &gen_texts, int m, std::optional<std::size_t> ambient,
                const OutputOptions &o)
{
	std::size_t nv = ambient ? *ambient + 1 : std::max<std::size_t>(infer_nvars(gen_texts), 1);
	IdealGenerators gens(nv, parse_forms(gen_texts, nv));
	auto basis = quotient_monomial_basis(gens, m);
	std::vector<long> values;
	for (int k = 0; k <= m; ++k)
		values.push_back(hilbert_function(gens, k));
	if (json_out(o)) {
		oj j;
		j["nvars"] = nv;
		j["m"] = m;
		j["H"] = values;
		auto b = oj::array();
		for (const auto &mono : basis.monomials)
			b.push_back(monomial_str(mono));
		j["quotient_basis"] = std::move(b);
		emit(o, j.dump(2) + "\n");
		return 0;
	}
	std::string out = "ideal in " + std::to_string(nv) + " variables\n";
	TextTable t({"m", "H(m)"});
	for (int k = 0; k <= m; ++k)
		t.add({std::to_string(k), std::to_string(values[static_cast<std::size_t>(k)])});
	out += t.str();
	out += "quotient monomial basis in degree " + std::to_string(m) + ":";
	for (const auto &mono : basis.monomials)
		out += " " + monomial_str(mono);
	emit(o, out + "\n");
	return 0;
}

int cmd_a_eps(long n, long delta, long d, const std::string &eps_text, const OutputOptions &o)
{
	Q eps = parse_rational(eps_text);
	require(eps > 0 && n >= 1 && delta >= 1 && d >= 1, ErrorKind::PreconditionViolated,
	        "need n, delta, d >= 1 and eps > 0");
	Z a = threshold_a_eps(n, delta, d, eps);
	require(a.fits_slong_p(), ErrorKind::PreconditionViolated, "a_eps too large to scan");
	const long from = std::max(a.get_si(), 2 * d), to = from + 100;
	// the lower bound is attained by hypersurfaces, so it doubles as an exact table
	auto failed = ratio_scan(hypersurface_table(n, delta), n, d, eps, from, to);
	if (json_out(o)) {
		oj j;
		j["a_eps"] = a.get_str();
		j["scan_from"] = from;
		j["scan_to"] = to;
		j["scan_ok"] = !failed;
		j["first_failure"] = failed ? oj(*failed) : oj();
		emit(o, j.dump(2) + "\n");
	} else {
		std::string out = "a_eps = " + a.get_str() + "\n";
		out += "ratio bound on the hypersurface table for multiples of d in [" + std::to_string(from) + ", " +
		       std::to_string(to) + "]: " + (failed ? "fails at m = " + std::to_string(*failed) : "holds") + "\n";
		emit(o, out);
	}
	return 0;
}

int cmd_chow(const std::string &file, const OutputOptions &o)
{
	auto [ambient, variety] = parse_variety(read_json_file(file));
	const auto &f = variety.chow_form;
	auto ex = expand_skew(f);
	auto count = psigma_count_report(ex);
	const Q h = chow_height(f);
	if (json_out(o)) {
		oj j;
		j["ambient_dim"] = ambient;
		j["blocks"] = f.blocks();
		j["block_degree"] = f.block_degree();
		j["terms"] = f.size();
		j["height"] = qs(h);
		j["skew_variables"] = ex.skew_count();
		j["P_sigma_nonzero"] = count.actual;
		j["P_sigma_stated_count"] = count.stated_bound.get_str();
		j["P_sigma_monomial_count"] = count.monomial_count.get_str();
		j["chow_form"] = chow_form_to_json(f);
		emit(o, j.dump(2) + "\n");
		return 0;
	}
	TextTable t({"quantity", "value"});
	t.add({"variety", to_string(variety.kind)});
	t.add({"blocks", std::to_string(f.blocks())});
	t.add({"block degree", std::to_string(f.block_degree())});
	t.add({"terms", std::to_string(f.size())});
	t.add({"h(F_X)", h.get_str()});
	t.add({"skew variables", std::to_string(ex.skew_count())});
	t.add({"nonzero P_sigma", std::to_string(count.actual)});
	t.add({"P_sigma count (stated)", count.stated_bound.get_str()});
	t.add({"P_sigma count (monomials)", count.monomial_count.get_str()});
	emit(o, "F_X = " + f.str() + "\n" + t.str());
	return 0;
}

/// Constants from a flat JSON ledger of inputs; H values default to the hypersurface closed form.
int cmd_constants(const std::string &file, const OutputOptions &o)
{
	auto j = read_json_file(file);
	auto get_long = [&](const char *k, std::optional<long> dflt = {}) -> long {
		if (!j.contains(k)) {
			if (dflt)
				return *dflt;
			throw SchemaError(std::string("/") + k, "missing required field");
		}
		if (!j[k].is_number_integer())
			throw SchemaError(std::string("/") + k, "expected an integer");
		return j[k].get<long>();
	};
	auto get_q = [&](const char *k, const Q &dflt) -> Q {
		if (!j.contains(k))
			return dflt;
		const auto &v = j[k];
		if (v.is_number_integer())
			return Q(v.get<long>());
		if (!v.is_string())
			throw SchemaError(std::string("/") + k, "expected a rational string");
		return parse_rational(v.get<std::string>());
	};
	ConstantInputs in;
	in.n = get_long("n");
	in.delta = get_long("delta");
	in.big_m = get_long("M");
	in.big_n = get_long("N");
	if (!j.contains("divisor_degrees") || !j["divisor_degrees"].is_array())
		throw SchemaError("/divisor_degrees", "expected an array of integers");
	for (std::size_t i = 0; i < j["divisor_degrees"].size(); ++i) {
		const auto &v = j["divisor_degrees"][i];
		if (!v.is_number_integer())
			throw SchemaError("/divisor_degrees/" + std::to_string(i), "expected an integer");
		in.d_i.push_back(v.get<long>());
	}
	in.q = static_cast<long>(in.d_i.size());
	in.eps = get_q("epsilon", 1);
	in.s_card = get_long("S_card");
	in.s_degree = get_long("S_degree", in.s_card);
	in.h_fx = get_q("h_FX", 0);
	in.h_q_family = get_q("h_Q_family", 0);
	in.h_q_i.assign(in.d_i.size(), Q(0));
	if (j.contains("h_Q_i")) {
		if (!j["h_Q_i"].is_array() || j["h_Q_i"].size() != in.d_i.size())
			throw SchemaError("/h_Q_i", "expected one height per divisor");
		for (std::size_t i = 0; i < in.d_i.size(); ++i)
			in.h_q_i[i] = parse_rational(j["h_Q_i"][i].is_string() ? j["h_Q_i"][i].get<std::string>()
			                                                       : j["h_Q_i"][i].dump());
	}
	in.e_s_term = get_q("e_S", 0);
	in.c1 = get_q("c1", 0);
	in.c1_prime = get_q("c1_prime", 0);
	if (j.contains("m"))
		in.m = get_long("m");

	Report r;
	r.inputs = in;
	r.h_table_source = "closed form for a hypersurface";
	r.constants = assemble_constants(in, hypersurface_table(in.n, in.delta));
	if (json_out(o)) {
		emit(o, report_json(r)["constants"].dump(2) + "\n");
		return 0;
	}
	std::string text = report_text(r);
	auto from = text.find("constants:\n");
	auto to = text.find("\nno points");
	emit(o, text.substr(from, to - from));
	return 0;
}

int cmd_filtration(const std::vector<std::string> &gen_texts, int m, const std::string &q_text,
                   std::optional<std::size_t> ambient, const std::vector<std::string> &point_texts,
                   const std::string &place_text, const OutputOptions &o)
{
	std::vector<std::string> all = gen_texts;
	all.push_back(q_text);
	std::size_t nv = ambient ? *ambient + 1 : std::max<std::size_t>(infer_nvars(all), 1);
	IdealGenerators gens(nv, parse_forms(gen_texts, nv));
	HomogeneousPoly q = parse_poly(q_text, nv);
	auto basis = build_filtration(gens, m, q, q.degree());
	auto sums = exponent_sum(basis, gens);
	std::optional<FiltrationCheck> check;
	if (!point_texts.empty()) {
		require(point_texts.size() == nv, ErrorKind::VarCountMismatch, "point needs one coordinate per variable");
		std::vector<K> c;
		for (const auto &t : point_texts)
			c.push_back(parse_k(t));
		check = filtration_inequality_check(parse_place(place_text), ProjectivePoint(std::move(c)), basis);
	}
	if (json_out(o)) {
		oj j;
		j["m"] = m;
		j["Q"] = q.str();
		auto e = oj::array();
		for (const auto &en : basis.entries)
			e.push_back(oj{{"i", en.i}, {"g", monomial_str(en.g)}});
		j["basis"] = std::move(e);
		j["level_dims"] = basis.level_dims;
		j["exponent_sum"] = sums.sum.get_str();
		j["exact_sum"] = sums.exact.get_str();
		j["stated_sum"] = sums.stated.get_str();
		j["difference"] = sums.difference.get_str();
		if (check) {
			j["check"] = oj{{"place", place_text},
			                {"lhs", check->lhs ? oj(std::to_string(*check->lhs)) : oj("inf")},
			                {"rhs", check->rhs.get_str()},
			                {"ok", check->ok}};
		}
		emit(o, j.dump(2) + "\n");
		return 0;
	}
	std::string out = "filtration of degree " + std::to_string(m) + " by Q = " + q.str() + "\n";
	TextTable t({"j", "i_j", "g_j"});
	for (std::size_t k = 0; k < basis.size(); ++k)
		t.add({std::to_string(k + 1), std::to_string(basis.entries[k].i), monomial_str(basis.entries[k].g)});
	out += t.str();
	TextTable lv({"i", "dim W_i"});
	for (std::size_t i = 0; i < basis.level_dims.size(); ++i)
		lv.add({std::to_string(i), std::to_string(basis.level_dims[i])});
	out += lv.str();
	out += "sum i_j = " + sums.sum.get_str() + " (sum of H(m - id) = " + sums.exact.get_str() +
	       "; S(m/d - 1) = " + sums.stated.get_str() + ", difference " + sums.difference.get_str() + ")\n";
	if (check)
		out += "at " + place_text + ": lhs = " + (check->lhs ? std::to_string(*check->lhs) : "inf") +
		       ", rhs = " + check->rhs.get_str() + (check->ok ? " (holds)" : " (FAILS)") + "\n";
	emit(o, out);
	return 0;
}

int cmd_position(const std::string &file, std::optional<long> n_override, const OutputOptions &o)
{
	Scenario s = load_scenario(file);
	const long N = n_override.value_or(s.N);
	require(N >= 1, ErrorKind::PreconditionViolated, "N must be at least 1");
	IdealGenerators gens = s.variety.ideal(s.nvars());
	int max_div = 0;
	for (const auto &q : s.divisors)
		max_div = std::max(max_div, q.degree());
	int cap = s.overrides.nullstellensatz_cap.value_or(static_cast<int>(default_nullstellensatz_cap(gens, max_div)));
	auto rep = check_subgeneral_position(gens, s.divisors, static_cast<std::size_t>(N), cap);
	Report r;
	r.position = rep;
	auto j = report_json(r)["position"];
	if (json_out(o)) {
		emit(o, j.dump(2) + "\n");
		return 0;
	}
	std::string out = "N = " + std::to_string(N) + ", cap " + std::to_string(cap) + ": " +
	                  (rep.in_position ? "in N-subgeneral position" : "NOT certified") + "\n";
	TextTable t({"subset", "verdict"});
	for (const auto &sv : rep.subsets) {
		std::string idx;
		for (std::size_t i : sv.indices)
			idx += (idx.empty() ? "" : ",") + std::to_string(i);
		t.add({"{" + idx + "}", sv.verdict.empty_certified()
		                            ? "empty at degree " + std::to_string(*sv.verdict.certified_degree)
		                            : "nonempty at cap"});
	}
	emit(o, out + t.str());
	return 0;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Exact toolkit for the subspace inequality over Q(t)"};
	app.require_subcommand(1);
	OutputOptions out;

	std::string file;
	auto *check = app.add_subcommand("check", "Run a scenario file");
	check->add_option("file", file, "Scenario JSON")->required();
	add_output_options(check, out);

	std::vector<std::string> gens;
	int m = 0;
	std::optional<std::size_t> ambient;
	auto *hilbert = app.add_subcommand("hilbert", "Hilbert function of a homogeneous ideal");
	hilbert->add_option("--gens", gens, "Generators, comma separated")->delimiter(',');
	hilbert->add_option("--m", m, "Degree")->required()->check(CLI::NonNegativeNumber);
	hilbert->add_option("--ambient-dim", ambient, "M for P^M; inferred from the generators otherwise");
	add_output_options(hilbert, out);

	long n = 1, delta = 1, d = 1;
	std::string eps = "1";
	auto *bounds = app.add_subcommand("bounds", "Hilbert function bounds");
	bounds->require_subcommand(1);
	auto *a_eps = bounds->add_subcommand("a-eps", "Threshold a_eps with a ratio scan");
	a_eps->add_option("--n", n)->required();
	a_eps->add_option("--delta", delta)->required();
	a_eps->add_option("--d", d)->required();
	a_eps->add_option("--eps", eps)->required();
	add_output_options(a_eps, out);

	std::string input;
	auto *chow = app.add_subcommand("chow", "Chow form and its skew expansion");
	chow->add_option("--input", input, "JSON with ambient_dim and variety")->required();
	add_output_options(chow, out);

	std::string inputs;
	auto *constants = app.add_subcommand("constants", "Effective constants ledger");
	constants->add_option("--inputs", inputs, "JSON ledger inputs")->required();
	add_output_options(constants, out);

	std::string q_poly, place = "inf";
	std::vector<std::string> point;
	auto *filtration = app.add_subcommand("filtration", "Filtration-compatible basis");
	filtration->add_option("--gens", gens, "Generators, comma separated")->delimiter(',');
	filtration->add_option("--m", m, "Degree")->required();
	filtration->add_option("--q-poly", q_poly, "Form Q")->required();
	filtration->add_option("--ambient-dim", ambient, "M for P^M; inferred otherwise");
	filtration->add_option("--point", point, "Coordinates for the valuation check, comma separated")->delimiter(',');
	filtration->add_option("--place", place, "Place for the valuation check");
	add_output_options(filtration, out);

	std::optional<long> n_override;
	auto *position = app.add_subcommand("position", "N-subgeneral position check");
	position->add_option("--file", file, "Scenario JSON")->required();
	position->add_option("--N", n_override, "Override N");
	add_output_options(position, out);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		int rc = app.exit(e);
		return rc == 0 ? 0 : kExitInput;
	}

	try {
		if (*check)
			return cmd_check(file, out);
		if (*hilbert)
			return cmd_hilbert(gens, m, ambient, out);
		if (*a_eps)
			return cmd_a_eps(n, delta, d, eps, out);
		if (*chow)
			return cmd_chow(input, out);
		if (*constants)
			return cmd_constants(inputs, out);
		if (*filtration)
			return cmd_filtration(gens, m, q_poly, ambient, point, place, out);
		if (*position)
			return cmd_position(file, n_override, out);
	} catch (const Error &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitInput;
	}
	return kExitInput;
}
