/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/chow.hpp"
#include "effsub/errors.hpp"
#include "effsub/graded_ideal.hpp"
#include "effsub/heights.hpp"
#include "effsub/parse.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace effsub {

enum class VarietyKind { ProjectiveSpace, Hypersurface, Ideal };

inline const char *to_string(VarietyKind k)
{
	switch (k) {
	case VarietyKind::ProjectiveSpace: return "projective_space";
	case VarietyKind::Hypersurface: return "hypersurface";
	case VarietyKind::Ideal: return "ideal";
	}
	return "unknown";
}

struct VarietySpec {
	VarietyKind kind = VarietyKind::ProjectiveSpace;
	/// Generators of I_X; empty for projective space, {F} for a hypersurface.
	std::vector<HomogeneousPoly> generators;
	MultiHomForm chow_form;

	long dimension() const { return static_cast<long>(chow_form.blocks()) - 1; }
	long degree() const { return chow_form.block_degree(); }
	IdealGenerators ideal(std::size_t nvars) const { return IdealGenerators(nvars, generators); }
};

struct ConstantsOverrides {
	std::optional<Q> c1;
	std::optional<Q> c1_prime;
	std::optional<long> m;
	std::optional<int> nullstellensatz_cap;
};

struct Scenario {
	std::size_t ambient_dim = 0;
	VarietySpec variety;
	std::vector<HomogeneousPoly> divisors;
	long N = 1;
	std::vector<Place> places;
	Q epsilon = 1;
	std::vector<ProjectivePoint> points;
	ConstantsOverrides overrides;

	std::size_t nvars() const { return ambient_dim + 1; }
};

/// Block-term list: {"blocks", "block_degree", "terms": [{"coeff", "exponents": [[...], ...]}]}.
inline nlohmann::ordered_json chow_form_to_json(const MultiHomForm &f)
{
	nlohmann::ordered_json j;
	j["blocks"] = f.blocks();
	j["vars_per_block"] = f.vars_per_block();
	j["block_degree"] = f.block_degree();
	auto terms = nlohmann::ordered_json::array();
	for (const auto &[key, c] : f.terms()) {
		nlohmann::ordered_json t;
		t["coeff"] = c.str();
		auto ex = nlohmann::ordered_json::array();
		for (const auto &m : key)
			ex.push_back(m.exps);
		t["exponents"] = std::move(ex);
		terms.push_back(std::move(t));
	}
	j["terms"] = std::move(terms);
	return j;
}

namespace detail {

using json = nlohmann::json;

inline std::string child(const std::string &ptr, const std::string &key) { return ptr + "/" + key; }
inline std::string child(const std::string &ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

inline const json &field(const json &j, const std::string &ptr, const char *key)
{
	if (!j.is_object())
		throw SchemaError(ptr.empty() ? "/" : ptr, "expected an object");
	auto it = j.find(key);
	if (it == j.end())
		throw SchemaError(child(ptr, key), "missing required field");
	return *it;
}

inline const json *optional_field(const json &j, const char *key)
{
	auto it = j.find(key);
	return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline long as_int(const json &j, const std::string &ptr)
{
	if (!j.is_number_integer())
		throw SchemaError(ptr, "expected an integer");
	return j.get<long>();
}

inline std::string as_string(const json &j, const std::string &ptr)
{
	if (!j.is_string())
		throw SchemaError(ptr, "expected a string");
	return j.get<std::string>();
}

inline const json &as_array(const json &j, const std::string &ptr)
{
	if (!j.is_array())
		throw SchemaError(ptr, "expected an array");
	return j;
}

/// Parse errors keep their kind; the message gains the JSON location.
template <class F>
auto at_pointer(const std::string &ptr, F &&f) -> decltype(f())
{
	try {
		return f();
	} catch (const SyntaxError &e) {
		throw SyntaxError(e.position(), ptr + ": " + e.detail());
	} catch (const SchemaError &) {
		throw;
	} catch (const Error &e) {
		throw Error(e.kind(), ptr + ": " + e.message());
	}
}

inline HomogeneousPoly form_at(const json &j, const std::string &ptr, std::size_t nvars)
{
	std::string text = as_string(j, ptr);
	return at_pointer(ptr, [&] { return parse_poly(text, nvars); });
}

inline Q rational_at(const json &j, const std::string &ptr)
{
	std::string text = j.is_number_integer() ? std::to_string(j.get<long>()) : as_string(j, ptr);
	return at_pointer(ptr, [&] { return parse_rational(text); });
}

inline MultiHomForm chow_form_at(const json &j, const std::string &ptr, std::size_t nvars)
{
	long blocks = as_int(field(j, ptr, "blocks"), child(ptr, "blocks"));
	long deg = as_int(field(j, ptr, "block_degree"), child(ptr, "block_degree"));
	if (blocks < 1 || blocks > static_cast<long>(nvars))
		throw SchemaError(child(ptr, "blocks"), "need 1 <= blocks <= ambient_dim + 1");
	if (deg < 1)
		throw SchemaError(child(ptr, "block_degree"), "must be positive");
	if (const json *v = optional_field(j, "vars_per_block"))
		if (as_int(*v, child(ptr, "vars_per_block")) != static_cast<long>(nvars))
			throw SchemaError(child(ptr, "vars_per_block"), "must equal ambient_dim + 1");
	MultiHomForm f(static_cast<std::size_t>(blocks), nvars, static_cast<int>(deg));
	const std::string tptr = child(ptr, "terms");
	const json &terms = as_array(field(j, ptr, "terms"), tptr);
	for (std::size_t i = 0; i < terms.size(); ++i) {
		const std::string p = child(tptr, i);
		K c = at_pointer(child(p, "coeff"), [&] {
			const json &cj = field(terms[i], p, "coeff");
			return cj.is_number_integer() ? K(cj.get<long>()) : parse_k(as_string(cj, child(p, "coeff")));
		});
		const std::string eptr = child(p, "exponents");
		const json &ex = as_array(field(terms[i], p, "exponents"), eptr);
		if (ex.size() != static_cast<std::size_t>(blocks))
			throw SchemaError(eptr, "expected one exponent vector per block");
		MultiHomForm::Key key;
		for (std::size_t b = 0; b < ex.size(); ++b) {
			const json &row = as_array(ex[b], child(eptr, b));
			if (row.size() != nvars)
				throw SchemaError(child(eptr, b), "expected ambient_dim + 1 exponents");
			std::vector<int> e;
			for (std::size_t a = 0; a < row.size(); ++a) {
				long v = as_int(row[a], child(child(eptr, b), a));
				if (v < 0)
					throw SchemaError(child(child(eptr, b), a), "negative exponent");
				e.push_back(static_cast<int>(v));
			}
			key.emplace_back(std::move(e));
		}
		at_pointer(p, [&] { f.add_term(key, c); });
	}
	if (f.is_zero())
		throw SchemaError(tptr, "Chow form is zero");
	return f;
}

} // namespace detail

/// Reads `ambient_dim` and `variety`; shared by scenarios and Chow-form inputs.
inline std::pair<std::size_t, VarietySpec> parse_variety(const nlohmann::json &j)
{
	using namespace detail;
	long m = as_int(field(j, "", "ambient_dim"), "/ambient_dim");
	if (m < 1)
		throw SchemaError("/ambient_dim", "must be at least 1");
	const std::size_t nv = static_cast<std::size_t>(m) + 1;
	VarietySpec out;

	const json &v = field(j, "", "variety");
	std::string kind = as_string(field(v, "/variety", "kind"), "/variety/kind");
	if (kind == "projective_space") {
		out.kind = VarietyKind::ProjectiveSpace;
		std::vector<ProjectivePoint> e;
		for (std::size_t i = 0; i < nv; ++i) {
			std::vector<K> c(nv);
			c[i] = K(1);
			e.emplace_back(std::move(c));
		}
		out.chow_form = chow_of_linear(e);
	} else if (kind == "hypersurface") {
		out.kind = VarietyKind::Hypersurface;
		if (nv < 3)
			throw SchemaError("/ambient_dim", "hypersurfaces need ambient_dim >= 2");
		HomogeneousPoly f = form_at(field(v, "/variety", "F"), "/variety/F", nv);
		if (f.degree() < 1)
			throw SchemaError("/variety/F", "must have positive degree");
		out.generators = {f};
		out.chow_form = chow_of_hypersurface(f);
	} else if (kind == "ideal") {
		out.kind = VarietyKind::Ideal;
		const json &gens = as_array(field(v, "/variety", "generators"), "/variety/generators");
		for (std::size_t i = 0; i < gens.size(); ++i)
			out.generators.push_back(form_at(gens[i], child("/variety/generators", i), nv));
		out.chow_form = chow_form_at(field(v, "/variety", "chow_form"), "/variety/chow_form", nv);
	} else {
		throw SchemaError("/variety/kind", "unknown kind '" + kind + "'");
	}
	if (kind != "ideal")
		if (const json *cf = optional_field(v, "chow_form"))
			out.chow_form = chow_form_at(*cf, "/variety/chow_form", nv);
	return {static_cast<std::size_t>(m), std::move(out)};
}

/// Validates a parsed scenario document; errors name the offending JSON pointer.
inline Scenario parse_scenario(const nlohmann::json &j)
{
	using namespace detail;
	Scenario s;
	std::tie(s.ambient_dim, s.variety) = parse_variety(j);
	const std::size_t nv = s.nvars();

	const json &divs = as_array(field(j, "", "divisors"), "/divisors");
	if (divs.empty())
		throw SchemaError("/divisors", "at least one divisor required");
	for (std::size_t i = 0; i < divs.size(); ++i) {
		const std::string p = child("/divisors", i);
		HomogeneousPoly q = form_at(field(divs[i], p, "poly"), child(p, "poly"), nv);
		if (q.is_zero())
			throw SchemaError(child(p, "poly"), "zero divisor");
		if (const json *d = optional_field(divs[i], "degree"))
			if (as_int(*d, child(p, "degree")) != q.degree())
				throw SchemaError(child(p, "degree"), "declared degree differs from deg " + q.str());
		s.divisors.push_back(std::move(q));
	}

	s.N = as_int(field(j, "", "N"), "/N");
	if (s.N < s.variety.dimension() || s.N < 1)
		throw SchemaError("/N", "need N >= n >= 1");

	const json &places = as_array(field(j, "", "places"), "/places");
	std::set<Place> seen;
	for (std::size_t i = 0; i < places.size(); ++i) {
		const std::string p = child("/places", i);
		std::string text = as_string(places[i], p);
		Place pl = at_pointer(p, [&] { return parse_place(text); });
		if (!seen.insert(pl).second)
			throw SchemaError(p, "duplicate place");
		s.places.push_back(pl);
	}

	s.epsilon = rational_at(field(j, "", "epsilon"), "/epsilon");
	if (s.epsilon <= 0)
		throw SchemaError("/epsilon", "must be positive");

	if (const json *pts = optional_field(j, "points")) {
		as_array(*pts, "/points");
		for (std::size_t i = 0; i < pts->size(); ++i) {
			const std::string p = child("/points", i);
			const json &row = as_array((*pts)[i], p);
			if (row.size() != nv)
				throw SchemaError(p, "expected ambient_dim + 1 coordinates");
			std::vector<K> c;
			for (std::size_t a = 0; a < row.size(); ++a) {
				std::string text = row[a].is_number_integer() ? std::to_string(row[a].get<long>())
				                                             : as_string(row[a], child(p, a));
				c.push_back(at_pointer(child(p, a), [&] { return parse_k(text); }));
			}
			s.points.push_back(at_pointer(p, [&] { return ProjectivePoint(std::move(c)); }));
		}
	}

	if (const json *o = optional_field(j, "constants_overrides")) {
		const std::string p = "/constants_overrides";
		if (!o->is_object())
			throw SchemaError(p, "expected an object");
		if (const json *x = optional_field(*o, "c1"))
			s.overrides.c1 = rational_at(*x, child(p, "c1"));
		if (const json *x = optional_field(*o, "c1_prime"))
			s.overrides.c1_prime = rational_at(*x, child(p, "c1_prime"));
		if (const json *x = optional_field(*o, "m")) {
			long mm = as_int(*x, child(p, "m"));
			if (mm < 1)
				throw SchemaError(child(p, "m"), "must be positive");
			s.overrides.m = mm;
		}
		if (const json *x = optional_field(*o, "nullstellensatz_cap")) {
			long cap = as_int(*x, child(p, "nullstellensatz_cap"));
			if (cap < 1 || cap > 64)
				throw SchemaError(child(p, "nullstellensatz_cap"), "must lie in [1, 64]");
			s.overrides.nullstellensatz_cap = static_cast<int>(cap);
		}
	}
	return s;
}

inline nlohmann::json read_json_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorKind::IoError, "cannot open " + path);
	nlohmann::json j;
	try {
		j = nlohmann::json::parse(in);
	} catch (const nlohmann::json::parse_error &e) {
		throw SyntaxError(e.byte, path + ": invalid JSON");
	}
	return j;
}

inline Scenario load_scenario(const std::string &path) { return parse_scenario(read_json_file(path)); }

} // namespace effsub
