#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fixmult/counting.hpp"
#include "fixmult/error.hpp"
#include "fixmult/oracle/certify.hpp"
#include "fixmult/scan.hpp"
#include "fixmult/stratum.hpp"

namespace fixmult {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

enum class InputMode { Residues, Eigenvalues };

/// A parsed input file. In residue mode the values are taken as the actual
/// residues, so the eigenvalues are always available.
struct SpectrumFile {
	InputMode mode = InputMode::Residues;
	std::vector<GaussianRational> values;
	ResidueVector residues;
	SpectrumInput spectrum;
};

inline GaussianRational parse_value(const Json& v) {
	if (v.is_string())
		return GaussianRational::parse(v.get<std::string>());
	if (v.is_number_integer())
		return GaussianRational(static_cast<long long>(v.get<std::int64_t>()));
	throw ParseError("spectrum values must be strings in the Gaussian-rational grammar, got " + v.dump());
}

inline SpectrumFile parse_spectrum(const Json& doc) {
	if (!doc.is_object())
		throw ParseError("input must be a JSON object");
	for (const char* key : {"d", "mode", "values"})
		if (!doc.contains(key))
			throw ParseError(std::string("input is missing the field \"") + key + "\"");
	if (!doc["d"].is_number_integer() || doc["d"].get<long>() < 2)
		throw ParseError("field \"d\" must be an integer >= 2");
	const std::size_t d = doc["d"].get<std::size_t>();
	const std::string mode = doc["mode"].is_string() ? doc["mode"].get<std::string>() : "";
	if (mode != "residues" && mode != "eigenvalues")
		throw ParseError("field \"mode\" must be \"residues\" or \"eigenvalues\"");
	if (!doc["values"].is_array())
		throw ParseError("field \"values\" must be an array");
	std::vector<GaussianRational> values;
	for (const auto& v : doc["values"])
		values.push_back(parse_value(v));
	if (values.size() != d)
		throw ParseError("d = " + std::to_string(d) + " but " + std::to_string(values.size()) + " values given");

	if (mode == "eigenvalues") {
		SpectrumInput s(values);
		ResidueVector m = residues_from_eigenvalues(s);
		return {InputMode::Eigenvalues, std::move(values), std::move(m), std::move(s)};
	}
	ResidueVector m(values);
	SpectrumInput s = eigenvalues_from_residues(m);
	return {InputMode::Residues, std::move(values), std::move(m), std::move(s)};
}

inline SpectrumFile load_spectrum(const std::string& path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError("cannot open input file " + path);
	Json doc;
	try {
		doc = Json::parse(in);
	} catch (const nlohmann::json::parse_error& e) {
		throw ParseError(std::string("malformed JSON in ") + path + ": " + e.what());
	}
	return parse_spectrum(doc);
}

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
inline Json big_json(const BigInt& v) {
	if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
		return v.convert_to<std::int64_t>();
	return v.str();
}

inline Json values_json(const std::vector<GaussianRational>& values) {
	Json out = Json::array();
	for (const auto& v : values)
		out.push_back(v.to_string());
	return out;
}

inline Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

inline Json signature_json(const StratumSignature& sig) {
	Json out;
	Json family = Json::array();
	for (IndexSet s : sig.zero_sum_family.subsets())
		family.push_back(s.one_based());
	out["I"] = family;
	Json blocks = Json::array();
	for (IndexSet b : sig.symmetry.blocks)
		blocks.push_back(b.one_based());
	out["K"] = blocks;
	out["kappa"] = sig.symmetry.kappa;
	out["g"] = sig.symmetry.g;
	Json parts = Json::array();
	for (const auto& p : sig.partitions)
		parts.push_back(p.one_based());
	out["partitions"] = parts;
	// [i, j]: partition j strictly refines partition i (both 1-based)
	Json order = Json::array();
	for (std::size_t i = 0; i < sig.finer.size(); ++i)
		for (const auto& r : sig.finer[i])
			order.push_back(Json::array({i + 1, r.finer + 1}));
	out["order"] = order;
	return out;
}

inline Json fiber_json(const FiberReport& r) {
	Json out;
	out["signature"] = signature_json(r.signature);
	Json table = Json::array();
	for (std::size_t i = 0; i < r.signature.partitions.size(); ++i) {
		Json row;
		row["partition"] = i + 1;
		row["blocks"] = r.signature.partitions[i].one_based();
		row["e"] = big_json(r.multiplicities.e[i]);
		row["e_product"] = big_json(r.multiplicities.e_product[i]);
		row["maximal"] = r.signature.is_maximal(i);
		table.push_back(row);
	}
	out["e_table"] = table;
	Json svals = Json::array();
	for (const auto& s : r.s_values) {
		Json row;
		switch (s.source) {
		case SubSpectrumCount::Source::Top:
			row["source"] = "top";
			break;
		case SubSpectrumCount::Source::Block:
			row["source"] = "block";
			row["block"] = s.block.one_based();
			break;
		case SubSpectrumCount::Source::Scaled:
			row["source"] = "scaled";
			row["w"] = s.w + 1;
			row["t"] = s.t;
			break;
		}
		row["d"] = s.d;
		row["residues"] = values_json(s.residues);
		row["s"] = big_json(s.s);
		svals.push_back(row);
	}
	out["s_values"] = svals;
	Json ctable = Json::array();
	for (const auto& e : r.orbits.higher) {
		Json row;
		row["w"] = e.w + 1;
		row["t"] = e.t;
		row["d_t"] = e.d_t;
		row["s"] = big_json(e.s_scaled);
		row["rhs"] = e.rhs.str();
		row["c"] = big_json(e.c);
		ctable.push_back(row);
	}
	out["c_table"] = ctable;
	out["c1"] = big_json(r.orbits.c1);
	out["count"] = big_json(r.count);
	if (r.empty_witness) {
		Json w = Json::array();
		for (const auto& v : *r.empty_witness)
			w.push_back(big_json(v));
		out["empty_witness"] = w;
	} else {
		out["empty_witness"] = nullptr;
	}
	out["budget_identity"] = r.multiplicities.budget_holds(r.signature);
	return out;
}

/// Top-level count report: header fields, then the fiber ledger.
inline Json count_json(const SpectrumFile& input, const FiberReport& r, const char* command = "count") {
	Json out;
	out["schema_version"] = kSchemaVersion;
	out["command"] = command;
	out["d"] = input.residues.degree();
	out["input_mode"] = input.mode == InputMode::Residues ? "residues" : "eigenvalues";
	out["residues"] = values_json(input.residues.values());
	out["eigenvalues"] = values_json(input.spectrum.eigenvalues());
	Json fiber = fiber_json(r);
	for (auto& [key, value] : fiber.items())
		out[key] = value;
	return out;
}

inline Json certification_json(const Certification& c) {
	Json out;
	out["seed"] = c.config.seed;
	out["precision"] = c.config.precision <= 53 ? 53 : 128;
	out["tol_res"] = c.config.tol_res;
	out["tol_sep"] = c.config.tol_sep;
	out["tol_cluster"] = c.config.tol_cluster;
	Json attempts = Json::array();
	for (const auto& run : c.solve.attempts) {
		Json a;
		a["seed"] = run.seed;
		a["gamma"] = complex_json(run.gamma);
		a["s_points"] = run.s_points.size();
		a["b_points"] = run.b_points;
		a["rejected"] = run.rejected;
		a["anomalies"] = run.anomalies;
		a["failed_paths"] = run.failures;
		a["escalated_paths"] = run.escalated;
		a["duplicates"] = run.duplicates;
		attempts.push_back(a);
	}
	out["attempts"] = attempts;
	out["accepted_attempt"] = c.solve.accepted + 1;
	out["confirmed_by"] = c.solve.confirmed_by + 1;

	Json paths = Json::array();
	for (const auto& p : c.solve.run().paths) {
		Json row;
		row["path"] = p.index + 1;
		row["class"] = to_string(p.classification);
		row["precision"] = p.precision_bits;
		row["cycle"] = p.cycle;
		row["steps"] = p.steps;
		row["endgame_agreement"] = p.agreement;
		if (p.classification == PointClass::S || p.classification == PointClass::Rejected) {
			row["residual"] = p.residual;
			row["separation"] = p.separation;
			row["condition"] = p.condition;
		}
		if (p.pattern)
			row["pattern"] = *p.pattern + 1;
		if (!p.coincidences.empty())
			row["coincidences"] = p.coincidences;
		if (!p.note.empty())
			row["note"] = p.note;
		paths.push_back(row);
	}
	out["paths"] = paths;

	Json patterns = Json::array();
	for (const auto& t : c.patterns) {
		Json row;
		row["partition"] = t.partition + 1;
		row["paths"] = t.paths;
		row["expected"] = big_json(t.expected);
		patterns.push_back(row);
	}
	out["b_patterns"] = patterns;

	Json points = Json::array();
	const auto& sols = c.solve.solutions();
	for (std::size_t i = 0; i < sols.size(); ++i) {
		Json row;
		Json chart = Json::array();
		for (auto z : sols[i].chart_point)
			chart.push_back(complex_json(z));
		row["chart"] = chart;
		row["residual"] = sols[i].residual;
		row["separation"] = sols[i].separation;
		row["condition"] = sols[i].condition;
		row["orbit"] = c.orbit_of_point[i] + 1;
		row["rho"] = complex_json(c.maps[i].rho);
		row["multiplier_residual"] = c.maps[i].multiplier_residual;
		points.push_back(row);
	}
	out["points"] = points;

	Json orbits = Json::array();
	for (const auto& o : c.orbits.orbits) {
		Json row;
		row["representative"] = o.representative + 1;
		row["size"] = o.members.size();
		row["stabilizer"] = o.stabilizer;
		if (o.zero_block)
			row["zero_block"] = *o.zero_block + 1;
		else
			row["zero_block"] = nullptr;
		orbits.push_back(row);
	}
	out["orbits"] = orbits;
	out["group_order"] = c.orbits.group_order;
	Json nc = Json::array();
	for (const auto& e : c.numeric_higher)
		nc.push_back(Json{{"w", e.w + 1}, {"t", e.t}, {"c", big_json(e.c)}});
	out["numeric_c_table"] = nc;
	out["numeric_c1"] = c.numeric_c1;

	out["exact_s"] = big_json(c.exact_s);
	out["numeric_s"] = c.numeric_s;
	out["exact_count"] = big_json(c.exact_count);
	out["orbit_count"] = c.orbit_count;
	out["max_multiplier_residual"] = c.max_multiplier_residual;
	out["max_index_sum"] = c.max_index_sum;
	out["max_condition"] = c.max_condition;
	out["max_residual"] = c.max_residual;
	out["min_separation"] = c.min_separation;
	out["verdict"] = c.pass() ? "PASS" : "FAIL";
	out["failures"] = c.failures;
	return out;
}

inline Json scan_row_json(const ScanRow& r) {
	return Json{{"c", r.c}, {"weight", r.weight}, {"count", big_json(r.count)}, {"witness", r.witness}};
}

inline Json scan_json(const ScanReport& r) {
	Json out;
	out["schema_version"] = kSchemaVersion;
	out["command"] = "scan";
	out["d"] = r.config.d;
	out["bound"] = r.config.bound;
	out["max_weight"] = r.config.max_weight ? Json(*r.config.max_weight) : Json(nullptr);
	out["exhaustive"] = r.config.exhaustive;
	if (!r.config.exhaustive) {
		out["samples"] = r.config.samples;
		out["seed"] = r.config.seed;
	}
	out["threshold"] = 2 * (long(r.config.d) - 2);
	out["scanned"] = r.scanned;
	Json table = Json::array();
	for (const auto& [weight, bin] : r.by_weight)
		table.push_back(Json{{"weight", weight},
		                     {"vectors", bin.vectors},
		                     {"empty", bin.empty},
		                     {"min_count", big_json(bin.min_count)},
		                     {"max_count", big_json(bin.max_count)}});
	out["table"] = table;
	auto rows = [](const std::vector<ScanRow>& v) {
		Json a = Json::array();
		for (const auto& r : v)
			a.push_back(scan_row_json(r));
		return a;
	};
	out["empty"] = rows(r.empty);
	out["soundness_violations"] = rows(r.soundness_violations);
	if (r.config.d <= 7)
		out["converse_violations"] = rows(r.converse_violations);
	else
		out["conjecture_candidates"] = rows(r.conjecture_candidates);
	out["ok"] = r.ok();
	return out;
}

inline Json stratum_json(const SpectrumFile& input, const StratumReport& r) {
	Json out = count_json(input, r.base, "stratum");
	Json st;
	st["span_dimension"] = r.span_dimension;
	st["rejected_draws"] = r.rejected;
	Json pres = Json::array();
	for (const auto& p : r.preserving) {
		Json row;
		row["residues"] = values_json(p.residues.values());
		row["identical"] = p.identical;
		if (!p.identical)
			row["difference"] = p.difference;
		pres.push_back(row);
	}
	st["preserving"] = pres;
	Json brk = Json::array();
	for (const auto& b : r.breaking) {
		Json row;
		row["dropped"] = b.dropped.one_based();
		if (b.residues) {
			row["residues"] = values_json(b.residues->values());
			row["count"] = big_json(b.count);
			row["monotone"] = b.monotone;
		}
		if (!b.note.empty())
			row["note"] = b.note;
		brk.push_back(row);
	}
	st["breaking"] = brk;
	st["all_identical"] = r.all_identical();
	st["monotone"] = r.monotone();
	out["stratum"] = st;
	return out;
}

inline Json error_json(const char* kind, const std::string& message) {
	Json out;
	out["schema_version"] = kSchemaVersion;
	out["error"] = Json{{"kind", kind}, {"message", message}};
	return out;
}

} // namespace fixmult
