// Command-line front end: count, certify, scan, stratum. Every run prints one
// JSON document on stdout.
//
// exit codes: 0 ok, 1 certification FAIL, 2 invalid input, 3 inconclusive
// certification, 4 internal consistency fault.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fixmult/fixmult.hpp"

using namespace fixmult;

namespace {

int emit(const Json& doc, int code) {
	std::string text = doc.dump(2);
	text += '\n';
	std::cout << text << std::flush;
	return code;
}

int run_count(const std::string& path) {
	SpectrumFile input = load_spectrum(path);
	Counter counter;
	FiberReport r = counter.fiber_count(input.residues);
	return emit(count_json(input, r), 0);
}

int run_certify(const std::string& path, const SolverConfig& cfg) {
	SpectrumFile input = load_spectrum(path);
	Counter counter;
	FiberReport r = counter.fiber_count(input.residues);
	Certification c = certify(input.spectrum, r, cfg);
	Json doc = count_json(input, r, "certify");
	doc["certification"] = certification_json(c);
	return emit(doc, c.pass() ? 0 : 1);
}

int run_scan(const ScanConfig& cfg) {
	Counter counter;
	ScanReport r = run_scan_job(cfg, counter);
	return emit(scan_json(r), r.ok() ? 0 : 4);
}

int run_stratum(const std::string& path, std::size_t perturbations, std::uint64_t seed) {
	SpectrumFile input = load_spectrum(path);
	Counter counter;
	StratumReport r = explore_stratum(input.residues, perturbations, seed, counter);
	return emit(stratum_json(input, r), r.all_identical() && r.monotone() ? 0 : 4);
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Fixed-point multiplier fiber counts with a numerical certificate"};
	app.require_subcommand(1);

	std::string input;
	auto* count = app.add_subcommand("count", "exact fiber count with the full ledger");
	count->add_option("--input", input, "spectrum JSON file")->required();

	SolverConfig solver;
	auto* cert = app.add_subcommand("certify", "exact count checked against homotopy continuation");
	cert->add_option("--input", input, "spectrum JSON file")->required();
	cert->add_option("--seed", solver.seed, "random seed for the homotopy constants")->capture_default_str();
	cert->add_option("--tol-res", solver.tol_res, "relative residual bound for S-points")->capture_default_str();
	cert->add_option("--tol-sep", solver.tol_sep, "minimum separation of S-point coordinates")->capture_default_str();
	cert->add_option("--precision", solver.precision, "bits: 53 (double) or more (128-bit floats)")
	    ->capture_default_str();
	cert->add_option("--threads", solver.threads, "path-tracking threads")->capture_default_str();
	cert->add_option("--max-paths", solver.max_paths, "refuse spectra with more (d-2)! paths")->capture_default_str();
	cert->add_option("--max-attempts", solver.max_attempts, "independent homotopy runs before giving up")
	    ->capture_default_str();

	ScanConfig scan;
	scan.exhaustive = false;
	long max_weight = 0;
	auto* sc = app.add_subcommand("scan", "emptiness criterion against exact counts over integer vectors");
	sc->add_option("--d", scan.d, "degree")->required();
	sc->add_option("--bound", scan.bound, "bound on |c_i|")->required();
	sc->add_flag("--exhaustive", scan.exhaustive, "enumerate every vector instead of sampling");
	sc->add_option("--samples", scan.samples, "number of random vectors when sampling")->capture_default_str();
	sc->add_option("--seed", scan.seed, "sampling seed")->capture_default_str();
	auto* mw = sc->add_option("--max-weight", max_weight, "only vectors with sum |c_i| up to this");

	std::size_t perturbations = 10;
	std::uint64_t stratum_seed = 1;
	auto* st = app.add_subcommand("stratum", "re-randomize within the stratum and compare ledgers");
	st->add_option("--input", input, "spectrum JSON file")->required();
	st->add_option("--perturbations", perturbations, "samples inside the stratum")->capture_default_str();
	st->add_option("--seed", stratum_seed, "sampling seed")->capture_default_str();

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return 2;
	}
	if (mw->count() > 0)
		scan.max_weight = max_weight;

	try {
		if (*count)
			return run_count(input);
		if (*cert)
			return run_certify(input, solver);
		if (*sc)
			return run_scan(scan);
		if (*st)
			return run_stratum(input, perturbations, stratum_seed);
	} catch (const ParseError& e) {
		return emit(error_json("parse_error", e.what()), 2);
	} catch (const InvalidSpectrum& e) {
		return emit(error_json("invalid_spectrum", e.what()), 2);
	} catch (const DomainError& e) {
		return emit(error_json("domain_error", e.what()), 2);
	} catch (const DivisionByZero& e) {
		return emit(error_json("invalid_spectrum", e.what()), 2);
	} catch (const ConsistencyFault& e) {
		return emit(error_json("consistency_fault", e.what()), 4);
	} catch (const CertificationInconclusive& e) {
		return emit(error_json("certification_inconclusive", e.what()), 3);
	} catch (const CertificationFailure& e) {
		return emit(error_json("certification_inconclusive", e.what()), 3);
	} catch (const DedupAmbiguity& e) {
		return emit(error_json("certification_inconclusive", e.what()), 3);
	}
	return 2;
}
