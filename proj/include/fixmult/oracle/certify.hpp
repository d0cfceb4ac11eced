#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fixmult/counting.hpp"
#include "fixmult/oracle/orbits.hpp"
#include "fixmult/oracle/reconstruct.hpp"
#include "fixmult/oracle/solutions.hpp"

namespace fixmult {

/// Bound on |f'(zeta_i) - lambda_i| and on the index sum of reconstructed maps.
inline constexpr double kMultiplierTolerance = 1e-8;

/// Endpoints that landed on one coincidence pattern, against e times its Bezout weight.
struct PatternTally {
	std::size_t partition = 0;
	std::size_t paths = 0;
	BigInt expected;
};

struct Certification {
	SolverConfig config;
	SolveOutcome solve;
	OrbitDecomposition orbits;
	std::vector<std::size_t> orbit_of_point;
	std::vector<PolynomialRep> maps;
	std::vector<PatternTally> patterns;

	BigInt exact_s;
	BigInt exact_count;
	std::size_t numeric_s = 0;
	std::size_t orbit_count = 0;
	std::size_t numeric_c1 = 0;
	std::vector<OrbitEntry> numeric_higher; ///< only w, t and c are meaningful

	double max_multiplier_residual = 0;
	double max_index_sum = 0;
	double max_condition = 0;
	double max_residual = 0;
	double min_separation = 0;

	std::vector<std::string> failures;
	bool pass() const { return failures.empty(); }
};

/// Runs the numerical oracle and compares it with the exact ledger.
/// Throws CertificationInconclusive when no two homotopy runs agree, and
/// CertificationFailure or DedupAmbiguity from the orbit step.
inline Certification certify(const SpectrumInput& spectrum, const FiberReport& exact, const SolverConfig& cfg) {
	Certification out;
	out.config = cfg;
	out.exact_s = exact.multiplicities.s_d;
	out.exact_count = exact.count;
	ResidueVector residues = residues_from_eigenvalues(spectrum);
	const StratumSignature& sig = exact.signature;
	const std::size_t d = sig.d;

	out.solve = enumerate_solutions(residues, sig, cfg);
	const auto& points = out.solve.solutions();
	out.numeric_s = points.size();

	out.orbits = orbit_quotient(points, sig.symmetry, cfg.tol_cluster);
	out.orbit_count = out.orbits.orbits.size();
	out.orbit_of_point.assign(points.size(), 0);
	for (std::size_t k = 0; k < out.orbits.orbits.size(); ++k)
		for (std::size_t j : out.orbits.orbits[k].members)
			out.orbit_of_point[j] = k;

	for (const auto& o : out.orbits.orbits) {
		if (o.stabilizer == 1) {
			++out.numeric_c1;
			continue;
		}
		auto it = std::find_if(out.numeric_higher.begin(), out.numeric_higher.end(),
		                       [&](const OrbitEntry& e) { return e.w == *o.zero_block && e.t == o.stabilizer; });
		if (it == out.numeric_higher.end()) {
			OrbitEntry e;
			e.w = *o.zero_block;
			e.t = o.stabilizer;
			e.c = 1;
			out.numeric_higher.push_back(e);
		} else {
			it->c += 1;
		}
	}

	out.min_separation = points.empty() ? 0 : points.front().separation;
	for (const auto& p : points) {
		PolynomialRep rep = reconstruct_map(p, spectrum);
		out.max_multiplier_residual = std::max(out.max_multiplier_residual, rep.multiplier_residual);
		out.max_index_sum = std::max(out.max_index_sum, std::abs(rep.index_sum));
		out.max_condition = std::max(out.max_condition, p.condition);
		out.max_residual = std::max(out.max_residual, p.residual);
		out.min_separation = std::min(out.min_separation, p.separation);
		out.maps.push_back(std::move(rep));
	}

	for (std::size_t i = 0; i < sig.partitions.size(); ++i) {
		PatternTally t;
		t.partition = i;
		for (const auto& path : out.solve.run().paths)
			if (path.classification == PointClass::B && path.pattern == i)
				++t.paths;
		long l = long(sig.partitions[i].size());
		t.expected = exact.multiplicities.e[i] * range_product(long(d) - l + 1, long(d) - 2);
		out.patterns.push_back(t);
	}

	auto fail = [&](std::string why) { out.failures.push_back(std::move(why)); };
	if (BigInt(out.numeric_s) != out.exact_s)
		fail("numeric S-point count " + std::to_string(out.numeric_s) + " differs from s_d = " + out.exact_s.str());
	if (BigInt(out.orbit_count) != out.exact_count)
		fail("orbit count " + std::to_string(out.orbit_count) + " differs from the fiber count " +
		     out.exact_count.str());
	if (BigInt(out.numeric_c1) != exact.orbits.c1)
		fail("free orbits " + std::to_string(out.numeric_c1) + " differ from c1 = " + exact.orbits.c1.str());
	for (const auto& e : exact.orbits.higher) {
		BigInt found = 0;
		for (const auto& n : out.numeric_higher)
			if (n.w == e.w && n.t == e.t)
				found = n.c;
		if (found != e.c)
			fail("orbits with stabilizer " + std::to_string(e.t) + " in block " + std::to_string(e.w + 1) + ": " +
			     found.str() + " numerically, " + e.c.str() + " exactly");
	}
	for (const auto& n : out.numeric_higher)
		if (!exact.orbits.find(n.w, n.t))
			fail("numeric orbit with stabilizer " + std::to_string(n.t) + " in block " + std::to_string(n.w + 1) +
			     " has no exact counterpart");
	if (!(out.max_multiplier_residual < kMultiplierTolerance))
		fail("multiplier residual " + std::to_string(out.max_multiplier_residual) + " above tolerance");
	if (!(out.max_index_sum < kMultiplierTolerance))
		fail("index sum " + std::to_string(out.max_index_sum) + " above tolerance");
	return out;
}

} // namespace fixmult
