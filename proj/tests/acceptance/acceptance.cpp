// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fixmult/fixmult.hpp"
#include "support/random_spectra.hpp"

using namespace fixmult;
using sample::integer_residues;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
	bool ok = true;
	std::string detail;

	void fail(const std::string& why) {
		if (ok)
			detail = why;
		ok = false;
	}
};

// Every ledger produced by criteria 1-3, for the budget and route checks.
std::vector<FiberReport> ledgers;
std::size_t faults = 0;
std::vector<std::string> fault_messages;

// Runs f, counting consistency faults instead of letting them escape.
bool guarded(const std::function<void()>& f) {
	try {
		f();
		return true;
	} catch (const ConsistencyFault& e) {
		++faults;
		fault_messages.push_back(e.what());
		return false;
	}
}

Verdict criterion_golden() {
	Verdict v;
	guarded([&] {
		auto t0 = Clock::now();
		FiberReport r = fiber_count(integer_residues({1, 1, 2, -1, -1, -2}));
		double elapsed = seconds_since(t0);
		ledgers.push_back(r);
		using Blocks = std::vector<std::vector<int>>;
		std::map<Blocks, BigInt> want{
		    {{{1, 4}, {2, 5}, {3, 6}}, 1}, {{{1, 5}, {2, 4}, {3, 6}}, 1}, {{{1, 4}, {2, 3, 5, 6}}, 3},
		    {{{1, 3, 4, 6}, {2, 5}}, 3},   {{{1, 2, 4, 5}, {3, 6}}, 0},   {{{1, 5}, {2, 3, 4, 6}}, 3},
		    {{{1, 3, 5, 6}, {2, 4}}, 3},   {{{1, 2, 6}, {3, 4, 5}}, 4}};
		std::map<Blocks, BigInt> got;
		for (std::size_t i = 0; i < r.signature.partitions.size(); ++i)
			got[r.signature.partitions[i].one_based()] = r.multiplicities.e[i];
		BigInt weight = 0;
		if (r.empty_witness)
			for (const auto& c : *r.empty_witness)
				weight += abs(c);
		if (r.signature.partitions.size() != 8)
			v.fail(std::to_string(r.signature.partitions.size()) + " partitions");
		else if (got != want)
			v.fail("e-table differs");
		else if (r.multiplicities.s_d != 0 || r.count != 0)
			v.fail("s_6 = " + r.multiplicities.s_d.str() + ", count = " + r.count.str());
		else if (!r.empty_witness || weight != 8)
			v.fail("witness weight " + weight.str());
		else if (elapsed >= 1.0)
			v.fail("took " + std::to_string(elapsed) + " s");
		else
			v.detail = "8 partitions, e-table matches, s_6 = 0, count 0, witness weight 8, " +
			           std::to_string(elapsed) + " s";
	}) || (v.fail("consistency fault"), true);
	return v;
}

Verdict criterion_generic() {
	Verdict v;
	std::mt19937_64 rng(20261016);
	double worst = 0;
	std::size_t n = 0;
	for (std::size_t d = 4; d <= 7; ++d) {
		for (int k = 0; k < 200; ++k) {
			auto m = sample::generic_residues(d, rng);
			guarded([&] {
				auto t0 = Clock::now();
				FiberReport r = fiber_count(m);
				double elapsed = seconds_since(t0);
				worst = std::max(worst, elapsed);
				ledgers.push_back(r);
				++n;
				if (r.count != factorial(d - 2))
					v.fail("d = " + std::to_string(d) + ": count " + r.count.str());
				if (elapsed >= 1.0)
					v.fail("d = " + std::to_string(d) + ": " + std::to_string(elapsed) + " s");
			}) || (v.fail("consistency fault"), true);
		}
	}
	if (v.ok)
		v.detail = std::to_string(n) + " spectra, counts 2/6/24/120, slowest " + std::to_string(worst) + " s";
	return v;
}

Verdict criterion_oracle() {
	Verdict v;
	std::mt19937_64 rng(77);
	double worst = 0, worst_residual = 0;
	std::size_t n = 0, symmetric = 0;
	std::string slowest;
	for (std::size_t d = 4; d <= 6; ++d) {
		for (int k = 0; k < 50; ++k) {
			auto m = sample::rational_residues(d, rng, k % 3);
			std::string where = "d = " + std::to_string(d) + " [";
			for (const auto& x : m.values())
				where += x.to_string() + " ";
			where += "]";
			try {
				guarded([&] {
					FiberReport r = fiber_count(m);
					ledgers.push_back(r);
					symmetric += !r.signature.symmetry.trivial();
					SolverConfig cfg;
					cfg.seed = 1000 + std::uint64_t(n);
					auto t0 = Clock::now();
					Certification c = certify(eigenvalues_from_residues(m), r, cfg);
					double elapsed = seconds_since(t0);
					if (elapsed > worst) {
						worst = elapsed;
						slowest = where;
					}
					worst_residual = std::max(worst_residual, c.max_multiplier_residual);
					++n;
					if (!c.pass())
						v.fail(where + ": " + c.failures.front());
					else if (BigInt(c.numeric_s) != r.multiplicities.s_d || BigInt(c.orbit_count) != r.count)
						v.fail(where + ": counts differ");
					else if (c.max_multiplier_residual >= 1e-8)
						v.fail(where + ": multiplier residual " + std::to_string(c.max_multiplier_residual));
					else if (c.solve.run().paths.size() > 24)
						v.fail(where + ": too many paths");
					else if (elapsed >= 2.0)
						v.fail(where + ": " + std::to_string(elapsed) + " s");
				}) || (v.fail(where + ": consistency fault"), true);
			} catch (const Error& e) {
				v.fail(where + ": " + e.what());
			}
		}
	}
	if (v.ok) {
		char buf[160];
		std::snprintf(buf, sizeof buf, "%zu spectra (%zu with symmetry), max residual %.2e, slowest %.2f s", n,
		              symmetric, worst_residual, worst);
		v.detail = buf + (" at " + slowest);
	}
	return v;
}

Verdict criterion_budget() {
	Verdict v;
	for (const auto& r : ledgers)
		if (!r.multiplicities.budget_holds(r.signature))
			v.fail("fails for d = " + std::to_string(r.signature.d));
	if (v.ok)
		v.detail = "holds on " + std::to_string(ledgers.size()) + " ledgers";
	return v;
}

Verdict criterion_routes() {
	Verdict v;
	std::size_t partitions = 0;
	for (const auto& r : ledgers) {
		partitions += r.signature.partitions.size();
		if (r.multiplicities.e != r.multiplicities.e_product)
			v.fail("routes disagree for d = " + std::to_string(r.signature.d));
	}
	if (v.ok)
		v.detail = std::to_string(partitions) + " partitions agree across " + std::to_string(ledgers.size()) + " ledgers";
	return v;
}

Verdict criterion_symmetric() {
	Verdict v;
	guarded([&] {
		auto m = integer_residues({1, 1, 1, 1, -4});
		FiberReport r = fiber_count(m);
		if (r.multiplicities.s_d != 6 || r.orbits.c1 != 0 || r.orbits.find(1, 4) != BigInt(1) ||
		    r.orbits.find(1, 2) != BigInt(0) || r.orbits.higher.size() != 2 || r.count != 1) {
			v.fail("exact ledger differs");
			return;
		}
		Certification c = certify(eigenvalues_from_residues(m), r, SolverConfig{});
		if (!c.pass())
			v.fail(c.failures.front());
		else if (c.numeric_s != 6 || c.orbits.orbits.size() != 1 || c.orbits.orbits[0].stabilizer != 4 ||
		         c.orbits.orbits[0].members.size() != 6)
			v.fail("orbit structure differs");
		else if (c.max_multiplier_residual >= 1e-8)
			v.fail("multiplier residual " + std::to_string(c.max_multiplier_residual));
		else
			v.detail = "s_5 = 6, c(2,4) = 1, c(2,2) = 0, c1 = 0, count 1; 6 points in one orbit, stabilizer 4";
	}) || (v.fail("consistency fault"), true);
	return v;
}

Verdict criterion_scan() {
	Verdict v;
	auto t0 = Clock::now();
	std::string detail;
	Counter counter;
	for (std::size_t d = 4; d <= 7; ++d) {
		guarded([&] {
			const long threshold = 2 * (long(d) - 2);
			ScanConfig small{d, threshold, threshold, true, 0, 1};
			ScanReport low = run_scan_job(small, counter);
			if (!low.soundness_violations.empty() || low.empty.size() != low.scanned)
				v.fail("d = " + std::to_string(d) + ": nonzero count at weight <= " + std::to_string(threshold));
			ScanConfig wide{d, 6, std::nullopt, true, 0, 1};
			ScanReport high = run_scan_job(wide, counter);
			if (!high.ok())
				v.fail("d = " + std::to_string(d) + ": " + std::to_string(high.converse_violations.size()) +
				       " empty fibers without a small proportional vector");
			detail += "d=" + std::to_string(d) + ": " + std::to_string(low.scanned) + " small/" +
			          std::to_string(high.scanned) + " bounded; ";
		}) || (v.fail("consistency fault"), true);
	}
	double elapsed = seconds_since(t0);
	if (elapsed >= 600)
		v.fail("took " + std::to_string(elapsed) + " s");
	if (v.ok)
		v.detail = detail + std::to_string(elapsed) + " s";
	return v;
}

Verdict criterion_stratum() {
	Verdict v;
	std::vector<ResidueVector> bases{
	    integer_residues({1, 1, 2, -1, -1, -2}),   integer_residues({1, 1, 1, 1, -4}),
	    integer_residues({1, 2, -1, -2}),          integer_residues({1, 2, 3, -1, -2, -3}),
	    integer_residues({1, 1, 1, -1, -1, -1}),   integer_residues({1, 2, -3, 4, -4}),
	    integer_residues({1, 1, -2, 3, -3}),       integer_residues({2, 2, 2, -3, -3}),
	    integer_residues({1, 1, 1, 1, 1, -5}),     integer_residues({1, -1, 2, -2, 3, -3, 4, -4}),
	    integer_residues({1, 2, 3, 4, -10}),       integer_residues({1, 1, 1, 1, 2, -6}),
	    integer_residues({1, 3, -4, 2, 5, -7}),    integer_residues({1, 1, 2, 2, -3, -3}),
	    integer_residues({1, 2, 4, -7})};
	std::mt19937_64 rng(8);
	while (bases.size() < 20)
		bases.push_back(sample::rational_residues(4 + bases.size() % 4, rng, int(bases.size() % 3)));
	std::size_t identical = 0, breaking = 0;
	Counter counter;
	for (std::size_t b = 0; b < bases.size(); ++b) {
		guarded([&] {
			StratumReport r = explore_stratum(bases[b], 10, 100 + b, counter);
			if (r.preserving.size() != 10)
				v.fail("base " + std::to_string(b + 1) + ": only " + std::to_string(r.preserving.size()) + " samples");
			for (const auto& p : r.preserving) {
				if (p.identical)
					++identical;
				else
					v.fail("base " + std::to_string(b + 1) + ": " + p.difference + " changed");
			}
			for (const auto& s : r.breaking) {
				if (!s.residues)
					continue;
				++breaking;
				if (!s.monotone)
					v.fail("base " + std::to_string(b + 1) + ": count dropped to " + s.count.str());
			}
		}) || (v.fail("consistency fault on base " + std::to_string(b + 1)), true);
	}
	if (v.ok && breaking == 0)
		v.fail("no relation-breaking sample was produced");
	if (v.ok)
		v.detail = std::to_string(bases.size()) + " bases, " + std::to_string(identical) +
		           " identical ledgers, " + std::to_string(breaking) + " breaking samples, none decreased";
	return v;
}

Verdict criterion_faults() {
	Verdict v;
	if (faults != 0)
		v.fail(std::to_string(faults) + " consistency faults, first: " + fault_messages.front());
	else
		v.detail = "no consistency fault in any run";
	return v;
}

Verdict criterion_confluent() {
	Verdict v;
	std::mt19937_64 rng(55);
	std::size_t largest = 0;
	for (int k = 0; k < 100; ++k) {
		std::uniform_int_distribution<std::size_t> total_dist(1, 8);
		std::size_t total = total_dist(rng);
		std::vector<std::size_t> r;
		while (total > 0) {
			std::uniform_int_distribution<std::size_t> part(1, total);
			r.push_back(part(rng));
			total -= r.back();
		}
		std::vector<GaussianRational> alpha;
		while (alpha.size() < r.size()) {
			auto z = sample::random_gaussian(rng, 6, 4);
			if (std::find(alpha.begin(), alpha.end(), z) == alpha.end())
				alpha.push_back(z);
		}
		largest = std::max(largest, std::accumulate(r.begin(), r.end(), std::size_t(0)));
		if (!confluent_block_determinant(r, alpha).agree())
			v.fail("instance " + std::to_string(k + 1) + " disagrees");
	}
	if (v.ok)
		v.detail = "100 instances agree exactly, largest order " + std::to_string(largest);
	return v;
}

} // namespace

int main() {
	std::vector<std::pair<int, std::function<Verdict()>>> criteria{
	    {1, criterion_golden},  {2, criterion_generic}, {3, criterion_oracle},  {4, criterion_budget},
	    {5, criterion_routes},   {6, criterion_symmetric}, {7, criterion_scan},  {8, criterion_stratum},
	    {9, criterion_faults},   {10, criterion_confluent}};
	int failed = 0;
	for (auto& [id, run] : criteria) {
		Verdict v = run();
		std::printf("criterion %d: %s (%s)\n", id, v.ok ? "PASS" : "FAIL", v.detail.c_str());
		std::fflush(stdout);
		failed += !v.ok;
	}
	return failed == 0 ? 0 : 1;
}
