#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "fixmult/counting.hpp"
#include "fixmult/error.hpp"
#include "fixmult/stratum.hpp"

namespace fixmult {

struct ScanConfig {
	std::size_t d = 4;
	long bound = 4;                   ///< |c_i| <= bound
	std::optional<long> max_weight;   ///< optional cap on sum |c_i|
	bool exhaustive = true;
	std::size_t samples = 1000;       ///< used when not exhaustive
	std::uint64_t seed = 1;
};

struct ScanRow {
	std::vector<long> c;
	long weight = 0;
	BigInt count;
	bool witness = false;
};

/// Per-weight tally of scanned vectors.
struct WeightBin {
	std::size_t vectors = 0;
	std::size_t empty = 0;
	BigInt min_count;
	BigInt max_count;
};

struct ScanReport {
	ScanConfig config;
	std::size_t scanned = 0;
	std::map<long, WeightBin> by_weight;
	std::vector<ScanRow> empty;                   ///< every vector with count 0
	std::vector<ScanRow> soundness_violations;    ///< witness present but count > 0
	std::vector<ScanRow> converse_violations;     ///< d <= 7, count 0 without a small witness
	std::vector<ScanRow> conjecture_candidates;   ///< d >= 8, count 0 without a small witness

	bool ok() const { return soundness_violations.empty() && converse_violations.empty(); }
};

namespace detail {

/// Orientation of c up to sign: the lexicographically smaller of sorted c and sorted -c.
inline std::vector<long> canonical_orientation(std::vector<long> c) {
	std::sort(c.begin(), c.end());
	std::vector<long> neg;
	for (auto it = c.rbegin(); it != c.rend(); ++it)
		neg.push_back(-*it);
	return std::min(c, neg);
}

inline bool primitive(const std::vector<long>& c) {
	long g = 0;
	for (long v : c)
		g = std::gcd(g, v < 0 ? -v : v);
	return g == 1;
}

/// Non-decreasing zero-sum sequences of non-zero integers in [-bound, bound].
template <class Visit>
void enumerate_zero_sum(std::size_t d, long bound, std::optional<long> max_weight, Visit&& visit) {
	std::vector<long> c;
	auto recurse = [&](auto&& self, long lo, long sum, long weight) -> void {
		const long left = long(d - c.size());
		if (left == 0) {
			if (sum == 0)
				visit(c);
			return;
		}
		for (long v = lo; v <= bound; ++v) {
			if (v == 0)
				continue;
			// every remaining entry is at least v
			if (sum + left * v > 0)
				break;
			if (sum + v + (left - 1) * bound < 0)
				continue;
			long w = weight + (v < 0 ? -v : v);
			if (max_weight && w > *max_weight)
				continue;
			c.push_back(v);
			self(self, v, sum + v, w);
			c.pop_back();
		}
	};
	recurse(recurse, -bound, 0, 0);
}

} // namespace detail

/// Tabulates (sum |c_i|, fiber count) over primitive integer residue vectors and
/// checks the integer-ratio emptiness criterion against the exact count.
inline ScanReport run_scan_job(const ScanConfig& cfg, Counter& counter) {
	if (cfg.d < 4)
		throw DomainError("scan needs d >= 4");
	if (cfg.bound < 1)
		throw DomainError("scan bound must be positive");
	ScanReport report;
	report.config = cfg;
	const long threshold = 2 * (long(cfg.d) - 2);

	auto process = [&](const std::vector<long>& c) {
		std::vector<GaussianRational> m;
		for (long v : c)
			m.emplace_back(static_cast<long long>(v));
		FiberReport r = counter.fiber_count(ResidueVector(std::move(m)));
		ScanRow row;
		row.c = c;
		for (long v : c)
			row.weight += v < 0 ? -v : v;
		row.count = r.count;
		row.witness = r.empty_witness.has_value();
		++report.scanned;
		WeightBin& bin = report.by_weight[row.weight];
		if (bin.vectors == 0 || row.count < bin.min_count)
			bin.min_count = row.count;
		if (bin.vectors == 0 || row.count > bin.max_count)
			bin.max_count = row.count;
		++bin.vectors;
		if (row.count == 0) {
			++bin.empty;
			report.empty.push_back(row);
		}
		if (row.weight <= threshold && row.count != 0)
			report.soundness_violations.push_back(row);
		if (row.count == 0 && row.weight > threshold) {
			// c is primitive, so every proportional integer vector is at least as heavy.
			if (cfg.d <= 7)
				report.converse_violations.push_back(row);
			else
				report.conjecture_candidates.push_back(row);
		}
	};

	if (cfg.exhaustive) {
		detail::enumerate_zero_sum(cfg.d, cfg.bound, cfg.max_weight, [&](const std::vector<long>& c) {
			if (detail::primitive(c) && detail::canonical_orientation(c) == c)
				process(c);
		});
	} else {
		GaussianSampler rng(detail::mix_seed(cfg.seed));
		std::set<std::vector<long>> seen;
		std::size_t tries = 0;
		while (seen.size() < cfg.samples && tries < 1000 * cfg.samples) {
			++tries;
			std::vector<long> c;
			long sum = 0;
			for (std::size_t i = 0; i + 1 < cfg.d; ++i) {
				long v = 0;
				while (v == 0)
					v = rng.integer(-cfg.bound, cfg.bound);
				c.push_back(v);
				sum += v;
			}
			if (sum == 0 || sum > cfg.bound || sum < -cfg.bound)
				continue;
			c.push_back(-sum);
			long weight = 0;
			for (long v : c)
				weight += v < 0 ? -v : v;
			if (cfg.max_weight && weight > *cfg.max_weight)
				continue;
			if (!detail::primitive(c))
				continue;
			auto key = detail::canonical_orientation(c);
			if (seen.insert(key).second)
				process(key);
		}
	}
	return report;
}

} // namespace fixmult
