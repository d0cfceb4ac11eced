#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fixmult/combinatorics.hpp"
#include "fixmult/error.hpp"
#include "fixmult/oracle/solutions.hpp"

namespace fixmult {

struct Orbit {
	std::size_t representative = 0;    ///< index into the point list
	std::vector<std::size_t> members;  ///< sorted indices into the point list
	std::size_t stabilizer = 1;
	std::optional<std::size_t> zero_block; ///< 0-based w of the fixed coordinate when stabilizer > 1
	std::optional<std::size_t> zero_index; ///< 0-based coordinate equal to the centroid
};

struct OrbitDecomposition {
	std::vector<Orbit> orbits;
	std::size_t group_order = 1;

	/// Orbits per (w, t); t = 1 is reported under w = none.
	std::size_t count(std::optional<std::size_t> w, std::size_t t) const {
		std::size_t n = 0;
		for (const auto& o : orbits)
			if (o.stabilizer == t && (t == 1 || o.zero_block == w))
				++n;
		return n;
	}
};

/// Every element of the product of the symmetric groups on the blocks, as sigma[i].
inline std::vector<std::vector<std::size_t>> block_permutations(const SymmetryProfile& profile, std::size_t d) {
	std::vector<std::vector<std::size_t>> out;
	std::vector<std::size_t> sigma(d);
	for (std::size_t i = 0; i < d; ++i)
		sigma[i] = i;
	auto recurse = [&](auto&& self, std::size_t w) -> void {
		if (w == profile.block_count()) {
			out.push_back(sigma);
			return;
		}
		std::vector<std::size_t> members = profile.blocks[w].members();
		std::vector<std::size_t> image = members;
		do {
			for (std::size_t k = 0; k < members.size(); ++k)
				sigma[members[k]] = image[k];
			self(self, w + 1);
		} while (std::next_permutation(image.begin(), image.end()));
		for (std::size_t k : members)
			sigma[k] = k;
	};
	recurse(recurse, 0);
	return out;
}

/// sigma . zeta: coordinates zeta_{sigma^-1(i)} - zeta_{sigma^-1(d)}, rescaled so the
/// (d-1)-th is 1 again. `zeta` is the chart point (d-2 entries).
inline std::vector<std::complex<double>> act(const std::vector<std::size_t>& sigma,
                                             const std::vector<std::complex<double>>& zeta) {
	const std::size_t d = zeta.size() + 2;
	std::vector<std::complex<double>> full = zeta;
	full.emplace_back(1.0);
	full.emplace_back(0.0);
	std::vector<std::size_t> inverse(d);
	for (std::size_t i = 0; i < d; ++i)
		inverse[sigma[i]] = i;
	std::vector<std::complex<double>> moved(d);
	for (std::size_t i = 0; i < d; ++i)
		moved[i] = full[inverse[i]] - full[inverse[d - 1]];
	std::complex<double> scale = moved[d - 2];
	std::vector<std::complex<double>> out(d - 2);
	for (std::size_t i = 0; i + 2 < d; ++i)
		out[i] = moved[i] / scale;
	return out;
}

/// Splits the S-points into orbits of the symmetry group and computes each stabilizer
/// exactly from the matched action. Throws CertificationFailure when an image
/// matches no point, DedupAmbiguity when it matches more than one.
inline OrbitDecomposition orbit_quotient(const std::vector<NumericSolution>& points, const SymmetryProfile& profile,
                                         double tol = 1e-6) {
	OrbitDecomposition out;
	std::size_t d = 0;
	for (IndexSet b : profile.blocks)
		d += b.size();
	out.group_order = profile.group_order().convert_to<std::size_t>();
	if (points.empty())
		return out;

	auto group = block_permutations(profile, d);
	auto match = [&](const std::vector<std::complex<double>>& q) {
		std::optional<std::size_t> found;
		for (std::size_t j = 0; j < points.size(); ++j) {
			NumericSolution probe;
			probe.chart_point = q;
			if (!detail::same_point(points[j], probe, tol))
				continue;
			if (found)
				throw DedupAmbiguity("group image lies within tolerance of points " + std::to_string(*found + 1) +
				                     " and " + std::to_string(j + 1));
			found = j;
		}
		return found;
	};

	std::vector<std::optional<std::size_t>> orbit_of(points.size());
	for (std::size_t p = 0; p < points.size(); ++p) {
		if (orbit_of[p])
			continue;
		Orbit orbit;
		orbit.representative = p;
		orbit.stabilizer = 0;
		for (const auto& sigma : group) {
			auto j = match(act(sigma, points[p].chart_point));
			if (!j)
				throw CertificationFailure("group image of point " + std::to_string(p + 1) +
				                           " matches no computed solution");
			if (*j == p)
				++orbit.stabilizer;
			if (std::find(orbit.members.begin(), orbit.members.end(), *j) == orbit.members.end())
				orbit.members.push_back(*j);
		}
		std::sort(orbit.members.begin(), orbit.members.end());
		if (orbit.members.size() * orbit.stabilizer != out.group_order)
			throw CertificationFailure("orbit of point " + std::to_string(p + 1) + " has size " +
			                           std::to_string(orbit.members.size()) + " and stabilizer " +
			                           std::to_string(orbit.stabilizer) + ", not dividing the group order");
		for (std::size_t j : orbit.members) {
			if (orbit_of[j])
				throw CertificationFailure("point " + std::to_string(j + 1) + " lies in two different orbits");
			orbit_of[j] = out.orbits.size();
		}

		if (orbit.stabilizer > 1) {
			// The stabilizing affine map fixes the centroid of the fixed points, and
			// exactly one fixed point sits there.
			std::vector<std::complex<double>> full = points[p].chart_point;
			full.emplace_back(1.0);
			full.emplace_back(0.0);
			std::complex<double> centroid = 0;
			double scale = 1;
			for (auto z : full) {
				centroid += z;
				scale = std::max(scale, std::abs(z));
			}
			centroid /= double(d);
			std::vector<std::size_t> at_center;
			for (std::size_t i = 0; i < d; ++i)
				if (std::abs(full[i] - centroid) <= tol * scale)
					at_center.push_back(i);
			if (at_center.size() != 1)
				throw CertificationFailure("stabilized point " + std::to_string(p + 1) + " has " +
				                           std::to_string(at_center.size()) + " coordinates at the centroid");
			std::size_t w = profile.block_of(at_center[0]);
			if (profile.g[w] % orbit.stabilizer != 0)
				throw CertificationFailure("stabilizer order " + std::to_string(orbit.stabilizer) + " does not divide g_" +
				                           std::to_string(w + 1) + " = " + std::to_string(profile.g[w]));
			orbit.zero_block = w;
			orbit.zero_index = at_center[0];
		}
		out.orbits.push_back(std::move(orbit));
	}
	return out;
}

} // namespace fixmult
