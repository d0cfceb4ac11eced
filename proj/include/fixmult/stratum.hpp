#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixmult/combinatorics.hpp"
#include "fixmult/counting.hpp"
#include "fixmult/oracle/solutions.hpp"

namespace fixmult {

using RationalRow = std::vector<GaussianRational>;

/// Basis of {x : A x = 0} by reduced row echelon form.
inline std::vector<RationalRow> nullspace(std::vector<RationalRow> rows, std::size_t cols) {
	std::vector<std::size_t> pivot_col;
	std::size_t r = 0;
	for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
		std::size_t p = r;
		while (p < rows.size() && rows[p][c].is_zero())
			++p;
		if (p == rows.size())
			continue;
		std::swap(rows[p], rows[r]);
		GaussianRational inv = rows[r][c].inverse();
		for (auto& v : rows[r])
			v *= inv;
		for (std::size_t i = 0; i < rows.size(); ++i) {
			if (i == r || rows[i][c].is_zero())
				continue;
			GaussianRational f = rows[i][c];
			for (std::size_t j = 0; j < cols; ++j)
				rows[i][j] -= f * rows[r][j];
		}
		pivot_col.push_back(c);
		++r;
	}
	std::vector<RationalRow> basis;
	for (std::size_t free = 0; free < cols; ++free) {
		if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end())
			continue;
		RationalRow v(cols);
		v[free] = 1;
		for (std::size_t k = 0; k < pivot_col.size(); ++k)
			v[pivot_col[k]] = -rows[k][free];
		basis.push_back(std::move(v));
	}
	return basis;
}

/// Linear equations cutting out the span of a stratum: every zero-sum relation
/// (except `drop` and its complement), the total sum, and the equalities inside each K_w.
inline std::vector<RationalRow> stratum_equations(const StratumSignature& sig, std::optional<IndexSet> drop = {}) {
	const std::size_t d = sig.d;
	std::vector<RationalRow> rows;
	rows.emplace_back(d, GaussianRational(1));
	for (IndexSet s : sig.zero_sum_family.subsets()) {
		if (drop && (s == *drop || s == drop->complement_in(d)))
			continue;
		RationalRow row(d);
		for (std::size_t i : s.members())
			row[i] = 1;
		rows.push_back(std::move(row));
	}
	for (IndexSet block : sig.symmetry.blocks) {
		auto members = block.members();
		for (std::size_t k = 1; k < members.size(); ++k) {
			RationalRow row(d);
			row[members[0]] = 1;
			row[members[k]] = -1;
			rows.push_back(std::move(row));
		}
	}
	return rows;
}

/// Small random Gaussian rationals (a + b i)/c.
class GaussianSampler {
public:
	explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

	long integer(long lo, long hi) { return lo + long(rng_.next() * double(hi - lo + 1)); }

	GaussianRational next(long bound = 20, long max_den = 9) {
		long a = integer(-bound, bound), b = integer(-bound, bound), c = integer(1, max_den);
		return {make_rational(a, c), make_rational(b, c)};
	}

private:
	detail::UnitRandom rng_;
};

/// Random combination of a basis; empty when some coordinate vanishes.
inline std::optional<ResidueVector> sample_span(const std::vector<RationalRow>& basis, std::size_t d,
                                                GaussianSampler& rng) {
	RationalRow v(d);
	for (const auto& b : basis) {
		GaussianRational coeff = rng.next();
		for (std::size_t i = 0; i < d; ++i)
			v[i] += coeff * b[i];
	}
	for (const auto& x : v)
		if (x.is_zero())
			return std::nullopt;
	return ResidueVector(std::move(v));
}

/// Blocks of `finer` each lie inside a block of `coarser` (the K-family inclusion).
inline bool blocks_refine(const SymmetryProfile& finer, const SymmetryProfile& coarser) {
	for (IndexSet b : finer.blocks) {
		bool inside = false;
		for (IndexSet c : coarser.blocks)
			inside = inside || b.is_subset_of(c);
		if (!inside)
			return false;
	}
	return true;
}

/// Compares everything in two reports that is determined by the stratum: signature,
/// multiplicities, point counts with their sources, the orbit table and the count.
/// Residue values and the integer-ratio witness are arithmetic, not combinatorial, and are skipped.
inline bool same_ledger(const FiberReport& a, const FiberReport& b, std::string* why = nullptr) {
	auto differ = [&](const char* what) {
		if (why)
			*why = what;
		return false;
	};
	const auto &sa = a.signature, &sb = b.signature;
	if (!(sa.zero_sum_family == sb.zero_sum_family))
		return differ("zero-sum family");
	if (sa.partitions != sb.partitions)
		return differ("partitions");
	if (sa.finer.size() != sb.finer.size())
		return differ("refinement order");
	for (std::size_t i = 0; i < sa.finer.size(); ++i) {
		if (sa.finer[i].size() != sb.finer[i].size())
			return differ("refinement order");
		for (std::size_t k = 0; k < sa.finer[i].size(); ++k)
			if (sa.finer[i][k].finer != sb.finer[i][k].finer || sa.finer[i][k].chi != sb.finer[i][k].chi)
				return differ("refinement order");
	}
	if (!(sa.symmetry == sb.symmetry))
		return differ("symmetry profile");
	if (a.multiplicities.e != b.multiplicities.e || a.multiplicities.e_product != b.multiplicities.e_product)
		return differ("multiplicity table");
	if (a.multiplicities.s_d != b.multiplicities.s_d)
		return differ("s_d");
	if (a.s_values.size() != b.s_values.size())
		return differ("sub-spectrum point counts");
	for (std::size_t i = 0; i < a.s_values.size(); ++i) {
		const auto &x = a.s_values[i], &y = b.s_values[i];
		if (x.source != y.source || x.block != y.block || x.w != y.w || x.t != y.t || x.d != y.d || x.s != y.s)
			return differ("sub-spectrum point counts");
	}
	if (a.orbits.c1 != b.orbits.c1 || a.orbits.higher.size() != b.orbits.higher.size())
		return differ("orbit table");
	for (std::size_t i = 0; i < a.orbits.higher.size(); ++i) {
		const auto &x = a.orbits.higher[i], &y = b.orbits.higher[i];
		if (x.w != y.w || x.t != y.t || x.d_t != y.d_t || x.s_scaled != y.s_scaled || x.rhs != y.rhs || x.c != y.c)
			return differ("orbit table");
	}
	if (a.count != b.count)
		return differ("count");
	return true;
}

struct PreservingSample {
	ResidueVector residues;
	bool identical = false;
	std::string difference;
};

struct BreakingSample {
	IndexSet dropped;
	std::optional<ResidueVector> residues;
	BigInt count;
	bool monotone = true;
	std::string note;
};

struct StratumReport {
	FiberReport base;
	std::size_t span_dimension = 0;
	std::vector<PreservingSample> preserving;
	std::vector<BreakingSample> breaking;
	std::size_t rejected = 0; ///< samples that fell into a smaller stratum and were redrawn

	bool all_identical() const {
		for (const auto& p : preserving)
			if (!p.identical)
				return false;
		return true;
	}
	bool monotone() const {
		for (const auto& b : breaking)
			if (!b.monotone)
				return false;
		return true;
	}
};

/// Re-randomizes the spectrum inside its stratum and checks that the ledger does not
/// move; then removes one zero-sum relation at a time and checks that the count does
/// not drop.
inline StratumReport explore_stratum(const ResidueVector& base, std::size_t perturbations, std::uint64_t seed,
                                     Counter& counter) {
	StratumReport out;
	out.base = counter.fiber_count(base);
	const StratumSignature& sig = out.base.signature;
	const std::size_t d = sig.d;
	GaussianSampler rng(detail::mix_seed(seed));

	auto basis = nullspace(stratum_equations(sig), d);
	out.span_dimension = basis.size();
	const std::size_t max_draws = 50;
	for (std::size_t k = 0; k < perturbations; ++k) {
		std::optional<ResidueVector> sample;
		for (std::size_t draw = 0; draw < max_draws && !sample; ++draw) {
			auto candidate = sample_span(basis, d, rng);
			if (candidate && zero_sum_subsets(*candidate) == sig.zero_sum_family &&
			    symmetry_profile(*candidate) == sig.symmetry)
				sample = std::move(candidate);
			else
				++out.rejected;
		}
		if (!sample)
			throw ConsistencyFault("no generic point found in the span of the stratum after " +
			                       std::to_string(max_draws) + " draws");
		PreservingSample p{*sample, false, {}};
		p.identical = same_ledger(out.base, counter.fiber_count(*sample), &p.difference);
		out.preserving.push_back(std::move(p));
	}

	for (IndexSet rel : sig.zero_sum_family.subsets()) {
		if (!rel.contains(0))
			continue;
		BreakingSample b;
		b.dropped = rel;
		auto wider = nullspace(stratum_equations(sig, rel), d);
		if (wider.size() == basis.size()) {
			b.note = "relation implied by the remaining ones";
			out.breaking.push_back(std::move(b));
			continue;
		}
		for (std::size_t draw = 0; draw < max_draws && !b.residues; ++draw) {
			auto candidate = sample_span(wider, d, rng);
			if (!candidate)
				continue;
			ZeroSumFamily fam = zero_sum_subsets(*candidate);
			bool strictly_smaller = fam.size() < sig.zero_sum_family.size();
			for (IndexSet s : fam.subsets())
				strictly_smaller = strictly_smaller && sig.zero_sum_family.contains(s);
			if (strictly_smaller && blocks_refine(symmetry_profile(*candidate), sig.symmetry))
				b.residues = std::move(candidate);
			else
				++out.rejected;
		}
		if (!b.residues) {
			b.note = "no sample with a strictly smaller zero-sum family";
		} else {
			b.count = counter.fiber_count(*b.residues).count;
			b.monotone = b.count >= out.base.count;
		}
		out.breaking.push_back(std::move(b));
	}
	return out;
}

} // namespace fixmult
