#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fixmult/combinatorics.hpp"
#include "fixmult/error.hpp"
#include "fixmult/gaussian_rational.hpp"
#include "fixmult/spectrum.hpp"

namespace fixmult {

inline BigInt factorial(std::size_t n) {
	BigInt out = 1;
	for (std::size_t k = 2; k <= n; ++k)
		out *= k;
	return out;
}

/// Product of the integers lo..hi; 1 when the range is empty.
inline BigInt range_product(long lo, long hi) {
	BigInt out = 1;
	for (long k = lo; k <= hi; ++k)
		out *= k;
	return out;
}

/// e for every partition of a signature, plus the point count s_d.
struct MultiplicityTable {
	std::vector<BigInt> e;         ///< top-down recursion over finer partitions
	std::vector<BigInt> e_product; ///< product of block point counts; must equal e
	BigInt s_d;

	/// (d-1)! = sum over partitions and the trivial one of e * prod_{k=d-l+1}^{d-1} k,
	/// where the trivial partition carries e = (d-1) s_d.
	bool budget_holds(const StratumSignature& sig) const {
		const long d = long(sig.d);
		BigInt total = BigInt(d - 1) * s_d;
		for (std::size_t i = 0; i < sig.partitions.size(); ++i)
			total += e[i] * range_product(d - long(sig.partitions[i].size()) + 1, d - 1);
		return total == factorial(std::size_t(d - 1));
	}
};

/// A point count reported in the ledger, with where its spectrum came from.
struct SubSpectrumCount {
	enum class Source { Top, Block, Scaled };
	Source source = Source::Top;
	IndexSet block;        ///< Source::Block
	std::size_t w = 0;     ///< Source::Scaled, 0-based symmetry block
	std::size_t t = 0;     ///< Source::Scaled
	std::size_t d = 0;
	std::vector<GaussianRational> residues;
	BigInt s;
};

struct OrbitEntry {
	std::size_t w = 0; ///< 0-based symmetry block
	std::size_t t = 0;
	std::size_t d_t = 0;
	BigInt s_scaled;
	Rational rhs;
	BigInt c;
};

/// Orbit counts by stabilizer order: c1 for free orbits, one entry per (w, t).
struct OrbitCountTable {
	BigInt c1;
	std::vector<OrbitEntry> higher;

	BigInt total() const {
		BigInt sum = c1;
		for (const auto& entry : higher)
			sum += entry.c;
		return sum;
	}
	std::optional<BigInt> find(std::size_t w, std::size_t t) const {
		for (const auto& entry : higher)
			if (entry.w == w && entry.t == t)
				return entry.c;
		return std::nullopt;
	}
};

/// Residues of the spectrum lambda[t] of degree d[t] = (d-1)/t + 1.
struct ScaledSpectrum {
	std::size_t t;
	std::size_t w;
	std::size_t d_t;
	ResidueVector residues;
};

struct FiberReport {
	StratumSignature signature;
	MultiplicityTable multiplicities;
	std::vector<SubSpectrumCount> s_values;
	OrbitCountTable orbits;
	BigInt count;
	std::optional<std::vector<BigInt>> empty_witness;
};

/// e for every partition by the recursion over strictly finer partitions.
inline std::vector<BigInt> recursive_multiplicities(const StratumSignature& sig) {
	const auto& parts = sig.partitions;
	std::vector<std::size_t> order(parts.size());
	std::iota(order.begin(), order.end(), std::size_t(0));
	// Finer partitions have strictly more blocks, so they are finished first.
	std::stable_sort(order.begin(), order.end(),
	                 [&](std::size_t a, std::size_t b) { return parts[a].size() > parts[b].size(); });

	std::vector<BigInt> e(parts.size());
	for (std::size_t i : order) {
		const auto& p = parts[i];
		BigInt value = 1;
		for (IndexSet block : p.blocks())
			value *= factorial(block.size() - 1);
		for (const auto& ref : sig.finer[i]) {
			BigInt weight = 1;
			for (std::size_t u = 0; u < p.size(); ++u) {
				long size = long(p[u].size());
				weight *= range_product(size - long(ref.chi[u]) + 1, size - 1);
			}
			value -= e[ref.finer] * weight;
		}
		if (value < 0)
			throw ConsistencyFault("negative multiplicity " + value.str() + " for a zero-sum partition");
		e[i] = value;
	}
	return e;
}

inline BigInt multiplicity_recursive(const StratumSignature& sig, std::size_t partition) {
	return recursive_multiplicities(sig).at(partition);
}

/// (d-2)! minus the weighted multiplicities of the coincidence components.
inline BigInt point_count_from(const StratumSignature& sig, const std::vector<BigInt>& e) {
	const long d = long(sig.d);
	BigInt s = factorial(std::size_t(std::max(d - 2, 0L)));
	for (std::size_t i = 0; i < sig.partitions.size(); ++i)
		s -= e[i] * range_product(d - long(sig.partitions[i].size()) + 1, d - 2);
	if (s < 0)
		throw ConsistencyFault("negative point count " + s.str() + " at degree " + std::to_string(d));
	return s;
}

/// Primitive integer vector proportional to m, when all ratios m_i/m_1 are real rationals.
inline std::optional<std::vector<BigInt>> integer_ratio_vector(const ResidueVector& m) {
	using boost::multiprecision::denominator;
	using boost::multiprecision::numerator;
	GaussianRational inv = m[0].inverse();
	std::vector<Rational> ratios;
	for (const auto& v : m.values()) {
		GaussianRational r = v * inv;
		if (!r.is_real())
			return std::nullopt;
		ratios.push_back(r.re());
	}
	BigInt lcm = 1;
	for (const auto& r : ratios)
		lcm = boost::multiprecision::lcm(lcm, BigInt(denominator(r)));
	std::vector<BigInt> c;
	BigInt g = 0;
	for (const auto& r : ratios) {
		c.push_back(BigInt(numerator(r)) * (lcm / BigInt(denominator(r))));
		g = boost::multiprecision::gcd(g, BigInt(abs(c.back())));
	}
	for (auto& v : c)
		v /= g;
	return c;
}

/// Witness c with m proportional to c and sum |c_i| <= 2(d-2); its existence forces an empty fiber.
inline std::optional<std::vector<BigInt>> emptiness_by_integer_ratio(const ResidueVector& m) {
	auto c = integer_ratio_vector(m);
	if (!c)
		return std::nullopt;
	BigInt weight = 0;
	for (const auto& v : *c)
		weight += abs(v);
	if (weight > BigInt(2 * (long(m.degree()) - 2)))
		return std::nullopt;
	return c;
}

inline std::vector<std::size_t> divisors_from(std::size_t n, std::size_t lo) {
	std::vector<std::size_t> out;
	for (std::size_t t = lo; t <= n; ++t)
		if (n % t == 0)
			out.push_back(t);
	return out;
}

inline ScaledSpectrum scaled_spectrum(const ResidueVector& m, const SymmetryProfile& profile, std::size_t w,
                                      std::size_t t) {
	if (w >= profile.block_count())
		throw DomainError("symmetry block index out of range");
	if (t < 2 || profile.g[w] % t != 0)
		throw DomainError("t = " + std::to_string(t) + " does not divide g_" + std::to_string(w + 1) + " = " +
		                  std::to_string(profile.g[w]) + " (t >= 2 required)");
	const std::size_t d = m.degree();
	std::vector<GaussianRational> out;
	for (std::size_t u = 0; u < profile.block_count(); ++u) {
		const GaussianRational& value = m[profile.blocks[u].smallest()];
		std::size_t copies = (u == w ? profile.kappa[u] - 1 : profile.kappa[u]) / t;
		GaussianRational scaled = value * GaussianRational(static_cast<long long>(t));
		for (std::size_t k = 0; k < copies; ++k)
			out.push_back(scaled);
	}
	out.push_back(m[profile.blocks[w].smallest()]);
	ScaledSpectrum result{t, w, (d - 1) / t + 1, ResidueVector(std::move(out))};
	return result;
}

/// Counting engine with a point-count memo keyed by the permutation- and
/// scale-invariant residue key. Not thread-safe; use one per thread.
class Counter {
public:
	BigInt point_count(const ResidueVector& m) {
		std::string key = m.canonical_key();
		if (auto it = memo_.find(key); it != memo_.end())
			return it->second;
		BigInt s;
		if (m.degree() <= 3) {
			s = 1;
		} else {
			StratumSignature sig = build_signature(m);
			s = point_count_from(sig, recursive_multiplicities(sig));
		}
		memo_.emplace(std::move(key), s);
		return s;
	}

	/// prod_u (#I_u - 1) * s_{#I_u}(m restricted to I_u), with s taken as 1 for blocks of size <= 3.
	BigInt multiplicity_product(const ZeroSumPartition& partition, const ResidueVector& m) {
		BigInt out = 1;
		for (IndexSet block : partition.blocks()) {
			std::size_t size = block.size();
			BigInt s = size <= 3 ? BigInt(1) : point_count(restrict_to(m, block));
			out *= BigInt(size - 1) * s;
		}
		return out;
	}

	MultiplicityTable multiplicities(const StratumSignature& sig, const ResidueVector& m) {
		MultiplicityTable table;
		table.e = recursive_multiplicities(sig);
		for (std::size_t i = 0; i < sig.partitions.size(); ++i) {
			table.e_product.push_back(multiplicity_product(sig.partitions[i], m));
			if (table.e_product.back() != table.e[i])
				throw ConsistencyFault("multiplicity routes disagree on partition " + std::to_string(i + 1) +
				                       ": recursion " + table.e[i].str() + ", block product " +
				                       table.e_product.back().str());
		}
		table.s_d = point_count_from(sig, table.e);
		if (!table.budget_holds(sig))
			throw ConsistencyFault("degree budget identity fails");
		return table;
	}

	OrbitCountTable orbit_counts(const ResidueVector& m, const SymmetryProfile& profile,
	                             std::vector<SubSpectrumCount>* ledger = nullptr) {
		return orbit_counts(m, profile, point_count(m), ledger);
	}

	OrbitCountTable orbit_counts(const ResidueVector& m, const SymmetryProfile& profile, const BigInt& s_d,
	                             std::vector<SubSpectrumCount>* ledger) {
		OrbitCountTable table;
		std::ostringstream trail;
		Rational free_part = Rational(s_d) / Rational(profile.group_order());
		trail << "s_d=" << s_d << " |G|=" << profile.group_order();

		for (std::size_t w = 0; w < profile.block_count(); ++w) {
			std::vector<std::size_t> divisors = divisors_from(profile.g[w], 2);
			std::map<std::size_t, BigInt> solved;
			for (auto it = divisors.rbegin(); it != divisors.rend(); ++it) {
				const std::size_t t = *it;
				ScaledSpectrum scaled = scaled_spectrum(m, profile, w, t);
				BigInt s_t = point_count(scaled.residues);
				BigInt denom = 1;
				for (std::size_t u = 0; u < profile.block_count(); ++u)
					denom *= factorial((u == w ? profile.kappa[u] - 1 : profile.kappa[u]) / t);
				Rational rhs = Rational(s_t) / Rational(denom);
				Rational c = rhs;
				for (const auto& [b, c_b] : solved)
					if (b % t == 0)
						c -= make_rational(BigInt(t), BigInt(b)) * Rational(c_b);
				trail << "; (w=" << w + 1 << ",t=" << t << ") s=" << s_t << " rhs=" << rhs << " c=" << c;
				if (denominator(c) != 1 || c < 0)
					throw ConsistencyFault("orbit count c_(w=" + std::to_string(w + 1) + ",t=" + std::to_string(t) +
					                       ") = " + c.str() + " is not a non-negative integer [" + trail.str() + "]");
				BigInt c_int = numerator(c);
				solved[t] = c_int;
				table.higher.push_back({w, t, scaled.d_t, s_t, rhs, c_int});
				free_part -= Rational(c_int) / Rational(BigInt(t));
				if (ledger)
					ledger->push_back({SubSpectrumCount::Source::Scaled, IndexSet(), w, t, scaled.d_t,
					                   scaled.residues.values(), s_t});
			}
		}
		std::sort(table.higher.begin(), table.higher.end(),
		          [](const OrbitEntry& a, const OrbitEntry& b) { return a.w != b.w ? a.w < b.w : a.t > b.t; });
		trail << "; c1=" << free_part;
		if (denominator(free_part) != 1 || free_part < 0)
			throw ConsistencyFault("orbit count c1 = " + free_part.str() + " is not a non-negative integer [" +
			                       trail.str() + "]");
		table.c1 = numerator(free_part);
		return table;
	}

	FiberReport fiber_count(const SpectrumInput& s) {
		if (s.degree() < 4)
			throw InvalidSpectrum("fiber counting requires d >= 4, got d = " + std::to_string(s.degree()));
		ResidueVector m = residues_from_eigenvalues(s);
		return fiber_count(m);
	}

	/// Same as the spectrum overload; residues are the native form.
	FiberReport fiber_count(const ResidueVector& m) {
		const std::size_t d = m.degree();
		if (d < 4)
			throw InvalidSpectrum("fiber counting requires d >= 4, got d = " + std::to_string(d));
		FiberReport report;
		report.signature = build_signature(m);
		report.multiplicities = multiplicities(report.signature, m);
		report.s_values.push_back({SubSpectrumCount::Source::Top, IndexSet::full(d), 0, 0, d, m.values(),
		                           report.multiplicities.s_d});
		std::vector<IndexSet> seen;
		for (const auto& p : report.signature.partitions) {
			for (IndexSet block : p.blocks()) {
				if (block.size() < 4 || std::find(seen.begin(), seen.end(), block) != seen.end())
					continue;
				seen.push_back(block);
			}
		}
		std::sort(seen.begin(), seen.end(), [](IndexSet a, IndexSet b) { return lex_less(a, b); });
		for (IndexSet block : seen) {
			ResidueVector sub = restrict_to(m, block);
			report.s_values.push_back(
			    {SubSpectrumCount::Source::Block, block, 0, 0, block.size(), sub.values(), point_count(sub)});
		}
		report.orbits = orbit_counts(m, report.signature.symmetry, report.multiplicities.s_d, &report.s_values);
		report.count = report.orbits.total();
		if (report.count > factorial(d - 2))
			throw ConsistencyFault("fiber count " + report.count.str() + " exceeds (d-2)!");
		report.empty_witness = emptiness_by_integer_ratio(m);
		if (report.empty_witness && report.count != 0)
			throw ConsistencyFault("integer-ratio witness forces an empty fiber but the count is " +
			                       report.count.str());
		return report;
	}

private:
	std::map<std::string, BigInt> memo_;
};

inline BigInt point_count(const ResidueVector& m) { return Counter().point_count(m); }

inline BigInt multiplicity_product(const ZeroSumPartition& partition, const ResidueVector& m) {
	return Counter().multiplicity_product(partition, m);
}

inline OrbitCountTable orbit_counts(const ResidueVector& m, const SymmetryProfile& profile) {
	return Counter().orbit_counts(m, profile);
}

inline FiberReport fiber_count(const SpectrumInput& s) { return Counter().fiber_count(s); }
inline FiberReport fiber_count(const ResidueVector& m) { return Counter().fiber_count(m); }

} // namespace fixmult
