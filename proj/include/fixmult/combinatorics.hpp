#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/gaussian_rational.hpp"
#include "fixmult/spectrum.hpp"

namespace fixmult {

/// Largest degree for which subsets are enumerated exhaustively.
inline constexpr std::size_t kMaxDegree = 24;

/// Subset of {0..d-1} stored as a bit mask. Serialized 1-based.
class IndexSet {
public:
	using Mask = std::uint32_t;

	constexpr IndexSet() = default;
	constexpr explicit IndexSet(Mask bits) : bits_(bits) {}

	/// Build from 1-based indices.
	static IndexSet of(std::initializer_list<int> one_based) {
		Mask bits = 0;
		for (int i : one_based)
			bits |= Mask(1) << (i - 1);
		return IndexSet(bits);
	}
	static constexpr IndexSet full(std::size_t d) { return IndexSet(d >= 32 ? ~Mask(0) : (Mask(1) << d) - 1); }

	constexpr Mask bits() const { return bits_; }
	constexpr std::size_t size() const { return std::size_t(std::popcount(bits_)); }
	constexpr bool empty() const { return bits_ == 0; }
	constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
	constexpr bool is_subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }
	constexpr std::size_t smallest() const { return std::size_t(std::countr_zero(bits_)); }
	constexpr IndexSet complement_in(std::size_t d) const { return IndexSet(full(d).bits_ & ~bits_); }

	std::vector<std::size_t> members() const {
		std::vector<std::size_t> out;
		for (Mask b = bits_; b != 0; b &= b - 1)
			out.push_back(std::size_t(std::countr_zero(b)));
		return out;
	}
	std::vector<int> one_based() const {
		std::vector<int> out;
		for (std::size_t i : members())
			out.push_back(int(i) + 1);
		return out;
	}

	friend constexpr bool operator==(IndexSet, IndexSet) = default;

	/// Lexicographic order of the sorted member lists.
	friend bool lex_less(IndexSet a, IndexSet b) {
		Mask diff = a.bits_ ^ b.bits_;
		if (diff == 0)
			return false;
		// Members below `first` agree. The set holding `first` is smaller unless
		// the other one has no members left (then the other is a prefix).
		std::size_t first = std::size_t(std::countr_zero(diff));
		if ((a.bits_ >> first) & 1U)
			return (b.bits_ >> first) != 0;
		return (a.bits_ >> first) == 0;
	}

private:
	Mask bits_ = 0;
};

/// Nonempty proper subsets I with zero residue sum, in lexicographic order.
class ZeroSumFamily {
public:
	ZeroSumFamily() = default;
	ZeroSumFamily(std::size_t d, std::vector<IndexSet> subsets) : d_(d), subsets_(std::move(subsets)) {
		std::sort(subsets_.begin(), subsets_.end(), [](IndexSet a, IndexSet b) { return lex_less(a, b); });
		masks_.reserve(subsets_.size());
		for (IndexSet s : subsets_)
			masks_.push_back(s.bits());
		std::sort(masks_.begin(), masks_.end());
	}

	std::size_t degree() const { return d_; }
	std::size_t size() const { return subsets_.size(); }
	bool empty() const { return subsets_.empty(); }
	const std::vector<IndexSet>& subsets() const { return subsets_; }
	bool contains(IndexSet s) const { return std::binary_search(masks_.begin(), masks_.end(), s.bits()); }

	friend bool operator==(const ZeroSumFamily& a, const ZeroSumFamily& b) {
		return a.d_ == b.d_ && a.subsets_ == b.subsets_;
	}

private:
	std::size_t d_ = 0;
	std::vector<IndexSet> subsets_;
	std::vector<IndexSet::Mask> masks_;
};

/// Partition of {0..d-1} into at least two zero-sum blocks, ordered by smallest member.
class ZeroSumPartition {
public:
	ZeroSumPartition() = default;
	explicit ZeroSumPartition(std::vector<IndexSet> blocks) : blocks_(std::move(blocks)) {
		std::sort(blocks_.begin(), blocks_.end(), [](IndexSet a, IndexSet b) { return a.smallest() < b.smallest(); });
	}

	std::size_t size() const { return blocks_.size(); }
	const std::vector<IndexSet>& blocks() const { return blocks_; }
	const IndexSet& operator[](std::size_t u) const { return blocks_[u]; }

	std::vector<std::vector<int>> one_based() const {
		std::vector<std::vector<int>> out;
		for (IndexSet b : blocks_)
			out.push_back(b.one_based());
		return out;
	}

	friend bool operator==(const ZeroSumPartition&, const ZeroSumPartition&) = default;

	/// Lexicographic on the ordered block lists.
	friend bool lex_less(const ZeroSumPartition& a, const ZeroSumPartition& b) {
		std::size_t n = std::min(a.size(), b.size());
		for (std::size_t u = 0; u < n; ++u) {
			if (a.blocks_[u] == b.blocks_[u])
				continue;
			return lex_less(a.blocks_[u], b.blocks_[u]);
		}
		return a.size() < b.size();
	}

private:
	std::vector<IndexSet> blocks_;
};

/// Equal-eigenvalue classes K_w, their sizes kappa_w and the gcds g_w.
struct SymmetryProfile {
	std::vector<IndexSet> blocks;
	std::vector<std::size_t> kappa;
	std::vector<std::size_t> g;

	std::size_t block_count() const { return blocks.size(); }
	/// Index w of the block containing index i.
	std::size_t block_of(std::size_t i) const {
		for (std::size_t w = 0; w < blocks.size(); ++w)
			if (blocks[w].contains(i))
				return w;
		throw DomainError("index outside every symmetry block");
	}
	/// Order of the symmetry group, i.e. the product of kappa_w!.
	BigInt group_order() const {
		BigInt order = 1;
		for (std::size_t k : kappa)
			for (std::size_t j = 2; j <= k; ++j)
				order *= j;
		return order;
	}
	bool trivial() const {
		return std::all_of(kappa.begin(), kappa.end(), [](std::size_t k) { return k == 1; });
	}

	friend bool operator==(const SymmetryProfile&, const SymmetryProfile&) = default;
};

/// A strictly finer partition together with its chi_u counts.
struct Refinement {
	std::size_t finer;
	std::vector<std::size_t> chi;
};

/// The complete combinatorial input of the counting algorithm.
struct StratumSignature {
	std::size_t d = 0;
	ZeroSumFamily zero_sum_family;
	std::vector<ZeroSumPartition> partitions;
	/// finer[i]: every j != i whose partition strictly refines partitions[i].
	std::vector<std::vector<Refinement>> finer;
	SymmetryProfile symmetry;

	bool is_maximal(std::size_t i) const { return finer[i].empty(); }
	std::optional<std::size_t> find(const ZeroSumPartition& p) const {
		auto it = std::find(partitions.begin(), partitions.end(), p);
		if (it == partitions.end())
			return std::nullopt;
		return std::size_t(it - partitions.begin());
	}
};

namespace detail {

/// Residues rescaled to Gaussian integers (common denominator cleared).
struct GaussianIntegerVector {
	std::vector<BigInt> re;
	std::vector<BigInt> im;
};

inline GaussianIntegerVector clear_denominators(const ResidueVector& m) {
	using boost::multiprecision::denominator;
	using boost::multiprecision::numerator;
	BigInt lcm = 1;
	for (const auto& v : m.values()) {
		lcm = boost::multiprecision::lcm(lcm, BigInt(denominator(v.re())));
		lcm = boost::multiprecision::lcm(lcm, BigInt(denominator(v.im())));
	}
	GaussianIntegerVector out;
	for (const auto& v : m.values()) {
		out.re.push_back(BigInt(numerator(v.re())) * (lcm / BigInt(denominator(v.re()))));
		out.im.push_back(BigInt(numerator(v.im())) * (lcm / BigInt(denominator(v.im()))));
	}
	return out;
}

inline bool fits_fast_path(const std::vector<BigInt>& values) {
	BigInt total = 0;
	for (const auto& v : values)
		total += abs(v);
	return total < (BigInt(1) << 62);
}

/// Visits every mask 1..2^d-2 in Gray-code order with its running sum.
template <class Sum, class Visit>
void gray_code_subset_sums(const std::vector<Sum>& re, const std::vector<Sum>& im, Visit&& visit) {
	const std::size_t d = re.size();
	const std::uint64_t limit = std::uint64_t(1) << d;
	Sum sum_re = 0, sum_im = 0;
	std::uint64_t gray = 0;
	for (std::uint64_t i = 1; i < limit; ++i) {
		std::size_t bit = std::size_t(std::countr_zero(i));
		gray ^= std::uint64_t(1) << bit;
		if ((gray >> bit) & 1U) {
			sum_re += re[bit];
			sum_im += im[bit];
		} else {
			sum_re -= re[bit];
			sum_im -= im[bit];
		}
		if (gray != limit - 1)
			visit(IndexSet::Mask(gray), sum_re == 0 && sum_im == 0);
	}
}

} // namespace detail

/// Every nonempty proper subset whose residues sum to zero.
inline ZeroSumFamily zero_sum_subsets(const ResidueVector& m) {
	const std::size_t d = m.degree();
	if (d > kMaxDegree)
		throw DomainError("degree " + std::to_string(d) + " exceeds the exhaustive enumeration limit of " +
		                  std::to_string(kMaxDegree));
	auto ints = detail::clear_denominators(m);
	std::vector<IndexSet> found;
	auto collect = [&](IndexSet::Mask mask, bool zero) {
		if (zero)
			found.emplace_back(mask);
	};
	if (detail::fits_fast_path(ints.re) && detail::fits_fast_path(ints.im)) {
		std::vector<std::int64_t> re, im;
		for (std::size_t i = 0; i < d; ++i) {
			re.push_back(ints.re[i].convert_to<std::int64_t>());
			im.push_back(ints.im[i].convert_to<std::int64_t>());
		}
		detail::gray_code_subset_sums(re, im, collect);
	} else {
		detail::gray_code_subset_sums(ints.re, ints.im, collect);
	}
	return ZeroSumFamily(d, std::move(found));
}

/// All partitions of {0..d-1} into at least two blocks drawn from the family,
/// in canonical (lexicographic) order.
inline std::vector<ZeroSumPartition> zero_sum_partitions(const ZeroSumFamily& family, std::size_t d) {
	std::vector<std::vector<IndexSet>> containing(d);
	for (IndexSet s : family.subsets())
		containing[s.smallest()].push_back(s);

	std::vector<ZeroSumPartition> out;
	std::vector<IndexSet> chosen;
	auto recurse = [&](auto&& self, IndexSet remaining) -> void {
		if (remaining.empty()) {
			out.emplace_back(chosen);
			return;
		}
		std::size_t first = remaining.smallest();
		for (IndexSet candidate : containing[first]) {
			if (!candidate.is_subset_of(remaining))
				continue;
			chosen.push_back(candidate);
			self(self, IndexSet(remaining.bits() & ~candidate.bits()));
			chosen.pop_back();
		}
	};
	if (d > 0)
		recurse(recurse, IndexSet::full(d));
	std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
	return out;
}

/// chi_u counts when every block of `finer` lies inside a block of `coarser`.
inline std::optional<std::vector<std::size_t>> refines(const ZeroSumPartition& finer, const ZeroSumPartition& coarser) {
	std::vector<std::size_t> chi(coarser.size(), 0);
	for (IndexSet block : finer.blocks()) {
		bool placed = false;
		for (std::size_t u = 0; u < coarser.size(); ++u) {
			if (block.is_subset_of(coarser[u])) {
				++chi[u];
				placed = true;
				break;
			}
		}
		if (!placed)
			return std::nullopt;
	}
	return chi;
}

inline SymmetryProfile symmetry_profile(const ResidueVector& m) {
	SymmetryProfile profile;
	const std::size_t d = m.degree();
	IndexSet::Mask assigned = 0;
	for (std::size_t i = 0; i < d; ++i) {
		if ((assigned >> i) & 1U)
			continue;
		IndexSet::Mask block = 0;
		for (std::size_t j = i; j < d; ++j)
			if (m[j] == m[i])
				block |= IndexSet::Mask(1) << j;
		assigned |= block;
		profile.blocks.emplace_back(block);
		profile.kappa.push_back(IndexSet(block).size());
	}
	for (std::size_t w = 0; w < profile.kappa.size(); ++w) {
		std::size_t g = 0;
		for (std::size_t u = 0; u < profile.kappa.size(); ++u)
			g = std::gcd(g, u == w ? profile.kappa[u] - 1 : profile.kappa[u]);
		profile.g.push_back(g);
	}
	return profile;
}

/// Equal eigenvalues are exactly equal residues, so this agrees with the residue overload.
inline SymmetryProfile symmetry_profile(const SpectrumInput& s) { return symmetry_profile(residues_from_eigenvalues(s)); }

/// Zero-sum family, partitions, the refinement order and the symmetry profile.
inline StratumSignature build_signature(const ResidueVector& m) {
	StratumSignature sig;
	sig.d = m.degree();
	sig.zero_sum_family = zero_sum_subsets(m);
	sig.partitions = zero_sum_partitions(sig.zero_sum_family, sig.d);
	sig.finer.resize(sig.partitions.size());
	for (std::size_t i = 0; i < sig.partitions.size(); ++i) {
		for (std::size_t j = 0; j < sig.partitions.size(); ++j) {
			if (i == j || sig.partitions[j].size() <= sig.partitions[i].size())
				continue;
			if (auto chi = refines(sig.partitions[j], sig.partitions[i]))
				sig.finer[i].push_back({j, std::move(*chi)});
		}
	}
	sig.symmetry = symmetry_profile(m);
	return sig;
}

/// m restricted to the indices of `block`, in increasing index order.
inline ResidueVector restrict_to(const ResidueVector& m, IndexSet block) {
	std::vector<GaussianRational> sub;
	for (std::size_t i : block.members())
		sub.push_back(m[i]);
	return ResidueVector(std::move(sub));
}

} // namespace fixmult
