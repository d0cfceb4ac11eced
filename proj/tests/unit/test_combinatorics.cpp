#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixmult/fixmult.hpp"
#include "support/random_spectra.hpp"

using namespace fixmult;
using sample::integer_residues;

namespace {

ZeroSumPartition partition(std::initializer_list<std::initializer_list<int>> blocks) {
	std::vector<IndexSet> sets;
	for (auto b : blocks)
		sets.push_back(IndexSet::of(b));
	return ZeroSumPartition(std::move(sets));
}

} // namespace

TEST(IndexSet, LexOrder) {
	EXPECT_TRUE(lex_less(IndexSet::of({1, 2}), IndexSet::of({1, 3})));
	EXPECT_TRUE(lex_less(IndexSet::of({1, 2}), IndexSet::of({1, 2, 3})));
	EXPECT_TRUE(lex_less(IndexSet::of({1, 4}), IndexSet::of({2})));
	EXPECT_FALSE(lex_less(IndexSet::of({2}), IndexSet::of({1, 4})));
	EXPECT_EQ(IndexSet::of({2, 5}).complement_in(5), IndexSet::of({1, 3, 4}));
}

TEST(ZeroSum, PairedSexticFamily) {
	auto m = integer_residues({1, 1, 2, -1, -1, -2});
	ZeroSumFamily fam = zero_sum_subsets(m);
	// {1,4},{1,5},{2,4},{2,5},{3,6} and the pairs of two of them, with complements
	for (auto s : {IndexSet::of({1, 4}), IndexSet::of({3, 6}), IndexSet::of({1, 2, 6}), IndexSet::of({1, 2, 4, 5}),
	               IndexSet::of({2, 3, 4, 6})})
		EXPECT_TRUE(fam.contains(s));
	EXPECT_FALSE(fam.contains(IndexSet::of({1, 2})));
	for (IndexSet s : fam.subsets())
		EXPECT_TRUE(fam.contains(s.complement_in(6)));
	EXPECT_EQ(fam.size(), 12u);
}

TEST(ZeroSum, PairedSexticPartitions) {
	auto m = integer_residues({1, 1, 2, -1, -1, -2});
	auto parts = zero_sum_partitions(zero_sum_subsets(m), 6);
	std::set<std::vector<std::vector<int>>> got;
	for (const auto& p : parts)
		got.insert(p.one_based());
	std::set<std::vector<std::vector<int>>> want{
	    {{1, 4}, {2, 5}, {3, 6}}, {{1, 5}, {2, 4}, {3, 6}}, {{1, 4}, {2, 3, 5, 6}}, {{1, 3, 4, 6}, {2, 5}},
	    {{1, 2, 4, 5}, {3, 6}},   {{1, 5}, {2, 3, 4, 6}},   {{1, 3, 5, 6}, {2, 4}}, {{1, 2, 6}, {3, 4, 5}}};
	EXPECT_EQ(got, want);
}

TEST(ZeroSum, GenericIsEmpty) {
	std::mt19937_64 rng(3);
	auto m = sample::generic_residues(7, rng);
	EXPECT_TRUE(zero_sum_subsets(m).empty());
	EXPECT_TRUE(build_signature(m).partitions.empty());
}

TEST(ZeroSum, ComplexRelation) {
	// 1+i and 1-i cancel against -2 only together
	std::vector<GaussianRational> m{GaussianRational::parse("1+1i"), GaussianRational::parse("1-1i"),
	                                GaussianRational(-2), GaussianRational::parse("0+3i"),
	                                GaussianRational::parse("0-3i")};
	ZeroSumFamily fam = zero_sum_subsets(ResidueVector(m));
	EXPECT_EQ(fam.size(), 2u);
	EXPECT_TRUE(fam.contains(IndexSet::of({1, 2, 3})));
	EXPECT_TRUE(fam.contains(IndexSet::of({4, 5})));
}

TEST(Refinement, ChiCounts) {
	auto fine = partition({{1, 4}, {2, 5}, {3, 6}});
	auto coarse = partition({{1, 4}, {2, 3, 5, 6}});
	auto chi = refines(fine, coarse);
	ASSERT_TRUE(chi.has_value());
	EXPECT_EQ(*chi, (std::vector<std::size_t>{1, 2}));
	EXPECT_FALSE(refines(coarse, fine).has_value());
	EXPECT_FALSE(refines(partition({{1, 5}, {2, 4}, {3, 6}}), coarse).has_value());
}

TEST(Refinement, SignatureOrder) {
	auto sig = build_signature(integer_residues({1, 1, 2, -1, -1, -2}));
	ASSERT_EQ(sig.partitions.size(), 8u);
	std::size_t maximal = 0;
	for (std::size_t i = 0; i < sig.partitions.size(); ++i) {
		maximal += sig.is_maximal(i);
		for (const auto& r : sig.finer[i])
			EXPECT_LT(sig.partitions[i].size(), sig.partitions[r.finer].size());
	}
	EXPECT_EQ(maximal, 3u);
	auto coarse = sig.find(partition({{1, 2, 6}, {3, 4, 5}}));
	ASSERT_TRUE(coarse.has_value());
	EXPECT_TRUE(sig.finer[*coarse].empty());
}

TEST(Symmetry, Profile) {
	auto prof = symmetry_profile(integer_residues({1, 1, 1, 1, -4}));
	ASSERT_EQ(prof.block_count(), 2u);
	EXPECT_EQ(prof.blocks[0], IndexSet::of({1, 2, 3, 4}));
	EXPECT_EQ(prof.kappa, (std::vector<std::size_t>{4, 1}));
	EXPECT_EQ(prof.g, (std::vector<std::size_t>{1, 4}));
	EXPECT_EQ(prof.group_order(), 24);

	auto six = symmetry_profile(integer_residues({1, 1, 2, -1, -1, -2}));
	EXPECT_EQ(six.kappa, (std::vector<std::size_t>{2, 1, 2, 1}));
	EXPECT_EQ(six.group_order(), 4);
}

TEST(Symmetry, DegreeCap) {
	std::vector<GaussianRational> m(kMaxDegree + 1, GaussianRational(1));
	m.back() = GaussianRational(-long(kMaxDegree));
	EXPECT_THROW(build_signature(ResidueVector(m)), DomainError);
}
