#include <map>
#include <random>

#include <gtest/gtest.h>

#include "fixmult/fixmult.hpp"
#include "support/random_spectra.hpp"

using namespace fixmult;
using sample::integer_residues;

namespace {

using Blocks = std::vector<std::vector<int>>;

std::map<Blocks, BigInt> e_by_blocks(const FiberReport& r) {
	std::map<Blocks, BigInt> out;
	for (std::size_t i = 0; i < r.signature.partitions.size(); ++i)
		out[r.signature.partitions[i].one_based()] = r.multiplicities.e[i];
	return out;
}

} // namespace

TEST(Counting, PairedSexticLedger) {
	FiberReport r = fiber_count(integer_residues({1, 1, 2, -1, -1, -2}));
	std::map<Blocks, BigInt> want{
	    {{{1, 4}, {2, 5}, {3, 6}}, 1}, {{{1, 5}, {2, 4}, {3, 6}}, 1}, {{{1, 4}, {2, 3, 5, 6}}, 3},
	    {{{1, 3, 4, 6}, {2, 5}}, 3},   {{{1, 2, 4, 5}, {3, 6}}, 0},   {{{1, 5}, {2, 3, 4, 6}}, 3},
	    {{{1, 3, 5, 6}, {2, 4}}, 3},   {{{1, 2, 6}, {3, 4, 5}}, 4}};
	EXPECT_EQ(e_by_blocks(r), want);
	EXPECT_EQ(r.multiplicities.e, r.multiplicities.e_product);
	EXPECT_EQ(r.multiplicities.s_d, 0);
	EXPECT_EQ(r.count, 0);
	ASSERT_TRUE(r.empty_witness.has_value());
	BigInt weight = 0;
	for (const auto& c : *r.empty_witness)
		weight += abs(c);
	EXPECT_EQ(weight, 8);
	EXPECT_TRUE(r.multiplicities.budget_holds(r.signature));
}

TEST(Counting, GenericFactorial) {
	std::mt19937_64 rng(11);
	for (std::size_t d = 4; d <= 8; ++d) {
		FiberReport r = fiber_count(sample::generic_residues(d, rng));
		EXPECT_EQ(r.multiplicities.s_d, factorial(d - 2)) << d;
		EXPECT_EQ(r.count, factorial(d - 2)) << d;
		EXPECT_FALSE(r.empty_witness.has_value());
	}
}

TEST(Counting, SymmetricQuintic) {
	FiberReport r = fiber_count(integer_residues({1, 1, 1, 1, -4}));
	EXPECT_EQ(r.multiplicities.s_d, 6);
	EXPECT_EQ(r.orbits.c1, 0);
	EXPECT_EQ(r.orbits.find(1, 4), BigInt(1));
	EXPECT_EQ(r.orbits.find(1, 2), BigInt(0));
	EXPECT_FALSE(r.orbits.find(0, 2).has_value());
	EXPECT_EQ(r.count, 1);
}

TEST(Counting, PairedQuartic) {
	// one relation {1,3}, complement {2,4}: s_4 = 1
	EXPECT_EQ(fiber_count(integer_residues({1, 2, -1, -2})).count, 1);
	// pattern forced to collide completely
	FiberReport r = fiber_count(integer_residues({1, 1, -1, -1}));
	EXPECT_EQ(r.count, 0);
	EXPECT_TRUE(r.empty_witness.has_value());
}

TEST(Counting, ScaleAndPermutationInvariance) {
	std::mt19937_64 rng(5);
	for (int k = 0; k < 20; ++k) {
		auto m = sample::rational_residues(6, rng, k % 3);
		FiberReport a = fiber_count(m);
		std::vector<std::size_t> perm{5, 3, 1, 0, 2, 4};
		FiberReport b = fiber_count(m.permuted(perm).scaled(GaussianRational::parse("2-7/3i")));
		EXPECT_EQ(a.count, b.count);
		EXPECT_EQ(a.multiplicities.s_d, b.multiplicities.s_d);
	}
}

TEST(Counting, BudgetAndRoutesOnRandomInputs) {
	std::mt19937_64 rng(17);
	Counter counter;
	for (int k = 0; k < 60; ++k) {
		auto m = sample::rational_residues(4 + std::size_t(k % 4), rng, k % 3);
		FiberReport r = counter.fiber_count(m);
		EXPECT_TRUE(r.multiplicities.budget_holds(r.signature));
		EXPECT_EQ(r.multiplicities.e, r.multiplicities.e_product);
		EXPECT_LE(r.count, factorial(m.degree() - 2));
		if (r.empty_witness)
			EXPECT_EQ(r.count, 0);
	}
}

TEST(Counting, ScaledSpectrumDomain) {
	auto m = integer_residues({1, 1, 1, 1, -4});
	auto prof = symmetry_profile(m);
	EXPECT_THROW(scaled_spectrum(m, prof, 1, 1), DomainError);
	EXPECT_THROW(scaled_spectrum(m, prof, 1, 3), DomainError);
	ScaledSpectrum s = scaled_spectrum(m, prof, 1, 2);
	EXPECT_EQ(s.d_t, 3u);
	EXPECT_EQ(s.residues.degree(), 3u);
}

TEST(Counting, SmallDegreeRejected) {
	EXPECT_THROW(fiber_count(integer_residues({1, 2, -3})), InvalidSpectrum);
}

TEST(Counting, Helpers) {
	EXPECT_EQ(factorial(0), 1);
	EXPECT_EQ(factorial(6), 720);
	EXPECT_EQ(range_product(4, 3), 1);
	EXPECT_EQ(range_product(3, 5), 60);
	EXPECT_EQ(divisors_from(12, 2), (std::vector<std::size_t>{2, 3, 4, 6, 12}));
}
