#include <array>
#include <random>

#include <gtest/gtest.h>

#include "fixmult/fixmult.hpp"
#include "support/random_spectra.hpp"

using namespace fixmult;

namespace {

std::vector<GaussianRational> parse_all(std::initializer_list<const char*> texts) {
	std::vector<GaussianRational> out;
	for (const char* t : texts)
		out.push_back(GaussianRational::parse(t));
	return out;
}

} // namespace

TEST(Spectrum, RejectsMultipleFixedPoint) {
	EXPECT_THROW(SpectrumInput(parse_all({"1", "0", "0", "2"})), InvalidSpectrum);
}

TEST(Spectrum, RejectsIndexSumViolation) {
	// residues 2, 1, 1, 1 do not sum to zero
	EXPECT_THROW(SpectrumInput(parse_all({"1/2", "0", "0", "0"})), InvalidSpectrum);
}

TEST(Spectrum, AcceptsZeroSumResidues) {
	// residues 1, 1, -1/2, -3/2
	SpectrumInput s(parse_all({"0", "0", "3", "5/3"}));
	auto m = residues_from_eigenvalues(s);
	EXPECT_EQ(m[2], GaussianRational(make_rational(-1, 2)));
	EXPECT_EQ(m[3], GaussianRational(make_rational(-3, 2)));
}

TEST(Residues, RejectZeroEntryAndNonzeroSum) {
	EXPECT_THROW(ResidueVector(parse_all({"1", "0", "-1"})), InvalidSpectrum);
	EXPECT_THROW(ResidueVector(parse_all({"1", "1", "-1"})), InvalidSpectrum);
}

TEST(Residues, EigenvalueRoundTrip) {
	std::mt19937_64 rng(7);
	for (int k = 0; k < 50; ++k) {
		auto m = sample::generic_residues(5, rng);
		EXPECT_EQ(residues_from_eigenvalues(eigenvalues_from_residues(m)), m);
	}
}

TEST(Residues, CanonicalKeyIgnoresOrderAndScale) {
	auto m = sample::integer_residues({1, 2, 3, -6});
	std::array<std::size_t, 4> perm{2, 0, 3, 1};
	GaussianRational factor = GaussianRational::parse("-2/3+5i");
	EXPECT_EQ(m.canonical_key(), m.permuted(perm).scaled(factor).canonical_key());
	EXPECT_NE(m.canonical_key(), sample::integer_residues({1, 2, 4, -7}).canonical_key());
}
