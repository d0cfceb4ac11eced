#include <random>

#include <gtest/gtest.h>

#include "fixmult/fixmult.hpp"
#include "support/random_spectra.hpp"

using namespace fixmult;

TEST(GaussianRationalParse, ReadsBothParts) {
	GaussianRational z = GaussianRational::parse("1/2-3/4i");
	EXPECT_EQ(z.re(), make_rational(1, 2));
	EXPECT_EQ(z.im(), make_rational(-3, 4));
}

TEST(GaussianRationalParse, ZeroAndReduction) {
	EXPECT_TRUE(GaussianRational::parse("0").is_zero());
	GaussianRational h = GaussianRational::parse("2/4");
	EXPECT_EQ(h.re(), make_rational(1, 2));
	EXPECT_TRUE(h.is_real());
	EXPECT_EQ(GaussianRational::parse("-6/4").to_string(), "-3/2");
}

TEST(GaussianRationalParse, CanonicalRoundTrip) {
	for (const char* text : {"0", "7", "-1/3", "1/2-3/4i", "0+1i", "-5+2/7i", "12/5-1i"})
		EXPECT_EQ(GaussianRational::parse(text).to_string(), text) << text;
}

TEST(GaussianRationalParse, RejectsMalformed) {
	for (const char* text : {"", "abc", "1+2", "1/", "/2", "1/0", "3/-4", "1+1/0i", "1i", "1+i", "1 + 2i", "1+2ix"})
		EXPECT_THROW(GaussianRational::parse(text), ParseError) << '"' << text << '"';
}

TEST(GaussianRationalParse, ErrorNamesToken) {
	try {
		GaussianRational::parse("3/0");
		FAIL();
	} catch (const ParseError& e) {
		EXPECT_NE(std::string(e.what()).find("3/0"), std::string::npos);
	}
}

TEST(GaussianRationalArith, InverseOfZeroThrows) {
	EXPECT_THROW(GaussianRational().inverse(), DivisionByZero);
	EXPECT_THROW(GaussianRational(1) / GaussianRational(), DivisionByZero);
}

TEST(GaussianRationalArith, ImaginaryUnit) {
	GaussianRational i(Rational(0), Rational(1));
	EXPECT_EQ(i * i, GaussianRational(-1));
	EXPECT_EQ(i.inverse(), -i);
	EXPECT_EQ(i.conj(), -i);
	EXPECT_EQ(GaussianRational::parse("3+4i").norm(), Rational(25));
}

TEST(GaussianRationalArith, FieldAxiomsOnRandomTriples) {
	std::mt19937_64 rng(2024);
	const GaussianRational one(1), zero;
	for (int k = 0; k < 10000; ++k) {
		auto a = sample::random_gaussian(rng, 50, 30);
		auto b = sample::random_gaussian(rng, 50, 30);
		auto c = sample::random_gaussian(rng, 50, 30);
		ASSERT_EQ((a + b) + c, a + (b + c));
		ASSERT_EQ((a * b) * c, a * (b * c));
		ASSERT_EQ(a + b, b + a);
		ASSERT_EQ(a * b, b * a);
		ASSERT_EQ(a * (b + c), a * b + a * c);
		ASSERT_EQ(a + zero, a);
		ASSERT_EQ(a * one, a);
		ASSERT_TRUE((a - a).is_zero());
		if (!a.is_zero())
			ASSERT_EQ(a * a.inverse(), one);
		if (!b.is_zero())
			ASSERT_EQ((a / b) * b, a);
	}
}

TEST(GaussianRationalFloat, DoubleConversion) {
	auto z = GaussianRational::parse("1/3-2/7i").to_complex<std::complex<double>>();
	EXPECT_NEAR(z.real(), 1.0 / 3.0, 1e-16);
	EXPECT_NEAR(z.imag(), -2.0 / 7.0, 1e-16);
}

TEST(GaussianRationalFloat, QuadConversion) {
	auto z = GaussianRational::parse("1/3").to_complex<Complex128>();
	Float128 err = abs(z.real() * 3 - 1);
	EXPECT_LT(err, Float128(1e-35));
}
