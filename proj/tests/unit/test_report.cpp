#include <gtest/gtest.h>

#include "fixmult/fixmult.hpp"
#include "support/random_spectra.hpp"

using namespace fixmult;

TEST(Input, ResiduesMode) {
	auto f = parse_spectrum(Json::parse(R"({"d": 4, "mode": "residues", "values": ["1", "2", "-1", -2]})"));
	EXPECT_EQ(f.mode, InputMode::Residues);
	EXPECT_EQ(f.residues, sample::integer_residues({1, 2, -1, -2}));
	EXPECT_EQ(f.spectrum[0], GaussianRational(0));
}

TEST(Input, EigenvaluesMode) {
	auto f = parse_spectrum(Json::parse(R"({"d": 4, "mode": "eigenvalues", "values": ["0", "0", "3", "5/3"]})"));
	EXPECT_EQ(f.mode, InputMode::Eigenvalues);
	EXPECT_EQ(f.residues[3], GaussianRational(make_rational(-3, 2)));
}

TEST(Input, Rejections) {
	EXPECT_THROW(parse_spectrum(Json::parse("[1, 2]")), ParseError);
	EXPECT_THROW(parse_spectrum(Json::parse(R"({"d": 4, "mode": "residues"})")), ParseError);
	EXPECT_THROW(parse_spectrum(Json::parse(R"({"d": 3, "mode": "roots", "values": ["1", "1", "-2"]})")),
	             ParseError);
	EXPECT_THROW(parse_spectrum(Json::parse(R"({"d": 4, "mode": "residues", "values": ["1", "-1"]})")), ParseError);
	EXPECT_THROW(parse_spectrum(Json::parse(R"({"d": 2, "mode": "residues", "values": ["1", "1/0"]})")), ParseError);
	EXPECT_THROW(parse_spectrum(Json::parse(R"({"d": 4, "mode": "eigenvalues", "values": ["1", "0", "0", "2"]})")),
	             InvalidSpectrum);
	EXPECT_THROW(load_spectrum("/nonexistent/spectrum.json"), ParseError);
}

TEST(Output, BigIntegers) {
	EXPECT_EQ(big_json(BigInt(42)), Json(42));
	BigInt huge = factorial(30);
	EXPECT_EQ(big_json(huge), Json(huge.str()));
}

TEST(Output, CountDocument) {
	auto f = parse_spectrum(Json::parse(R"({"d": 5, "mode": "residues", "values": ["1", "1", "1", "1", "-4"]})"));
	Json doc = count_json(f, fiber_count(f.residues));
	EXPECT_EQ(doc["schema_version"], kSchemaVersion);
	EXPECT_EQ(doc["command"], "count");
	EXPECT_EQ(doc["count"], 1);
	EXPECT_EQ(doc["c1"], 0);
	EXPECT_TRUE(doc["budget_identity"].get<bool>());
	ASSERT_EQ(doc["c_table"].size(), 2u);
	EXPECT_EQ(doc["c_table"][0]["w"], 2);
	EXPECT_EQ(doc["c_table"][0]["t"], 4);
	EXPECT_EQ(doc["c_table"][0]["c"], 1);
	EXPECT_EQ(doc["eigenvalues"][4], "5/4");
}

TEST(Output, ErrorDocument) {
	Json e = error_json("parse_error", "bad");
	EXPECT_EQ(e["error"]["kind"], "parse_error");
}
