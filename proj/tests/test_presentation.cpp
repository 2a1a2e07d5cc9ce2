#include <gtest/gtest.h>

#include <string>

#include "support/oracles.hpp"
#include "torsionlab/presentation.hpp"
#include "torsionlab/unitary_rep.hpp"

using namespace torsionlab;
using torsionlab::testing::corpus_path;

namespace {

const Letter x1{0, 1}, X1{0, -1}, x2{1, 1}, X2{1, -1};

ParseError parse_error_of(const std::string& text) {
    try {
        parse_presentation(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no ParseError for: " << text;
    return ParseError("none");
}

} // namespace

TEST(Presentation, TrefoilFromText) {
    const auto pres = parse_presentation("gens x1 x2; wirtinger; rel x1 x2 x1 X2 X1 X2; meridian x1; longitude x1 x2 x1^2 x2 x1^-5;");
    EXPECT_EQ(pres.n_generators(), 2);
    ASSERT_EQ(pres.relators.size(), 1u);
    EXPECT_EQ(pres.relators[0], Word({x1, x2, x1, X2, X1, X2}));
    EXPECT_TRUE(pres.wirtinger);
    EXPECT_TRUE(pres.has_peripheral());
    EXPECT_EQ(pres.abelianization_degrees, (std::vector<int>{1, 1}));
    EXPECT_EQ(pres.degree(*pres.longitude), 0);
}

TEST(Presentation, UnknotHasNoRelators) {
    const auto pres = parse_presentation("gens a; wirtinger;");
    EXPECT_EQ(pres.n_generators(), 1);
    EXPECT_TRUE(pres.relators.empty());
    EXPECT_FALSE(pres.has_peripheral());
}

TEST(Presentation, PowersAndCapitalInverses) {
    const auto a = parse_presentation("gens x1 x2; rel x1^2 X2 x2^-1;");
    EXPECT_EQ(a.relators[0], Word({x1, x1, X2, X2}));
    const auto b = parse_presentation("gens x1 x2; rel x1^-2 x1^2 x2^0;");
    EXPECT_TRUE(b.relators[0].empty());
}

TEST(Presentation, DegreesLine) {
    const auto pres = parse_presentation("gens a b; degrees 1 0; rel a b A B;");
    EXPECT_EQ(pres.abelianization_degrees, (std::vector<int>{1, 0}));
    EXPECT_FALSE(pres.wirtinger);
}

TEST(Presentation, UnknownGeneratorReportsPosition) {
    const auto e = parse_error_of("gens x1 x2;\nwirtinger;\nrel x1 x3;");
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 8);
    EXPECT_NE(std::string(e.what()).find("x3"), std::string::npos);
}

TEST(Presentation, RejectsMalformedInput) {
    EXPECT_THROW(parse_presentation("gens x1 x1;"), ParseError);
    EXPECT_THROW(parse_presentation("gens;"), ParseError);
    EXPECT_THROW(parse_presentation("rel x1;"), ParseError);
    EXPECT_THROW(parse_presentation("gens x1 x2; wirtinger; rel x1 x2;"), ParseError);
    EXPECT_THROW(parse_presentation("gens x1 x2 x3; wirtinger; rel x1 X2;"), ParseError);
    EXPECT_THROW(parse_presentation("gens x1 x2; wirtinger; degrees 1 1; rel x1 X2;"), ParseError);
    EXPECT_THROW(parse_presentation("gens x1; rel x1^;"), ParseError);
    EXPECT_THROW(parse_presentation("gens x1; rel x1"), ParseError);
    EXPECT_THROW(parse_presentation("gens x1; meridian x1;"), ParseError);
    EXPECT_THROW(parse_presentation("gens x1; bogus x1;"), ParseError);
}

TEST(Presentation, FormatWordCollapsesRuns) {
    const std::vector<std::string> names{"x1", "x2"};
    EXPECT_EQ(format_word(Word{}, names), "1");
    EXPECT_EQ(format_word(Word({x1, x1, X2, x1}), names), "x1^2 x2^-1 x1");
}

TEST(Presentation, CorpusRoundTrips) {
    for (const char* name : {"unknot.pres", "trefoil.pres", "figure8.pres", "5_2.pres"}) {
        const auto pres = load_presentation(corpus_path(name));
        const auto again = parse_presentation(serialize_presentation(pres));
        EXPECT_EQ(again.generator_names, pres.generator_names) << name;
        EXPECT_EQ(again.relators, pres.relators) << name;
        EXPECT_EQ(again.meridian, pres.meridian) << name;
        EXPECT_EQ(again.longitude, pres.longitude) << name;
        EXPECT_EQ(again.abelianization_degrees, pres.abelianization_degrees) << name;
        EXPECT_EQ(serialize_presentation(again), serialize_presentation(pres)) << name;
    }
}

TEST(Presentation, CorpusPeripheralWordsHaveDegreeZeroLongitude) {
    for (const char* name : {"unknot.pres", "trefoil.pres", "figure8.pres", "5_2.pres"}) {
        const auto pres = load_presentation(corpus_path(name));
        ASSERT_TRUE(pres.has_peripheral()) << name;
        EXPECT_EQ(pres.degree(*pres.meridian), 1) << name;
        EXPECT_EQ(pres.degree(*pres.longitude), 0) << name;
    }
}

TEST(Presentation, MissingFile) { EXPECT_THROW(load_presentation(corpus_path("nope.pres")), Error); }

TEST(Representation, ParseMatricesAndCharacters) {
    const std::vector<std::string> names{"a", "b"};
    const auto rep = parse_representation("rank 2;\nmat a = [[0,0],[1,0],[1,0],[0,0]];\nmat b = [[0,1],[0,0],[0,0],[0,-1]];", names);
    EXPECT_EQ(rep.rank, 2);
    EXPECT_EQ(rep.images[0](0, 1), cplx(1, 0));
    EXPECT_EQ(rep.images[1](1, 1), cplx(0, -1));
    EXPECT_LT(rep.unitarity_defect(), 1e-15);

    const auto chi = parse_representation("rank 1; char a = 0,1; char b = -1,0;", names);
    EXPECT_EQ(chi.images[0](0, 0), cplx(0, 1));
    EXPECT_EQ(chi.images[1](0, 0), cplx(-1, 0));
}

TEST(Representation, ParseErrors) {
    const std::vector<std::string> names{"a"};
    EXPECT_THROW(parse_representation("rank 0;", names), ParseError);
    EXPECT_THROW(parse_representation("rank 1;", names), ParseError);
    EXPECT_THROW(parse_representation("rank 1; char z = 1,0;", names), ParseError);
    EXPECT_THROW(parse_representation("rank 1; char a = 1,0; char a = 1,0;", names), ParseError);
    EXPECT_THROW(parse_representation("rank 2; char a = 1,0;", names), ParseError);
    EXPECT_THROW(parse_representation("rank 1; mat a = [[1,0],[0,0]];", names), ParseError);
}

TEST(Representation, ValidationCatchesNonRepresentations) {
    const auto pres = load_presentation(corpus_path("trefoil.pres"));
    auto bad = character_rep(pres, cplx(0, 1));
    bad.images[1](0, 0) = cplx(-1, 0);
    EXPECT_THROW(bad.validate(pres), DomainError);

    auto scaled = character_rep(pres, cplx(0, 1));
    scaled.images[0] *= 2.0;
    EXPECT_THROW(scaled.validate(pres), DomainError);

    const auto wrong_count = character_rep(3, cplx(0, 1));
    EXPECT_THROW(wrong_count.validate(pres), DomainError);

    EXPECT_NO_THROW(character_rep(pres, std::polar(1.0, 0.7)).validate(pres));
    EXPECT_NO_THROW(trivial_rep(pres, 3).validate(pres));
}

TEST(Representation, CorpusRepFiles) {
    const auto pres = load_presentation(corpus_path("trefoil.pres"));
    const auto rep = parse_representation(read_text_file(corpus_path("trefoil_trivial.rep")), pres.generator_names);
    EXPECT_NO_THROW(rep.validate(pres));
}
