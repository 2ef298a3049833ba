#include "qpde/io.hpp"
#include "qpde/suites.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace qpde;
using P = BiPoly<Rational>;
using R = Rational;

TEST_CASE("preset equation text") {
    auto src = parse_equation_text("preset = big-q-jacobi\nq = 1/2 # comment\nd = -1/2\n");
    REQUIRE(src.preset.has_value());
    CHECK(src.preset->a == R(1, 3));
    CHECK(src.equation == preset_equation(test_params<R>()));
    CHECK_THROWS_AS(parse_equation_text("preset = little-q\n"), ParseError);
    CHECK_THROWS_AS(parse_equation_text("preset = big-q-jacobi\nd = 1/2\n"), ParseError);
    CHECK_THROWS_AS(parse_equation_text("preset = big-q-jacobi\nz = 1\n"), ParseError);
}

TEST_CASE("explicit equation text") {
    const auto e = preset_equation(test_params<R>());
    std::ostringstream os;
    os << "q = 1/2\n";
    const char* names[6] = {"C11", "C22", "A12a", "A12d", "B1", "B2"};
    auto polys = e.polys();
    for (int i = 0; i < 6; ++i) {
        os << names[i] << " =";
        for (const auto& [k, c] : polys[i]->terms()) os << " (" << k.first << ", " << k.second << ", " << to_string(c) << ")";
        os << "\n";
    }
    auto src = parse_equation_text(os.str());
    CHECK_FALSE(src.preset.has_value());
    CHECK(src.equation == e);
}

TEST_CASE("parse errors carry line numbers") {
    auto message = [](const std::string& text) {
        try {
            parse_equation_text(text);
        } catch (const ParseError& ex) {
            return std::string(ex.what());
        }
        return std::string("no error");
    };
    CHECK(message("q = 1/2\nC11 = (2,0,1/2) (1,0\n") == "line 2: malformed term list");
    CHECK(message("q = 1/2\nq = 1/3\n") == "line 2: duplicate key q");
    CHECK(message("q = 2\n") == "line 1: q must satisfy 0 < q < 1");
    CHECK(message("just text\n") == "line 1: expected key = value");
    CHECK(message("q = 1/2\nC11 = (2,0,1/0)\n").rfind("line 2:", 0) == 0);
    CHECK(message("q = 1/2\nC11 = (0,0,1)\n") == "missing coefficient C22");
    CHECK_THROWS_AS(parse_equation_file("/nonexistent/equation.txt"), ParseError);
}

TEST_CASE("preset overrides") {
    auto src = preset_source("big-q-jacobi", {"a=1/5", "q=1/3"});
    CHECK(src.preset->a == R(1, 5));
    CHECK(src.equation.qv() == R(1, 3));
    CHECK_THROWS_AS(preset_source("big-q-jacobi", {"a"}), ParseError);
    CHECK_THROWS_AS(preset_source("big-q-jacobi", {"e=1"}), ParseError);
    CHECK_THROWS_AS(preset_source("other", {}), ParseError);
}

TEST_CASE("serialization") {
    P p = P::monomial(2, 1, R(-3, 7)) + P(R(5));
    Json j = to_json(p);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["i"] == 0);
    CHECK(j[0]["numerator"] == "5");
    CHECK(j[1]["numerator"] == "-3");
    CHECK(j[1]["denominator"] == "7");
    CHECK(to_json(Mat<R>{{R(1, 2), R(0)}}).dump() == R"([["1/2","0"]])");
    PrecisionScope ps(128);
    Json f = to_json(convert<BigFloat>(p));
    CHECK(f[1].contains("value"));
    CHECK(csv_line({"a", "b,c", "d\"e"}) == "a,\"b,c\",\"d\"\"e\"\n");
}

TEST_CASE("atomic write") {
    auto dir = std::filesystem::temp_directory_path() / "qpde_io_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "out.json";
    atomic_write(path, "first");
    atomic_write(path, "second");
    std::ifstream in(path);
    std::string s;
    std::getline(in, s);
    CHECK(s == "second");
    CHECK_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
    CHECK_THROWS(atomic_write(dir / "missing" / "x.json", "z"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("suite helpers") {
    P a = R(3, 2) * (P::x() + P::y()), b = P::x() + P::y();
    CHECK(proportionality(a, b) == R(3, 2));
    CHECK_FALSE(proportionality(P::x(), b).has_value());
    CHECK(proportionality(P(), P()) == R(1));
    CHECK(decimal(R(1, 3), 4) == "3.3333e-01");

    SuiteTable t{"demo", {"name"}, {}};
    t.add({"one"}, true);
    t.add({"two"}, false, false);
    CHECK(t.passed());
    t.add({"three"}, false);
    CHECK_FALSE(t.passed());
    CHECK(t.failures() == 1);
    CHECK(t.csv() == "name,asserted,status\none,yes,pass\ntwo,no,fail\nthree,yes,fail\n");
}
