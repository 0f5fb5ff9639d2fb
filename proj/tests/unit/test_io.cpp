#include <doctest.h>

#include <cmath>
#include <sstream>

#include "divbound/error.hpp"
#include "divbound/io.hpp"

using namespace divbound;
using doctest::Approx;

namespace {

io::ParsedDistribution parse(const std::string& text, bool renormalize = false) {
    std::istringstream in(text);
    return io::parse_distribution(in, renormalize);
}

int error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("pmf files") {
        const auto d = parse("kind,pmf\nx,p\n0,0.25\n# comment\n\n1,0.5\n2,0.25\n");
        CHECK(d.spec.is_discrete());
        CHECK(d.spec.mean() == Approx(1.0));
        CHECK_FALSE(d.renormalized);
        // Within 1e-8: rescaled silently.
        const auto near = parse("kind,pmf\n0,0.5\n1,0.500000001\n");
        CHECK(near.renormalized);
        CHECK(near.spec.mean() == Approx(0.5).epsilon(1e-8));
    }

    TEST_CASE("grid files") {
        std::ostringstream os;
        os << "kind,grid\n";
        for (int i = 0; i <= 10; ++i) os << i / 10.0 << ",1\n";
        const auto d = parse(os.str());
        CHECK_FALSE(d.spec.is_discrete());
        CHECK(d.spec.mean() == Approx(0.5));
    }

    TEST_CASE("errors carry line numbers") {
        CHECK(error_line("kind,pmf\nx,p\n0,0.5\n1,-0.1\n2,0.6\n") == 4);
        CHECK(error_line("type,pmf\n0,1\n") == 1);
        CHECK(error_line("kind,pmf\n0,0.5\n0.5,0.5\n") == 3);
        CHECK(error_line("kind,pmf\n0,0.5\n1,abc\n") == 3);
        CHECK(error_line("kind,pmf\n1,0.5\n0,0.5\n") == 3);
        CHECK(error_line("kind,pmf\n0,0.5,1\n") == 2);
        CHECK(error_line("kind,pmf\n0,1\n1,1\n") == 1);
        CHECK(error_line("") == 0);
        CHECK_THROWS_AS(io::parse_distribution_file("/nonexistent/file.csv"), ParseError);
    }

    TEST_CASE("renormalize flag") {
        const auto d = parse("kind,pmf\n0,1\n1,1\n2,2\n", true);
        CHECK(d.raw_total == 4.0);
        CHECK(d.renormalized);
        CHECK(d.spec.mean() == Approx(1.25));
    }

    TEST_CASE("target grammar") {
        using namespace divbound::verify;
        auto t = io::parse_target("gamma:-0.5:laguerre:3");
        REQUIRE(std::holds_alternative<LaguerreTarget>(t));
        CHECK(std::get<LaguerreTarget>(t).alpha == -0.5);
        CHECK(std::get<LaguerreTarget>(t).order == 3);
        t = io::parse_target("gaussian:hermite:4");
        CHECK(std::get<HermiteTarget>(t).order == 4);
        t = io::parse_target("poisson:1");
        CHECK(std::get<AnalyticTarget>(t).nu == 1.0);
        t = io::parse_target("binomial:10:0.3");
        CHECK(std::get<AnalyticTarget>(t).nu == Approx(3.0));
        t = io::parse_target("negbin:2:0.5");
        CHECK(std::get<AnalyticTarget>(t).nu == Approx(2.0));
        t = io::parse_target("invgauss:1.5:2");
        CHECK(std::get<AnalyticTarget>(t).nu == 1.5);
        CHECK(std::get<AnalyticTarget>(t).family.param1() == 2.0);
        for (const char* s : {"gamma:1:mean:2", "gaussian:mean:-1", "gaussian:second:2"})
            CHECK(describe(io::parse_target(s)) == s);
        for (const char* s : {"gamma:-0.5:laguerre:3", "gaussian:hermite:4", "poisson:1", "binomial:10:0.3",
                              "negbin:2:0.5", "invgauss:1.5:2"})
            CHECK(describe(io::parse_target(s)) == s);
        for (const char* bad : {"", "poisson", "poisson:-1", "poisson:x", "gamma:-1:laguerre:2", "gamma:0:laguerre:0",
                                "gaussian:hermite:3", "binomial:0:0.5", "binomial:3:1", "negbin:1:1.5", "weibull:1"})
            CHECK_THROWS_AS(io::parse_target(bad), ParseError);
    }

    TEST_CASE("rounding and rendering") {
        CHECK(io::round12(0.1234567890123456) == 0.123456789012);
        CHECK(io::round12(-3.31946983097123) == -3.31946983097);
        CHECK(std::isinf(io::round12(INFINITY)));
        io::Document d = io::Document::object();
        d["seed"] = 7;
        d["x"] = io::number(1.0 / 3.0);
        d["d"] = io::number(INFINITY);
        d["rows"] = io::Document::array({io::Document{{"a", 1}, {"b", "p,q"}}});
        CHECK(io::render(d, io::Format::Json).find("0.333333333333") != std::string::npos);
        CHECK(io::render(d, io::Format::Json).find("\"inf\"") != std::string::npos);
        const std::string csv = io::render(d, io::Format::Csv);
        CHECK(csv == "# seed=7\n# x=0.333333333333\n# d=inf\na,b\n1,\"p,q\"\n");
        const std::string pretty = io::render(d, io::Format::Pretty);
        CHECK(pretty.find("seed  7") != std::string::npos);
        CHECK_THROWS_AS(io::parse_format("xml"), ParseError);
    }
}
