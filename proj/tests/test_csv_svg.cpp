#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qir/csv.hpp"
#include "qir/svg_plot.hpp"

using namespace qir;

TEST_CASE("format_double round-trips exactly for random doubles") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int k = 0; k < 2000; ++k) {
        const double v = std::ldexp(mant(gen), expo(gen));
        CHECK(parse_double_exact(format_double(v)) == v);
    }
    CHECK(parse_double_exact(format_double(0.0)) == 0.0);
    CHECK(parse_double_exact(format_double(29.9792458)) == 29.9792458);
}

TEST_CASE("parse_double_exact rejects garbage") {
    CHECK_THROWS_AS((void)parse_double_exact(""), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_double_exact("1.0x"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_double_exact("abc"), std::invalid_argument);
}

TEST_CASE("csv serialize/parse round-trip") {
    CsvTable table;
    table.header = {"a", "b"};
    table.rows = {{"1", "2.5"}, {"-3", "1e-12"}};
    const std::string text = table.serialize();
    CHECK(text == "a,b\n1,2.5\n-3,1e-12\n");

    const CsvTable back = CsvTable::parse(text);
    CHECK(back.header == table.header);
    CHECK(back.rows == table.rows);
}

TEST_CASE("csv parse rejects ragged and empty inputs") {
    CHECK_THROWS_AS((void)CsvTable::parse(""), std::invalid_argument);
    CHECK_THROWS_AS((void)CsvTable::parse("a,b\n1\n"), std::invalid_argument);
}

TEST_CASE("svg output is deterministic and well-formed") {
    PlotSeries s1{"s", {0, 1, 2, 3}, {0.0, 1.0, 4.0, 1.0}};
    PlotSeries s2{"c1", {0, 1, 2, 3}, {0.0, -1.0, 2.0, 0.5}};
    PlotOptions options{"Correlation scan", "lag (bins)", "statistic", false};

    const std::string svg_a = render_line_plot({s1, s2}, options);
    const std::string svg_b = render_line_plot({s1, s2}, options);
    CHECK(svg_a == svg_b);
    CHECK(svg_a.find("<svg") == 0);
    CHECK(svg_a.find("</svg>") != std::string::npos);
    CHECK(svg_a.find("polyline") != std::string::npos);
    CHECK(svg_a.find("lag (bins)") != std::string::npos);

    // One polyline per series.
    std::size_t count = 0;
    for (std::size_t pos = svg_a.find("<polyline"); pos != std::string::npos;
         pos = svg_a.find("<polyline", pos + 1)) {
        ++count;
    }
    CHECK(count == 2);
}

TEST_CASE("svg log axis rejects non-positive x") {
    PlotSeries s{"p", {0.0, 1.0}, {0.1, 0.2}};
    PlotOptions options{"t", "x", "y", true};
    CHECK_THROWS_AS((void)render_line_plot({s}, options), std::invalid_argument);
}

TEST_CASE("svg rejects empty input") {
    CHECK_THROWS_AS((void)render_line_plot({}, PlotOptions{}), std::invalid_argument);
    PlotSeries empty{"e", {}, {}};
    CHECK_THROWS_AS((void)render_line_plot({empty}, PlotOptions{}), std::invalid_argument);
}
