#include <doctest.h>

#include <cmath>

#include "flowsched/bench/bench.hpp"

using namespace flowsched;
using namespace flowsched::bench;

TEST_CASE("gap formulas are exact") {
    CHECK(gap_upper(Rational(102), Rational(100)) == Rational(2));
    CHECK(gap_upper(Rational(100), Rational(100)) == Rational(0));
    CHECK(gap_lower(Rational(16), Rational(15)) == Rational(100, 15));
    CHECK(percent_2dp(Rational(100, 15)) == "6.67");
    CHECK(percent_2dp(Rational(2)) == "2.00");
    CHECK_THROWS_AS(gap_upper(Rational(5), Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(gap_lower(Rational(5), Rational(-1)), std::invalid_argument);
}

TEST_CASE("shifted geometric mean") {
    CHECK(shifted_geomean({2.0, 2.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(shifted_geomean({0.0, 3.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(shifted_geomean({1.0, 3.0}, 1.0) ==
          doctest::Approx(std::sqrt(8.0) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(shifted_geomean({}, 1.0), std::invalid_argument);
}

TEST_CASE("geomean sits between min and max") {
    const std::vector<double> xs{0.5, 4.0, 2.25, 7.5};
    const double g = shifted_geomean(xs, 1.0);
    CHECK(g >= 0.5);
    CHECK(g <= 7.5);
}

TEST_CASE("performance profiles step up to one") {
    std::map<std::string, std::vector<Rational>> gaps;
    gaps["m"] = {Rational(0), Rational(2), Rational(4)};
    const auto curves = performance_profile(gaps);
    REQUIRE(curves.size() == 1);
    const auto& pts = curves[0].points;
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == std::pair<double, double>{0.0, 1.0 / 3.0});
    CHECK(pts[1] == std::pair<double, double>{2.0, 2.0 / 3.0});
    CHECK(pts[2] == std::pair<double, double>{4.0, 1.0});

    gaps["m2"] = gaps["m"];
    const auto two = performance_profile(gaps);
    CHECK(two[0].points == two[1].points);

    CHECK_THROWS_AS(performance_profile({}), std::invalid_argument);
}

TEST_CASE("profile curves are monotone") {
    std::map<std::string, std::vector<Rational>> gaps;
    gaps["m"] = {Rational(3), Rational(0), Rational(3), Rational(7, 2)};
    const auto curves = performance_profile(gaps);
    double last = 0.0;
    for (const auto& [g, f] : curves[0].points) {
        CHECK(f >= last);
        last = f;
    }
    CHECK(last == 1.0);
}

TEST_CASE("report renders deterministic csv with summary rows") {
    std::vector<BoundRecord> records;
    records.push_back({"i1", "ub-a", BoundKind::Upper, Rational(11), 0.5, "optimal"});
    records.push_back({"i1", "lb-b", BoundKind::Lower, Rational(10), 0.25, "optimal"});
    const std::string csv = render_report(records, ReportFormat::Csv);
    CHECK(csv ==
          "instance,method,kind,value,gap_percent,runtime_s,status\n"
          "i1,ub-a,upper,11,10.00,0.500,optimal\n"
          "i1,lb-b,lower,10,10.00,0.250,optimal\n"
          "summary,lb-b,gaps,10.00,10.00,10.00,\n"
          "summary,ub-a,gaps,10.00,10.00,10.00,\n");

    const std::string md = render_report(records, ReportFormat::Markdown);
    CHECK(md.find("| i1 | ub-a | upper | 11 | 10.00 | 0.500 | optimal |") != std::string::npos);
}

TEST_CASE("grouped summary matches shifted_geomean") {
    std::vector<BoundRecord> records;
    // gaps 0 and 3 for the same method across two instances -> avg 1.00
    records.push_back({"i1", "lb", BoundKind::Lower, Rational(10), 0.0, "optimal"});
    records.push_back({"i1", "ub", BoundKind::Upper, Rational(10), 0.0, "optimal"});
    records.push_back({"i2", "lb", BoundKind::Lower, Rational(100), 0.0, "optimal"});
    records.push_back({"i2", "ub", BoundKind::Upper, Rational(103), 0.0, "optimal"});
    const std::string csv = render_report(records, ReportFormat::Csv);
    CHECK(csv.find("summary,ub,gaps,0.00,1.00,3.00,\n") != std::string::npos);
}
