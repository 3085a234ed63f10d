#include "gausstomo/records.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "gausstomo/sampling.hpp"

using namespace gausstomo;
using nlohmann::json;

TEST(Records, FormatDoubleRoundTrips) {
  for (double v : {0.1, std::numbers::pi, 1e-300, -2.5e17, 6.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(6.0), "6");
}

TEST(Records, SpecJson) {
  const GaussianStateSpec s{2, 10, 0.25, 0.5};
  const json j = s;
  EXPECT_EQ(j, json::parse(R"({"mu":2.0,"lambda":10.0,"phi":0.25,"eta":0.5})"));
  EXPECT_EQ(j.get<GaussianStateSpec>(), s);
  const auto partial = json::parse(R"({"mu":1.5,"lambda":2})").get<GaussianStateSpec>();
  EXPECT_EQ(partial.phi, 0.0);
  EXPECT_EQ(partial.eta, 1.0);
  EXPECT_THROW(json::parse(R"({"mu":1,"lambda":1,"theta":0})").get<GaussianStateSpec>(), std::invalid_argument);
  EXPECT_THROW(json::parse(R"({"lambda":1})").get<GaussianStateSpec>(), json::exception);
}

TEST(Records, CovarianceAndSeedJson) {
  const Covariance2 g{0.1, 10, -0.3};
  EXPECT_EQ(json(g).get<Covariance2>(), g);
  EXPECT_TRUE(json(g).contains("g3"));
  const SeedSpec s{123, 4};
  EXPECT_EQ(json(s).get<SeedSpec>(), s);
  EXPECT_EQ(json(99).get<SeedSpec>(), (SeedSpec{99, 0}));
  EXPECT_EQ(json::parse("99").get<SeedSpec>(), (SeedSpec{99, 0}));
  EXPECT_THROW(json(-1).get<SeedSpec>(), std::invalid_argument);
}

TEST(Records, EstimationResultJson) {
  EstimationResult r;
  r.g_wigner = {0.1, 10, 0};
  r.n = 50;
  r.converged = true;
  const json j = r;
  EXPECT_EQ(j.at("n"), 50);
  EXPECT_EQ(j.at("scheme"), "homodyne");
  EXPECT_NEAR(j.at("ellipse").at("semi_axis_major").get<double>(), std::sqrt(10.0), 1e-15);
  r.g_wigner = {0.5, -0.5, 0};
  EXPECT_TRUE(json(r).at("ellipse").is_null());
}

TEST(Records, HomodyneCsvRoundTrip) {
  const auto data = sample_homodyne({2, 10, 0.3, 0.5}, 100, {}, {1, 2});
  std::stringstream ss;
  ss << "# comment\n\n";
  write_homodyne_csv(ss, data);
  EXPECT_EQ(read_homodyne_csv(ss), data);
}

TEST(Records, HeterodyneCsvRoundTrip) {
  const auto data = sample_heterodyne({2, 10, 0.3, 0.5}, 100, {1, 3});
  std::stringstream ss;
  write_heterodyne_csv(ss, data);
  EXPECT_EQ(ss.str().substr(0, 4), "x,p\n");
  EXPECT_EQ(read_heterodyne_csv(ss), data);
}

TEST(Records, CsvRejectsMalformedInput) {
  std::stringstream wrong_header("theta,y\n0,1\n");
  EXPECT_THROW(read_homodyne_csv(wrong_header), std::invalid_argument);
  std::stringstream bad_number("x,p\n1,abc\n");
  EXPECT_THROW(read_heterodyne_csv(bad_number), std::invalid_argument);
  std::stringstream short_row("x,p\n1\n");
  EXPECT_THROW(read_heterodyne_csv(short_row), std::invalid_argument);
  std::stringstream empty("");
  EXPECT_THROW(read_heterodyne_csv(empty), std::invalid_argument);
}

TEST(Records, TableHeaders) {
  std::stringstream ss;
  write_gamma_csv(ss, std::vector<CrbReport>{});
  EXPECT_EQ(ss.str(), "lambda,mu,eta,h_hom,h_het,gamma\n");
  ss.str("");
  write_boundaries_csv(ss, std::vector<DirectionVariancePair>{{0, 0.5, 1}});
  EXPECT_EQ(ss.str(), "theta,sigma,Sigma\n0,0.5,1\n");
  ss.str("");
  write_region_scan_csv(ss, std::vector<RegionScanRow>{});
  EXPECT_EQ(ss.str(), "lambda,eta,s_sigma,s_Sigma\n");
}

TEST(Records, SplitCsvLine) {
  EXPECT_EQ(split_csv_line("a,,b"), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(split_csv_line(""), (std::vector<std::string>{""}));
}
