#include <helpercode/instance.hpp>
#include <helpercode/rates.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_util.hpp"

using namespace helpercode;

TEST_CASE("parity of a uniform pair costs exactly the component bit") {
  JointPmf p({{0.25, 0.25}, {0.25, 0.25}});
  auto zero = std::optional<std::string>("0");
  auto one = std::optional<std::string>("1");
  FunctionTable f({{zero, one}, {one, zero}});
  auto d = saturating_matching_decompose(p);
  REQUIRE(d.all_matched());

  auto r = helper_scheme_rates(d, p, f);
  CHECK(r.helperRate == Catch::Approx(1.0).margin(1e-12));
  CHECK(r.sourceRates[0] == Catch::Approx(0.0).margin(1e-12));
  CHECK(r.sourceRates[1] == Catch::Approx(0.0).margin(1e-12));
  CHECK(r.sumRate == Catch::Approx(1.0).margin(1e-12));
  // the outcome is a fair bit, so the scheme meets the converse floor exactly
  CHECK(r.baselines.functionEntropy == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("builtin family rates at a quarter mixing") {
  auto inst = example1_instance(0.25);
  auto d = saturating_matching_decompose(inst.pmf);
  auto r = helper_scheme_rates(d, inst.pmf, inst.f);

  CHECK(r.scheme == "helper");
  CHECK(r.helperRate == Catch::Approx(0.9182958340544896).margin(1e-9));
  CHECK(r.sumRate == Catch::Approx(2.0).margin(1e-9));

  CHECK(r.baselines.functionEntropy == Catch::Approx(1.792481250360578).margin(1e-9));
  CHECK(r.baselines.fullyDistributed == Catch::Approx(2.6258145836939115).margin(1e-9));
  CHECK(r.baselines.trivialUpper == Catch::Approx(3.169925001442312).margin(1e-9));
  // conditioning on the first symbol does not help the second coloring here
  CHECK(r.baselines.slepianWolf == Catch::Approx(r.baselines.fullyDistributed).margin(1e-9));
}

TEST_CASE("vanishing mixing approaches the binary entropy floor") {
  auto inst = example1_instance(1e-6);
  auto d = saturating_matching_decompose(inst.pmf);
  auto r = helper_scheme_rates(d, inst.pmf, inst.f);
  CHECK(std::abs(r.sumRate - 0.9182958340544896) < 1e-4);
}

TEST_CASE("matched-only report agrees with the general one") {
  auto inst = example1_instance(0.25);
  auto d = sinkhorn_birkhoff_decompose(inst.pmf);
  REQUIRE(d.all_matched());
  auto general = helper_scheme_rates(d, inst.pmf, inst.f);
  auto matched = matched_scheme_rates(d, inst.f);
  CHECK(matched.helperRate == Catch::Approx(general.helperRate).margin(1e-12));
  CHECK(matched.sourceRates[0] == Catch::Approx(general.sourceRates[0]).margin(1e-12));
  CHECK(matched.sourceRates[1] == 0.0);
  CHECK(matched.sumRate == Catch::Approx(general.sumRate).margin(1e-12));
}

TEST_CASE("decomposition must reconstruct the joint it is priced against") {
  auto d = saturating_matching_decompose(example1_instance(0.25).pmf);
  auto other = example1_instance(0.3);
  CHECK(error_code_of([&] { helper_scheme_rates(d, other.pmf, other.f); }) == errc::validation);
}

TEST_CASE("coupled scheme sum rate") {
  SECTION("a single perfect coupling costs one source's entropy") {
    Pmf p({0.3, 0.7});
    auto c = build_maximal_coupling(p, p);
    CHECK(coupling_scheme_sum_rate(Pmf({1.0}), {c}) ==
          Catch::Approx(entropy(p)).margin(1e-12));
  }

  SECTION("frozen two-component example") {
    auto c = build_maximal_coupling(Pmf({0.5, 0.5}), Pmf({0.75, 0.25}));
    // each component: h(1/4) + (3/4) h(1/3) + (1/4)(0 + 0) = 3/2 exactly
    CHECK(coupling_scheme_sum_rate(Pmf({0.5, 0.5}), {c, c}) ==
          Catch::Approx(2.5).margin(1e-12));
  }

  SECTION("fully mismatched components pay both split entropies") {
    auto c = build_maximal_coupling(Pmf({0.5, 0.5, 0.0, 0.0}), Pmf({0.0, 0.0, 0.5, 0.5}));
    // h(1) = 0, split parts are a bit each
    CHECK(coupling_scheme_sum_rate(Pmf({1.0}), {c}) == Catch::Approx(2.0).margin(1e-12));
  }

  SECTION("length mismatch is rejected") {
    auto c = build_maximal_coupling(Pmf({1.0}), Pmf({1.0}));
    CHECK(error_code_of([&] { coupling_scheme_sum_rate(Pmf({0.5, 0.5}), {c}); }) ==
          errc::length_mismatch);
  }
}

TEST_CASE("rate ordering across the mixing range") {
  double prev_sum = -1.0;
  for (double delta = 0.05; delta <= 0.451; delta += 0.05) {
    auto inst = example1_instance(delta);
    auto d = saturating_matching_decompose(inst.pmf);
    auto r = helper_scheme_rates(d, inst.pmf, inst.f);

    CHECK(r.baselines.functionEntropy <= r.sumRate + 1e-9);
    CHECK(r.sumRate <= r.baselines.fullyDistributed + 1e-9);
    CHECK(r.baselines.fullyDistributed <= r.baselines.trivialUpper + 1e-9);
    CHECK(r.baselines.functionEntropy <= r.baselines.slepianWolf + 1e-9);

    // the sum rate moves continuously in the mixing parameter
    if (prev_sum >= 0.0) CHECK(std::abs(r.sumRate - prev_sum) <= 0.5);
    prev_sum = r.sumRate;
  }
}
