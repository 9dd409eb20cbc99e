#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "ksched/k2u.hpp"

using namespace ksched;
using testutil::Rng;

TEST_CASE("hyperbolic test") {
  SUBCASE("single higher task, hand-evaluated") {
    k2u::Instance inst{{{1.0, 1.0, 0.3}}, 0.5, 1.0};
    const Verdict v = k2u::hyperbolic_test(inst, 1.0, 1.0);
    CHECK(v.ok());
    CHECK(v.bound == doctest::Approx(2.0 / 1.3 - 1.0).epsilon(1e-12));
  }

  SUBCASE("no higher tasks accepts full demand") {
    k2u::Instance inst{{}, 1.0, 1.0};
    const Verdict v = k2u::hyperbolic_test(inst, 1.0, 1.0);
    CHECK(v.ok());
    CHECK(v.bound == doctest::Approx(1.0));
  }

  SUBCASE("not proven above the bound") {
    k2u::Instance inst{{{1.0, 1.0, 0.5}}, 0.5, 1.0};
    const Verdict v = k2u::hyperbolic_test(inst, 1.0, 1.0);
    CHECK(v.outcome == Outcome::not_proven);
    CHECK(v.bound == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("coefficient above its cap is inapplicable") {
    k2u::Instance inst{{{1.5, 1.0, 0.3}}, 0.1, 1.0};
    CHECK(k2u::hyperbolic_test(inst, 1.0, 1.0).outcome ==
          Outcome::inapplicable);
  }

  SUBCASE("right-hand side strictly decreases in each utilization") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      k2u::Instance inst;
      const int n = 1 + int(rng.next_u64() % 5);
      for (int i = 0; i < n; ++i)
        inst.higher.push_back({1.0, 1.0, rng.uniform(0.05, 0.9)});
      inst.ck = 0.1;
      inst.tk = 1.0;
      const double before = k2u::hyperbolic_test(inst, 1.0, 1.0).bound;
      const std::size_t bump = rng.next_u64() % n;
      inst.higher[bump].util += 0.05;
      const double after = k2u::hyperbolic_test(inst, 1.0, 1.0).bound;
      CHECK(after < before);
    }
  }
}

TEST_CASE("uniform utilization bound") {
  SUBCASE("two tasks give 2*(sqrt(2)-1)") {
    CHECK(k2u::uniform_utilization_bound(2, 1.0, 1.0) ==
          doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-12));
  }

  SUBCASE("k = 1 allows full utilization") {
    CHECK(k2u::uniform_utilization_bound(1, 1.0, 1.0) == doctest::Approx(1.0));
  }

  SUBCASE("classic closed form holds bit-exactly for k = 1..100") {
    for (long long k = 1; k <= 100; ++k) {
      const double expected = double(k) * (std::pow(2.0, 1.0 / double(k)) - 1.0);
      CHECK(k2u::uniform_utilization_bound(k, 1.0, 1.0) == expected);
    }
  }

  SUBCASE("large k approaches ln 2") {
    CHECK(k2u::uniform_utilization_bound(1'000'000, 1.0, 1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-5));
  }

  SUBCASE("non-increasing in k") {
    double prev = k2u::uniform_utilization_bound(1, 1.0, 1.0);
    for (long long k = 2; k <= 200; ++k) {
      const double cur = k2u::uniform_utilization_bound(k, 1.0, 1.0);
      CHECK(cur <= prev + 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("exclusive utilization bound") {
  SUBCASE("vanishing demand recovers ln 2") {
    CHECK(k2u::exclusive_utilization_bound(1e-12, 1.0, 1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-9));
  }
  SUBCASE("no slack at full demand") {
    CHECK(k2u::exclusive_utilization_bound(1.0, 1.0, 1.0) ==
          doctest::Approx(0.0));
    CHECK(k2u::exclusive_utilization_bound(1.0, 2.0, 1.0) ==
          doctest::Approx(0.0));
  }
}

TEST_CASE("extreme point test") {
  SUBCASE("no higher tasks") {
    k2u::Instance inst{{}, 0.7, 1.0};
    const Verdict v = k2u::extreme_point_test(inst);
    CHECK(v.ok());
    CHECK(v.bound == doctest::Approx(1.0));
  }

  SUBCASE("one task matches the hyperbolic right-hand side") {
    k2u::Instance inst{{{1.0, 1.0, 0.5}}, 0.2, 1.0};
    const double ep = k2u::extreme_point_test(inst).bound;
    CHECK(ep == doctest::Approx(1.0 - 0.5 * 2.0 / 1.5).epsilon(1e-12));
    CHECK(ep == doctest::Approx(k2u::hyperbolic_test(inst, 1.0, 1.0).bound)
                    .epsilon(1e-12));
  }

  SUBCASE("two tasks, hand evaluation cross-checked against hyperbolic") {
    k2u::Instance inst{{{1.0, 1.0, 0.3}, {1.0, 1.0, 0.3}}, 0.1, 1.0};
    const double expected = 1.0 - (0.3 * 2.0 / (1.3 * 1.3) + 0.3 * 2.0 / 1.3);
    const double ep = k2u::extreme_point_rhs(inst.higher);
    CHECK(ep == doctest::Approx(expected).epsilon(1e-12));
    CHECK(ep == doctest::Approx(2.0 / 1.69 - 1.0).epsilon(1e-12));
  }

  SUBCASE("uniform coefficients reproduce the hyperbolic bound exactly") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
      const double alpha = rng.uniform(0.2, 2.0);
      const double beta = rng.uniform(0.2, 2.0);
      k2u::Instance inst;
      const int n = 1 + int(rng.next_u64() % 6);
      for (int i = 0; i < n; ++i)
        inst.higher.push_back({alpha, beta, rng.uniform(0.01, 1.0)});
      inst.ck = 0.1;
      inst.tk = 1.0;
      const double hyper = k2u::hyperbolic_test(inst, alpha, beta).bound;
      const double ep = k2u::extreme_point_rhs(inst.higher);
      CHECK(ep == doctest::Approx(hyper).epsilon(1e-12));
    }
  }

  SUBCASE("raising a coefficient to its cap never raises the bound") {
    // Sampled over instances with total utilization at most one, the
    // regime every derived uniprocessor/multiprocessor test works in.
    Rng rng(13);
    for (int trial = 0; trial < 2000; ++trial) {
      const int n = 1 + int(rng.next_u64() % 6);
      std::vector<k2u::Term> terms(n);
      double budget = 1.0;
      for (int i = 0; i < n; ++i) {
        terms[i].alpha = rng.uniform(0.1, 1.0);
        terms[i].beta = rng.uniform(0.1, 1.0);
        const double u = rng.uniform(0.0, budget / double(n - i));
        terms[i].util = u;
        budget -= u;
      }
      const double before = k2u::extreme_point_rhs(terms);
      const std::size_t bump = rng.next_u64() % n;
      if (rng.next_u64() % 2 == 0)
        terms[bump].alpha = 1.0;
      else
        terms[bump].beta = 1.0;
      const double after = k2u::extreme_point_rhs(terms);
      CHECK(after <= before + 1e-12);
    }
  }
}

TEST_CASE("limit bound") {
  SUBCASE("recovers ln 2") {
    CHECK(k2u::limit_bound(1.0, 1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-5));
  }
  SUBCASE("bounded above by every finite k") {
    CHECK(k2u::limit_bound(1.0, 1.0) <=
          k2u::uniform_utilization_bound(3, 1.0, 1.0));
    CHECK(k2u::uniform_utilization_bound(3, 1.0, 1.0) <=
          k2u::uniform_utilization_bound(2, 1.0, 1.0));
  }
  SUBCASE("rejects non-positive coefficients") {
    CHECK_THROWS_AS(k2u::limit_bound(3.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(k2u::limit_bound(0.0, 1.0), std::invalid_argument);
  }
}
