#include "anisobec/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace anisobec::specfun;

TEST_CASE("polylog basics") {
  // Li_1(z) = -ln(1 - z)
  const auto li1 = polylog(1.0, 0.25, 1e-13);
  CHECK(li1.value == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
  CHECK(li1.truncation_bound <= 1e-13); // relative bound on success

  // frozen reference: partial summation to 1e-14, summed in both orders
  const auto li2 = polylog(2.0, 0.25, 1e-13);
  CHECK(li2.value == doctest::Approx(0.2676526390827325).epsilon(1e-13));
  CHECK(li2.terms_used > 5);

  CHECK(polylog(2.0, 0.0, 1e-13).value == 0.0);
  CHECK_THROWS_AS((void)polylog(2.0, 1.0, 1e-13), std::domain_error);
  CHECK_THROWS_AS((void)polylog(2.0, -1.5, 1e-13), std::domain_error);
}

TEST_CASE("forward and backward summation agree") {
  // fixed truncation, terms z^n / n^s
  const double z = 0.25, s = 2.0;
  const int n_terms = 60;
  std::vector<double> terms(n_terms);
  for (int n = 1; n <= n_terms; ++n)
    terms[n - 1] = std::pow(z, n) / std::pow(n, s);
  double fwd = 0.0, bwd = 0.0;
  for (int i = 0; i < n_terms; ++i)
    fwd += terms[i];
  for (int i = n_terms - 1; i >= 0; --i)
    bwd += terms[i];
  CHECK(fwd == doctest::Approx(bwd).epsilon(1e-13));
  CHECK(polylog(s, z, 1e-13).value == doctest::Approx(bwd).epsilon(1e-13));
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(1.0, 5) == doctest::Approx(120.0));
  CHECK(pochhammer(1.5, 2) == doctest::Approx(15.0 / 4.0));
  CHECK(pochhammer(2.5, 0) == 1.0);
  CHECK(pochhammer(2.5, 4) / pochhammer(2.5, 3) == doctest::Approx(5.5));
}

TEST_CASE("hypergeometric basics") {
  // 2F1(1,1;2;z) = -ln(1-z)/z
  const auto f = hypergeometric_pFq({1.0, 1.0}, {2.0}, 0.25, 1e-13);
  CHECK(f.value == doctest::Approx(4.0 * std::log(4.0 / 3.0)).epsilon(1e-12));

  // z = 0 gives the leading term
  CHECK(hypergeometric_pFq({1.0, 2.0, 3.0}, {4.0, 5.0}, 0.0, 1e-13).value ==
        1.0);

  // frozen reference: partial summation to 1e-14 plus rational arithmetic
  // over the first 30 terms
  const auto f43 = hypergeometric_pFq({1.0, 1.0, 1.0, 1.5},
                                      {2.0, 2.0, 2.0}, 0.25, 1e-13);
  CHECK(f43.value == doctest::Approx(1.0518410271012641).epsilon(1e-13));

  CHECK_THROWS_AS(
      (void)hypergeometric_pFq({1.0, 1.0}, {-2.0}, 0.25, 1e-13),
      std::domain_error);
  CHECK_THROWS_AS((void)hypergeometric_pFq({1.0, 1.0}, {0.0}, 0.25, 1e-13),
                  std::domain_error);
}

TEST_CASE("polylog-hypergeometric overlap identity") {
  // Li_2(z) = z 3F2(1,1,1;2,2;z)
  for (double z : {0.1, 0.25, 0.5}) {
    const double li = polylog(2.0, z, 1e-14).value;
    const double hyp =
        z * hypergeometric_pFq({1.0, 1.0, 1.0}, {2.0, 2.0}, z, 1e-14).value;
    CHECK(li == doctest::Approx(hyp).epsilon(1e-12));
  }
}
