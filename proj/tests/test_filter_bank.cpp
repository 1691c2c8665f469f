// Copyright 2026 The rvsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "rvsim/filter_bank.hpp"

using namespace rvsim;

TEST_CASE("gaussian kernel value")
{
  CHECK(gaussianKernelValue(0, 0, 0, 0, 1.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
  CHECK(gaussianKernelValue(0, 0, 0, 0, 1.0) == doctest::Approx(0.1591549).epsilon(1e-7));

  const double expected = static_cast<double>(oracle::gauss(1.0L, 0.0L, 1.0L));
  CHECK(std::abs(gaussianKernelValue(1, 0, 0, 0, 1.0) - expected) < 1e-15);
  CHECK(gaussianKernelValue(1, 0, 0, 0, 1.0) == doctest::Approx(0.0965324).epsilon(1e-6));

  for (double sigma : {0.1, 0.24, 1.0, 3.7}) {
    CHECK(gaussianKernelValue(5, 5, 5, 5, sigma) ==
          doctest::Approx(1.0 / (2.0 * std::numbers::pi * sigma * sigma)));
  }
  CHECK_THROWS_AS(gaussianKernelValue(0, 0, 0, 0, 0.0), std::domain_error);
  CHECK_THROWS_AS(gaussianKernelValue(0, 0, 0, 0, -1.0), std::domain_error);
}

TEST_CASE("dog mother wavelet")
{
  const double expected =
    static_cast<double>(oracle::gauss(0, 0, 1.0L) - oracle::gauss(0, 0, 1.5874L));
  CHECK(std::abs(dogMotherValue(0, 0) - expected) < 1e-15);
  CHECK(dogMotherValue(0, 0) == doctest::Approx(0.095995).epsilon(1e-5));
  CHECK(dogMotherValue(0.3, 1.7) == dogMotherValue(1.7, 0.3));
  CHECK(std::abs(dogMotherValue(100, 100)) < 1e-300);
}

TEST_CASE("template half-width")
{
  CHECK(templateHalfWidth(0.24) == 1);
  CHECK(templateHalfWidth(0.348) == 2);
  CHECK(templateHalfWidth(0.5046) == 3);
  CHECK(templateHalfWidth(0.7317) == 4);
  CHECK(templateHalfWidth(0.01) == 1);
  CHECK(templateHalfWidth(0.5, 0.1) == 5);
}

TEST_CASE("small DoG kernel matches direct evaluation")
{
  KernelSpec spec;
  spec.scale = 0.24;
  spec.kind = KernelKind::DoG;
  spec.halfWidth = 1;
  const Kernel k = buildKernel(spec);
  REQUIRE(k.side() == 3);

  long double norm = 0.0L;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) norm += std::fabs(oracle::dog(i / 0.24L, j / 0.24L));
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const double expected = static_cast<double>(oracle::dog(i / 0.24L, j / 0.24L) / norm);
      CHECK(k.atOffset(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK(k.atOffset(0, 0) > 0.0);
  CHECK(k.atOffset(-1, -1) < 0.0);
  CHECK(k.atOffset(1, 1) < 0.0);
  CHECK(k.atOffset(-1, 1) < 0.0);
  CHECK(k.atOffset(1, -1) < 0.0);
}

TEST_CASE("kernel invariants over a parameter sweep")
{
  for (auto kind : {KernelKind::DoG, KernelKind::Gaussian}) {
    for (double sigma : {0.1, 0.24, 0.348, 0.5046, 0.7317, 1.0, 2.5}) {
      for (int L = 1; L <= 6; ++L) {
        KernelSpec spec{sigma, 0, 0, kind, L};
        const Kernel k = buildKernel(spec);
        CAPTURE(sigma);
        CAPTURE(L);
        CHECK(std::abs(k.l1Norm() - 1.0) < 1e-12);
        for (int i = -L; i <= L; ++i) {
          for (int j = -L; j <= L; ++j) {
            CHECK(k.atOffset(i, j) == k.atOffset(j, i));
            CHECK(k.atOffset(i, j) == k.atOffset(-i, -j));
            CHECK(k.atOffset(i, j) == k.atOffset(-i, j));
          }
        }
        if (kind == KernelKind::Gaussian) {
          CHECK(std::abs(k.sum() - 1.0) < 1e-12);
          for (double w : k.weights()) CHECK(w >= 0.0);
        } else {
          CHECK(k.atOffset(0, 0) > 0.0);
        }
      }
    }
  }
}

TEST_CASE("standard DoG banks carry mixed signs")
{
  for (auto name : {BankName::OneDoG, BankName::FourDoG}) {
    const FilterBank bank = standardBank(name);
    for (const Kernel & k : bank.kernels()) {
      CHECK(k.sum() > -1.0);
      CHECK(k.sum() < 1.0);
      CHECK(std::abs(k.sum()) < k.l1Norm());
    }
  }
}

TEST_CASE("shift invariance")
{
  KernelSpec centered{0.5046, 0, 0, KernelKind::DoG, 3};
  KernelSpec shifted{0.5046, 5, 7, KernelKind::DoG, 3};
  const Kernel a = buildKernel(centered);
  const Kernel b = buildKernel(shifted);
  for (int i = -4; i <= 4; ++i) {
    for (int j = -4; j <= 4; ++j) {
      CHECK(b.at(5 + i, 7 + j) == a.at(i, j));
    }
  }
  CHECK(b.at(5 + 4, 7) == 0.0);
}

TEST_CASE("kernel spec validation")
{
  CHECK_THROWS_AS(buildKernel({0.0, 0, 0, KernelKind::DoG, 1}), std::invalid_argument);
  CHECK_THROWS_AS(buildKernel({0.24, 0, 0, KernelKind::DoG, 0}), std::invalid_argument);
  CHECK_THROWS_AS(buildKernel({std::nan(""), 0, 0, KernelKind::Gaussian, 1}),
                  std::invalid_argument);
}

TEST_CASE("standard banks")
{
  const FilterBank four = standardBank(BankName::FourDoG);
  CHECK(four.scales() == std::vector<double>{0.24, 0.348, 0.5046, 0.7317});
  CHECK((four.kind() == BankKind::DoG));
  const int sides[] = {3, 5, 7, 9};
  for (std::size_t s = 0; s < 4; ++s) CHECK(four.kernel(s).side() == sides[s]);

  const FilterBank fsm = standardBank("FSM");
  REQUIRE(fsm.size() == 1);
  CHECK(fsm.kernel(0).side() == 1);
  CHECK(fsm.kernel(0).atOffset(0, 0) == 1.0);

  const FilterBank twoGauss = standardBank("TwoGauss");
  CHECK(twoGauss.size() == 2);
  for (const Kernel & k : twoGauss.kernels())
    for (double w : k.weights()) CHECK(w > 0.0);

  CHECK_THROWS_AS(standardBank("FiveDoG"), std::invalid_argument);
  CHECK((parseBankName("ThreeGauss") == BankName::ThreeGauss));
  CHECK(!parseBankName("threegauss").has_value());
}

TEST_CASE("custom banks")
{
  CHECK_THROWS_AS(FilterBank::make(BankKind::DoG, {0.5, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(FilterBank::make(BankKind::DoG, {}), std::invalid_argument);
  const int widths[] = {2, 2};
  const FilterBank b = FilterBank::make(BankKind::Gaussian, {0.24, 0.348}, widths);
  CHECK(b.kernel(0).side() == 5);
  const int bad[] = {2};
  CHECK_THROWS_AS(FilterBank::make(BankKind::Gaussian, {0.24, 0.348}, bad), std::invalid_argument);
}

TEST_CASE("border renormalization")
{
  const Kernel k = standardBank(BankName::ThreeDoG).kernel(2);
  const Image scale = borderRenormalization(k, 10, 12);
  CHECK(scale(5, 5) == 1.0);
  // Corner position keeps only the bottom-right quadrant of the template.
  double clipped = 0.0;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) clipped += std::abs(k.atOffset(i, j));
  CHECK(scale(0, 0) == doctest::Approx(1.0 / clipped).epsilon(1e-13));
}
