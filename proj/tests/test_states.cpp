// Copyright 2026 The usf Authors
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

#include "usf/states.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "catch_amalgamated.hpp"
#include "test_support.hpp"

using namespace usf;
using namespace usf::states;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

namespace {

// Independent construction of D(α)S(ζ)|0⟩ by exponentiating the truncated
// mode operators in a much larger space, then comparing low Fock
// amplitudes. Test-only oracle; slow but assumption-free.
ComplexVector squeezed_coherent_by_expm(Complex alpha, Complex zeta, int dim,
                                        int keep) {
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    const ComplexMatrix ad = a.adjoint();
    const ComplexMatrix squeeze =
        (0.5 * (std::conj(zeta) * (a * a) - zeta * (ad * ad))).exp();
    const ComplexMatrix displace = (alpha * ad - std::conj(alpha) * a).exp();
    ComplexVector v = ComplexVector::Zero(dim);
    v(0) = 1.0;
    v = displace * (squeeze * v);
    return v.head(keep);
}

void align_phase(ComplexVector& v) {
    const double scale = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12 * scale) {
            v *= std::conj(v(i)) / std::abs(v(i));
            return;
        }
    }
}

}  // namespace

TEST_CASE("coherent vacuum") {
    const PureState vac = coherent_state(Complex(0.0, 0.0));
    CHECK(vac.truncation_deficit == 0.0);
    CHECK(vac.amplitudes(0) == Complex(1.0, 0.0));
    CHECK(mean_photon_number(vac) == 0.0);
}

TEST_CASE("coherent amplitudes and mean photon number") {
    const PureState s = coherent_state(Complex(1.0, 0.0), 30);
    double fact = 1.0;
    for (int n = 0; n < 12; ++n) {
        if (n > 0) fact *= n;
        CHECK(std::abs(s.amplitudes(n) -
                       std::exp(-0.5) / std::sqrt(fact)) <= 1e-12);
    }
    CHECK(mean_photon_number(s) == Catch::Approx(1.0).margin(1e-10));
    CHECK(s.amplitudes.norm() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("coherent overlap law") {
    const PureState a = coherent_state(Complex(1.0, 0.0), 40);
    const PureState b = coherent_state(Complex(0.5, 0.0), 40);
    const double overlap = std::norm(a.amplitudes.dot(b.amplitudes));
    CHECK(overlap == Catch::Approx(std::exp(-0.25)).margin(1e-12));
}

TEST_CASE("coherent truncation guard") {
    CHECK_THROWS_AS(coherent_state(Complex(2.0, 0.0), 5), TruncationTooSmall);
    try {
        coherent_state(Complex(2.0, 0.0), 5);
    } catch (const TruncationTooSmall& e) {
        CHECK(e.deficit > e.bound);
    }
}

TEST_CASE("coherent phase convention for complex amplitude") {
    const PureState s = coherent_state(Complex(0.6, -0.8));
    CHECK(s.amplitudes(0).imag() == Catch::Approx(0.0).margin(1e-15));
    CHECK(s.amplitudes(0).real() > 0.0);
}

TEST_CASE("squeezed state reduces to vacuum and to coherent") {
    const PureState vac = squeezed_coherent_state(0.0, 0.0);
    CHECK(vac.dim() == 1);
    CHECK(std::abs(vac.amplitudes(0) - Complex(1.0, 0.0)) <= 1e-15);

    const PureState sq = squeezed_coherent_state(Complex(0.9, 0.3), 0.0, 40);
    const PureState coh = coherent_state(Complex(0.9, 0.3), 40);
    CHECK((sq.amplitudes - coh.amplitudes).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("squeezed vacuum has even amplitudes and known series") {
    const double r = 0.5;
    const PureState s = squeezed_coherent_state(0.0, r, 40);

    for (int n = 1; n < s.dim(); n += 2) {
        CHECK(std::abs(s.amplitudes(n)) <= 1e-14);
    }
    CHECK(mean_photon_number(s) ==
          Catch::Approx(std::sinh(r) * std::sinh(r)).margin(1e-10));

    // c_{2m} = μ^{-1/2} (-tanh r / 2)^m sqrt((2m)!)/m!
    const double mu = std::cosh(r);
    double factor = 1.0 / std::sqrt(mu);
    for (int m = 0; m < 8; ++m) {
        if (m > 0) {
            factor *= -0.5 * std::tanh(r) *
                      std::sqrt(static_cast<double>(2 * m) * (2 * m - 1)) / m;
        }
        CHECK(std::abs(s.amplitudes(2 * m) - factor) <= 1e-12);
    }
}

TEST_CASE("squeezed coherent mean photon identity") {
    const PureState s = squeezed_coherent_state(1.0, 0.5);
    const double expected = 1.0 + std::sinh(0.5) * std::sinh(0.5);
    CHECK(mean_photon_number(s) == Catch::Approx(expected).margin(1e-8));
    CHECK(expected == Catch::Approx(1.27154).margin(1e-5));
}

TEST_CASE("squeezed coherent matches operator-exponential oracle") {
    const Complex alpha(0.7, 0.4);
    const Complex zeta = std::polar(0.6, 1.1);
    ComplexVector oracle = squeezed_coherent_by_expm(alpha, zeta, 200, 40);
    align_phase(oracle);

    const PureState s = squeezed_coherent_state(alpha, zeta, 40, 1e-6);
    ComplexVector mine = s.amplitudes;
    align_phase(mine);
    // The constructor renormalizes over 40 levels; undo for the comparison.
    mine *= std::sqrt(1.0 - s.truncation_deficit);

    CHECK((mine - oracle).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("tmsv basics") {
    const PureState vac = tmsv_state(0.0);
    CHECK(vac.dim() == 1);
    CHECK(vac.mode_dims == std::vector<int>{1, 1});

    const PureState s = tmsv_state(1.0, 45);
    const double lambda = std::sqrt(0.5);
    for (int n = 0; n < 10; ++n) {
        const double expected = std::sqrt(0.5) * std::pow(lambda, n);
        CHECK(std::abs(s.amplitudes(n * 45 + n) - expected) <= 1e-12);
    }
    CHECK(mean_photon_number(s, 0) == Catch::Approx(1.0).margin(1e-10));
    CHECK(mean_photon_number(s, 1) == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("tmsv reduced state is thermal") {
    const PureState s = tmsv_state(1.0, 40);
    const DensityOperator reduced = partial_trace(s.to_density(), {40, 40}, 0);
    const auto eig = linalg::eig_hermitian(reduced.matrix());
    const double lambda_sq = 0.5;
    for (int n = 0; n < 12; ++n) {
        CHECK(eig.eigenvalues(n) ==
              Catch::Approx((1.0 - lambda_sq) * std::pow(lambda_sq, n))
                  .margin(1e-10));
    }
}

TEST_CASE("tmsv truncation guard") {
    CHECK_THROWS_AS(tmsv_state(4.0, 20), TruncationTooSmall);
}

TEST_CASE("schmidt qudit states") {
    const PureState product =
        schmidt_entangled_qudit(SchmidtVector::from({1.0, 0.0}), 2);
    CHECK(std::abs(product.amplitudes(0) - Complex(1.0, 0.0)) <= 1e-15);
    CHECK(product.amplitudes.tail(3).cwiseAbs().maxCoeff() == 0.0);

    const PureState bell =
        schmidt_entangled_qudit(SchmidtVector::from({0.5, 0.5}), 2);
    CHECK(std::abs(bell.amplitudes(0) - std::sqrt(0.5)) <= 1e-15);
    CHECK(std::abs(bell.amplitudes(3) - std::sqrt(0.5)) <= 1e-15);

    const PureState skew =
        schmidt_entangled_qudit(SchmidtVector::from({0.7, 0.3}), 2);
    CHECK(skew.amplitudes.norm() == Catch::Approx(1.0).margin(1e-12));
    const auto eig = linalg::eig_hermitian(
        partial_trace(skew.to_density(), {2, 2}, 0).matrix());
    CHECK(eig.eigenvalues(0) == Catch::Approx(0.7).margin(1e-12));
    CHECK(eig.eigenvalues(1) == Catch::Approx(0.3).margin(1e-12));

    CHECK_THROWS_AS(schmidt_entangled_qudit(SchmidtVector::from({1.0}), 2),
                    DimensionMismatch);
}

TEST_CASE("mean photon number of known states") {
    CHECK(mean_photon_number(coherent_state(Complex(2.0, 0.0))) ==
          Catch::Approx(4.0).margin(1e-9));
    const PureState two_mode = tmsv_state(1.0);
    CHECK(mean_photon_number(two_mode, 1) == Catch::Approx(1.0).margin(1e-9));
    CHECK_THROWS_AS(mean_photon_number(two_mode, 2), std::invalid_argument);

    // Density-operator overload, single- and two-mode index bookkeeping.
    const int d = two_mode.mode_dims[0];
    const auto rho = two_mode.to_density();
    CHECK(mean_photon_number(rho, {d, d}, 0) == Catch::Approx(1.0).margin(1e-9));
    CHECK(mean_photon_number(rho, {d, d}, 1) == Catch::Approx(1.0).margin(1e-9));
    const auto coh = coherent_state(Complex(1.0, 0.0), 30);
    CHECK(mean_photon_number(coh.to_density(), {30}) ==
          Catch::Approx(1.0).margin(1e-9));
    CHECK_THROWS_AS(mean_photon_number(rho, {d, d + 1}, 0), DimensionMismatch);
}

TEST_CASE("constructed states are normalized within the bound", "[property]") {
    for (double n : {0.25, 1.0, 4.0}) {
        const PureState c = coherent_state(std::sqrt(n));
        CHECK(c.amplitudes.norm() == Catch::Approx(1.0).margin(1e-12));
        CHECK(c.truncation_deficit <= kDefaultTruncationBound);

        const PureState t = tmsv_state(n);
        CHECK(t.amplitudes.norm() == Catch::Approx(1.0).margin(1e-12));
        CHECK(t.truncation_deficit <= kDefaultTruncationBound);
    }
    for (double r : {0.25, 1.0, 1.3}) {
        const PureState s = squeezed_coherent_state(1.0, r);
        CHECK(s.amplitudes.norm() == Catch::Approx(1.0).margin(1e-12));
        CHECK(s.truncation_deficit <= kDefaultTruncationBound);
    }

    // Squeezing past the level cap is refused rather than silently cut.
    CHECK_THROWS_AS(squeezed_coherent_state(1.0, 2.0), TruncationTooSmall);
}

TEST_CASE("density operator validation") {
    ComplexMatrix bad_trace = 0.7 * ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityOperator::from_matrix(bad_trace), InvalidState);

    ComplexMatrix not_herm(2, 2);
    not_herm << Complex(0.5, 0), Complex(0.1, 0), Complex(0.3, 0),
        Complex(0.5, 0);
    CHECK_THROWS_AS(DensityOperator::from_matrix(not_herm), InvalidState);

    ComplexMatrix negative(2, 2);
    negative << 1.5, 0, 0, -0.5;
    const auto rho = DensityOperator::from_matrix(negative);
    CHECK_THROWS_AS(rho.validate(), InvalidState);
}

TEST_CASE("schmidt vector and power budget validation") {
    CHECK_THROWS_AS(SchmidtVector::from({0.4, 0.4}), InvalidState);
    CHECK_THROWS_AS(SchmidtVector::from({1.2, -0.2}), InvalidState);
    CHECK_THROWS_AS(PowerBudget::split(1.0, 1.5), std::invalid_argument);
    const auto b = PowerBudget::split(2.0, 0.5);
    CHECK(b.n_bar + b.m_bar == Catch::Approx(b.n_total).margin(1e-12));
}
