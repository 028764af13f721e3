// Copyright 2026 The holonoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "holonoise/ensemble.hpp"

namespace holonoise {
namespace {

constexpr double kTol = 1e-12;

// 1 - F for l_x = 1, gamma_x = 5, sigma_x = 1e-4, frozen from an independent
// double-precision evaluation of the printed closed form.
constexpr double kReferenceInfidelity = 5.904835268970136e-06;

ExperimentConfig reference_config() {
    ExperimentConfig c;
    c.lx = 1.0;
    c.ou_x = {1e-4, 5.0};
    c.ou_y = {0.0, 5.0};
    c.n_realizations = 20000;
    c.seed = 42;
    return c;
}

TEST(RunEnsemble, NoNoiseReproducesIdealState) {
    ExperimentConfig c = reference_config();
    c.ou_x.sigma = 0.0;
    c.n_realizations = 500;
    for (Basis j : {Basis::zero, Basis::one}) {
        c.j = j;
        const EnsembleResult r = run_ensemble(c);
        EXPECT_LE(max_abs_diff(r.rho_avg.matrix(), ideal_density(j).matrix()), 1e-15);
        EXPECT_EQ(r.F_mc, 1.0);
        EXPECT_EQ(r.I_mc, 1.0);
        EXPECT_EQ(r.F_stderr, 0.0);
        const ComparisonReport cmp = compare(r);
        EXPECT_EQ(cmp.z_fidelity, 0.0);
        EXPECT_EQ(cmp.z_purity, 0.0);
        EXPECT_EQ(cmp.small_error_residual, 0.0);
        EXPECT_TRUE(cmp.pass);
    }
}

TEST(RunEnsemble, SystematicOffsetsKeepStatePure) {
    ExperimentConfig c = reference_config();
    c.mode = NoiseMode::systematic;
    c.offset_x = 0.05;
    c.n_realizations = 1000;
    const EnsembleResult r = run_ensemble(c);
    EXPECT_NEAR(r.I_mc, 1.0, kTol);
    EXPECT_LT(r.F_mc, 1.0);
    // with beta irrelevant to F, the pure-state overlap is (1 + cos 2 alpha)/2
    const double alpha = std::exp(-2 * solve_dx(1.0)) * (1 - std::exp(-0.1));
    EXPECT_NEAR(r.F_mc, 0.5 * (1 + std::cos(2 * alpha)), kTol);

    const ComparisonReport cmp = compare(r);
    EXPECT_FALSE(cmp.analytic_applicable);
    EXPECT_LE(cmp.purity_deficit, kTol);
    EXPECT_TRUE(cmp.pass);
}

TEST(RunEnsemble, SystematicPurityForArbitraryOffsets) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-0.2, 0.2);
    ExperimentConfig c = reference_config();
    c.mode = NoiseMode::systematic;
    c.n_realizations = 37;
    for (int k = 0; k < 20; ++k) {
        c.offset_x = u(rng);
        c.offset_y = u(rng);
        EXPECT_NEAR(run_ensemble(c).I_mc, 1.0, kTol);
    }
}

class StochasticReference : public ::testing::Test {
  protected:
    static void SetUpTestSuite() { result_ = new EnsembleResult(run_ensemble(reference_config())); }
    static void TearDownTestSuite() { delete result_; }
    static inline EnsembleResult *result_ = nullptr;
};

TEST_F(StochasticReference, FidelityAgreesWithClosedForm) {
    const EnsembleResult &r = *result_;
    EXPECT_NEAR(1.0 - r.F_analytic, kReferenceInfidelity, 2e-16);
    EXPECT_LE(std::abs(r.F_mc - r.F_analytic), 3 * r.F_stderr);
    EXPECT_GT(r.F_stderr, 0.0);
}

TEST_F(StochasticReference, FidelityIsLinearInTheState) {
    EXPECT_NEAR(result_->F_mc, result_->F_realization_mean, kTol);
}

TEST_F(StochasticReference, AveragingMixesTheState) {
    const EnsembleResult &r = *result_;
    EXPECT_LT(r.I_mc, 1.0 - 5 * r.I_stderr);
    EXPECT_GE(r.I_mc, 2 * r.F_mc - 1 - 5 * (r.F_stderr + r.I_stderr));
    EXPECT_GE(r.F_mc, 0.0);
    EXPECT_LE(r.F_mc, 1.0);
    EXPECT_NEAR(r.f_mc, std::sqrt(r.F_mc), 1e-15);
}

TEST_F(StochasticReference, ComparisonPasses) {
    const ComparisonReport c = compare(*result_);
    EXPECT_TRUE(c.analytic_applicable);
    EXPECT_LE(c.z_fidelity, 3.0);
    EXPECT_LE(c.z_purity, 3.0);
    EXPECT_TRUE(c.small_error_ok);
    EXPECT_TRUE(c.pass);
}

TEST(RunEnsemble, IndependentOfThreadCount) {
    ExperimentConfig c = reference_config();
    c.n_realizations = 3000;
    c.ou_y.sigma = 1e-4;
    const EnsembleResult a = run_ensemble(c);
    c.threads = 3;
    const EnsembleResult b = run_ensemble(c);
    c.threads = 8;
    const EnsembleResult d = run_ensemble(c);
    EXPECT_EQ(a.rho_avg.matrix(), b.rho_avg.matrix());
    EXPECT_EQ(a.rho_avg.matrix(), d.rho_avg.matrix());
    EXPECT_EQ(a.F_stderr, b.F_stderr);
    EXPECT_EQ(a.I_stderr, d.I_stderr);
}

TEST(RunEnsemble, FewerRealizationsThanBatches) {
    ExperimentConfig c = reference_config();
    c.n_realizations = 1;
    const EnsembleResult r = run_ensemble(c);
    EXPECT_EQ(r.n_used, 1u);
    EXPECT_EQ(r.F_stderr, 0.0);
    EXPECT_NEAR(r.I_mc, 1.0, kTol);  // a single realization is pure
    c.n_realizations = 7;
    EXPECT_GT(run_ensemble(c).F_stderr, 0.0);
}

TEST(RunEnsemble, DiagonalShiftHasNegativeSign) {
    // <j|rho|j> - 1/2 = -2 e^{-2 d_x} l_x sigma_x to leading order
    ExperimentConfig c = reference_config();
    c.ou_x.sigma = 1e-3;
    for (Basis j : {Basis::zero, Basis::one}) {
        c.j = j;
        const EnsembleResult r = run_ensemble(c);
        const double shift = r.rho_avg.element(j, j).real() - 0.5;
        const double predicted = analytic_rho(c, j)(index(j), index(j)).real() - 0.5;
        // sd of (sin 2 alpha)/2 is about sqrt(<alpha^2>)
        const double se = std::sqrt(1.0 - analytic_fidelity(c)) / std::sqrt(static_cast<double>(c.n_realizations));
        EXPECT_LT(predicted, 0.0);
        EXPECT_NEAR(shift, predicted, 3 * se);
        const double flipped = analytic_rho(c, j, +1)(index(j), index(j)).real() - 0.5;
        EXPECT_GT(std::abs(shift - flipped), 5 * se);
    }
}

TEST(RunEnsemble, YPlaneNoiseIsNegligibleForFidelity) {
    ExperimentConfig c = reference_config();
    c.n_realizations = 5000;
    const EnsembleResult without = run_ensemble(c);
    c.ou_y.sigma = 1e-4;
    const EnsembleResult with = run_ensemble(c);
    EXPECT_LE(std::abs(with.F_mc - without.F_mc), 1e-2 * without.F_stderr);
    // with no x-plane noise the y-plane loop alone leaves the ideal state intact
    c.ou_x.sigma = 0.0;
    EXPECT_NEAR(run_ensemble(c).F_mc, 1.0, kTol);
}

TEST(RunEnsemble, RejectsInvalidConfig) {
    ExperimentConfig c = reference_config();
    c.lx = kPi / 4;
    EXPECT_THROW(run_ensemble(c), ConfigError);
    c.lx = kPi / 4 + 1e-7;
    EXPECT_THROW(run_ensemble(c), ConfigError);
    c = reference_config();
    c.n_realizations = 0;
    EXPECT_THROW(run_ensemble(c), ConfigError);
    c = reference_config();
    c.ou_x.sigma = -1.0;
    EXPECT_THROW(run_ensemble(c), ConfigError);
    c = reference_config();
    c.grid_dx = 0.0;
    EXPECT_THROW(run_ensemble(c), ConfigError);
    c = reference_config();
    c.ly = 0.0;
    EXPECT_THROW(run_ensemble(c), ConfigError);
}

TEST(AnalyticRho, NoNoiseIsIdealState) {
    ExperimentConfig c = reference_config();
    c.ou_x.sigma = 0.0;
    for (Basis j : {Basis::zero, Basis::one}) {
        EXPECT_LE(max_abs_diff(analytic_rho(c, j), ideal_density(j).matrix()), kTol);
    }
}

TEST(AnalyticRho, UnitTraceAndCoherenceLossIdentity) {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> sigma(0.0, 1e-2), gamma(0.1, 50.0), lx(0.9, 5.0);
    for (int k = 0; k < 100; ++k) {
        ExperimentConfig c = reference_config();
        c.ou_x = {sigma(rng), gamma(rng)};
        c.lx = lx(rng);
        const double dx = solve_dx(c.lx);
        for (Basis j : {Basis::zero, Basis::one}) {
            const C2Matrix rho = analytic_rho(c, j);
            EXPECT_NEAR(rho.trace().real(), 1.0, 1e-15);
            const double deviation = rho(index(j), index(complement(j))).real() - parity_sign(j) * 0.5;
            // |deviation| = <alpha^2> = 4 e^{-4 d_x} * double integral of the covariance
            EXPECT_NEAR(std::abs(deviation), 4 * std::exp(-4 * dx) * covariance_double_integral(c.ou_x, c.lx), 1e-15);
            // 1 - F = -(-1)^j * deviation
            EXPECT_NEAR(1.0 - analytic_fidelity(c), -parity_sign(j) * deviation, 1e-15);
        }
    }
}

TEST(AnalyticFidelity, Examples) {
    ExperimentConfig c = reference_config();
    EXPECT_NEAR(1.0 - analytic_fidelity(c), kReferenceInfidelity, 2e-16);
    c.ou_x.sigma = 0.0;
    EXPECT_EQ(analytic_fidelity(c), 1.0);
}

TEST(AnalyticFidelity, PrintedFormEqualsCovarianceForm) {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> sigma(1e-6, 1e-2), gamma(0.01, 100.0), lx(0.8, 10.0);
    for (int k = 0; k < 200; ++k) {
        ExperimentConfig c = reference_config();
        c.ou_x = {sigma(rng), gamma(rng)};
        c.lx = lx(rng);
        const double g = c.ou_x.gamma, l = c.lx;
        const double covariance_form =
            8 * c.ou_x.sigma / g * std::exp(-4 * solve_dx(l)) * (l - (1 - std::exp(-g * l)) / g);
        EXPECT_NEAR(1.0 - analytic_fidelity(c), covariance_form, 2e-16);
    }
}

TEST(AnalyticFidelity, InfidelityVanishesAsCorrelationLengthShrinks) {
    ExperimentConfig c = reference_config();
    double prev = 1.0;
    for (double g : {1.0, 10.0, 100.0, 1e3, 1e4, 1e5}) {
        c.ou_x.gamma = g;
        const double infid = 1.0 - analytic_fidelity(c);
        EXPECT_LT(infid, prev);
        prev = infid;
    }
    EXPECT_LT(prev, 1e-8);
}

TEST(AnalyticPurity, Examples) {
    EXPECT_EQ(analytic_purity(1.0).exact, 1.0);
    EXPECT_EQ(analytic_purity(1.0).small_error, 1.0);
    EXPECT_NEAR(analytic_purity(0.9).exact, 0.82, 1e-15);
    EXPECT_NEAR(analytic_purity(0.9).small_error, 0.8, 1e-15);
    EXPECT_EQ(analytic_purity(0.5).exact, 0.5);
    EXPECT_EQ(analytic_purity(0.5).small_error, 0.0);
}

TEST(AnalyticPurity, QuadraticFormVersusPurityOfExpandedState) {
    // purity(rho_analytic) = 1/2 + (1 - 2F)^2 / 2 + 2 delta^2 exactly, with
    // delta = 2 e^{-2 d_x} l_x sigma_x the population shift.
    std::mt19937_64 rng(54);
    std::uniform_real_distribution<double> sigma(1e-6, 1e-2), gamma(0.1, 20.0), lx(0.9, 5.0);
    for (int k = 0; k < 100; ++k) {
        ExperimentConfig c = reference_config();
        c.ou_x = {sigma(rng), gamma(rng)};
        c.lx = lx(rng);
        const C2Matrix rho = analytic_rho(c, Basis::zero);
        const double p = rho(0, 0).real() * rho(0, 0).real() + rho(1, 1).real() * rho(1, 1).real() +
                         2 * std::norm(rho(0, 1));
        const double delta = 2 * std::exp(-2 * solve_dx(c.lx)) * c.lx * c.ou_x.sigma;
        EXPECT_NEAR(p, analytic_purity(analytic_fidelity(c)).exact + 2 * delta * delta, 1e-14);
    }
}

TEST(AnalyticPurity, SecondOrderResidualBoundWhereCorrelationIsLong) {
    // the residual 2 delta^2 stays below 10 (1 - F)^2 when gamma_x l_x is small
    // and l_x is well above pi/4
    for (double g : {0.1, 0.5, 1.0}) {
        for (double l : {1.5, 2.0, 4.0}) {
            ExperimentConfig c = reference_config();
            c.ou_x = {1e-4, g};
            c.lx = l;
            const double F = analytic_fidelity(c);
            const C2Matrix rho = analytic_rho(c, Basis::zero);
            const double p = rho(0, 0).real() * rho(0, 0).real() + rho(1, 1).real() * rho(1, 1).real() +
                             2 * std::norm(rho(0, 1));
            EXPECT_LE(std::abs(p - analytic_purity(F).exact), 10 * (1 - F) * (1 - F)) << g << ' ' << l;
        }
    }
}

TEST(Compare, FlagsExtrapolatedNoise) {
    ExperimentConfig c = reference_config();
    c.ou_x.sigma = 2e-2;
    c.n_realizations = 200;
    const EnsembleResult r = run_ensemble(c);
    EXPECT_TRUE(r.analytic_extrapolated);
    EXPECT_FALSE(compare(r).analytic_applicable);
}

TEST(Compare, InfiniteZWhenStderrVanishesButResidualDoesNot) {
    EnsembleResult r;
    r.F_mc = 0.9;
    r.F_analytic = 0.8;
    r.I_mc = 0.82;
    r.I_analytic = 0.82;
    const ComparisonReport c = compare(r);
    EXPECT_TRUE(std::isinf(c.z_fidelity));
    EXPECT_FALSE(c.fidelity_ok);
    EXPECT_FALSE(c.pass);
}

} // namespace
} // namespace holonoise
