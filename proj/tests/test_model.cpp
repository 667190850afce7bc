#include <doctest.h>

#include <cmath>
#include <random>

#include "polariton/model.hpp"

using namespace polariton;

namespace {

MolecularModel random_model(std::mt19937_64& rng, int levels) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    VectorXd e(levels);
    e[0] = 0.0;
    for (int i = 1; i < levels; ++i) e[i] = e[i - 1] + 0.5 + std::abs(u(rng));
    auto hermitian = [&] {
        MatrixXc a(levels, levels);
        for (int i = 0; i < levels; ++i)
            for (int j = 0; j < levels; ++j) a(i, j) = Complex(u(rng), u(rng));
        return MatrixXc((a + a.adjoint()) / 2.0);
    };
    return make_molecule(e, hermitian(), hermitian());
}

}  // namespace

TEST_CASE("two-level constructor places coupling and dipole off the diagonal") {
    const MolecularModel m = two_level(1.5, 0.2, 0.7);
    CHECK(m.levels() == 2);
    CHECK(m.energies[1] == 1.5);
    CHECK(m.coupling(1, 0) == Complex(0.2));
    CHECK(m.coupling(0, 0) == Complex(0.0));
    CHECK(m.dipole(0, 1) == Complex(0.7));
}

TEST_CASE("molecule validation") {
    VectorXd e(2);
    e << 0.0, 1.0;
    MatrixXc z = MatrixXc::Zero(2, 2);
    MatrixXc bad = z;
    bad(0, 1) = Complex(0.1, 0.0);
    CHECK_THROWS_AS(make_molecule(e, bad, z), std::invalid_argument);
    CHECK_THROWS_AS(make_molecule(e, z, MatrixXc::Zero(3, 3)), std::invalid_argument);
    VectorXd one(1);
    one << 0.0;
    CHECK_THROWS_AS(make_molecule(one, MatrixXc::Zero(1, 1), MatrixXc::Zero(1, 1)), std::invalid_argument);
    VectorXd unsorted(2);
    unsorted << 1.0, 0.0;
    CHECK_THROWS_AS(make_molecule(unsorted, z, z), std::invalid_argument);
}

TEST_CASE("cavity, ensemble, disorder, pulse and grid invariants") {
    CHECK_THROWS_AS(make_cavity(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_cavity(1.0, -0.1), std::invalid_argument);
    CHECK_NOTHROW(make_cavity(1.0, 0.0));
    CHECK_THROWS_AS(make_ensemble(0, DisorderSpec{}), std::invalid_argument);
    CHECK_THROWS_AS(make_disorder(GaussianDisorder{0.0}, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(make_disorder(NoDisorder{}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_disorder(SampledDisorder{{1.0, 2.0}, {0.3, 0.3}}, 1e-3), std::invalid_argument);

    const DisorderSpec uniform = make_disorder(SampledDisorder{{1.0, 2.0, 3.0, 4.0}, {}}, 1e-3);
    const auto& s = std::get<SampledDisorder>(uniform.kind);
    REQUIRE(s.weights.size() == 4);
    CHECK(s.weights[2] == doctest::Approx(0.25));

    CHECK_THROWS_AS(make_pulse(0.1, 1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_time_grid(1.0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_time_grid(0.0, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_time_grid(0.0, 100.0, 0.01, 1000), std::invalid_argument);
    const TimeGrid g = make_time_grid(0.0, 1.0, 0.1);
    CHECK(g.steps() == 10);
    CHECK(g.time(10) == doctest::Approx(1.0));
}

TEST_CASE("bare Hamiltonian follows the drive") {
    const MolecularModel m = two_level(1.0, 0.1, 1.0);
    const DrivePulse off = no_drive();
    for (double t : {0.0, 3.0, 17.5}) {
        const MatrixXc h = bare_hamiltonian(m, off, t);
        CHECK(h(0, 1) == Complex(0.0));
        CHECK(h(1, 1) == Complex(1.0));
    }
    const DrivePulse p = make_pulse(0.3, 1.2, 5.0, 2.0);
    const MatrixXc h = bare_hamiltonian(m, p, 5.0);
    CHECK(h(1, 0).real() == doctest::Approx(-0.3 * std::cos(1.2 * 5.0)).epsilon(1e-15));
    CHECK(pulse_field(p, 5.0 + 2.0) == doctest::Approx(0.3 * std::cos(1.2 * 7.0) * std::exp(-0.5)));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const MolecularModel r = random_model(rng, 2 + trial % 4);
        CHECK(hermiticity_error(bare_hamiltonian(r, p, 0.37 * trial)) == 0.0);
    }
}

TEST_CASE("coupling conventions are inverse to each other") {
    CHECK(rwa_coupling_from_field(std::sqrt(2.0) * 0.1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(field_coupling_from_rwa(rwa_coupling_from_field(0.37)) == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("pseudoparticle commutators survive the mapping") {
    for (int m = 1; m <= 4; ++m) {
        CAPTURE(m);
        CHECK(verify_mapping_commutators(m, Statistics::fermion));
        CHECK(verify_mapping_commutators(m, Statistics::boson, 3));
    }
    CHECK(verify_mapping_commutators(3, Statistics::boson, 4));
    CHECK_THROWS_AS(verify_mapping_commutators(7, Statistics::fermion), std::length_error);
    CHECK_THROWS_AS(verify_mapping_commutators(2, Statistics::boson, 1), std::length_error);
}
