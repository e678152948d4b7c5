#include <catch2/catch.hpp>

#include <cmath>

#include "superdark/coupling.hpp"
#include "superdark/dark_state.hpp"
#include "superdark/decay.hpp"
#include "superdark/geometry.hpp"
#include "superdark/tuning.hpp"

using namespace superdark;

TEST_CASE("tune_frequencies: three-atom chain with unit coupling",
          "[tuning]") {
  // ka = 1 makes the nearest-neighbour perpendicular coupling exactly 1.
  const auto array = make_chain({3, 1.0}, Polarization::perpendicular);
  const auto u = coupling_chain(array);
  const auto c = binomial_dark_state(3, Polarization::perpendicular);
  const auto tuned = tune_frequencies(u, c);

  CHECK(tuned.eigenenergy == Approx(-19.0 / 12.0).margin(1e-14));
  CHECK(tuned.shifts[0] == Approx(7.0 / 24.0).margin(1e-14));
  CHECK(tuned.shifts[1] == Approx(-7.0 / 12.0).margin(1e-14));
  CHECK(tuned.shifts[2] == Approx(7.0 / 24.0).margin(1e-14));
  CHECK(tuned.shifts[1] - tuned.shifts[0] == Approx(-7.0 / 8.0).margin(1e-14));
}

TEST_CASE("tune_frequencies: antisymmetric pair needs no shifts", "[tuning]") {
  const auto array = make_chain({2, 0.7}, Polarization::perpendicular);
  const auto u = coupling_chain(array);
  const auto tuned =
      tune_frequencies(u, binomial_dark_state(2, Polarization::perpendicular));
  CHECK(tuned.shifts[0] == Approx(0.0).margin(1e-14));
  CHECK(tuned.shifts[1] == Approx(0.0).margin(1e-14));
  CHECK(tuned.eigenenergy == Approx(-u.matrix(0, 1)).margin(1e-12));
}

TEST_CASE("tune_frequencies: four-atom shift ratio", "[tuning]") {
  const auto array = make_chain({4, 0.37}, Polarization::parallel);
  const auto u = coupling_chain(array);
  const auto tuned =
      tune_frequencies(u, binomial_dark_state(4, Polarization::parallel));
  const double unn = nearest_neighbour_coupling(array);
  CHECK((tuned.shifts[1] - tuned.shifts[0]) / unn ==
        Approx(-37.0 / 27.0).margin(1e-12));
}

TEST_CASE("tune_frequencies: rejects targets with zero components",
          "[tuning]") {
  const auto array = make_chain({3, 0.5}, Polarization::perpendicular);
  const auto u = coupling_chain(array);
  const ExcitonVector c({1.0, 0.0, -1.0}, Polarization::perpendicular);
  CHECK_THROWS_AS(tune_frequencies(u, c), usage_error);
}

TEST_CASE("build_hamiltonian: zero shifts reproduce U", "[tuning]") {
  const auto array = make_chain({2, 0.9}, Polarization::parallel);
  const auto u = coupling_chain(array);
  const auto h = build_hamiltonian(u, {0.0, 0.0});
  CHECK(h.matrix(0, 1) == u.matrix(0, 1));
  CHECK(h.matrix(0, 0) == 0.0);
  CHECK_THROWS_AS(build_hamiltonian(u, {0.0}), usage_error);
}

TEST_CASE("build_hamiltonian: detuned pair spectrum", "[tuning]") {
  const auto array = make_chain({2, 1.0}, Polarization::perpendicular);
  const auto u = coupling_chain(array);  // off-diagonal exactly 1
  const double delta = 0.35;
  const auto h = build_hamiltonian(u, {delta, -delta});
  const auto eig = eigh_symmetric(h.matrix);
  const double want = std::sqrt(1.0 + delta * delta);
  CHECK(eig.values[0] == Approx(-want).margin(1e-13));
  CHECK(eig.values[1] == Approx(want).margin(1e-13));
}

TEST_CASE("tuned Hamiltonian has the target as an exact eigenstate",
          "[tuning]") {
  const auto array = make_chain({3, 1.0}, Polarization::perpendicular);
  const auto u = coupling_chain(array);
  const auto c = binomial_dark_state(3, Polarization::perpendicular);
  const auto tuned = tune_frequencies(u, c);
  const auto h = build_hamiltonian(u, tuned.shifts);

  CHECK(verify_eigenstate(h, c) <= 1e-12);

  // Cross-check through the eigensolver: the tuned pair must appear.
  const auto eig = eigh_symmetric(h.matrix);
  double best = 1e300;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    best = std::min(best, std::fabs(eig.values[k] - tuned.eigenenergy));
  CHECK(best <= 1e-11 * h.matrix.norm_inf());
}

TEST_CASE("verify_eigenstate: untuned chain rejects the binomial state",
          "[tuning]") {
  const auto array = make_chain({3, 1.0}, Polarization::perpendicular);
  const auto u = coupling_chain(array);
  const auto c = binomial_dark_state(3, Polarization::perpendicular);
  const TunedHamiltonian bare{u.matrix, u.mode};
  CHECK(verify_eigenstate(bare, c) >
        1e-3 * std::fabs(nearest_neighbour_coupling(array)));
}

TEST_CASE("verify_eigenstate: exact eigenvectors give tiny residuals",
          "[tuning]") {
  const auto array = make_chain({4, 0.6}, Polarization::parallel);
  const auto u = coupling_chain(array);
  const TunedHamiltonian bare{u.matrix, u.mode};
  const auto eig = eigh_symmetric(u.matrix);
  for (const auto& v : eig.vectors) {
    const ExcitonVector c(v, u.mode);
    CHECK(verify_eigenstate(bare, c) <= 1e-11 * u.matrix.norm_inf());
  }
}

TEST_CASE("gauge shift moves eigenvalues, not eigenvectors or rates",
          "[tuning][invariance]") {
  const auto array = make_chain({4, 0.5}, Polarization::perpendicular);
  const auto u = coupling_chain(array);
  const auto w = decay_matrix_chain(array);
  const auto c = binomial_dark_state(4, Polarization::perpendicular);
  const auto tuned = tune_frequencies(u, c);

  const double offset = 2.75;
  auto shifted = tuned.shifts;
  for (double& s : shifted) s += offset;

  const auto h0 = build_hamiltonian(u, tuned.shifts);
  const auto h1 = build_hamiltonian(u, shifted);
  const auto e0 = eigh_symmetric(h0.matrix);
  const auto e1 = eigh_symmetric(h1.matrix);
  for (std::size_t k = 0; k < e0.values.size(); ++k) {
    CHECK(e1.values[k] - e0.values[k] == Approx(offset).margin(1e-12));
    const double r0 = decay_rate(w, ExcitonVector(e0.vectors[k], w.mode));
    const double r1 = decay_rate(w, ExcitonVector(e1.vectors[k], w.mode));
    CHECK(r0 == Approx(r1).margin(1e-12));
  }
}

TEST_CASE("tuning solution is the unique zero-sum one", "[tuning]") {
  const auto array = make_chain({5, 0.8}, Polarization::parallel);
  const auto u = coupling_chain(array);
  const auto c = binomial_dark_state(5, Polarization::parallel);
  const auto tuned = tune_frequencies(u, c);

  double sum = 0.0;
  for (double s : tuned.shifts) sum += s;
  CHECK(std::fabs(sum) <= 1e-12);

  // Re-derive the shifts from the verified eigenpair: omega_j must equal
  // E - (U c)_j / c_j again.
  const auto uc = u.matrix.multiply(c.coefficients);
  for (std::size_t j = 0; j < 5; ++j) {
    const double again = tuned.eigenenergy - uc[j] / c.coefficients[j];
    CHECK(tuned.shifts[j] == Approx(again).margin(1e-12));
  }
}

TEST_CASE("mirror-symmetric targets give mirror-symmetric shifts",
          "[tuning][invariance]") {
  for (int n = 2; n <= 8; ++n) {
    const auto array = make_chain({n, 1.0}, Polarization::perpendicular);
    const auto u = coupling_chain(array);
    const auto tuned = tune_frequencies(
        u, binomial_dark_state(n, Polarization::perpendicular));
    for (int j = 0; j < n; ++j)
      CHECK(tuned.shifts[j] ==
            Approx(tuned.shifts[n - 1 - j]).margin(1e-12));
  }
}
