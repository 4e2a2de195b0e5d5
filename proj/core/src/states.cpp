#include "spinbatt/states.hpp"

#include <cmath>
#include <stdexcept>

#include "eig.hpp"

namespace spinbatt {

InverseTemperature::InverseTemperature(double beta) : beta_(beta) {
  if (!(beta >= 0.0)) {
    throw std::invalid_argument("inverse temperature must satisfy beta >= 0");
  }
}

DensityOperator pure_state(const Vector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("cannot build a state from the zero vector");
  }
  const Vector unit = psi / norm;
  return DensityOperator{unit * unit.adjoint(), 1.0};
}

GroundStateResult ground_state(const NormalizedHamiltonian& h) {
  const eig::Lowest lowest = eig::lowest_two(h.matrix);
  GroundStateResult out{pure_state(lowest.vec), lowest.e0, false};
  out.degenerate = (lowest.e1 - lowest.e0) < 1e-10;
  return out;
}

RealVector gibbs_weights(const RealVector& energies, double beta) {
  const double e_min = energies.minCoeff();
  RealVector w = (-beta * (energies.array() - e_min)).exp();
  w /= w.sum();
  return w;
}

DensityOperator thermal_state(const NormalizedHamiltonian& h,
                              InverseTemperature beta, bool on_raw_spectrum) {
  const eig::Decomposition dec = eig::full(h.matrix);
  RealVector energies = dec.values;
  if (on_raw_spectrum) {
    const double width = h.e_max - h.e_min;
    energies = 0.5 * (width * energies.array() + (h.e_max + h.e_min));
  }
  const RealVector w = gibbs_weights(energies, beta.beta());

  DensityOperator out;
  out.matrix = dec.vectors * w.asDiagonal() * dec.vectors.adjoint();
  out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
  out.purity = w.squaredNorm();
  return out;
}

}  // namespace spinbatt
