#pragma once

#include "torsionlab/common.hpp"

#include <memory>
#include <string>
#include <vector>

namespace torsionlab {

// Radial Hamiltonian profile: a scalar function h of s = r^2 on [0,1] with
// h(1) = 0 and h'(1) = 0, the compact-support surrogate for a Hamiltonian
// vanishing near the boundary of the open disc. The generated velocity field
// is X = 2 h'(r^2) (-y, x); the induced angular speed in turns per unit time
// is h'(r^2) / pi.
class HamiltonianProfile {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual double h(double s) const = 0;
    virtual double dh(double s) const = 0;
    virtual double ddh(double s) const = 0;
    virtual std::string describe() const = 0;
  };

  HamiltonianProfile() = default;
  explicit HamiltonianProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  double h(double s) const { return impl_ ? impl_->h(s) : 0.0; }
  double dh(double s) const { return impl_ ? impl_->dh(s) : 0.0; }
  double ddh(double s) const { return impl_ ? impl_->ddh(s) : 0.0; }
  std::string describe() const { return impl_ ? impl_->describe() : "zero"; }

  /// Boundary normalization h(1)=0, h'(1)=0, checked by evaluation.
  bool boundary_normalized(double tol = 1e-12) const {
    return std::abs(h(1.0)) <= tol && std::abs(dh(1.0)) <= tol;
  }

 private:
  std::shared_ptr<const Impl> impl_;
};

HamiltonianProfile zero_profile();

/// lambda * (1 - s/width)^3 on [0, width), 0 beyond; C^2 across the edge.
HamiltonianProfile cubic_profile(double lambda = 1.0, double width = 1.0);

HamiltonianProfile sum_profile(const std::vector<HamiltonianProfile>& parts);

}  // namespace torsionlab
