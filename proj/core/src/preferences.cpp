#include "olg/preferences.hpp"

#include <cmath>
#include <sstream>

#include "olg/errors.hpp"

namespace olg {

namespace {

void check_interior(double y, double z) {
  if (!(y > 0.0) || !(z > 0.0) || !std::isfinite(y) || !std::isfinite(z)) {
    std::ostringstream os;
    os << "aggregator evaluated outside the positive orthant: (y, z) = (" << y << ", " << z << ")";
    fail(ErrorKind::Domain, os.str());
  }
}

}  // namespace

double Aggregator::mrs(double y, double z) const {
  const auto [c_y, c_z] = partials(y, z);
  return c_y / c_z;
}

double Aggregator::eis(double y, double z) const {
  const auto [c_y, c_z] = partials(y, z);
  return c_y * c_z / (value(y, z) * second_partials(y, z).c_yz);
}

CesAggregator::CesAggregator(double beta, double sigma) : beta_(beta), sigma_(sigma) {
  require(beta > 0.0 && beta < 1.0, ErrorKind::Validation, "CES beta must lie in (0, 1)");
  require(sigma > 0.0 && std::isfinite(sigma), ErrorKind::Validation, "CES sigma must be positive");
}

double CesAggregator::g(double x) const {
  if (cobb_douglas()) return std::pow(x, 1.0 - beta_);
  const double rho = 1.0 - sigma_;
  return std::pow((1.0 - beta_) * std::pow(x, rho) + beta_, 1.0 / rho);
}

double CesAggregator::g_prime(double x, double gx) const {
  return (1.0 - beta_) * std::pow(x / gx, -sigma_);
}

double CesAggregator::value(double y, double z) const {
  check_interior(y, z);
  // Degree-1 homogeneity: c(y, z) = z g(y/z).
  return z * g(y / z);
}

Partials CesAggregator::partials(double y, double z) const {
  check_interior(y, z);
  if (cobb_douglas()) {
    const double c = value(y, z);
    return {(1.0 - beta_) * c / y, beta_ * c / z};
  }
  const double c = value(y, z);
  return {(1.0 - beta_) * std::pow(y / c, -sigma_), beta_ * std::pow(z / c, -sigma_)};
}

SecondPartials CesAggregator::second_partials(double y, double z) const {
  check_interior(y, z);
  const double x = y / z;
  const double gx = g(x);
  const double gp = g_prime(x, gx);
  // g'' = sigma g' (x g' - g) / (x g) < 0, with g - x g' = c_z(x, 1).
  const double c_z = beta_ * std::pow(1.0 / gx, -sigma_);
  const double gpp = -sigma_ * gp * c_z / (x * gx);
  return {gpp / z, -(y / (z * z)) * gpp, (y * y / (z * z * z)) * gpp};
}

HousingUtility::HousingUtility(double gamma_, double m_) : gamma(gamma_), m(m_) {
  require(gamma > 0.0 && std::isfinite(gamma), ErrorKind::Validation, "gamma must be positive");
  require(m > 0.0 && std::isfinite(m), ErrorKind::Validation, "m must be positive");
}

GammaBranch HousingUtility::branch() const noexcept {
  if (gamma < 1.0) return GammaBranch::Below1;
  if (gamma == 1.0) return GammaBranch::Equal1;
  return GammaBranch::Above1;
}

}  // namespace olg
