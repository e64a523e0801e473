#pragma once

// Composite consumption c(y, z) over young/old consumption, plus the
// housing-utility block u(c) = c^(1-gamma)/(1-gamma), v'(1) = m.
//
// The solver only talks to the Aggregator interface, so any homogeneous
// degree-1 aggregator can be plugged in; CES is the shipped instance.

namespace olg {

struct Partials {
  double c_y;
  double c_z;
};

struct SecondPartials {
  double c_yy;
  double c_yz;
  double c_zz;
};

class Aggregator {
 public:
  virtual ~Aggregator() = default;

  virtual double value(double y, double z) const = 0;
  virtual Partials partials(double y, double z) const = 0;
  virtual SecondPartials second_partials(double y, double z) const = 0;

  /// Marginal rate of substitution c_y / c_z.
  double mrs(double y, double z) const;

  /// Elasticity of intertemporal substitution c_y c_z / (c c_yz).
  double eis(double y, double z) const;
};

/// c(y,z) = ((1-beta) y^(1-sigma) + beta z^(1-sigma))^(1/(1-sigma)),
/// with the Cobb-Douglas form y^(1-beta) z^beta taken exactly at sigma == 1.
class CesAggregator final : public Aggregator {
 public:
  CesAggregator(double beta, double sigma);

  double beta() const noexcept { return beta_; }
  double sigma() const noexcept { return sigma_; }
  bool cobb_douglas() const noexcept { return sigma_ == 1.0; }

  double value(double y, double z) const override;
  Partials partials(double y, double z) const override;
  SecondPartials second_partials(double y, double z) const override;

  friend bool operator==(const CesAggregator& a, const CesAggregator& b) noexcept {
    return a.beta_ == b.beta_ && a.sigma_ == b.sigma_;
  }

 private:
  // g(x) = c(x, 1) and its derivative.
  double g(double x) const;
  double g_prime(double x, double gx) const;

  double beta_;
  double sigma_;
};

enum class GammaBranch { Below1, Equal1, Above1 };

struct HousingUtility {
  double gamma;  // inverse elasticity of substitution between consumption and housing
  double m;      // marginal utility of one unit of housing service

  HousingUtility(double gamma, double m);

  GammaBranch branch() const noexcept;

  friend bool operator==(const HousingUtility&, const HousingUtility&) = default;
};

}  // namespace olg
