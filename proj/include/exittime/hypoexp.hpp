#ifndef EXITTIME_HYPOEXP_HPP
#define EXITTIME_HYPOEXP_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

// Reference distributions for validating the exit-time sampler. Nothing here
// is used on the simulation path.

namespace exittime {

class IllConditioned : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Law of a sum of independent exponentials with pairwise-distinct rates,
/// in partial-fraction form: pdf(t) = sum_i l_i lambda_i exp(-lambda_i t),
/// l_i = prod_{j != i} lambda_j / (lambda_j - lambda_i).
///
/// The coefficients alternate in sign and grow quickly as rates approach each
/// other, so construction rejects more than kMaxRates rates or any pair closer
/// than kMinRelativeSeparation (relative to the larger rate).
class HypoexpDistribution {
public:
  static constexpr std::size_t kMaxRates = 15;
  static constexpr double kMinRelativeSeparation = 1e-6;

  explicit HypoexpDistribution(std::vector<double> rates);

  const std::vector<double>& rates() const { return rates_; }
  const std::vector<double>& coefficients() const { return coefficients_; }

  double pdf(double t) const;
  double cdf(double t) const;

  /// t with |cdf(t) - r| <= 1e-10, by bisection on a doubling bracket.
  double inverse(double r) const;

  /// prod_i lambda_i / (lambda_i + s).
  double transform(double s) const;
  /// sum_i l_i lambda_i / (lambda_i + s); equals transform(s) analytically.
  double partial_fraction_transform(double s) const;

private:
  std::vector<double> rates_;
  std::vector<double> coefficients_;
};

class ErlangDistribution {
public:
  ErlangDistribution(double rate, std::uint64_t shape);

  double rate() const { return rate_; }
  std::uint64_t shape() const { return shape_; }

  /// rate^n t^{n-1} exp(-rate t) / (n-1)!
  double pdf(double t) const;
  double transform(double s) const;

private:
  double rate_;
  std::uint64_t shape_;
};

/// Adaptive Gauss-Kronrod over [0, inf). Throws QuadratureError when the
/// error estimate exceeds rel_tol times the L1 norm of the integrand.
double integrate_half_line(const std::function<double(double)>& f, double rel_tol = 1e-9);

/// Numerical Laplace transform on the real axis, s > 0.
double laplace_of_pdf(const std::function<double(double)>& pdf, double s);

/// |f(l + e, s) f(l - e, s) - f(l, s)^2| with f(x, s) = x / (x + s).
double approximation_gap(double lambda_tilde, double epsilon, double s);

struct TimeGrid {
  double t_max = 0.0;
  std::size_t points = 0;  // including both endpoints

  double step() const { return t_max / static_cast<double>(points - 1); }
  double at(std::size_t i) const { return static_cast<double>(i) * step(); }
};

struct TabulatedDensity {
  std::vector<double> t;
  std::vector<double> density;
};

/// Density of a sum of exponentials by iterated trapezoidal convolution on a
/// uniform grid. Rates need not be distinct. At most 6 rates; the grid step
/// must satisfy step * max(rate) <= 0.05.
TabulatedDensity pdf_by_numerical_convolution(std::span<const double> rates, const TimeGrid& grid);

}  // namespace exittime

#endif  // EXITTIME_HYPOEXP_HPP
