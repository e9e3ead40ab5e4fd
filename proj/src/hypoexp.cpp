#include "exittime/hypoexp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace exittime {

HypoexpDistribution::HypoexpDistribution(std::vector<double> rates) : rates_(std::move(rates)) {
  if (rates_.empty()) {
    throw std::invalid_argument("hypoexponential needs at least one rate");
  }
  if (rates_.size() > kMaxRates) {
    throw IllConditioned("hypoexponential oracle is limited to " + std::to_string(kMaxRates) +
                         " rates");
  }
  for (double r : rates_) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("hypoexponential rates must be positive and finite");
    }
  }
  const std::size_t n = rates_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(rates_[i] - rates_[j]);
      if (gap < kMinRelativeSeparation * std::max(rates_[i], rates_[j])) {
        throw IllConditioned("hypoexponential rates " + std::to_string(rates_[i]) + " and " +
                             std::to_string(rates_[j]) + " are too close");
      }
    }
  }
  coefficients_.assign(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        coefficients_[i] *= rates_[j] / (rates_[j] - rates_[i]);
      }
    }
  }
}

double HypoexpDistribution::pdf(double t) const {
  if (t < 0.0) {
    return 0.0;
  }
  double p = 0.0;
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    p += coefficients_[i] * rates_[i] * std::exp(-rates_[i] * t);
  }
  return std::max(p, 0.0);
}

double HypoexpDistribution::cdf(double t) const {
  if (t <= 0.0) {
    return 0.0;
  }
  double c = 0.0;
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    c += coefficients_[i] * -std::expm1(-rates_[i] * t);
  }
  return std::clamp(c, 0.0, 1.0);
}

double HypoexpDistribution::inverse(double r) const {
  if (!(r >= 0.0 && r < 1.0)) {
    throw std::invalid_argument("inverse requires r in [0, 1)");
  }
  if (r == 0.0) {
    return 0.0;
  }
  double lo = 0.0;
  double hi = 0.0;
  for (double rate : rates_) {
    hi += 1.0 / rate;
  }
  while (cdf(hi) < r) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw std::runtime_error("inverse: failed to bracket the quantile");
    }
  }
  // Bisect to full double resolution; the CDF is monotone so this cannot fail.
  for (int iter = 0; iter < 2000 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi;
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double HypoexpDistribution::transform(double s) const {
  double p = 1.0;
  for (double rate : rates_) {
    p *= rate / (rate + s);
  }
  return p;
}

double HypoexpDistribution::partial_fraction_transform(double s) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    sum += coefficients_[i] * rates_[i] / (rates_[i] + s);
  }
  return sum;
}

ErlangDistribution::ErlangDistribution(double rate, std::uint64_t shape)
    : rate_(rate), shape_(shape) {
  if (!(rate_ > 0.0) || shape_ < 1) {
    throw std::invalid_argument("Erlang requires rate > 0 and shape >= 1");
  }
}

double ErlangDistribution::pdf(double t) const {
  if (t < 0.0) {
    return 0.0;
  }
  const double n = static_cast<double>(shape_);
  if (t == 0.0) {
    return shape_ == 1 ? rate_ : 0.0;
  }
  return std::exp(n * std::log(rate_) + (n - 1.0) * std::log(t) - rate_ * t - std::lgamma(n));
}

double ErlangDistribution::transform(double s) const {
  return std::pow(rate_ / (rate_ + s), static_cast<double>(shape_));
}

double integrate_half_line(const std::function<double(double)>& f, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double l1 = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 20, rel_tol * 1e-2, &error, &l1);
  if (!std::isfinite(value) || error > rel_tol * std::max(l1, std::abs(value))) {
    throw QuadratureError("half-line quadrature did not converge (error estimate " +
                          std::to_string(error) + ")");
  }
  return value;
}

double laplace_of_pdf(const std::function<double(double)>& pdf, double s) {
  if (!(s > 0.0)) {
    throw std::invalid_argument("laplace_of_pdf requires s > 0");
  }
  return integrate_half_line([&](double t) { return pdf(t) * std::exp(-s * t); }, 1e-9);
}

double approximation_gap(double lambda_tilde, double epsilon, double s) {
  if (!(epsilon >= 0.0) || !(lambda_tilde > epsilon)) {
    throw std::invalid_argument("approximation_gap requires lambda_tilde > epsilon >= 0");
  }
  const auto f = [s](double x) { return x / (x + s); };
  const double centre = f(lambda_tilde);
  return std::abs(f(lambda_tilde + epsilon) * f(lambda_tilde - epsilon) - centre * centre);
}

TabulatedDensity pdf_by_numerical_convolution(std::span<const double> rates,
                                               const TimeGrid& grid) {
  if (rates.empty() || rates.size() > 6) {
    throw std::invalid_argument("numerical convolution supports 1 to 6 rates");
  }
  if (grid.points < 2 || !(grid.t_max > 0.0)) {
    throw std::invalid_argument("time grid needs t_max > 0 and at least 2 points");
  }
  for (double r : rates) {
    if (!(r > 0.0)) {
      throw std::invalid_argument("rates must be positive");
    }
  }
  const double h = grid.step();
  const double fastest = *std::max_element(rates.begin(), rates.end());
  if (h * fastest > 0.05) {
    throw std::invalid_argument("time grid too coarse: step * max rate = " +
                                std::to_string(h * fastest) + " > 0.05");
  }

  const std::size_t m = grid.points;
  TabulatedDensity out;
  out.t.resize(m);
  out.density.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.t[i] = grid.at(i);
    out.density[i] = rates[0] * std::exp(-rates[0] * out.t[i]);
  }

  std::vector<double> kernel(m);
  std::vector<double> next(m);
  for (std::size_t r = 1; r < rates.size(); ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      kernel[i] = rates[r] * std::exp(-rates[r] * out.t[i]);
    }
    const auto& g = out.density;
    next[0] = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      // Trapezoid over tau in [0, t_i] of g(tau) * kernel(t_i - tau).
      double acc = 0.5 * (g[0] * kernel[i] + g[i] * kernel[0]);
      for (std::size_t k = 1; k < i; ++k) {
        acc += g[k] * kernel[i - k];
      }
      next[i] = acc * h;
    }
    out.density.swap(next);
  }
  return out;
}

}  // namespace exittime
