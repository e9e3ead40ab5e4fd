#include "exittime/variate_source.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace exittime {

namespace {

constexpr double kTwoPowMinus53 = 0x1.0p-53;

std::mt19937_64 derive_engine(std::uint64_t seed, std::uint64_t stream_id, std::uint32_t channel) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), channel};
  return std::mt19937_64(seq);
}

}  // namespace

double exponential_from_uniform(double r, double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("exponential rate must be positive");
  }
  if (!(r > 0.0 && r <= 1.0)) {
    throw std::invalid_argument("exponential needs r in (0, 1]");
  }
  return -std::log(r) / rate;
}

std::size_t index_from_uniform(std::span<const double> weights, double total, double r) {
  if (!(total > 0.0)) {
    throw std::invalid_argument("discrete_index requires a positive weight");
  }
  const double target = r * total;
  double cumulative = 0.0;
  std::size_t last_positive = weights.size();
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] < 0.0) {
      throw std::invalid_argument("discrete_index weights must be nonnegative");
    }
    if (weights[j] == 0.0) {
      continue;
    }
    cumulative += weights[j];
    last_positive = j;
    if (target <= cumulative) {
      return j;
    }
  }
  if (last_positive == weights.size()) {
    throw std::invalid_argument("discrete_index requires a positive weight");
  }
  // Rounding in `total` can leave target a hair above the running sum.
  return last_positive;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      selection_(derive_engine(seed, stream_id, 0)),
      timing_(derive_engine(seed, stream_id, 1)) {}

double RandomStream::uniform() {
  ++counters_.uniform;
  return static_cast<double>(selection_() >> 11) * kTwoPowMinus53;
}

double RandomStream::exponential(double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("exponential rate must be positive");
  }
  ++counters_.exponential;
  // Midpoints of the 2^-53 lattice: strictly inside (0, 1).
  const double r = (static_cast<double>(timing_() >> 11) + 0.5) * kTwoPowMinus53;
  return exponential_from_uniform(r, rate);
}

std::size_t RandomStream::discrete_index(std::span<const double> weights) {
  return discrete_index(weights, std::accumulate(weights.begin(), weights.end(), 0.0));
}

std::size_t RandomStream::discrete_index(std::span<const double> weights, double total) {
  if (!(total > 0.0)) {
    throw std::invalid_argument("discrete_index requires a positive weight");
  }
  return index_from_uniform(weights, total, uniform());
}

double RandomStream::gamma(double scale, std::uint64_t shape) {
  if (!(scale > 0.0) || shape < 1) {
    throw std::invalid_argument("gamma requires scale > 0 and shape >= 1");
  }
  ++counters_.gamma;
  std::gamma_distribution<double> dist(static_cast<double>(shape), scale);
  return dist(timing_);
}

}  // namespace exittime
