#ifndef EXITTIME_VARIATE_SOURCE_HPP
#define EXITTIME_VARIATE_SOURCE_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace exittime {

/// Tally of distribution-level draws. A gamma draw counts once regardless of
/// how many engine outputs the underlying sampler consumes.
struct DrawCounters {
  std::uint64_t uniform = 0;
  std::uint64_t exponential = 0;
  std::uint64_t gamma = 0;

  DrawCounters& operator+=(const DrawCounters& other) {
    uniform += other.uniform;
    exponential += other.exponential;
    gamma += other.gamma;
    return *this;
  }
  friend bool operator==(const DrawCounters&, const DrawCounters&) = default;
};

/// tau = -ln(r) / rate for r in (0, 1].
double exponential_from_uniform(double r, double rate);

/// Smallest j with sum_{b<j} w_b < r * total <= sum_{b<=j} w_b, skipping
/// zero weights. `total` must be the sum of `weights`.
std::size_t index_from_uniform(std::span<const double> weights, double total, double r);

/// Per-trajectory source of variates, keyed by (seed, stream_id).
///
/// Two engines are derived from the key: the selection channel feeds
/// uniform() and discrete_index(); the timing channel feeds exponential() and
/// gamma(). Consequently the reaction-selection sequence of a stream does not
/// depend on how many holding times were drawn from it.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  const DrawCounters& counters() const { return counters_; }

  /// Uniform on [0, 1).
  double uniform();

  double exponential(double rate);

  std::size_t discrete_index(std::span<const double> weights);
  std::size_t discrete_index(std::span<const double> weights, double total);

  /// Erlang variate with the given scale (1/rate) and integer shape.
  double gamma(double scale, std::uint64_t shape);

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 selection_;
  std::mt19937_64 timing_;
  DrawCounters counters_;
};

}  // namespace exittime

#endif  // EXITTIME_VARIATE_SOURCE_HPP
