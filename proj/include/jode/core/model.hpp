#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace jode {

enum class CostKind { MSE, ZeroOne };

using Point = std::vector<double>;
using RngStream = std::mt19937_64;

/// Finite parameter support with prior weights. Continuous priors are
/// represented by their quadrature grid; coordinates are stored row-major.
class ParameterDomain {
 public:
  ParameterDomain(std::size_t dim, std::vector<double> coords, std::vector<double> prior);

  /// Equal weights over all points.
  static ParameterDomain uniform(std::size_t dim, std::vector<double> coords);

  [[nodiscard]] std::size_t size() const noexcept { return prior_.size(); }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::span<const double> point(std::size_t l) const noexcept {
    return {coords_.data() + l * dim_, dim_};
  }
  [[nodiscard]] Point point_copy(std::size_t l) const {
    auto p = point(l);
    return {p.begin(), p.end()};
  }
  [[nodiscard]] double prior(std::size_t l) const noexcept { return prior_[l]; }
  [[nodiscard]] double log_prior(std::size_t l) const noexcept { return log_prior_[l]; }
  [[nodiscard]] std::span<const double> priors() const noexcept { return prior_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
  std::vector<double> prior_;
  std::vector<double> log_prior_;
};

/// One H1 draw: the observation and the parameter that generated it.
template <class Obs>
struct H1Draw {
  Obs observation;
  Point truth;
};

/// Binary hypothesis pair with a parameterized alternative: H0 has a fully
/// known density, H1 mixes conditional densities over the domain's prior.
/// Implementations only need to provide conditional log likelihood ratios
/// log L(x | theta_l); everything else is model-agnostic.
template <class Obs>
class JointModel {
 public:
  virtual ~JointModel() = default;

  [[nodiscard]] virtual const ParameterDomain& domain() const = 0;
  [[nodiscard]] virtual CostKind cost_kind() const = 0;

  [[nodiscard]] virtual double cond_llr(const Obs& x, std::size_t l) const = 0;

  /// All conditional log-LRs at once; override when a batch is cheaper.
  virtual void cond_llrs(const Obs& x, std::span<double> out) const {
    for (std::size_t l = 0; l < out.size(); ++l) out[l] = cond_llr(x, l);
  }

  [[nodiscard]] std::vector<double> cond_llrs(const Obs& x) const {
    std::vector<double> out(domain().size());
    cond_llrs(x, out);
    return out;
  }

  [[nodiscard]] virtual Obs sample_h0(RngStream& rng) const = 0;
  [[nodiscard]] virtual H1Draw<Obs> sample_h1(RngStream& rng) const = 0;
};

}  // namespace jode
