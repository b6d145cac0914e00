#pragma once

#include "oddconn/connection.hpp"

#include <optional>
#include <random>

namespace oddconn {

/// Deterministic generator for parity-legal random data. Every draw depends
/// only on the seed and the call sequence, so suites are reproducible.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t uniform(std::uint64_t n); // [0, n)
    int int_range(int lo, int hi);          // inclusive
    /// Small nonzero rational (numerator in [-3,3], denominator 1 or 2).
    Rational coefficient();

    /// Random polynomial of the given parity (any parity when nullopt) with
    /// bounded even degree and full odd support.
    GradedPoly poly(const ChartPtr& chart, std::optional<Parity> parity, unsigned max_even_degree,
                    unsigned density_percent = 55);
    GradedPoly nonzero_poly(const ChartPtr& chart, std::optional<Parity> parity, unsigned max_even_degree);

    /// Random homogeneous field of declared parity.
    VectorField field(const ChartPtr& chart, Parity parity, unsigned max_even_degree);
    VectorField nonzero_field(const ChartPtr& chart, Parity parity, unsigned max_even_degree);
    OneForm oneform(const ChartPtr& chart, Parity parity, unsigned max_even_degree);

    /// Random parity-legal rho (generically not an involution).
    OddEndomorphism endomorphism(const ChartPtr& chart, unsigned max_even_degree);
    /// Coordinate swap conjugated by a random constant parity-preserving
    /// invertible matrix; always an involution. Requires an n|n chart.
    OddEndomorphism involution(const ChartPtr& chart);

    std::vector<GradedPoly> christoffel(const ChartPtr& chart, Parity overall, unsigned max_even_degree);

    OddQuasiConnection quasi_connection(const ChartPtr& chart, unsigned max_even_degree);
    /// Involutive rho plus random parity-legal Gamma: an odd connection.
    OddQuasiConnection odd_connection(const ChartPtr& chart, unsigned max_even_degree);
    AffineConnection affine_connection(const ChartPtr& chart, unsigned max_even_degree);

    /// Mixed tensor with homogeneous parity-legal components.
    MixedTensor tensor(const ChartPtr& chart, std::size_t p, std::size_t q, Parity parity,
                       unsigned max_even_degree);

    /// A parity-legal polynomial change with exactly known polynomial inverse,
    /// composed from invertible generators (affine blocks and triangular
    /// shears). Source and target are the same chart.
    CoordinateChange change(const ChartPtr& chart);
    std::vector<CoordinateChange> change_library(const ChartPtr& chart, std::size_t count);

  private:
    std::mt19937_64 rng_;
};

} // namespace oddconn
