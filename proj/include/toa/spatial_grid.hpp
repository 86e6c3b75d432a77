// Copyright 2026 The toa-firstclick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TOA_SPATIAL_GRID_HPP
#define TOA_SPATIAL_GRID_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace toa {

using complex = std::complex<double>;

/// Half-open index range [begin, end) of grid samples.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool contains(std::size_t j) const { return j >= begin && j < end; }
};

/// Uniform 1-D position grid x_j = x_min + j*dx, j = 0..n-1, together with
/// its conjugate momentum samples in standard DFT order.
///
/// Copies are cheap: the momentum table is shared between copies.
class SpatialGrid {
   public:
    /// Throws ConfigError unless x_max > x_min and n_points is a power of
    /// two no smaller than 8.
    SpatialGrid(double x_min, double x_max, std::size_t n_points);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t size() const { return n_; }
    double dx() const { return dx_; }

    double x(std::size_t j) const { return x_min_ + static_cast<double>(j) * dx_; }

    /// p_k = 2*pi*freq(k) / (n*dx) with hbar = 1.
    double p(std::size_t k) const { return (*momenta_)[k]; }
    std::span<const double> momenta() const { return *momenta_; }

    /// Largest momentum magnitude representable on the grid, pi/dx.
    double p_max() const;

    /// Samples with a <= x_j < b.
    IndexRange samples_in(double a, double b) const;

    /// Index of the sample nearest to x; ties resolve to the smaller index.
    std::size_t nearest_sample(double x) const;

    bool operator==(const SpatialGrid& other) const {
        return n_ == other.n_ && x_min_ == other.x_min_ && x_max_ == other.x_max_;
    }

   private:
    double x_min_;
    double x_max_;
    double dx_;
    std::size_t n_;
    std::shared_ptr<const std::vector<double>> momenta_;
};

SpatialGrid make_grid(double x_min, double x_max, std::size_t n_points);

/// DFT frequency index of bin k for a transform of length n (0, 1, ...,
/// n/2-1, -n/2, ..., -1).
long dft_frequency(std::size_t k, std::size_t n);

bool is_power_of_two(std::size_t n);

/// Complex amplitudes psi(x_j) on a grid.  Transformations return new
/// snapshots; nothing here mutates a caller's value behind its back.
class WaveFunction {
   public:
    explicit WaveFunction(SpatialGrid grid);
    WaveFunction(SpatialGrid grid, std::vector<complex> amplitudes);

    const SpatialGrid& grid() const { return grid_; }
    std::span<const complex> amplitudes() const { return amplitudes_; }
    std::span<complex> amplitudes() { return amplitudes_; }
    std::size_t size() const { return amplitudes_.size(); }

    complex operator[](std::size_t j) const { return amplitudes_[j]; }
    complex& operator[](std::size_t j) { return amplitudes_[j]; }

    WaveFunction scaled(complex factor) const;

   private:
    SpatialGrid grid_;
    std::vector<complex> amplitudes_;
};

/// Riemann sum of |psi_j|^2 dx.
double norm_squared(const WaveFunction& psi);

/// sum_j conj(phi_j) psi_j dx.  Throws UsageError on grid mismatch.
complex overlap(const WaveFunction& phi, const WaveFunction& psi);

/// Riemann sum of |psi_j|^2 dx over samples with a <= x_j < b.
double probability_in(const WaveFunction& psi, double a, double b);

/// Same sum over an explicit sample range.
double probability_in(const WaveFunction& psi, IndexRange range);

/// Continuous-transform approximation psi~(p_k) = dx * sum_j psi_j
/// exp(-i p_k x_j), so that sum_k |psi~_k|^2 dp / (2 pi) = norm_squared.
std::vector<complex> to_momentum(const WaveFunction& psi);

/// Throws UsageError unless both wavefunctions live on the same grid.
void require_same_grid(const WaveFunction& a, const WaveFunction& b);

}  // namespace toa

#endif  // TOA_SPATIAL_GRID_HPP
