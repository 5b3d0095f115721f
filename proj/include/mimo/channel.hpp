// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mimo/complex_matrix.hpp"

namespace mimo::channel {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const;
};

// Unit direction from azimuth/elevation in radians:
// (cos el cos az, cos el sin az, sin el).
Vec3 direction_from_angles(double azimuth, double elevation);

// Uniform linear array: element j (1-based) sits at
// origin + (j-1) * spacing * axis, axis a unit vector.
struct ArrayGeometry {
    int count = 0;
    double spacing = 0.0;  // meters
    Vec3 axis{1.0, 0.0, 0.0};
    Vec3 origin{0.0, 0.0, 0.0};

    Vec3 position(int j) const;  // 1-based element index
    void validate() const;
};

// One propagation path: complex gain plus unit spatial angles at both ends.
struct ScatteringPath {
    cdouble gain;
    Vec3 omega_t;
    Vec3 omega_r;
};

struct ScatteringScenario {
    std::vector<ScatteringPath> paths;
    ArrayGeometry tx;
    ArrayGeometry rx;
    double wavelength = 0.0;  // meters

    void validate() const;
};

// Transfer matrix of the multi-path model:
//   h_{i,j} = sum_p gain_p * exp(i 2pi/lambda <omega_t_p, x_tx_j>)
//                         * exp(i 2pi/lambda <omega_r_p, x_rx_i>)
// Rows index receive elements, columns transmit elements. Plain scalar
// accumulation so generated matrices are identical across kernel backends.
ComplexMatrix scattering_transfer_matrix(const ScatteringScenario& s);

// m x m matrix of i.i.d. circularly-symmetric complex Gaussian entries with
// per-entry variance `variance` (real and imaginary parts variance/2 each).
// Bit-reproducible for identical (m, seed).
ComplexMatrix iid_gaussian_transfer_matrix(int m, std::uint64_t seed, double variance);

// Unitary Fourier change-of-basis matrix: row k (1-based) holds the
// conjugated Fourier vector, entry (k, m) = m^{-1/2} exp(-i 2pi k (m-1) / M).
ComplexMatrix fourier_basis(int m);

// Fading matrix F = M^-2 U (H H^*) U^*, Hermitian positive semidefinite;
// its eigenvalues are the squared singular values of H divided by M^2.
ComplexMatrix fading_matrix(const ComplexMatrix& h);

// Rescales H so that sum_{i,j} |h_{i,j}|^2 = M (rows of the square H).
ComplexMatrix normalize_total_power(const ComplexMatrix& h);

// JSON serialization, schema:
// {wavelength, tx:{count,spacing,axis,origin}, rx:{...},
//  paths:[{gain:[re,im], omega_t:[x,y,z], omega_r:[x,y,z]}]}
std::string scenario_to_json(const ScatteringScenario& s);
ScatteringScenario scenario_from_json(const std::string& text);
void write_scenario_file(const std::string& path, const ScatteringScenario& s);
ScatteringScenario read_scenario_file(const std::string& path);

// Synthetic scenario families. Both use half-wavelength-style linear arrays
// on the x axis and assign path p to the p-th Fourier beam of the receive
// array so the fading diagonal follows the gain profile; transmit angles and
// gain phases are drawn from the (seed, m, model id) stream.
//   power_law: |beta_p| = gain0 * p^-decay_s
//   equal:     |beta_p| = gain0
enum class GainFamily { power_law = 1, equal = 2 };

struct ScenarioParams {
    int paths = 256;  // clamped to m (one beam per path)
    double gain0 = 1.0;
    double gain_decay_s = 1.0;
    double wavelength = 0.1;
    double spacing_over_wavelength = 0.5;
};

ScatteringScenario make_scattering_scenario(int m, std::uint64_t seed,
                                            const ScenarioParams& params,
                                            GainFamily family);

}  // namespace mimo::channel
