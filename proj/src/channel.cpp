// SPDX-License-Identifier: Apache-2.0

#include "mimo/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mimo/errors.hpp"
#include "mimo/rng.hpp"

namespace mimo::channel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kUnitTol = 1e-12;

void require_unit(const Vec3& v, const char* what) {
    if (std::abs(v.norm() - 1.0) > kUnitTol)
        throw std::invalid_argument(std::string(what) + " must be a unit vector");
}

}  // namespace

double Vec3::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

Vec3 direction_from_angles(double azimuth, double elevation) {
    return {std::cos(elevation) * std::cos(azimuth),
            std::cos(elevation) * std::sin(azimuth), std::sin(elevation)};
}

Vec3 ArrayGeometry::position(int j) const {
    const double d = (j - 1) * spacing;
    return {origin.x + d * axis.x, origin.y + d * axis.y, origin.z + d * axis.z};
}

void ArrayGeometry::validate() const {
    if (count < 1)
        throw std::invalid_argument("array: element count must be >= 1");
    if (spacing < 0.0)
        throw std::invalid_argument("array: spacing must be nonnegative");
    require_unit(axis, "array axis");
}

void ScatteringScenario::validate() const {
    if (paths.empty())
        throw std::invalid_argument("scenario: path set must be non-empty");
    if (wavelength <= 0.0)
        throw std::invalid_argument("scenario: wavelength must be positive");
    tx.validate();
    rx.validate();
    for (const ScatteringPath& p : paths) {
        require_unit(p.omega_t, "path omega_t");
        require_unit(p.omega_r, "path omega_r");
    }
}

ComplexMatrix scattering_transfer_matrix(const ScatteringScenario& s) {
    s.validate();
    const int m = s.rx.count;
    const int n = s.tx.count;
    const double wavenumber = kTwoPi / s.wavelength;

    ComplexMatrix h(m, n);
    std::vector<cdouble> tx_phase(n);
    std::vector<cdouble> rx_phase(m);
    for (const ScatteringPath& p : s.paths) {
        for (int j = 0; j < n; ++j)
            tx_phase[j] = std::polar(1.0, wavenumber * p.omega_t.dot(s.tx.position(j + 1)));
        for (int i = 0; i < m; ++i)
            rx_phase[i] = std::polar(1.0, wavenumber * p.omega_r.dot(s.rx.position(i + 1)));
        for (int i = 0; i < m; ++i) {
            const cdouble w = p.gain * rx_phase[i];
            for (int j = 0; j < n; ++j)
                h(i, j) += w * tx_phase[j];
        }
    }
    return h;
}

ComplexMatrix iid_gaussian_transfer_matrix(int m, std::uint64_t seed, double variance) {
    if (m < 1)
        throw std::invalid_argument("iid_gaussian_transfer_matrix: m must be >= 1");
    if (variance <= 0.0)
        throw std::invalid_argument("iid_gaussian_transfer_matrix: variance must be positive");
    const CounterRng rng{seed, static_cast<std::uint64_t>(m), 3};  // model id 3
    const double scale = std::sqrt(variance / 2.0);
    ComplexMatrix h(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const auto [re, im] =
                rng.normal_pair(static_cast<std::uint64_t>(i) * m + j);
            h(i, j) = {scale * re, scale * im};
        }
    }
    return h;
}

ComplexMatrix fourier_basis(int m) {
    if (m < 1)
        throw std::invalid_argument("fourier_basis: m must be >= 1");
    const double amp = 1.0 / std::sqrt(static_cast<double>(m));
    ComplexMatrix u(m, m);
    for (int r = 0; r < m; ++r) {
        const long long k = r + 1;
        for (int c = 0; c < m; ++c) {
            const long long phase_idx = (k * c) % m;  // exact integer reduction
            u(r, c) = std::polar(amp, -kTwoPi * static_cast<double>(phase_idx) / m);
        }
    }
    return u;
}

namespace {

void hermitianize(ComplexMatrix& a) {
    for (int i = 0; i < a.rows(); ++i) {
        a(i, i) = a(i, i).real();
        for (int j = i + 1; j < a.cols(); ++j) {
            const cdouble v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
}

}  // namespace

ComplexMatrix fading_matrix(const ComplexMatrix& h) {
    if (!h.square())
        throw std::invalid_argument("fading_matrix: H must be square");
    const int m = h.rows();
    const ComplexMatrix u = fourier_basis(m);
    ComplexMatrix f = matmul_conjt(matmul(u, gram(h)), u);
    const double inv_m2 = 1.0 / (static_cast<double>(m) * m);
    for (std::size_t i = 0; i < f.size(); ++i)
        f.data()[i] *= inv_m2;
    hermitianize(f);
    return f;
}

ComplexMatrix normalize_total_power(const ComplexMatrix& h) {
    if (!h.square())
        throw std::invalid_argument("normalize_total_power: H must be square");
    double sum = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i)
        sum += std::norm(h.data()[i]);
    if (sum == 0.0)
        throw std::invalid_argument("normalize_total_power: zero matrix");
    const double c = std::sqrt(static_cast<double>(h.rows()) / sum);
    return cdouble(c, 0.0) * h;
}

namespace {

using nlohmann::json;

json vec3_to_json(const Vec3& v) {
    return json::array({v.x, v.y, v.z});
}

Vec3 vec3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error("scenario json: expected a 3-vector");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json array_to_json(const ArrayGeometry& a) {
    return {{"count", a.count},
            {"spacing", a.spacing},
            {"axis", vec3_to_json(a.axis)},
            {"origin", vec3_to_json(a.origin)}};
}

ArrayGeometry array_from_json(const json& j) {
    ArrayGeometry a;
    a.count = j.at("count").get<int>();
    a.spacing = j.at("spacing").get<double>();
    a.axis = vec3_from_json(j.at("axis"));
    a.origin = vec3_from_json(j.at("origin"));
    return a;
}

}  // namespace

std::string scenario_to_json(const ScatteringScenario& s) {
    json paths = json::array();
    for (const ScatteringPath& p : s.paths)
        paths.push_back({{"gain", json::array({p.gain.real(), p.gain.imag()})},
                         {"omega_t", vec3_to_json(p.omega_t)},
                         {"omega_r", vec3_to_json(p.omega_r)}});
    const json j = {{"wavelength", s.wavelength},
                    {"tx", array_to_json(s.tx)},
                    {"rx", array_to_json(s.rx)},
                    {"paths", std::move(paths)}};
    return j.dump(2) + "\n";
}

ScatteringScenario scenario_from_json(const std::string& text) {
    const json j = json::parse(text);
    ScatteringScenario s;
    s.wavelength = j.at("wavelength").get<double>();
    s.tx = array_from_json(j.at("tx"));
    s.rx = array_from_json(j.at("rx"));
    for (const json& pj : j.at("paths")) {
        ScatteringPath p;
        const json& g = pj.at("gain");
        p.gain = {g.at(0).get<double>(), g.at(1).get<double>()};
        p.omega_t = vec3_from_json(pj.at("omega_t"));
        p.omega_r = vec3_from_json(pj.at("omega_r"));
        s.paths.push_back(p);
    }
    s.validate();
    return s;
}

void write_scenario_file(const std::string& path, const ScatteringScenario& s) {
    std::ofstream f(path);
    if (!f)
        throw IoError("cannot open for writing: " + path);
    f << scenario_to_json(s);
    if (!f.flush())
        throw IoError("write failed: " + path);
}

ScatteringScenario read_scenario_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return scenario_from_json(buf.str());
}

ScatteringScenario make_scattering_scenario(int m, std::uint64_t seed,
                                            const ScenarioParams& params,
                                            GainFamily family) {
    if (m < 1)
        throw std::invalid_argument("make_scattering_scenario: m must be >= 1");
    if (params.paths < 1)
        throw std::invalid_argument("make_scattering_scenario: paths must be >= 1");
    if (params.wavelength <= 0.0 || params.spacing_over_wavelength <= 0.0)
        throw std::invalid_argument("make_scattering_scenario: invalid geometry");

    const int n_paths = std::min(params.paths, m);  // one beam per path
    const double ratio = params.spacing_over_wavelength;
    const CounterRng rng{seed, static_cast<std::uint64_t>(m),
                         family == GainFamily::power_law ? 1ull : 2ull};

    ScatteringScenario s;
    s.wavelength = params.wavelength;
    s.tx = {m, ratio * params.wavelength, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};
    s.rx = s.tx;

    for (int p = 1; p <= n_paths; ++p) {
        // receive angle whose spatial frequency lands on Fourier beam p:
        // ratio * cos(theta) = p/m (mod 1), folded into [-1, 1]
        const double target = static_cast<double>(p) / m;
        double cos_r = 2.0;
        for (long long z = static_cast<long long>(std::floor(target - ratio));
             z <= static_cast<long long>(std::ceil(target + ratio)); ++z) {
            const double cand = (target - z) / ratio;
            if (std::abs(cand) <= 1.0 && std::abs(cand) < std::abs(cos_r))
                cos_r = cand;
        }
        if (cos_r > 1.0)  // ratio < 1/2 leaves gaps; use the nearest endpoint
            cos_r = (target - std::round(target)) > 0 ? 1.0 : -1.0;

        const double cos_t = rng.uniform(3 * (p - 1) + 1, -1.0, 1.0);
        const double magnitude =
            family == GainFamily::power_law
                ? params.gain0 * std::pow(static_cast<double>(p), -params.gain_decay_s)
                : params.gain0;
        const double phase = rng.uniform(3 * (p - 1), 0.0, kTwoPi);

        ScatteringPath path;
        path.gain = std::polar(magnitude, phase);
        path.omega_r = {cos_r, std::sqrt(std::max(0.0, 1.0 - cos_r * cos_r)), 0.0};
        path.omega_t = {cos_t, std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t)), 0.0};
        s.paths.push_back(path);
    }
    return s;
}

}  // namespace mimo::channel
