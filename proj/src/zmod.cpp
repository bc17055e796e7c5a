#include "porec/zmod.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace porec::zmod {

namespace {
constexpr std::int64_t kEnumerationCap = 10'000'000;

void check_digits(int n, int m, const std::vector<int>& v, const char* what) {
    if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
    if (m < 2) throw std::invalid_argument(std::string(what) + ": m must be >= 2");
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument(std::string(what) + ": wrong digit count");
    for (int d : v)
        if (d < 0 || d >= m)
            throw std::invalid_argument(std::string(what) + ": digit out of [0, m)");
}

std::int64_t pow_checked(int m, int n) {
    std::int64_t p = 1;
    for (int i = 0; i < n; ++i) {
        p *= m;
        if (p > kEnumerationCap) throw std::overflow_error("m^n exceeds enumeration cap 10^7");
    }
    return p;
}
}  // namespace

bool is_prime(int m) {
    if (m < 2) return false;
    for (int k = 2; k * k <= m; ++k)
        if (m % k == 0) return false;
    return true;
}

InputString::InputString(int n_, int m_, std::vector<int> digits_)
    : n(n_), m(m_), digits(std::move(digits_)) {
    check_digits(n, m, digits, "InputString");
}

std::int64_t InputString::rank() const {
    std::int64_t r = 0;
    for (int d : digits) r = r * m + d;
    return r;
}

Mask::Mask(int n_, int m_, std::vector<int> components_)
    : n(n_), m(m_), components(std::move(components_)) {
    check_digits(n, m, components, "Mask");
    for (int c : components) weight_ += (c != 0);
}

std::int64_t Mask::rank() const {
    std::int64_t r = 0;
    for (int c : components) r = r * m + c;
    return r;
}

int Mask::dot(const InputString& x) const {
    if (x.n != n || x.m != m) throw std::invalid_argument("Mask::dot: size mismatch");
    int s = 0;
    for (int i = 0; i < n; ++i) s = (s + components[i] * x.digits[i]) % m;
    return s;
}

std::vector<InputString> enumerate_inputs(int n, int m) {
    if (n < 1) throw std::invalid_argument("enumerate_inputs: n must be >= 1");
    if (m < 2) throw std::invalid_argument("enumerate_inputs: m must be >= 2");
    const std::int64_t total = pow_checked(m, n);
    std::vector<InputString> out;
    out.reserve(total);
    std::vector<int> digits(n, 0);
    for (std::int64_t i = 0; i < total; ++i) {
        out.emplace_back(n, m, digits);
        for (int j = n - 1; j >= 0; --j) {
            if (++digits[j] < m) break;
            digits[j] = 0;
        }
    }
    return out;
}

std::vector<Mask> enumerate_all_masks(int n, int m) {
    auto inputs = enumerate_inputs(n, m);
    std::vector<Mask> out;
    out.reserve(inputs.size());
    for (const auto& x : inputs) out.emplace_back(n, m, x.digits);
    return out;
}

std::vector<Mask> enumerate_parity_masks(int n, int m, bool reduce_by_scalars) {
    if (!is_prime(m))
        throw std::domain_error("enumerate_parity_masks: m must be prime (Z_m must be a field)");
    if (n < 2) throw std::invalid_argument("enumerate_parity_masks: n must be >= 2");
    std::vector<Mask> out;
    for (auto& r : enumerate_all_masks(n, m)) {
        if (r.weight() < 2) continue;
        if (reduce_by_scalars) {
            // Canonical representative: first nonzero component equals 1.
            int first = 0;
            for (int c : r.components)
                if (c != 0) { first = c; break; }
            if (first != 1) continue;
        }
        out.push_back(std::move(r));
    }
    return out;
}

ParityClassTable parity_classes(const Mask& mask) {
    if (mask.weight() == 0) throw std::invalid_argument("parity_classes: zero mask");
    ParityClassTable table;
    table.mask = mask;
    table.classes.resize(mask.m);
    for (auto& x : enumerate_inputs(mask.n, mask.m))
        table.classes[mask.dot(x)].push_back(std::move(x));
    return table;
}

FourierSpectrum fourier_transform(int n, int m,
                                  const std::vector<std::vector<std::complex<double>>>& values) {
    const std::int64_t total = pow_checked(m, n);
    if (static_cast<std::int64_t>(values.size()) != total)
        throw std::invalid_argument("fourier_transform: f must be defined on all of Z_m^n");
    const int value_dim = values.empty() ? 0 : static_cast<int>(values[0].size());
    for (const auto& v : values)
        if (static_cast<int>(v.size()) != value_dim)
            throw std::invalid_argument("fourier_transform: inconsistent value dimension");

    std::vector<std::complex<double>> omega_pow(m);
    for (int k = 0; k < m; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / m;
        omega_pow[k] = {std::cos(ang), std::sin(ang)};
    }

    FourierSpectrum spec;
    spec.n = n;
    spec.m = m;
    spec.value_dim = value_dim;
    spec.coefficients.assign(total, std::vector<std::complex<double>>(value_dim));

    const auto inputs = enumerate_inputs(n, m);
    const auto masks = enumerate_all_masks(n, m);
    for (std::int64_t ri = 0; ri < total; ++ri) {
        auto& coeff = spec.coefficients[ri];
        for (std::int64_t xi = 0; xi < total; ++xi) {
            const int phase = masks[ri].dot(inputs[xi]);
            const std::complex<double> w = omega_pow[(m - phase) % m];  // omega^{-r.x}
            for (int c = 0; c < value_dim; ++c) coeff[c] += values[xi][c] * w;
        }
        for (auto& v : coeff) v /= static_cast<double>(total);
    }
    return spec;
}

FourierSpectrum fourier_transform(int n, int m, const std::vector<std::complex<double>>& values) {
    std::vector<std::vector<std::complex<double>>> wrapped(values.size());
    for (size_t i = 0; i < values.size(); ++i) wrapped[i] = {values[i]};
    return fourier_transform(n, m, wrapped);
}

const std::vector<std::complex<double>>& FourierSpectrum::at(const Mask& r) const {
    if (r.n != n || r.m != m) throw std::invalid_argument("FourierSpectrum::at: size mismatch");
    return coefficients[r.rank()];
}

std::vector<std::complex<double>> FourierSpectrum::inverse_at(const InputString& x) const {
    std::vector<std::complex<double>> omega_pow(m);
    for (int k = 0; k < m; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / m;
        omega_pow[k] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> out(value_dim);
    const auto masks = enumerate_all_masks(n, m);
    for (size_t ri = 0; ri < masks.size(); ++ri) {
        const std::complex<double> w = omega_pow[masks[ri].dot(x)];
        for (int c = 0; c < value_dim; ++c) out[c] += coefficients[ri][c] * w;
    }
    return out;
}

double mixed_mode_mass(const FourierSpectrum& spectrum) {
    double mass = 0.0;
    const auto masks = enumerate_all_masks(spectrum.n, spectrum.m);
    for (size_t ri = 0; ri < masks.size(); ++ri) {
        if (masks[ri].weight() < 2) continue;
        for (const auto& v : spectrum.coefficients[ri]) mass = std::max(mass, std::abs(v));
    }
    return mass;
}

}  // namespace porec::zmod
