// zmod.hpp
// Combinatorics and discrete Fourier analysis over Z_m^n: input strings,
// parity masks, parity classes, and mode decomposition of (possibly
// vector-valued) functions on the input space.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace porec::zmod {

bool is_prime(int m);

// A string x = x_1 x_2 ... x_n with digits in {0..m-1}.
struct InputString {
    int n = 0;
    int m = 0;
    std::vector<int> digits;

    InputString() = default;
    InputString(int n_, int m_, std::vector<int> digits_);

    // Lexicographic rank, leftmost digit most significant.
    std::int64_t rank() const;

    bool operator==(const InputString& o) const {
        return n == o.n && m == o.m && digits == o.digits;
    }
};

// A vector r in Z_m^n tagging a parity constraint r.x mod m.
struct Mask {
    int n = 0;
    int m = 0;
    std::vector<int> components;

    Mask() = default;
    Mask(int n_, int m_, std::vector<int> components_);

    int weight() const { return weight_; }
    std::int64_t rank() const;
    int dot(const InputString& x) const;  // r.x mod m

    bool operator==(const Mask& o) const {
        return n == o.n && m == o.m && components == o.components;
    }

  private:
    int weight_ = 0;
};

// Partition of Z_m^n into the m classes C_k = {x : r.x = k mod m}.
struct ParityClassTable {
    Mask mask;
    std::vector<std::vector<InputString>> classes;  // indexed by k
};

// Dense spectrum of a function f : Z_m^n -> C^L, one coefficient vector per
// mask (weight unrestricted).  Convention:
//   coeff(r) = (1/m^n) sum_x f(x) omega^{-r.x},  omega = exp(2 pi i / m),
//   f(x)     = sum_r coeff(r) omega^{r.x}.
struct FourierSpectrum {
    int n = 0;
    int m = 0;
    int value_dim = 1;
    // coefficients[mask.rank()][component]
    std::vector<std::vector<std::complex<double>>> coefficients;

    const std::vector<std::complex<double>>& at(const Mask& r) const;
    // Inverse transform at a single point.
    std::vector<std::complex<double>> inverse_at(const InputString& x) const;
};

// All m^n strings in lexicographic order.  Throws std::overflow_error when
// m^n exceeds 10^7.
std::vector<InputString> enumerate_inputs(int n, int m);

// All masks in Z_m^n (any weight), lexicographic.
std::vector<Mask> enumerate_all_masks(int n, int m);

// Masks of weight >= 2 for prime m.  With reduce_by_scalars, one
// representative per Z_m^x orbit: the multiple whose first nonzero
// component is 1.  Non-prime m is rejected (the Fourier collapse needs a
// field).
std::vector<Mask> enumerate_parity_masks(int n, int m, bool reduce_by_scalars);

ParityClassTable parity_classes(const Mask& mask);

// Transform of f given as values indexed by InputString::rank().
FourierSpectrum fourier_transform(int n, int m,
                                  const std::vector<std::vector<std::complex<double>>>& values);
// Scalar convenience overload.
FourierSpectrum fourier_transform(int n, int m,
                                  const std::vector<std::complex<double>>& values);

// Maximum modulus over coefficients at masks of weight >= 2; values at or
// below ~1e-9 certify parity-compatible (additive) structure.
double mixed_mode_mass(const FourierSpectrum& spectrum);

}  // namespace porec::zmod
