#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "fixmult/gaussian_rational.hpp"

namespace fixmult {

/// 128-bit binary significand, used when double precision is not enough.
using Float128 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>, boost::multiprecision::et_off>;
using Complex128 = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<
        boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>>,
    boost::multiprecision::et_off>;

namespace detail {
template <>
struct ComplexParts<Complex128> {
	using Real = Float128;
};
} // namespace detail

/// Precision tier glue so the solver can be written once.
template <class Real>
struct Arith;

template <>
struct Arith<double> {
	using Real = double;
	using Complex = std::complex<double>;
	static Complex make(Real re, Real im = 0) { return {re, im}; }
	static Real abs(const Complex& z) { return std::abs(z); }
	static Real real(const Complex& z) { return z.real(); }
	static Real imag(const Complex& z) { return z.imag(); }
	static Complex conj(const Complex& z) { return std::conj(z); }
	static Complex exp_i(Real theta) { return {std::cos(theta), std::sin(theta)}; }
	static Real pi() { return 3.14159265358979323846; }
	static double to_double(Real x) { return x; }
	static constexpr int bits = 53;
};

template <>
struct Arith<Float128> {
	using Real = Float128;
	using Complex = Complex128;
	static Complex make(const Real& re, const Real& im = Real(0)) { return Complex(re, im); }
	static Real abs(const Complex& z) { return boost::multiprecision::abs(z); }
	static Real real(const Complex& z) { return boost::multiprecision::real(z); }
	static Real imag(const Complex& z) { return boost::multiprecision::imag(z); }
	static Complex conj(const Complex& z) { return boost::multiprecision::conj(z); }
	static Complex exp_i(const Real& theta) { return Complex(cos(theta), sin(theta)); }
	static Real pi() { return boost::math::constants::pi<Real>(); }
	static double to_double(const Real& x) { return static_cast<double>(x); }
	static constexpr int bits = 128;
};

template <class Real>
using ComplexOf = typename Arith<Real>::Complex;

template <class Real>
std::complex<double> to_std(const ComplexOf<Real>& z) {
	using A = Arith<Real>;
	return {A::to_double(A::real(z)), A::to_double(A::imag(z))};
}

template <class Real>
ComplexOf<Real> from_std(std::complex<double> z) {
	return Arith<Real>::make(Real(z.real()), Real(z.imag()));
}

template <class Real>
std::vector<ComplexOf<Real>> to_tier(const std::vector<GaussianRational>& values) {
	std::vector<ComplexOf<Real>> out;
	out.reserve(values.size());
	for (const auto& v : values)
		out.push_back(v.template to_complex<ComplexOf<Real>>());
	return out;
}

template <class Real>
Real inf_norm(const std::vector<ComplexOf<Real>>& v) {
	Real best = 0;
	for (const auto& z : v) {
		Real a = Arith<Real>::abs(z);
		if (a > best)
			best = a;
	}
	return best;
}

template <class Real>
Real inf_distance(const std::vector<ComplexOf<Real>>& a, const std::vector<ComplexOf<Real>>& b) {
	Real best = 0;
	for (std::size_t i = 0; i < a.size(); ++i) {
		Real x = Arith<Real>::abs(a[i] - b[i]);
		if (x > best)
			best = x;
	}
	return best;
}

/// z^k by repeated squaring.
template <class Complex>
Complex ipow(Complex z, unsigned k) {
	Complex out(1);
	while (k) {
		if (k & 1U)
			out *= z;
		z *= z;
		k >>= 1;
	}
	return out;
}

} // namespace fixmult
