#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <cstddef>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "fixmult/error.hpp"

namespace fixmult {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// p/q as a canonical rational; q may be negative.
inline Rational make_rational(const BigInt& p, const BigInt& q) {
	if (q == 0)
		throw DivisionByZero();
	return Rational(p) / Rational(q);
}

/// Exact complex number whose real and imaginary parts are rationals.
///
/// Both parts are kept in lowest terms with a positive denominator, so
/// structural equality is mathematical equality.
class GaussianRational {
public:
	GaussianRational() = default;
	GaussianRational(long long re) : re_(re) {}
	GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}

	const Rational& re() const { return re_; }
	const Rational& im() const { return im_; }

	bool is_zero() const { return re_ == 0 && im_ == 0; }
	bool is_real() const { return im_ == 0; }

	GaussianRational conj() const { return {re_, -im_}; }
	/// |z|^2
	Rational norm() const { return re_ * re_ + im_ * im_; }

	GaussianRational inverse() const {
		if (is_zero())
			throw DivisionByZero();
		Rational n = norm();
		return {re_ / n, -im_ / n};
	}

	GaussianRational operator-() const { return {-re_, -im_}; }

	GaussianRational& operator+=(const GaussianRational& o) {
		re_ += o.re_;
		im_ += o.im_;
		return *this;
	}
	GaussianRational& operator-=(const GaussianRational& o) {
		re_ -= o.re_;
		im_ -= o.im_;
		return *this;
	}
	GaussianRational& operator*=(const GaussianRational& o) {
		Rational r = re_ * o.re_ - im_ * o.im_;
		im_ = re_ * o.im_ + im_ * o.re_;
		re_ = std::move(r);
		return *this;
	}
	GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

	friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
	friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
	friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
	friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

	friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
		return a.re_ == b.re_ && a.im_ == b.im_;
	}

	/// Total order (real part first), used only for canonical keys and sorting.
	friend bool lex_less(const GaussianRational& a, const GaussianRational& b) {
		if (a.re_ != b.re_)
			return a.re_ < b.re_;
		return a.im_ < b.im_;
	}

	/// Canonical text: "<re>" when real, otherwise "<re>+<im>i" / "<re>-<|im|>i".
	std::string to_string() const {
		if (im_ == 0)
			return re_.str();
		std::string out = re_.str();
		if (im_ < 0) {
			out += '-';
			out += Rational(-im_).str();
		} else {
			out += '+';
			out += im_.str();
		}
		out += 'i';
		return out;
	}

	static GaussianRational parse(std::string_view text);

	template <class Complex>
	Complex to_complex() const;

private:
	Rational re_{0};
	Rational im_{0};
};

namespace detail {

class RationalScanner {
public:
	explicit RationalScanner(std::string_view text) : text_(text) {}

	bool at_end() const { return pos_ == text_.size(); }
	char peek() const { return at_end() ? '\0' : text_[pos_]; }
	void advance() { ++pos_; }

	[[noreturn]] void fail(std::string_view what) const {
		std::size_t end = pos_;
		while (end < text_.size() && end - pos_ < 8)
			++end;
		std::string token = at_end() ? std::string("<end of input>") : "'" + std::string(text_.substr(pos_, end - pos_)) + "'";
		throw ParseError("cannot parse Gaussian rational \"" + std::string(text_) + "\": " + std::string(what) + " at " +
		                 token);
	}

	BigInt digits() {
		std::size_t start = pos_;
		while (!at_end() && peek() >= '0' && peek() <= '9')
			++pos_;
		if (start == pos_)
			fail("expected digits");
		return BigInt(std::string(text_.substr(start, pos_ - start)));
	}

	Rational rational(bool allow_sign) {
		bool negative = false;
		if (allow_sign && (peek() == '-' || peek() == '+')) {
			negative = peek() == '-';
			advance();
		}
		BigInt num = digits();
		BigInt den = 1;
		if (peek() == '/') {
			advance();
			std::size_t den_pos = pos_;
			den = digits();
			if (den == 0) {
				pos_ = den_pos;
				fail("zero denominator");
			}
		}
		Rational r = make_rational(num, den);
		return negative ? Rational(-r) : r;
	}

private:
	std::string_view text_;
	std::size_t pos_ = 0;
};

/// Correctly rounded (nearest, ties to even) conversion to a binary floating type.
template <class Real>
Real round_rational(const Rational& q) {
	using boost::multiprecision::denominator;
	using boost::multiprecision::msb;
	using boost::multiprecision::numerator;
	using std::ldexp;

	if (q == 0)
		return Real(0);
	const bool negative = q < 0;
	BigInt num = numerator(q);
	if (negative)
		num = -num;
	const BigInt den = denominator(q);
	const long precision = std::numeric_limits<Real>::digits;

	long shift = precision - (long(msb(num)) - long(msb(den)));
	auto divide = [&](long sh, BigInt& quot, BigInt& rem, BigInt& divisor) {
		BigInt n = sh >= 0 ? BigInt(num << sh) : num;
		divisor = sh >= 0 ? den : BigInt(den << -sh);
		quot = n / divisor;
		rem = n % divisor;
	};
	BigInt quot, rem, divisor;
	divide(shift, quot, rem, divisor);
	if (msb(quot) >= std::size_t(precision)) {
		--shift;
		divide(shift, quot, rem, divisor);
	}
	BigInt twice = rem * 2;
	if (twice > divisor || (twice == divisor && (quot & 1) != 0))
		++quot;

	Real mantissa(quot);
	Real value = ldexp(mantissa, int(-shift));
	return negative ? Real(-value) : value;
}

template <class Complex>
struct ComplexParts;

template <class R>
struct ComplexParts<std::complex<R>> {
	using Real = R;
};

} // namespace detail

inline GaussianRational GaussianRational::parse(std::string_view text) {
	while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
		text.remove_prefix(1);
	while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
		text.remove_suffix(1);

	detail::RationalScanner scan(text);
	Rational re = scan.rational(true);
	if (scan.at_end())
		return {re};
	char sign = scan.peek();
	if (sign != '+' && sign != '-')
		scan.fail("expected '+' or '-'");
	scan.advance();
	Rational im = scan.rational(false);
	if (scan.peek() != 'i')
		scan.fail("expected 'i'");
	scan.advance();
	if (!scan.at_end())
		scan.fail("trailing characters");
	return {re, sign == '-' ? Rational(-im) : im};
}

/// Correctly rounded approximation at the precision of Complex's real type.
template <class Complex>
Complex GaussianRational::to_complex() const {
	using Real = typename detail::ComplexParts<Complex>::Real;
	return Complex(detail::round_rational<Real>(re_), detail::round_rational<Real>(im_));
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

} // namespace fixmult
