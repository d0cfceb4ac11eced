#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fixmult/oracle/numeric.hpp"

namespace fixmult {

/// Dense row-major square matrix; the systems here have at most a few dozen unknowns.
template <class Scalar>
class Matrix {
public:
	Matrix() = default;
	explicit Matrix(std::size_t n) : n_(n), a_(n * n, Scalar(0)) {}

	std::size_t size() const { return n_; }
	Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
	const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

private:
	std::size_t n_ = 0;
	std::vector<Scalar> a_;
};

/// LU factorization with partial pivoting.
template <class Real>
class LU {
public:
	using A = Arith<Real>;
	using Complex = ComplexOf<Real>;

	explicit LU(Matrix<Complex> m) : lu_(std::move(m)), perm_(lu_.size()) {
		const std::size_t n = lu_.size();
		for (std::size_t i = 0; i < n; ++i)
			perm_[i] = i;
		for (std::size_t k = 0; k < n; ++k) {
			std::size_t p = k;
			Real best = A::abs(lu_(k, k));
			for (std::size_t i = k + 1; i < n; ++i) {
				Real v = A::abs(lu_(i, k));
				if (v > best) {
					best = v;
					p = i;
				}
			}
			if (best == 0) {
				singular_ = true;
				return;
			}
			if (p != k) {
				for (std::size_t j = 0; j < n; ++j)
					std::swap(lu_(k, j), lu_(p, j));
				std::swap(perm_[k], perm_[p]);
			}
			for (std::size_t i = k + 1; i < n; ++i) {
				Complex f = lu_(i, k) / lu_(k, k);
				lu_(i, k) = f;
				for (std::size_t j = k + 1; j < n; ++j)
					lu_(i, j) -= f * lu_(k, j);
			}
		}
	}

	bool singular() const { return singular_; }

	std::vector<Complex> solve(const std::vector<Complex>& b) const {
		const std::size_t n = lu_.size();
		std::vector<Complex> x(n);
		for (std::size_t i = 0; i < n; ++i) {
			Complex s = b[perm_[i]];
			for (std::size_t j = 0; j < i; ++j)
				s -= lu_(i, j) * x[j];
			x[i] = s;
		}
		for (std::size_t i = n; i-- > 0;) {
			Complex s = x[i];
			for (std::size_t j = i + 1; j < n; ++j)
				s -= lu_(i, j) * x[j];
			x[i] = s / lu_(i, i);
		}
		return x;
	}

private:
	Matrix<Complex> lu_;
	std::vector<std::size_t> perm_;
	bool singular_ = false;
};

/// 1-norm condition number through the explicit inverse; infinity when singular.
template <class Real>
double condition_number(const Matrix<ComplexOf<Real>>& m) {
	using A = Arith<Real>;
	const std::size_t n = m.size();
	LU<Real> lu(m);
	if (lu.singular())
		return std::numeric_limits<double>::infinity();
	Real norm = 0, inv_norm = 0;
	for (std::size_t j = 0; j < n; ++j) {
		Real col = 0;
		for (std::size_t i = 0; i < n; ++i)
			col += A::abs(m(i, j));
		if (col > norm)
			norm = col;
		std::vector<ComplexOf<Real>> e(n, ComplexOf<Real>(0));
		e[j] = ComplexOf<Real>(1);
		auto x = lu.solve(e);
		Real inv_col = 0;
		for (const auto& v : x)
			inv_col += A::abs(v);
		if (inv_col > inv_norm)
			inv_norm = inv_col;
	}
	return A::to_double(norm * inv_norm);
}

} // namespace fixmult
