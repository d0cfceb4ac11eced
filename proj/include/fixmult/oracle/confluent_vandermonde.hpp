#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/gaussian_rational.hpp"

namespace fixmult {

namespace detail {
inline BigInt binomial(std::size_t n, std::size_t k) {
	if (k > n)
		return 0;
	BigInt out = 1;
	for (std::size_t j = 1; j <= k; ++j)
		out = out * (n - k + j) / j;
	return out;
}

inline GaussianRational power(const GaussianRational& z, std::size_t k) {
	GaussianRational out(1);
	for (std::size_t j = 0; j < k; ++j)
		out *= z;
	return out;
}
} // namespace detail

/// Square matrix whose u-th column block holds the r_u columns
/// (C(i, j) alpha_u^{i-j})_{i = 1..r, j = 1..r_u}, zero above the diagonal of the block.
inline std::vector<std::vector<GaussianRational>> confluent_block_matrix(std::span<const std::size_t> r,
                                                                        std::span<const GaussianRational> alpha) {
	if (r.size() != alpha.size())
		throw DomainError("block sizes and nodes differ in length");
	std::size_t total = 0;
	for (std::size_t ru : r) {
		if (ru == 0)
			throw DomainError("block sizes must be positive");
		total += ru;
	}
	std::vector<std::vector<GaussianRational>> m(total, std::vector<GaussianRational>(total));
	std::size_t col = 0;
	for (std::size_t u = 0; u < r.size(); ++u) {
		for (std::size_t j = 1; j <= r[u]; ++j, ++col) {
			for (std::size_t i = j; i <= total; ++i)
				m[i - 1][col] = GaussianRational(Rational(detail::binomial(i, j))) * detail::power(alpha[u], i - j);
		}
	}
	return m;
}

/// Exact determinant by fraction-field Gaussian elimination.
inline GaussianRational exact_determinant(std::vector<std::vector<GaussianRational>> a) {
	const std::size_t n = a.size();
	GaussianRational det(1);
	for (std::size_t k = 0; k < n; ++k) {
		std::size_t p = k;
		while (p < n && a[p][k].is_zero())
			++p;
		if (p == n)
			return GaussianRational(0);
		if (p != k) {
			std::swap(a[p], a[k]);
			det = -det;
		}
		det *= a[k][k];
		GaussianRational inv = a[k][k].inverse();
		for (std::size_t i = k + 1; i < n; ++i) {
			if (a[i][k].is_zero())
				continue;
			GaussianRational f = a[i][k] * inv;
			for (std::size_t j = k; j < n; ++j)
				a[i][j] -= f * a[k][j];
		}
	}
	return det;
}

/// r! / (r_1! ... r_l!) * prod_{v < u} (alpha_u - alpha_v)^{r_v r_u}.
inline GaussianRational confluent_closed_form(std::span<const std::size_t> r, std::span<const GaussianRational> alpha) {
	std::size_t total = 0;
	for (std::size_t ru : r)
		total += ru;
	BigInt multinomial = 1;
	std::size_t placed = 0;
	for (std::size_t ru : r) {
		placed += ru;
		multinomial *= detail::binomial(placed, ru);
	}
	GaussianRational out{Rational(multinomial)};
	for (std::size_t u = 0; u < r.size(); ++u)
		for (std::size_t v = 0; v < u; ++v)
			out *= detail::power(alpha[u] - alpha[v], r[v] * r[u]);
	return out;
}

struct ConfluentCheck {
	GaussianRational direct;
	GaussianRational closed_form;
	bool agree() const { return direct == closed_form; }
};

inline ConfluentCheck confluent_block_determinant(std::span<const std::size_t> r,
                                                  std::span<const GaussianRational> alpha) {
	return {exact_determinant(confluent_block_matrix(r, alpha)), confluent_closed_form(r, alpha)};
}

} // namespace fixmult
