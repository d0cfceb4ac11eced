#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/oracle/solutions.hpp"
#include "fixmult/spectrum.hpp"

namespace fixmult {

/// f(z) = z + rho z (z - zeta_1)...(z - zeta_{d-1}) rebuilt from an S-point.
struct PolynomialRep {
	std::complex<double> rho;
	std::vector<std::complex<double>> fixed_points; ///< zeta_1..zeta_{d-1}, 0
	std::vector<std::complex<double>> multipliers;  ///< f'(zeta_i)
	double multiplier_residual = 0;                  ///< max_i |f'(zeta_i) - lambda_i|
	std::complex<double> index_sum;                  ///< sum_i 1/(1 - f'(zeta_i))

	std::complex<double> operator()(std::complex<double> z) const {
		std::complex<double> prod = rho;
		for (std::size_t i = 0; i + 1 < fixed_points.size(); ++i)
			prod *= z - fixed_points[i];
		return z + prod * z;
	}
};

/// Needs the true eigenvalues: rho is fixed by -1/rho = sum_{i<d} m_i zeta_i^{d-1}.
inline PolynomialRep reconstruct_map(const NumericSolution& p, const SpectrumInput& s, double tol = 1e-12) {
	const std::size_t d = s.degree();
	if (p.chart_point.size() + 2 != d)
		throw DomainError("solution and spectrum disagree on the degree");
	ResidueVector residues = residues_from_eigenvalues(s);

	PolynomialRep rep;
	rep.fixed_points = p.chart_point;
	rep.fixed_points.emplace_back(1.0);
	rep.fixed_points.emplace_back(0.0);

	std::complex<double> sum = 0;
	double size = 0;
	for (std::size_t i = 0; i + 1 < d; ++i) {
		auto m = residues[i].to_complex<std::complex<double>>();
		std::complex<double> term = m * std::pow(rep.fixed_points[i], int(d - 1));
		sum += term;
		size += std::abs(term);
	}
	if (std::abs(sum) <= tol * size)
		throw CertificationInconclusive("sum m_i zeta_i^(d-1) vanishes numerically; rho is undetermined");
	rep.rho = -1.0 / sum;

	for (std::size_t i = 0; i < d; ++i) {
		std::complex<double> prod = rep.rho;
		for (std::size_t j = 0; j < d; ++j)
			if (j != i)
				prod *= rep.fixed_points[i] - rep.fixed_points[j];
		std::complex<double> mult = 1.0 + prod;
		rep.multipliers.push_back(mult);
		auto lambda = s[i].to_complex<std::complex<double>>();
		rep.multiplier_residual = std::max(rep.multiplier_residual, std::abs(mult - lambda));
		rep.index_sum += 1.0 / (1.0 - mult);
	}
	return rep;
}

} // namespace fixmult
