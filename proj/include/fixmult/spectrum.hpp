#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fixmult/error.hpp"
#include "fixmult/gaussian_rational.hpp"

namespace fixmult {

/// One violated condition of V_d.
struct Violation {
	enum class Kind { TooShort, EigenvalueOne, ResidueSumNonZero };
	Kind kind;
	std::size_t index = 0; ///< 1-based, only meaningful for EigenvalueOne
	std::string message;
};

/// Lists every violated condition of V_d; an empty list means the input lies in V_d.
inline std::vector<Violation> validate_v_d(std::span<const GaussianRational> eigenvalues) {
	std::vector<Violation> report;
	if (eigenvalues.size() < 2)
		report.push_back({Violation::Kind::TooShort, 0, "not in V_d: at least two eigenvalues are required"});

	const GaussianRational one(1);
	bool any_one = false;
	for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
		if (eigenvalues[i] == one) {
			any_one = true;
			report.push_back({Violation::Kind::EigenvalueOne, i + 1,
			                  "not in V_d: lambda_" + std::to_string(i + 1) + " = 1 (multiple fixed point)"});
		}
	}
	if (!any_one && !eigenvalues.empty()) {
		GaussianRational sum;
		for (const auto& lambda : eigenvalues)
			sum += (one - lambda).inverse();
		if (!sum.is_zero())
			report.push_back({Violation::Kind::ResidueSumNonZero, 0,
			                  "not in V_d: residue sum is " + sum.to_string() + ", not 0"});
	}
	return report;
}

namespace detail {
inline std::string join_messages(const std::vector<Violation>& report) {
	std::string out;
	for (const auto& v : report) {
		if (!out.empty())
			out += "; ";
		out += v.message;
	}
	return out;
}
} // namespace detail

/// Eigenvalues lambda_1..lambda_d of an element of V_d.
class SpectrumInput {
public:
	explicit SpectrumInput(std::vector<GaussianRational> eigenvalues) : lambda_(std::move(eigenvalues)) {
		auto report = validate_v_d(lambda_);
		if (!report.empty())
			throw InvalidSpectrum(detail::join_messages(report));
	}

	std::size_t degree() const { return lambda_.size(); }
	const std::vector<GaussianRational>& eigenvalues() const { return lambda_; }
	const GaussianRational& operator[](std::size_t i) const { return lambda_[i]; }

private:
	std::vector<GaussianRational> lambda_;
};

/// Residues m_i = 1/(1 - lambda_i): all non-zero, summing to zero.
///
/// Stored exactly as given. Every combinatorial quantity depends only on the
/// ratio class, so a vector known only up to scale may be used as is.
class ResidueVector {
public:
	explicit ResidueVector(std::vector<GaussianRational> residues) : m_(std::move(residues)) {
		if (m_.size() < 2)
			throw InvalidSpectrum("not in V_d: at least two residues are required");
		GaussianRational sum;
		for (std::size_t i = 0; i < m_.size(); ++i) {
			if (m_[i].is_zero())
				throw InvalidSpectrum("residue m_" + std::to_string(i + 1) + " is zero");
			sum += m_[i];
		}
		if (!sum.is_zero())
			throw InvalidSpectrum("not in V_d: residue sum is " + sum.to_string() + ", not 0");
	}

	std::size_t degree() const { return m_.size(); }
	const std::vector<GaussianRational>& values() const { return m_; }
	const GaussianRational& operator[](std::size_t i) const { return m_[i]; }

	ResidueVector scaled(const GaussianRational& factor) const {
		std::vector<GaussianRational> out;
		out.reserve(m_.size());
		for (const auto& v : m_)
			out.push_back(v * factor);
		return ResidueVector(std::move(out));
	}

	/// out[i] = m[perm[i]] (0-based).
	ResidueVector permuted(std::span<const std::size_t> perm) const {
		std::vector<GaussianRational> out;
		out.reserve(m_.size());
		for (std::size_t p : perm)
			out.push_back(m_.at(p));
		return ResidueVector(std::move(out));
	}

	/// Key invariant under permutation and rescaling.
	std::string canonical_key() const {
		std::string best;
		for (std::size_t pivot = 0; pivot < m_.size(); ++pivot) {
			GaussianRational inv = m_[pivot].inverse();
			std::vector<GaussianRational> normalized;
			normalized.reserve(m_.size());
			for (const auto& v : m_)
				normalized.push_back(v * inv);
			std::sort(normalized.begin(), normalized.end(),
			          [](const GaussianRational& a, const GaussianRational& b) { return lex_less(a, b); });
			std::string key;
			for (const auto& v : normalized) {
				key += v.to_string();
				key += ',';
			}
			if (pivot == 0 || key < best)
				best = std::move(key);
		}
		return best;
	}

	friend bool operator==(const ResidueVector&, const ResidueVector&) = default;

private:
	std::vector<GaussianRational> m_;
};

inline ResidueVector residues_from_eigenvalues(const SpectrumInput& s) {
	std::vector<GaussianRational> m;
	m.reserve(s.degree());
	for (const auto& lambda : s.eigenvalues())
		m.push_back((GaussianRational(1) - lambda).inverse());
	return ResidueVector(std::move(m));
}

/// lambda_i = 1 - 1/m_i.
inline SpectrumInput eigenvalues_from_residues(const ResidueVector& m) {
	std::vector<GaussianRational> lambda;
	lambda.reserve(m.degree());
	for (const auto& v : m.values())
		lambda.push_back(GaussianRational(1) - v.inverse());
	return SpectrumInput(std::move(lambda));
}

} // namespace fixmult
