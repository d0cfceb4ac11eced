#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fixmult/combinatorics.hpp"
#include "fixmult/error.hpp"
#include "fixmult/oracle/homotopy.hpp"
#include "fixmult/oracle/linalg.hpp"
#include "fixmult/oracle/numeric.hpp"
#include "fixmult/spectrum.hpp"

namespace fixmult {

/// Numerical solver configuration. Every tolerance is relative to the size of
/// the point it is applied to.
struct SolverConfig {
	std::uint64_t seed = 1;
	double tol_track = 1e-10;   ///< corrector tolerance while tracking
	double tol_res = 1e-12;     ///< polished residual bound for an S-point
	double tol_sep = 1e-6;      ///< minimum coordinate separation of an S-point
	double tol_cluster = 1e-6;  ///< coordinate coincidence / dedup tolerance
	unsigned precision = 53;    ///< 53: double, otherwise the 128-bit tier
	unsigned max_attempts = 4;  ///< independent homotopies before giving up
	unsigned threads = 1;
	bool escalate = true;       ///< re-track failed double paths at 128 bits
	std::size_t max_paths = 720;
};

enum class PointClass { S, B, Rejected, Anomaly, Failed };

inline const char* to_string(PointClass c) {
	switch (c) {
	case PointClass::S:
		return "S";
	case PointClass::B:
		return "B";
	case PointClass::Rejected:
		return "rejected";
	case PointClass::Anomaly:
		return "anomaly";
	case PointClass::Failed:
		return "failed";
	}
	return "?";
}

/// A tracked endpoint in the chart zeta_{d-1} = 1, zeta_d = 0.
struct NumericSolution {
	std::vector<std::complex<double>> chart_point; ///< zeta_1..zeta_{d-2}
	double residual = 0;
	double separation = 0;
	double condition = 0;
	PointClass classification = PointClass::Anomaly;
};

struct PathReport {
	std::size_t index = 0;
	PointClass classification = PointClass::Failed;
	int precision_bits = 53;
	int cycle = 0;
	double endgame_radius = 0;
	double agreement = 0;
	std::size_t steps = 0;
	double residual = 0;
	double separation = 0;
	double condition = 0;
	std::optional<std::size_t> pattern; ///< index into the signature's partitions (B-points)
	std::vector<std::vector<int>> coincidences; ///< 1-based coordinate clusters of size > 1
	std::string note;
	std::optional<NumericSolution> solution; ///< set for S-points
};

/// One full homotopy run with a fixed random constant and patch.
struct SolveRun {
	std::uint64_t seed = 0;
	std::complex<double> gamma;
	std::vector<PathReport> paths;
	std::vector<NumericSolution> s_points;
	std::size_t b_points = 0, rejected = 0, anomalies = 0, failures = 0, escalated = 0;
	bool duplicates = false;

	bool clean() const { return failures == 0 && anomalies == 0 && !duplicates; }
};

namespace detail {

/// splitmix64: seeds sub-streams so attempt k does not depend on the generator's layout.
inline std::uint64_t mix_seed(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

class UnitRandom {
public:
	explicit UnitRandom(std::uint64_t seed) : state_(seed) {}
	/// Uniform double in [0, 1) built from 53 random bits.
	double next() {
		state_ = mix_seed(state_);
		return double(state_ >> 11) * 0x1.0p-53;
	}

private:
	std::uint64_t state_;
};

struct HomotopyParams {
	std::complex<double> gamma;
	std::vector<std::complex<double>> patch;
};

inline HomotopyParams draw_params(std::uint64_t seed, std::size_t unknowns) {
	UnitRandom rng(seed);
	HomotopyParams p;
	double theta = 2 * 3.14159265358979323846 * rng.next();
	p.gamma = {std::cos(theta), std::sin(theta)};
	for (std::size_t i = 0; i < unknowns; ++i) {
		double re = 2 * rng.next() - 1;
		double im = 2 * rng.next() - 1;
		p.patch.emplace_back(re, im);
	}
	return p;
}

/// Residues scaled to unit max norm. The solution set only depends on the ratio class.
inline std::vector<GaussianRational> normalized_residues(const ResidueVector& m) {
	Rational best = 0;
	std::size_t at = 0;
	for (std::size_t i = 0; i < m.degree(); ++i) {
		if (m[i].norm() > best) {
			best = m[i].norm();
			at = i;
		}
	}
	GaussianRational inv = m[at].inverse();
	std::vector<GaussianRational> out;
	for (const auto& v : m.values())
		out.push_back(v * inv);
	return out;
}

template <class Real>
struct ChartCheck {
	std::vector<ComplexOf<Real>> zeta;
	bool converged = false;
	double residual = 0;
	double separation = 0;
	double condition = 0;
};

/// max_k |phi_k| / sum_i |m_i| |zeta_i|^k over the chart point (zeta_{d-1} = 1).
template <class Real>
Real relative_residual(const std::vector<ComplexOf<Real>>& m, const std::vector<ComplexOf<Real>>& zeta) {
	using A = Arith<Real>;
	const std::size_t n = zeta.size();
	Real worst = 0;
	for (std::size_t k = 1; k <= n; ++k) {
		ComplexOf<Real> value = m[n];
		Real size = A::abs(m[n]);
		for (std::size_t i = 0; i < n; ++i) {
			ComplexOf<Real> term = m[i] * ipow(zeta[i], unsigned(k));
			value += term;
			size += A::abs(term);
		}
		Real r = A::abs(value) / size;
		if (r > worst)
			worst = r;
	}
	return worst;
}

template <class Real>
Matrix<ComplexOf<Real>> chart_jacobian(const std::vector<ComplexOf<Real>>& m, const std::vector<ComplexOf<Real>>& zeta) {
	const std::size_t n = zeta.size();
	Matrix<ComplexOf<Real>> jac(n);
	for (std::size_t k = 1; k <= n; ++k)
		for (std::size_t j = 0; j < n; ++j)
			jac(k - 1, j) = ComplexOf<Real>(Real(k)) * m[j] * ipow(zeta[j], unsigned(k - 1));
	return jac;
}

/// Newton polish of phi_k(zeta_1..zeta_{d-2}, 1) = 0 followed by the regularity checks.
template <class Real>
ChartCheck<Real> polish_chart(const std::vector<ComplexOf<Real>>& m, std::vector<ComplexOf<Real>> zeta, double tol_res) {
	using A = Arith<Real>;
	using Complex = ComplexOf<Real>;
	const std::size_t n = zeta.size();
	ChartCheck<Real> out;
	for (int it = 0; it < 8; ++it) {
		Real r = relative_residual<Real>(m, zeta);
		if (A::to_double(r) <= tol_res * 1e-2)
			break;
		std::vector<Complex> phi(n);
		for (std::size_t k = 1; k <= n; ++k) {
			Complex value = m[n];
			for (std::size_t i = 0; i < n; ++i)
				value += m[i] * ipow(zeta[i], unsigned(k));
			phi[k - 1] = -value;
		}
		LU<Real> lu(chart_jacobian<Real>(m, zeta));
		if (lu.singular())
			break;
		auto dz = lu.solve(phi);
		std::vector<Complex> next = zeta;
		for (std::size_t i = 0; i < n; ++i)
			next[i] += dz[i];
		// Keep the better iterate; rounding noise can make the last update useless.
		if (relative_residual<Real>(m, next) >= r && it > 2)
			break;
		zeta = std::move(next);
	}
	out.residual = A::to_double(relative_residual<Real>(m, zeta));
	out.converged = out.residual <= tol_res;
	out.condition = condition_number<Real>(chart_jacobian<Real>(m, zeta));

	std::vector<Complex> all = zeta;
	all.push_back(Complex(1));
	all.push_back(Complex(0));
	Real sep = -1;
	for (std::size_t i = 0; i < all.size(); ++i)
		for (std::size_t j = i + 1; j < all.size(); ++j) {
			Real dist = A::abs(all[i] - all[j]);
			if (sep < 0 || dist < sep)
				sep = dist;
		}
	out.separation = A::to_double(sep);
	out.zeta = std::move(zeta);
	return out;
}

/// Clusters of the full d-tuple (y_1..y_{d-2}, y_0, 0) under a relative tolerance.
template <class Real>
std::vector<IndexSet> coincidence_clusters(const std::vector<ComplexOf<Real>>& y, double tol) {
	using A = Arith<Real>;
	const std::size_t n = y.size() - 1;
	std::vector<ComplexOf<Real>> z;
	for (std::size_t i = 1; i <= n; ++i)
		z.push_back(y[i]);
	z.push_back(y[0]);
	z.push_back(ComplexOf<Real>(0));
	const Real scale = inf_norm<Real>(z);
	const std::size_t d = z.size();
	std::vector<std::size_t> parent(d);
	std::iota(parent.begin(), parent.end(), std::size_t(0));
	auto find = [&](std::size_t i) {
		while (parent[i] != i)
			i = parent[i] = parent[parent[i]];
		return i;
	};
	for (std::size_t i = 0; i < d; ++i)
		for (std::size_t j = i + 1; j < d; ++j)
			if (A::abs(z[i] - z[j]) <= Real(tol) * scale)
				parent[find(i)] = find(j);
	std::vector<IndexSet::Mask> masks(d, 0);
	for (std::size_t i = 0; i < d; ++i)
		masks[find(i)] |= IndexSet::Mask(1) << i;
	std::vector<IndexSet> out;
	for (auto mask : masks)
		if (mask)
			out.emplace_back(mask);
	return out;
}

template <class Real>
void classify_endpoint(PathReport& report, const PathEnd<Real>& end, const std::vector<ComplexOf<Real>>& m,
                       const StratumSignature& sig, const SolverConfig& cfg) {
	double tol = cfg.tol_cluster;
	if (end.cycle > 1)
		tol = std::max(tol, 100 * end.agreement);
	auto clusters = coincidence_clusters<Real>(end.endpoint, tol);
	const std::size_t d = sig.d;

	if (clusters.size() == d) {
		if (end.cycle != 1) {
			report.classification = PointClass::Anomaly;
			report.note = "singular endpoint with distinct coordinates";
			return;
		}
		const auto& y = end.endpoint;
		std::vector<ComplexOf<Real>> zeta;
		for (std::size_t i = 1; i < y.size(); ++i)
			zeta.push_back(y[i] / y[0]);
		auto check = polish_chart<Real>(m, std::move(zeta), cfg.tol_res);
		report.residual = check.residual;
		report.separation = check.separation;
		report.condition = check.condition;
		if (!check.converged || !std::isfinite(check.condition)) {
			report.classification = PointClass::Rejected;
			report.note = "Newton polish did not reach the residual tolerance";
			return;
		}
		if (check.separation <= cfg.tol_sep) {
			report.classification = PointClass::Rejected;
			report.note = "coordinates not separated beyond tolerance";
			return;
		}
		NumericSolution sol;
		for (const auto& z : check.zeta)
			sol.chart_point.push_back(to_std<Real>(z));
		sol.residual = check.residual;
		sol.separation = check.separation;
		sol.condition = check.condition;
		sol.classification = PointClass::S;
		report.classification = PointClass::S;
		report.solution = std::move(sol);
		return;
	}

	for (IndexSet c : clusters)
		if (c.size() > 1)
			report.coincidences.push_back(c.one_based());
	if (clusters.size() >= 2) {
		ZeroSumPartition pattern(clusters);
		if (auto idx = sig.find(pattern)) {
			report.classification = PointClass::B;
			report.pattern = *idx;
			return;
		}
	}
	report.classification = PointClass::Anomaly;
	report.note = "coincidence pattern is not a zero-sum partition";
}

template <class Real>
PathReport run_one_path(const std::vector<GaussianRational>& m_exact, const HomotopyParams& params, std::size_t p,
                        const StratumSignature& sig, const SolverConfig& cfg) {
	using A = Arith<Real>;
	std::vector<ComplexOf<Real>> m = to_tier<Real>(m_exact);
	std::vector<ComplexOf<Real>> m_head(m.begin(), m.end() - 1);
	std::vector<ComplexOf<Real>> patch;
	for (auto a : params.patch)
		patch.push_back(from_std<Real>(a));
	FixedPointHomotopy<Real> hom(m_head, from_std<Real>(params.gamma), patch);

	TrackSettings tcfg;
	EndgameSettings ecfg;
	if (A::bits > 53) {
		tcfg.newton_tol = std::min(cfg.tol_track, 1e-20);
		tcfg.h_min = 1e-25;
		ecfg.agreement = 1e-14;
		ecfg.loose_agreement = 1e-7;
		ecfg.closure = 1e-10;
		ecfg.direct_condition = 1e20;
	} else {
		tcfg.newton_tol = cfg.tol_track;
	}
	PathEnd<Real> end = track_path<Real>(hom, p, tcfg, ecfg);
	// A loop that also encloses a nearby branch point averages over two sheets and lands
	// between genuine endpoints. Real endpoints are regular with distinct coordinates or
	// collide along a zero-sum partition; anything else restarts the endgame closer in.
	auto spurious = [&] {
		if (!end.ok)
			return false;
		double tol = end.cycle > 1 ? std::max(cfg.tol_cluster, 100 * end.agreement) : cfg.tol_cluster;
		auto clusters = coincidence_clusters<Real>(end.endpoint, tol);
		if (clusters.size() == sig.d)
			return end.cycle > 1;
		return clusters.size() < 2 || !sig.find(ZeroSumPartition(clusters));
	};
	int restarts = 0;
	for (; restarts < 3 && spurious(); ++restarts) {
		ecfg.first_radius /= 16;
		end = track_path<Real>(hom, p, tcfg, ecfg);
	}

	PathReport report;
	report.index = p;
	report.precision_bits = A::bits;
	report.steps = end.steps;
	report.cycle = end.cycle;
	report.agreement = end.agreement;
	if (!end.ok) {
		report.classification = PointClass::Failed;
		report.note = end.failure;
		return report;
	}
	report.endgame_radius = end.radius;
	if (restarts > 0)
		report.note = "endgame restarted " + std::to_string(restarts) + "x at a smaller radius";
	// The chart system uses all d-1 leading residues, m_{d-1} included.
	classify_endpoint<Real>(report, end, m_head, sig, cfg);
	return report;
}

inline bool same_point(const NumericSolution& a, const NumericSolution& b, double tol) {
	double scale = 1, dist = 0;
	for (std::size_t i = 0; i < a.chart_point.size(); ++i) {
		scale = std::max(scale, std::abs(a.chart_point[i]));
		dist = std::max(dist, std::abs(a.chart_point[i] - b.chart_point[i]));
	}
	return dist <= tol * scale;
}

} // namespace detail

/// One homotopy run over all (d-2)! paths with a single random constant.
inline SolveRun solve_once(const ResidueVector& residues, const StratumSignature& sig, const SolverConfig& cfg,
                           std::uint64_t seed) {
	const std::size_t d = residues.degree();
	if (d < 4)
		throw DomainError("the numerical oracle needs d >= 4");
	const std::size_t n = d - 2;
	const std::size_t paths = FixedPointHomotopy<double>::path_count(n);
	if (paths > cfg.max_paths)
		throw DomainError("(d-2)! = " + std::to_string(paths) + " paths exceed the path budget of " +
		                  std::to_string(cfg.max_paths));
	auto m_exact = detail::normalized_residues(residues);
	auto params = detail::draw_params(seed, n + 1);

	SolveRun run;
	run.seed = seed;
	run.gamma = params.gamma;
	run.paths.resize(paths);

	auto work = [&](std::size_t p) {
		PathReport r = cfg.precision > 53 ? detail::run_one_path<Float128>(m_exact, params, p, sig, cfg)
		                                  : detail::run_one_path<double>(m_exact, params, p, sig, cfg);
		if (r.classification == PointClass::Failed && cfg.precision <= 53 && cfg.escalate) {
			PathReport hi = detail::run_one_path<Float128>(m_exact, params, p, sig, cfg);
			hi.note = (hi.note.empty() ? "" : hi.note + "; ") + "escalated after: " + r.note;
			r = std::move(hi);
		}
		run.paths[p] = std::move(r);
	};
	unsigned threads = std::max(1U, cfg.threads);
	if (threads == 1) {
		for (std::size_t p = 0; p < paths; ++p)
			work(p);
	} else {
		std::vector<std::thread> pool;
		for (unsigned t = 0; t < threads; ++t)
			pool.emplace_back([&, t] {
				for (std::size_t p = t; p < paths; p += threads)
					work(p);
			});
		for (auto& th : pool)
			th.join();
	}

	for (const auto& r : run.paths) {
		if (r.precision_bits > 53 && cfg.precision <= 53)
			++run.escalated;
		switch (r.classification) {
		case PointClass::S: {
			const NumericSolution& sol = *r.solution;
			for (const auto& other : run.s_points)
				if (detail::same_point(sol, other, cfg.tol_cluster))
					run.duplicates = true;
			run.s_points.push_back(sol);
			break;
		}
		case PointClass::B:
			++run.b_points;
			break;
		case PointClass::Rejected:
			++run.rejected;
			break;
		case PointClass::Anomaly:
			++run.anomalies;
			break;
		case PointClass::Failed:
			++run.failures;
			break;
		}
	}
	return run;
}

/// S-point sets of two runs agree when they match one to one.
inline bool runs_agree(const SolveRun& a, const SolveRun& b, double tol) {
	if (a.s_points.size() != b.s_points.size())
		return false;
	std::vector<bool> used(b.s_points.size(), false);
	for (const auto& p : a.s_points) {
		bool found = false;
		for (std::size_t j = 0; j < b.s_points.size(); ++j) {
			if (!used[j] && detail::same_point(p, b.s_points[j], tol)) {
				used[j] = true;
				found = true;
				break;
			}
		}
		if (!found)
			return false;
	}
	return true;
}

struct SolveOutcome {
	std::vector<SolveRun> attempts;
	std::size_t accepted = 0; ///< index into attempts
	std::size_t confirmed_by = 0;

	const SolveRun& run() const { return attempts[accepted]; }
	const std::vector<NumericSolution>& solutions() const { return run().s_points; }
};

/// Independent homotopies until two clean runs find the same S-points.
/// Throws CertificationInconclusive when the attempt budget runs out.
inline SolveOutcome enumerate_solutions(const ResidueVector& residues, const StratumSignature& sig,
                                        const SolverConfig& cfg) {
	SolveOutcome out;
	std::vector<std::size_t> clean;
	unsigned attempts = std::max(2U, cfg.max_attempts);
	for (unsigned k = 0; k < attempts; ++k) {
		out.attempts.push_back(solve_once(residues, sig, cfg, detail::mix_seed(cfg.seed + k)));
		const SolveRun& run = out.attempts.back();
		if (!run.clean())
			continue;
		for (std::size_t j : clean) {
			if (runs_agree(out.attempts[j], run, cfg.tol_cluster)) {
				out.accepted = j;
				out.confirmed_by = out.attempts.size() - 1;
				return out;
			}
		}
		clean.push_back(out.attempts.size() - 1);
	}
	std::string summary;
	for (const auto& run : out.attempts) {
		if (!summary.empty())
			summary += "; ";
		summary += std::to_string(run.s_points.size()) + " S-points, " + std::to_string(run.failures) +
		           " failed paths, " + std::to_string(run.anomalies) + " anomalies" + (run.duplicates ? ", duplicate endpoints" : "");
	}
	throw CertificationInconclusive("no two independent homotopy runs agreed after " + std::to_string(attempts) +
	                                " attempts (" + summary + ")");
}

/// Convenience overload that builds the signature itself.
inline SolveOutcome enumerate_solutions(const ResidueVector& residues, const SolverConfig& cfg) {
	return enumerate_solutions(residues, build_signature(residues), cfg);
}

} // namespace fixmult
