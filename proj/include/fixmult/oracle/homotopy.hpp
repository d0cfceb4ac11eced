#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fixmult/oracle/linalg.hpp"
#include "fixmult/oracle/numeric.hpp"

namespace fixmult {

/// Total-degree homotopy for sum_{i<d} m_i zeta_i^k = 0 (k = 1..d-2) in
/// projective coordinates y = (y_0, y_1..y_{d-2}), y_0 standing for zeta_{d-1}
/// and zeta_d = 0. A random affine patch a.y = 1 closes the system, so paths
/// heading to infinity of the affine chart stay finite.
///
///   H_k(y, s) = (1 - s) gamma (y_k^k - y_0^k) + s (sum_i m_i y_i^k + m_{d-1} y_0^k)
template <class Real>
class FixedPointHomotopy {
public:
	using A = Arith<Real>;
	using Complex = ComplexOf<Real>;

	/// m: the first d-1 residues (any common scale); gamma and patch of size d-1.
	FixedPointHomotopy(std::vector<Complex> m, Complex gamma, std::vector<Complex> patch)
	    : m_(std::move(m)), gamma_(gamma), patch_(std::move(patch)), n_(m_.size() - 1) {}

	std::size_t equations() const { return n_; }
	std::size_t unknowns() const { return n_ + 1; }
	const std::vector<Complex>& patch() const { return patch_; }

	static std::size_t path_count(std::size_t n) {
		std::size_t total = 1;
		for (std::size_t k = 2; k <= n; ++k)
			total *= k;
		return total;
	}

	/// Start point of path p: y_0 = 1, y_k = exp(2 pi i j_k / k) with mixed-radix digits j_k of p.
	std::vector<Complex> start_point(std::size_t p) const {
		std::vector<Complex> y(n_ + 1);
		y[0] = Complex(1);
		for (std::size_t k = 1; k <= n_; ++k) {
			std::size_t j = p % k;
			p /= k;
			y[k] = A::exp_i(Real(2) * A::pi() * Real(j) / Real(k));
		}
		Complex scale(0);
		for (std::size_t i = 0; i <= n_; ++i)
			scale += patch_[i] * y[i];
		for (auto& v : y)
			v /= scale;
		return y;
	}

	/// H, dH/dy and dH/ds at (y, s).
	void evaluate(const std::vector<Complex>& y, const Complex& s, std::vector<Complex>& h, Matrix<Complex>& jac,
	              std::vector<Complex>& h_s) const {
		const std::size_t n = n_;
		h.assign(n + 1, Complex(0));
		h_s.assign(n + 1, Complex(0));
		jac = Matrix<Complex>(n + 1);

		// powers[i][k] = y_i^k for k = 0..n
		powers_.resize(n + 1);
		for (std::size_t i = 0; i <= n; ++i) {
			powers_[i].resize(n + 1);
			powers_[i][0] = Complex(1);
			for (std::size_t k = 1; k <= n; ++k)
				powers_[i][k] = powers_[i][k - 1] * y[i];
		}
		const Complex one_minus_s = Complex(1) - s;
		const Complex start_weight = one_minus_s * gamma_;
		const Complex& m_last = m_[n];
		for (std::size_t k = 1; k <= n; ++k) {
			const std::size_t row = k - 1;
			const Complex kk = Complex(Real(k));
			Complex g = powers_[k][k] - powers_[0][k];
			Complex f = m_last * powers_[0][k];
			for (std::size_t i = 1; i <= n; ++i)
				f += m_[i - 1] * powers_[i][k];
			h[row] = start_weight * g + s * f;
			h_s[row] = f - gamma_ * g;

			jac(row, 0) = kk * powers_[0][k - 1] * (s * m_last - start_weight);
			for (std::size_t j = 1; j <= n; ++j) {
				Complex entry = kk * s * m_[j - 1] * powers_[j][k - 1];
				if (j == k)
					entry += kk * start_weight * powers_[k][k - 1];
				jac(row, j) = entry;
			}
		}
		Complex patch_value(-1);
		for (std::size_t j = 0; j <= n; ++j) {
			patch_value += patch_[j] * y[j];
			jac(n, j) = patch_[j];
		}
		h[n] = patch_value;
	}

private:
	std::vector<Complex> m_;
	Complex gamma_;
	std::vector<Complex> patch_;
	std::size_t n_;
	mutable std::vector<std::vector<Complex>> powers_;
};

struct TrackSettings {
	double newton_tol = 1e-10;   ///< relative corrector tolerance
	double h_init = 0.02;
	double h_max = 0.05;
	double h_min = 1e-13;
	int max_newton = 3;
	std::size_t max_steps = 100000;
};

enum class TrackStatus { Ok, StepUnderflow, TooManySteps };

inline const char* to_string(TrackStatus s) {
	switch (s) {
	case TrackStatus::Ok:
		return "ok";
	case TrackStatus::StepUnderflow:
		return "step-size underflow";
	case TrackStatus::TooManySteps:
		return "step budget exhausted";
	}
	return "?";
}

/// Predictor-corrector tracking along a parameterized curve s(tau) in the complex s-plane.
template <class Real>
class Tracker {
public:
	using A = Arith<Real>;
	using Complex = ComplexOf<Real>;

	Tracker(const FixedPointHomotopy<Real>& h, TrackSettings settings) : h_(h), cfg_(settings) {}

	std::size_t steps() const { return steps_; }

	/// Newton at fixed s. Returns false when it does not converge within the budget
	/// or the first update is too large to trust.
	bool correct(std::vector<Complex>& y, const Complex& s, int max_iter, Real tol, Real first_limit) const {
		Real previous = -1;
		for (int it = 0; it < max_iter; ++it) {
			h_.evaluate(y, s, h_val_, jac_, h_s_);
			LU<Real> lu(jac_);
			if (lu.singular())
				return false;
			for (auto& v : h_val_)
				v = -v;
			auto dy = lu.solve(h_val_);
			Real size = inf_norm<Real>(dy);
			Real scale = Real(1) + inf_norm<Real>(y);
			if (it == 0 && size > first_limit * scale)
				return false;
			if (previous >= 0 && size > Real(0.5) * previous && size > tol * scale)
				return false;
			for (std::size_t i = 0; i < y.size(); ++i)
				y[i] += dy[i];
			if (size <= tol * scale)
				return true;
			previous = size;
		}
		return false;
	}

	/// Newton at s to tol, then the Jacobian's condition number must stay below max_condition.
	bool regular_at(std::vector<Complex>& y, const Complex& s, Real tol, double max_condition) const {
		if (!correct(y, s, 6, tol, Real(1e-3)))
			return false;
		h_.evaluate(y, s, h_val_, jac_, h_s_);
		return condition_number<Real>(jac_) <= max_condition;
	}

	/// Moves y from tau0 to tau1 along s(tau), ds(tau).
	template <class Curve>
	TrackStatus track(std::vector<Complex>& y, const Curve& curve, Real tau0, Real tau1) {
		const Real direction = tau1 > tau0 ? Real(1) : Real(-1);
		Real tau = tau0;
		Real h = Real(cfg_.h_init);
		int streak = 0;
		const Real tol = Real(cfg_.newton_tol);
		std::vector<Complex> trial;
		while ((tau1 - tau) * direction > Real(0)) {
			if (++steps_ > cfg_.max_steps)
				return TrackStatus::TooManySteps;
			Real remaining = (tau1 - tau) * direction;
			bool last = h >= remaining;
			Real step = last ? remaining : h;
			trial = rk4(y, curve, tau, step * direction);
			Real next = last ? tau1 : tau + step * direction;
			if (correct(trial, curve.s(next), cfg_.max_newton, tol, Real(1e-3))) {
				y.swap(trial);
				tau = next;
				if (++streak >= 3) {
					h = h * Real(2);
					if (h > Real(cfg_.h_max))
						h = Real(cfg_.h_max);
					streak = 0;
				}
			} else {
				h = h / Real(2);
				streak = 0;
				if (h < Real(cfg_.h_min))
					return TrackStatus::StepUnderflow;
			}
		}
		return TrackStatus::Ok;
	}

private:
	template <class Curve>
	std::vector<Complex> velocity(const std::vector<Complex>& y, const Curve& curve, Real tau) const {
		h_.evaluate(y, curve.s(tau), h_val_, jac_, h_s_);
		LU<Real> lu(jac_);
		Complex ds = curve.ds(tau);
		for (auto& v : h_s_)
			v = -v * ds;
		if (lu.singular())
			return std::vector<Complex>(y.size(), Complex(0));
		return lu.solve(h_s_);
	}

	template <class Curve>
	std::vector<Complex> rk4(const std::vector<Complex>& y, const Curve& curve, Real tau, Real h) const {
		const std::size_t n = y.size();
		auto axpy = [&](const std::vector<Complex>& base, const std::vector<Complex>& dir, Real f) {
			std::vector<Complex> out(n);
			Complex cf = A::make(f);
			for (std::size_t i = 0; i < n; ++i)
				out[i] = base[i] + cf * dir[i];
			return out;
		};
		Real half = h / Real(2);
		auto k1 = velocity(y, curve, tau);
		auto k2 = velocity(axpy(y, k1, half), curve, tau + half);
		auto k3 = velocity(axpy(y, k2, half), curve, tau + half);
		auto k4 = velocity(axpy(y, k3, h), curve, tau + h);
		std::vector<Complex> out(n);
		Complex sixth = A::make(h / Real(6));
		for (std::size_t i = 0; i < n; ++i)
			out[i] = y[i] + sixth * (k1[i] + Complex(2) * k2[i] + Complex(2) * k3[i] + k4[i]);
		return out;
	}

	const FixedPointHomotopy<Real>& h_;
	TrackSettings cfg_;
	std::size_t steps_ = 0;
	mutable std::vector<Complex> h_val_, h_s_;
	mutable Matrix<Complex> jac_;
};

/// s = tau on the real segment.
template <class Real>
struct LineCurve {
	using Complex = ComplexOf<Real>;
	Complex s(const Real& tau) const { return Arith<Real>::make(tau); }
	Complex ds(const Real&) const { return Complex(1); }
};

/// s = 1 - r exp(i theta).
template <class Real>
struct CircleCurve {
	using Complex = ComplexOf<Real>;
	Real radius;
	Complex s(const Real& theta) const { return Complex(1) - Arith<Real>::make(radius) * Arith<Real>::exp_i(theta); }
	Complex ds(const Real& theta) const {
		return Arith<Real>::make(Real(0), -radius) * Arith<Real>::exp_i(theta);
	}
};

struct EndgameSettings {
	double first_radius = 0.05;
	double shrink = 0.25;
	int max_radii = 6;
	int samples_per_loop = 16;
	int max_cycle = 32;
	double agreement = 1e-8;       ///< successive estimates must agree to this (relative)
	double loose_agreement = 1e-5; ///< accepted only for cycle number > 1
	double closure = 1e-6;         ///< loop closure test (relative)
	double direct_condition = 1e8; ///< a direct landing at s = 1 needs a Jacobian this well conditioned
	std::size_t direct_steps = 2000;
};

/// Outcome of tracking one path to s = 1.
template <class Real>
struct PathEnd {
	bool ok = false;
	std::string failure;
	std::vector<ComplexOf<Real>> endpoint;
	int cycle = 0;
	double radius = 0;
	double agreement = 0;
	std::size_t steps = 0;
};

/// Tracks path p to s = 1 - r. From there it lands directly when the endpoint is
/// regular, and otherwise runs Cauchy-integral loops around s = 1 at shrinking radii
/// until two successive endpoint estimates agree.
template <class Real>
PathEnd<Real> track_path(const FixedPointHomotopy<Real>& hom, std::size_t p, const TrackSettings& tcfg,
                         const EndgameSettings& ecfg) {
	using A = Arith<Real>;
	using Complex = ComplexOf<Real>;
	PathEnd<Real> out;
	Tracker<Real> tracker(hom, tcfg);
	std::vector<Complex> y = hom.start_point(p);

	Real radius = Real(ecfg.first_radius);
	TrackStatus st = tracker.track(y, LineCurve<Real>{}, Real(0), Real(1) - radius);
	if (st != TrackStatus::Ok) {
		out.failure = std::string("before endgame: ") + to_string(st);
		out.steps = tracker.steps();
		return out;
	}

	// Regular endpoints are reached by staying on the segment; the loops are only
	// needed where the Jacobian degenerates at s = 1.
	{
		TrackSettings direct_cfg = tcfg;
		direct_cfg.max_steps = ecfg.direct_steps;
		Tracker<Real> direct(hom, direct_cfg);
		std::vector<Complex> z = y;
		if (direct.track(z, LineCurve<Real>{}, Real(1) - radius, Real(1)) == TrackStatus::Ok &&
		    direct.regular_at(z, Complex(1), Real(tcfg.newton_tol), ecfg.direct_condition)) {
			out.ok = true;
			out.endpoint = std::move(z);
			out.cycle = 1;
			out.steps = tracker.steps() + direct.steps();
			return out;
		}
	}

	std::vector<Complex> previous;
	int previous_cycle = 0;
	PathEnd<Real> loose_best;
	const Real two_pi = Real(2) * A::pi();
	const int samples = ecfg.samples_per_loop;
	for (int level = 0; level < ecfg.max_radii; ++level) {
		if (level > 0) {
			Real next = radius * Real(ecfg.shrink);
			st = tracker.track(y, LineCurve<Real>{}, Real(1) - radius, Real(1) - next);
			if (st != TrackStatus::Ok) {
				out.failure = std::string("between endgame radii: ") + to_string(st);
				break;
			}
			radius = next;
		}
		CircleCurve<Real> circle{radius};
		const std::vector<Complex> start = y;
		std::vector<Complex> sum(y.size(), Complex(0));
		int cycle = 0;
		bool closed = false;
		for (int loop = 1; loop <= ecfg.max_cycle && !closed; ++loop) {
			for (int j = 0; j < samples; ++j) {
				for (std::size_t i = 0; i < y.size(); ++i)
					sum[i] += y[i];
				Real t0 = two_pi * Real(j) / Real(samples);
				Real t1 = two_pi * Real(j + 1) / Real(samples);
				st = tracker.track(y, circle, t0, t1);
				if (st != TrackStatus::Ok)
					break;
			}
			if (st != TrackStatus::Ok)
				break;
			cycle = loop;
			closed = inf_distance<Real>(y, start) <= Real(ecfg.closure) * (Real(1) + inf_norm<Real>(start));
		}
		if (!closed) {
			out.failure = st != TrackStatus::Ok ? std::string("on endgame loop: ") + to_string(st)
			                                    : std::string("cycle number exceeds limit");
			break;
		}
		y = start;
		Complex inv = A::make(Real(1) / Real(cycle * samples));
		for (auto& v : sum)
			v *= inv;

		if (!previous.empty()) {
			Real diff = inf_distance<Real>(sum, previous) / (Real(1) + inf_norm<Real>(sum));
			double agreement = A::to_double(diff);
			if (agreement <= ecfg.agreement) {
				out.ok = true;
				out.endpoint = sum;
				out.cycle = cycle;
				out.radius = A::to_double(radius);
				out.agreement = agreement;
				out.steps = tracker.steps();
				return out;
			}
			// A path with cycle number > 1 cannot end at a regular solution, so a
			// rougher estimate is still good enough to classify it.
			bool loose = agreement <= ecfg.loose_agreement && cycle > 1 && previous_cycle > 1;
			if (loose && (!loose_best.ok || agreement < loose_best.agreement)) {
				loose_best.ok = true;
				loose_best.endpoint = sum;
				loose_best.cycle = cycle;
				loose_best.radius = A::to_double(radius);
				loose_best.agreement = agreement;
			}
			out.agreement = agreement;
		}
		previous = sum;
		previous_cycle = cycle;
		out.cycle = cycle;
	}
	if (loose_best.ok) {
		loose_best.steps = tracker.steps();
		return loose_best;
	}
	if (out.failure.empty())
		out.failure = "endgame estimates did not settle";
	out.steps = tracker.steps();
	return out;
}

} // namespace fixmult
