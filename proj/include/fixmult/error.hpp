#pragma once

#include <stdexcept>
#include <string>

namespace fixmult {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Malformed Gaussian-rational text or malformed input file.
class ParseError : public Error {
public:
	using Error::Error;
};

class DivisionByZero : public Error {
public:
	DivisionByZero() : Error("division by zero") {}
};

/// Input spectrum violates the conditions of V_d (some eigenvalue equal to 1,
/// non-zero residue sum, zero residue, wrong length).
class InvalidSpectrum : public Error {
public:
	using Error::Error;
};

/// Operation called outside its mathematical domain (e.g. t not dividing g_w).
class DomainError : public Error {
public:
	using Error::Error;
};

/// A quantity that must be a non-negative integer came out fractional or
/// negative, or two independent routes disagree. Never expected on valid input.
class ConsistencyFault : public Error {
public:
	using Error::Error;
};

/// The numerical oracle could not reach a trustworthy answer after retries.
class CertificationInconclusive : public Error {
public:
	using Error::Error;
};

/// A group image of a solution matched no computed solution.
class CertificationFailure : public Error {
public:
	using Error::Error;
};

/// Two distinct solutions fall inside the dedup tolerance of a query point.
class DedupAmbiguity : public Error {
public:
	using Error::Error;
};

} // namespace fixmult
