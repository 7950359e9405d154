/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace effsub {

enum class ErrorKind {
	ZeroElement,
	ZeroPolynomial,
	PointOnDivisor,
	DegreeMismatch,
	VarCountMismatch,
	SyntaxError,
	NotHomogeneous,
	NoCertificateWithinCap,
	MissingTableEntry,
	DependentSpan,
	DivisorInIdeal,
	BaseLocusPoint,
	PreconditionViolated,
	SchemaError,
	IoError,
	InvariantViolated,
};

inline const char *to_string(ErrorKind k)
{
	switch (k) {
	case ErrorKind::ZeroElement: return "ZeroElement";
	case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
	case ErrorKind::PointOnDivisor: return "PointOnDivisor";
	case ErrorKind::DegreeMismatch: return "DegreeMismatch";
	case ErrorKind::VarCountMismatch: return "VarCountMismatch";
	case ErrorKind::SyntaxError: return "SyntaxError";
	case ErrorKind::NotHomogeneous: return "NotHomogeneous";
	case ErrorKind::NoCertificateWithinCap: return "NoCertificateWithinCap";
	case ErrorKind::MissingTableEntry: return "MissingTableEntry";
	case ErrorKind::DependentSpan: return "DependentSpan";
	case ErrorKind::DivisorInIdeal: return "DivisorInIdeal";
	case ErrorKind::BaseLocusPoint: return "BaseLocusPoint";
	case ErrorKind::PreconditionViolated: return "PreconditionViolated";
	case ErrorKind::SchemaError: return "SchemaError";
	case ErrorKind::IoError: return "IoError";
	case ErrorKind::InvariantViolated: return "InvariantViolated";
	}
	return "Unknown";
}

/// All recoverable failures in the library are reported as `Error`.
class Error : public std::runtime_error {
public:
	Error(ErrorKind kind, const std::string &what)
	: std::runtime_error(std::string(to_string(kind)) + ": " + what)
	, kind_(kind)
	, message_(what)
	{}

	ErrorKind kind() const noexcept { return kind_; }
	/// what() without the kind prefix.
	const std::string &message() const noexcept { return message_; }

private:
	ErrorKind kind_;
	std::string message_;
};

/// Parse failure carrying the byte offset into the input text.
class SyntaxError : public Error {
public:
	SyntaxError(std::size_t pos, const std::string &what)
	: Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos))
	, pos_(pos)
	, detail_(what)
	{}

	std::size_t position() const noexcept { return pos_; }
	const std::string &detail() const noexcept { return detail_; }

private:
	std::size_t pos_;
	std::string detail_;
};

/// Scenario validation failure; `pointer` is a JSON pointer such as "/N".
class SchemaError : public Error {
public:
	SchemaError(std::string pointer, const std::string &what)
	: Error(ErrorKind::SchemaError, pointer + ": " + what)
	, pointer_(std::move(pointer))
	{}

	const std::string &pointer() const noexcept { return pointer_; }

private:
	std::string pointer_;
};

inline void require(bool cond, ErrorKind kind, const std::string &what)
{
	if (!cond)
		throw Error(kind, what);
}

} // namespace effsub
