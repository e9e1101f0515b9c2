/*
 *   Copyright 2026 The daniell authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef DANIELL_ERROR_HPP
#define DANIELL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace daniell {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (universe mismatch, a >= b, ...).
class DomainError : public Error {
public:
	using Error::Error;
};

/// A checked precondition failed. Carries the witnessing point or index.
class PreconditionError : public Error {
public:
	PreconditionError(const std::string &what, std::string witness)
	    : Error(what + " (witness: " + witness + ")"), witness_(std::move(witness)) {}

	const std::string &witness() const noexcept { return witness_; }

private:
	std::string witness_;
};

/// A structural invariant of a user-supplied object was violated.
class InvariantError : public Error {
public:
	using Error::Error;
};

/// A requested tolerance cannot be met within the configured budget.
class ToleranceError : public Error {
public:
	ToleranceError(const std::string &what, double achieved)
	    : Error(what), achieved_(achieved) {}

	double achieved() const noexcept { return achieved_; }

private:
	double achieved_;
};

/// Malformed serialized input.
class ParseError : public Error {
public:
	using Error::Error;
};

} // namespace daniell

#endif // DANIELL_ERROR_HPP
