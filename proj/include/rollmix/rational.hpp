#pragma once

// Exact rational arithmetic, backed by GMP's mpq_class.  All closed-form
// frequencies, chain probabilities and expected payoffs are computed in this
// type; conversion to double happens only at the reporting boundary.

#include <gmpxx.h>

#include <string>

namespace rollmix {

using Rational = mpq_class;

// Parse "p/q", "p", or a finite decimal such as "0.25" into an exact,
// canonicalized rational.  Throws Error{ParseError} on malformed input or a
// zero denominator.
Rational parse_rational(const std::string& text);

// Serialize as "p/q" always (denominator kept even when it is 1), canonical
// lowest terms, e.g. "1/441", "3/1", "-2/7".
std::string rational_string(const Rational& value);

double rational_double(const Rational& value);

}  // namespace rollmix
