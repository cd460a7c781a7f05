#pragma once

#include <stdexcept>
#include <string>

namespace qmi {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally malformed input (bad JSON, ragged arrays, unparsable
// rationals).  Distinct from semantic invariant violations, which are
// collected in a ValidationReport instead of thrown.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Raised by operations whose preconditions require a validated
// presentation when handed one that fails validation.
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Enumeration by Novikov degree is infinite: a nonzero effective class of
// non-positive degree exists.  Carries a witness when one was found.
struct NonPositiveDegreeError : Error {
  explicit NonPositiveDegreeError(const std::string& msg) : Error(msg) {}
};

// A coefficient was requested at a class outside the effective set.
struct NotEffectiveError : Error {
  explicit NotEffectiveError(const std::string& msg) : Error(msg) {}
};

// The age of a group element whose fixed locus misses the semistable set.
struct EmptyFixedLocusError : Error {
  explicit EmptyFixedLocusError(const std::string& msg) : Error(msg) {}
};

// Inverting a factor with no z- or kappa-part (a genuine zero divisor).
struct NonInvertibleError : Error {
  explicit NonInvertibleError(const std::string& msg) : Error(msg) {}
};

// A graded model failed to close up (dimension never reached zero below
// the hard degree cap and no truncation was configured).
struct ModelError : Error {
  explicit ModelError(const std::string& msg) : Error(msg) {}
};

}  // namespace qmi
