#pragma once

#include <stdexcept>
#include <string>

namespace rdaug {

// Root of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be opened or written.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed file content: wrong column count, bad JSON, unknown checkpoint version.
class FormatError : public Error {
public:
    using Error::Error;
};

// Well-formed content carrying an out-of-range value (label 2, probability 1.5, ...).
class ValueError : public Error {
public:
    using Error::Error;
};

// A statistic requested on data where it is not defined (positive fraction of nothing).
class UndefinedStatistic : public Error {
public:
    using Error::Error;
};

// Oversampling requested on a dataset missing one of the two classes.
class ImbalanceError : public Error {
public:
    using Error::Error;
};

// NaN or infinity produced during forward, backward or optimizer arithmetic.
class NumericError : public Error {
public:
    using Error::Error;
};

// A translator (remote or offline) failed; carries the underlying cause in what().
class AugmentationUnavailable : public Error {
public:
    using Error::Error;
};

// Caller broke a precondition (mismatched lengths, bad config values).
class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace rdaug
