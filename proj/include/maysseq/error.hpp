#pragma once

#include <stdexcept>
#include <string>

namespace maysseq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

// d_out * d_in != 0 on some block: a differential rule is inconsistent.
class CompositionError : public Error {
public:
    using Error::Error;
};

class UnknownGenerator : public Error {
public:
    using Error::Error;
};

class MixedPresentation : public Error {
public:
    using Error::Error;
};

class NonHomogeneous : public Error {
public:
    using Error::Error;
};

class NotDivisible : public Error {
public:
    using Error::Error;
};

class IncompleteTable : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace maysseq
