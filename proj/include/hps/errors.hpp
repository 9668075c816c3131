#pragma once

#include <stdexcept>
#include <string>

namespace hps {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct TooManyQubits : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct OddQubitCount : Error {
    using Error::Error;
};

struct InvalidQ : Error {
    using Error::Error;
};

struct PublicKeyExhausted : Error {
    using Error::Error;
};

struct RankDeficient : Error {
    using Error::Error;
};

struct TooManyTerms : Error {
    using Error::Error;
};

}  // namespace hps
