/*
   Copyright 2026 The iwa Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef IWA_ERROR_HPP
#define IWA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace iwa {

enum class ErrorKind {
    LevelTooDeep,
    InsufficientPPrecision,
    InsufficientTPrecision,
    PrecisionExhausted,
    NoIntegerFit,
    NoConsistentFit,
    InvalidLimit,
    InvalidInput,
    NonInvertible,
};

inline const char* to_string(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::LevelTooDeep: return "level-too-deep";
        case ErrorKind::InsufficientPPrecision: return "insufficient-p-precision";
        case ErrorKind::InsufficientTPrecision: return "insufficient-T-precision";
        case ErrorKind::PrecisionExhausted: return "precision-exhausted";
        case ErrorKind::NoIntegerFit: return "no-integer-fit";
        case ErrorKind::NoConsistentFit: return "no-consistent-fit";
        case ErrorKind::InvalidLimit: return "invalid-limit";
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::NonInvertible: return "non-invertible";
    }
    return "unknown";
}

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Precision failures are recoverable by rerunning with a larger profile.
    bool is_precision() const noexcept {
        return kind_ == ErrorKind::LevelTooDeep || kind_ == ErrorKind::InsufficientPPrecision ||
               kind_ == ErrorKind::InsufficientTPrecision || kind_ == ErrorKind::PrecisionExhausted;
    }

   private:
    ErrorKind kind_;
};

}  // namespace iwa

#endif
