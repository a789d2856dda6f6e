// Copyright 2026 The rqc-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <stdexcept>
#include <string>

namespace rqc {

enum class ErrorCode {
    Domain = 1,
    Capacity = 2,
    ImpossibleOutcome = 3,
    Numerical = 4,
    Io = 5,
    InvalidArgument = 6,
};

/// Base of every exception thrown by the library. The code is what crosses
/// the C boundary; the message is kept for diagnostics.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& m) : Error(ErrorCode::Domain, m) {}
};

class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& m) : Error(ErrorCode::Capacity, m) {}
};

class ImpossibleOutcomeError : public Error {
public:
    explicit ImpossibleOutcomeError(const std::string& m) : Error(ErrorCode::ImpossibleOutcome, m) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& m) : Error(ErrorCode::Numerical, m) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& m) : Error(ErrorCode::Io, m) {}
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& m) : Error(ErrorCode::InvalidArgument, m) {}
};

}  // namespace rqc
