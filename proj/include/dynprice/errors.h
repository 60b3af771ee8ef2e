// Copyright 2026 The dynprice Authors.
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

#ifndef DYNPRICE_ERRORS_H_
#define DYNPRICE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dynprice {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or scenario configuration. The CLI maps this to exit 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An input lies outside the mathematical domain of an operation
// (non-positive price, supply, demand).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The operation is not defined for the given model variant or configuration.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Degenerate numerics: zero smoothing band, finite-difference underflow,
// missing quadrature anchor.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A learner was handed an unusable gradient.
class FeedbackError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double residual,
                      long long iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const { return residual_; }
  long long iterations() const { return iterations_; }

 private:
  double residual_;
  long long iterations_;
};

}  // namespace dynprice

#endif  // DYNPRICE_ERRORS_H_
