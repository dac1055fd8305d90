// Copyright 2026 The termmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TERMMAP_ERROR_HPP_
#define TERMMAP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace termmap {

// Base class for every error raised by the pipeline.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input does not have the expected structure (missing column, bad dump).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Input is well-formed but violates a data invariant (duplicate id, bad score).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied parameter is out of range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

class EmptyNetworkError : public Error {
 public:
  using Error::Error;
};

// The second-order co-occurrence matrix has no mass at all.
class DegenerateNetworkError : public Error {
 public:
  using Error::Error;
};

}  // namespace termmap

#endif  // TERMMAP_ERROR_HPP_
