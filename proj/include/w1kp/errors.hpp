// Copyright 2026 The W1KP Kit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace w1kp {

/// Base of every error the kit throws. The category maps onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Category { kIo = 1, kValidation = 2, kCapacity = 3 };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

/// Input violates a precondition or a type invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(Category::kValidation, what) {}
};

/// A file does not follow its declared format (bad magic, missing keys,
/// version mismatch).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what)
      : Error(Category::kValidation, "format error: " + what) {}
};

/// Fitted cutoffs cannot satisfy their ordering invariant.
class CalibrationError : public Error {
 public:
  explicit CalibrationError(const std::string& what)
      : Error(Category::kValidation, "calibration error: " + what) {}
};

/// The request is well-formed but exceeds a configured budget.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what)
      : Error(Category::kCapacity, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(Category::kIo, what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace detail
}  // namespace w1kp
