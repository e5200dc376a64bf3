// Copyright 2026 The Treeconv Authors
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

#ifndef TREECONV_ERRORS_H_
#define TREECONV_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treeconv {

// Base class for every error raised by the library. The CLI maps
// AlignmentError to exit status 3 and everything else to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wrong column count, non-integer id/head, invalid UTF-8 and similar.
// `line` is 1-based.
class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

// Strict-mode tree violation (cycle, no root, several roots).
class CyclicTree : public Error {
 public:
  CyclicTree(std::size_t sentence_index, const std::string& reason)
      : Error("sentence " + std::to_string(sentence_index) + ": " + reason),
        sentence_index_(sentence_index) {}

  std::size_t sentence_index() const { return sentence_index_; }

 private:
  std::size_t sentence_index_;
};

class PolicyMismatch : public Error {
 public:
  PolicyMismatch()
      : Error("pair indexes were built with different normalization policies") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t line, std::size_t expected, std::size_t got)
      : Error("line " + std::to_string(line) + ": expected " +
              std::to_string(expected) + " components, got " +
              std::to_string(got)),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class MalformedRow : public Error {
 public:
  MalformedRow(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class StaleReport : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  AlignmentError(std::size_t sentence_index, const std::string& reason)
      : Error("sentence " + std::to_string(sentence_index) + ": " + reason),
        sentence_index_(sentence_index) {}

  std::size_t sentence_index() const { return sentence_index_; }

 private:
  std::size_t sentence_index_;
};

class MissingVectors : public Error {
 public:
  MissingVectors()
      : Error("embedding strategies require a vector file (--vectors)") {}
};

}  // namespace treeconv

#endif  // TREECONV_ERRORS_H_
