#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hfee {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ingest ---------------------------------------------------------------

class MissingFile : public Error {
 public:
  explicit MissingFile(const std::string& path)
      : Error("missing file: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Structurally broken row: wrong column count, non-numeric or
/// non-finite field, value outside its documented domain.
class MalformedRow : public Error {
 public:
  MalformedRow(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(file),
        line_(line) {}
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Timestamp regression, or an activity interval that runs backwards or
/// overlaps its predecessor.
class NonMonotoneTime : public Error {
 public:
  NonMonotoneTime(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(file),
        line_(line) {}
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

class EmptyStream : public Error {
 public:
  explicit EmptyStream(const std::string& file)
      : Error("no data rows in " + file) {}
};

// features -------------------------------------------------------------

class NoUsableRows : public Error {
 public:
  using Error::Error;
};

// subjects -------------------------------------------------------------

class DegenerateFeature : public Error {
 public:
  using Error::Error;
};

class TooFewSubjects : public Error {
 public:
  using Error::Error;
};

// regress --------------------------------------------------------------

class MissingProjection : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class TooFewRows : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

// evaluate -------------------------------------------------------------

class ConstantTruth : public Error {
 public:
  using Error::Error;
};

class SubsetEmpty : public Error {
 public:
  using Error::Error;
};

// cli ------------------------------------------------------------------

class MissingReports : public Error {
 public:
  using Error::Error;
};

}  // namespace hfee
