#pragma once

#include <stdexcept>
#include <string>

namespace gvrp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad route shape (depot endpoints, node ids) or customer coverage.
class MalformedSolution : public Error {
 public:
  using Error::Error;
};

// A customer that cannot be placed on a route of its own by a split procedure.
class UnsplittableCustomer : public Error {
 public:
  UnsplittableCustomer(int customer, const std::string& what)
      : Error(what), customer_(customer) {}
  int customer() const { return customer_; }

 private:
  int customer_;
};

class InvalidMove : public Error {
 public:
  using Error::Error;
};

class EmptyPopulation : public Error {
 public:
  using Error::Error;
};

class InfeasibleInstance : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class UnknownProfile : public Error {
 public:
  using Error::Error;
};

// Text input error with a 1-based location.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gvrp
