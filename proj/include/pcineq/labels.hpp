#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcineq {

// Base for every domain failure raised by the library. The CLI maps these
// to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

class LabelError : public Error {
 public:
  using Error::Error;
};

class ClassMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// An insertion-ordered set of vertex labels. Order is kept so traces and
// reports print labels in the order they were supplied.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<std::string> labels);
  explicit LabelSet(const std::vector<std::string>& labels);

  bool insert(const std::string& label);
  bool erase(const std::string& label);
  bool contains(std::string_view label) const;

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<std::string>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::string& operator[](std::size_t i) const { return items_[i]; }

  // Set equality, order-insensitive.
  bool same_as(const LabelSet& other) const;
  bool subset_of(const LabelSet& other) const;
  bool intersects(const LabelSet& other) const;

  friend LabelSet operator|(const LabelSet& lhs, const LabelSet& rhs);
  friend LabelSet operator-(const LabelSet& lhs, const LabelSet& rhs);
  friend LabelSet operator&(const LabelSet& lhs, const LabelSet& rhs);
  friend bool operator==(const LabelSet& lhs, const LabelSet& rhs) { return lhs.same_as(rhs); }

  // "a,b,c"
  std::string joined(std::string_view sep = ",") const;

 private:
  std::vector<std::string> items_;
};

// Splits "a,b , c" into labels; empty input gives the empty set.
LabelSet parse_label_list(std::string_view text);

}  // namespace pcineq
