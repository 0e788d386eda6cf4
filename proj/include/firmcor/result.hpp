#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace firmcor {

// A structured failure: kind is a short tag such as "NotFirm", witness is a
// coordinate vector or index tuple that pinpoints the problem.
struct Failure {
  std::string kind;
  std::string detail;
  std::vector<int> witness;

  std::string str() const;
};

template <class T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Failure f) : v_(std::move(f)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!ok()) throw std::logic_error("Result: " + error().str());
    return std::get<0>(v_);
  }
  T& value() & {
    if (!ok()) throw std::logic_error("Result: " + error().str());
    return std::get<0>(v_);
  }
  T&& value() && {
    if (!ok()) throw std::logic_error("Result: " + error().str());
    return std::get<0>(std::move(v_));
  }
  const Failure& error() const { return std::get<1>(v_); }

  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }
  const T& operator*() const& { return value(); }

 private:
  std::variant<T, Failure> v_;
};

// Thrown when something that was already validated turns out inconsistent.
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const Failure& f) : std::runtime_error(f.str()), failure(f) {}
  Failure failure;
};

template <class T>
T must(Result<T> r) {
  if (!r.ok()) throw InternalError(r.error());
  return std::move(r).value();
}

inline std::string Failure::str() const {
  std::string s = kind;
  if (!detail.empty()) s += ": " + detail;
  if (!witness.empty()) {
    s += " [";
    for (size_t i = 0; i < witness.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(witness[i]);
    }
    s += "]";
  }
  return s;
}

}  // namespace firmcor
