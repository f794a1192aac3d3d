#pragma once

#include <stdexcept>
#include <string>

namespace tq {

/// Malformed input: bad file contents, invalid parameters, violated preconditions.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A size or resource cap was exceeded (enumeration order, subset-search size, ...).
class cap_error : public std::runtime_error {
public:
  explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

/// A structural hypothesis required by a theorem checker is absent.
class hypothesis_error : public input_error {
public:
  explicit hypothesis_error(const std::string& what) : input_error(what) {}
};

}  // namespace tq
