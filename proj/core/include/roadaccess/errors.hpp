#pragma once

#include <stdexcept>
#include <string>

namespace roadaccess {

/// Invalid or missing configuration: absent inputs, bad parameters, empty road set.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data that cannot be used at all (unparseable file, degenerate boundary).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation against reference data is impossible (e.g. no matched cells).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace roadaccess
