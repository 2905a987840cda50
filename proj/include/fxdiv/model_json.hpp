#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "fxdiv/model.hpp"

namespace fxdiv {

/// Unreadable or malformed input. line/column are 1-based and zero when the
/// error is not tied to a position.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line = 0,
             std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

ModelDescription model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelDescription& m);

/// Parses a model document; syntax errors carry the line and column.
ModelDescription parse_model(const std::string& text);
ModelDescription load_model(const std::filesystem::path& path);

}  // namespace fxdiv
