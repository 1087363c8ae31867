#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace magnocool {
namespace io {

/// A named builtin run configuration.
struct Recipe {
  std::string name;
  std::string command;      // which subcommand it feeds
  std::string description;  // what it reproduces
  nlohmann::json config;
};

const std::vector<Recipe>& builtin_recipes();

/// Throws std::invalid_argument with the available names when absent.
const Recipe& find_recipe(const std::string& name);

}  // namespace io
}  // namespace magnocool
