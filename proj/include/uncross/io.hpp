#pragma once

#include <string>

#include "uncross/crossing.hpp"

namespace uncross {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& w) : std::runtime_error(w) {}
};

// JSON formats (byte-stable canonical serialization; rationals as "p/q").
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

std::string flow_to_json(const Multiflow& f);
Multiflow flow_from_json(const std::string& text, const Instance& inst);

std::string parallelization_to_json(const Parallelization& phi);
Parallelization parallelization_from_json(const std::string& text, const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace uncross
