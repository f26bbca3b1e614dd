#pragma once

#include "qcut/circuit.hpp"
#include "qcut/network.hpp"
#include "qcut/planner.hpp"

#include <filesystem>
#include <string>

namespace qcut {

// Text forms are indented JSON terminated by a newline. Parsers raise
// FormatError on malformed input and the model errors on invalid content.

std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);

std::string network_to_text(const Network& n);
Network network_from_text(const std::string& text);

std::string plan_to_text(const Plan& p);
Plan plan_from_text(const std::string& text);

/// Errors: FormatError when the file cannot be read or written.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace qcut
