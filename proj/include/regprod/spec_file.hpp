#pragma once

// Line-based `key = value` sequence descriptions; `#` starts a comment.
//
//   name = my_sequence
//   kind = lucas_u | lucas_v | geometric | table
//   P = 1                  # lucas kinds
//   Q = -1
//   growth_ratio = 2       # geometric, table
//   amplitude = 3
//   correction_K = 1       # table
//   correction_rho = 0.5
//   terms = 6 12 24 ...    # table, a_1..a_m with m >= 8

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "regprod/sequences.hpp"

namespace regprod {

/// Parse or validation failure; what() is "<source>:<line>: <message>".
class SpecFileError : public std::runtime_error {
 public:
  SpecFileError(const std::string& source, int line, const std::string& message);

  int line() const noexcept { return line_; }

 private:
  int line_;
};

SequenceSpec parse_spec_text(std::string_view text, const std::string& source = "<input>");
SequenceSpec parse_spec_file(const std::filesystem::path& path);

}  // namespace regprod
