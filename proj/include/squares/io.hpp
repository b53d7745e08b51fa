#pragma once
// Text formats for configurations and schedules.
//
// Configuration:
//   squares v1 unlabeled|labeled
//   <n>
//   x y            (unlabeled)   |   label x y      (labeled)
//
// Schedule:
//   schedule v1
//   step 1
//   slide x y D
//   convex x y D1 D2
//   step 2
//   ...
//
// '#' starts a comment; blank lines are ignored.

#include <iosfwd>
#include <string>

#include "squares/moves.hpp"

namespace sq {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Config read_config(std::istream& in);
Schedule read_schedule(std::istream& in);

void write_config(std::ostream& out, const Config& c);
void write_schedule(std::ostream& out, const Schedule& s);

Config read_config_file(const std::string& path);
Schedule read_schedule_file(const std::string& path);
void write_config_file(const std::string& path, const Config& c);
void write_schedule_file(const std::string& path, const Schedule& s);

std::string config_to_string(const Config& c);
std::string schedule_to_string(const Schedule& s);

}  // namespace sq
