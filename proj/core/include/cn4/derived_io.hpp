#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cn4/closure.hpp"

namespace cn4 {

// Relative path and contents of every derived file: one table file and one
// id map per table, plus the three edge lists of the unfiltered graph.
// Text fields escape backslash as "\\" and newline as "\n"; the relation name
// (the only text field that is not last on its line) also escapes space as "\s".
std::vector<std::pair<std::string, std::string>> render_derived_files(const ClosedKB& kb);

void emit_derived_files(const ClosedKB& kb, const std::filesystem::path& dir);

// Reads the table and map files (edge lists are ignored). Throws ParseError
// naming file and line on any format violation.
ClosedKB load_derived_files(const std::filesystem::path& dir);

std::string derived_table_path(Table t);
std::string derived_map_path(Table t);

}  // namespace cn4
